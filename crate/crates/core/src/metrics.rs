//! Recovery sets and the stretch / jump fragmentation metrics.
//!
//! Stretch of a file is the shortest store window (max - min + 1 positions)
//! holding a recovery set, divided by the file length. Jump is the smallest
//! number of runs of consecutive positions over inclusion-minimal recovery sets.

use std::sync::OnceLock;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gf2::{coset, Basis, BitVec, ColumnSystem};
use crate::graph::{enumerate_paths, FileGraph, Path, Vertex};
use crate::store::{CodedStore, Store, UncodedStore};

pub type Rational = Ratio<u64>;

/// Largest null-space dimension for which cosets are enumerated.
pub const MAX_KERNEL_DIM: usize = 20;
/// Largest number of recovery-set combinations tried for one file.
pub const MAX_COMBINATIONS: usize = 1 << 22;

pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let q: u64 = q.trim().parse().ok()?;
    let p: u64 = p.trim().parse().ok()?;
    (q != 0).then(|| Rational::new(p, q))
}

/// Sorted 1-based store positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecoverySet(pub Vec<usize>);

impl RecoverySet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        RecoverySet(positions)
    }

    pub fn window(a: usize, b: usize) -> Self {
        RecoverySet((a..=b).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn span(&self) -> usize {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    pub fn runs(&self) -> usize {
        runs(&self.0)
    }
}

/// Number of maximal runs of consecutive integers in a sorted slice.
pub fn runs(sorted: &[usize]) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted.windows(2).filter(|w| w[1] != w[0] + 1).count()
}

/// True iff chunk `chunk` lies in the span of the columns at positions `r`.
pub fn can_reconstruct(c: &CodedStore, r: &RecoverySet, chunk: Vertex) -> bool {
    let mut b = Basis::new(c.n(), c.m());
    for &p in r.positions() {
        if p == 0 || p > c.m() {
            return false;
        }
        b.insert(c.column(p - 1), p - 1);
    }
    b.contains(&BitVec::unit(c.n(), chunk - 1))
}

enum Mode {
    Uncoded {
        occ: Vec<Vec<usize>>,
    },
    Coded {
        store: CodedStore,
        particular: Vec<BitVec>,
        kernel: Vec<BitVec>,
        supports: Vec<OnceLock<Vec<BitVec>>>,
    },
}

/// Per-store precomputation shared by all files evaluated against it.
pub struct Evaluator {
    n: usize,
    m: usize,
    mode: Mode,
}

impl Evaluator {
    pub fn new(store: &Store) -> Result<Self> {
        let n = store.n();
        let m = store.m();
        let uncoded = match store {
            Store::Uncoded(u) => Some(u.clone()),
            Store::Coded(c) => c.as_uncoded(),
        };
        let mode = match (uncoded, store) {
            (Some(u), _) => Mode::Uncoded { occ: u.occurrences() },
            (None, Store::Coded(c)) => {
                let sys = ColumnSystem::new(n, c.columns());
                let particular = (0..n)
                    .map(|i| {
                        sys.particular(&BitVec::unit(n, i))
                            .ok_or_else(|| Error::InvalidStore(format!("chunk {} unrecoverable", i + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Mode::Coded {
                    store: c.clone(),
                    particular,
                    kernel: sys.kernel().to_vec(),
                    supports: (0..n).map(|_| OnceLock::new()).collect(),
                }
            }
            (None, Store::Uncoded(_)) => unreachable!(),
        };
        Ok(Evaluator { n, m, mode })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Inclusion-minimal supports of the vectors reconstructing `chunk`.
    fn chunk_supports(&self, chunk: Vertex) -> Result<Vec<BitVec>> {
        match &self.mode {
            Mode::Uncoded { occ } => Ok(occ[chunk].iter().map(|&p| BitVec::unit(self.m, p - 1)).collect()),
            Mode::Coded {
                particular,
                kernel,
                supports,
                ..
            } => {
                if kernel.len() > MAX_KERNEL_DIM {
                    return Err(Error::Guard {
                        what: "null-space dimension for recovery-set enumeration",
                        limit: MAX_KERNEL_DIM,
                        got: kernel.len(),
                    });
                }
                Ok(supports[chunk - 1]
                    .get_or_init(|| minimal_family(coset(&particular[chunk - 1], kernel)))
                    .clone())
            }
        }
    }

    fn check_chunks(&self, chunks: &[Vertex]) -> Result<()> {
        match chunks.iter().find(|&&c| c == 0 || c > self.n) {
            Some(c) => Err(Error::InvalidParams(format!("chunk {c} outside 1..={}", self.n))),
            None => Ok(()),
        }
    }

    /// All inclusion-minimal recovery sets of `chunks`, lexicographically sorted.
    pub fn minimal_recovery_sets(&self, chunks: &[Vertex]) -> Result<Vec<RecoverySet>> {
        self.check_chunks(chunks)?;
        let mut sets: Vec<RecoverySet> = self
            .minimal_unions(chunks)?
            .into_iter()
            .map(|b| RecoverySet(b.ones().map(|i| i + 1).collect()))
            .collect();
        sets.sort();
        Ok(sets)
    }

    fn minimal_unions(&self, chunks: &[Vertex]) -> Result<Vec<BitVec>> {
        let mut distinct: Vec<Vertex> = chunks.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let cands = distinct
            .iter()
            .map(|&c| self.chunk_supports(c))
            .collect::<Result<Vec<_>>>()?;
        let total = cands
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
            .unwrap_or(usize::MAX);
        if total > MAX_COMBINATIONS {
            return Err(Error::Guard {
                what: "recovery-set combinations per file",
                limit: MAX_COMBINATIONS,
                got: total,
            });
        }
        let mut unions = vec![BitVec::zeros(self.m)];
        for cand in &cands {
            let mut next = Vec::with_capacity(unions.len() * cand.len());
            for u in &unions {
                for s in cand {
                    let mut v = u.clone();
                    for i in s.ones() {
                        v.set(i, true);
                    }
                    next.push(v);
                }
            }
            next.sort();
            next.dedup();
            unions = next;
        }
        if matches!(self.mode, Mode::Uncoded { .. }) {
            // one occurrence per distinct chunk: every union is already minimal
            return Ok(unions);
        }
        Ok(minimal_family(unions))
    }

    /// Shortest window holding a recovery set of `chunks`, as `(first, last)` positions.
    pub fn min_window(&self, chunks: &[Vertex]) -> Result<(usize, usize)> {
        self.check_chunks(chunks)?;
        if chunks.is_empty() {
            return Err(Error::InvalidParams("empty chunk set".into()));
        }
        match &self.mode {
            Mode::Uncoded { occ } => Ok(uncoded_min_window(occ, chunks)),
            Mode::Coded { store, .. } => Ok(coded_min_window(store, chunks)),
        }
    }

    pub fn min_stretch(&self, p: &Path) -> Result<(Rational, RecoverySet)> {
        let (a, b) = self.min_window(p.vertices())?;
        Ok((
            Rational::new((b - a + 1) as u64, p.len() as u64),
            RecoverySet::window(a, b),
        ))
    }

    /// Fewest runs over minimal recovery sets; ties go to the lexicographically smallest set.
    pub fn min_jump_of(&self, chunks: &[Vertex]) -> Result<(usize, RecoverySet)> {
        self.check_chunks(chunks)?;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for u in self.minimal_unions(chunks)? {
            let pos: Vec<usize> = u.ones().map(|i| i + 1).collect();
            let r = runs(&pos);
            let better = match &best {
                None => true,
                Some((br, bp)) => r < *br || (r == *br && pos < *bp),
            };
            if better {
                best = Some((r, pos));
            }
        }
        let (r, pos) = best.ok_or_else(|| Error::InvalidParams("empty chunk set".into()))?;
        Ok((r, RecoverySet(pos)))
    }

    pub fn min_jump(&self, p: &Path) -> Result<(usize, RecoverySet)> {
        self.min_jump_of(p.vertices())
    }
}

/// Keeps only the members not strictly containing another member.
fn minimal_family(mut v: Vec<BitVec>) -> Vec<BitVec> {
    v.sort_by_key(|b| b.count_ones());
    v.dedup();
    let mut out: Vec<BitVec> = Vec::new();
    for b in v {
        if !out.iter().any(|o| o.is_subset_of(&b)) {
            out.push(b);
        }
    }
    out.sort();
    out
}

fn uncoded_min_window(occ: &[Vec<usize>], chunks: &[Vertex]) -> (usize, usize) {
    let mut distinct: Vec<Vertex> = chunks.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut events: Vec<(usize, usize)> = distinct
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| occ[c].iter().map(move |&p| (p, k)))
        .collect();
    events.sort_unstable();
    let need = distinct.len();
    let mut count = vec![0usize; need];
    let mut have = 0;
    let mut best = (0, usize::MAX);
    let mut lo = 0;
    for hi in 0..events.len() {
        let k = events[hi].1;
        count[k] += 1;
        if count[k] == 1 {
            have += 1;
        }
        while have == need {
            let (a, b) = (events[lo].0, events[hi].0);
            if b - a < best.1.wrapping_sub(best.0) || best.1 == usize::MAX {
                best = (a, b);
            }
            let kl = events[lo].1;
            count[kl] -= 1;
            if count[kl] == 0 {
                have -= 1;
            }
            lo += 1;
        }
    }
    best
}

fn coded_min_window(c: &CodedStore, chunks: &[Vertex]) -> (usize, usize) {
    let targets: Vec<BitVec> = chunks.iter().map(|&x| BitVec::unit(c.n(), x - 1)).collect();
    let m = c.m();
    let mut best: Option<(usize, usize)> = None;
    for a in 0..m {
        let mut basis = Basis::new(c.n(), m);
        for b in a..m {
            if let Some((ba, bb)) = best {
                if b - a >= bb - ba {
                    break;
                }
            }
            basis.insert(c.column(b), b);
            if targets.iter().all(|t| basis.contains(t)) {
                best = Some((a, b));
                break;
            }
        }
    }
    let (a, b) = best.expect("lossless store reconstructs every chunk");
    (a + 1, b + 1)
}

pub fn minimal_recovery_sets(store: &Store, chunks: &[Vertex]) -> Result<Vec<RecoverySet>> {
    Evaluator::new(store)?.minimal_recovery_sets(chunks)
}

pub fn min_stretch(store: &Store, p: &Path) -> Result<Rational> {
    Ok(Evaluator::new(store)?.min_stretch(p)?.0)
}

pub fn min_jump(store: &Store, p: &Path) -> Result<usize> {
    Ok(Evaluator::new(store)?.min_jump(p)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMetric {
    pub path: Path,
    pub stretch: Rational,
    pub stretch_window: RecoverySet,
    pub jump: usize,
    pub jump_witness: RecoverySet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricReport {
    pub t: usize,
    pub per_path: Vec<PathMetric>,
    pub stretch_metric: Rational,
    pub jump_metric: usize,
}

impl MetricReport {
    /// The first file attaining the stretch metric.
    pub fn worst_stretch(&self) -> Option<&PathMetric> {
        self.per_path.iter().find(|p| p.stretch == self.stretch_metric)
    }

    pub fn worst_jump(&self) -> Option<&PathMetric> {
        self.per_path.iter().find(|p| p.jump == self.jump_metric)
    }
}

fn check_sizes(store: &Store, g: &FileGraph) -> Result<()> {
    if store.n() != g.n() {
        return Err(Error::InvalidParams(format!(
            "store holds {} chunks but graph has {} vertices",
            store.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Per-file minima over `P(g, <= t)` plus the two store-level maxima.
pub fn evaluate(store: &Store, g: &FileGraph, t: usize) -> Result<MetricReport> {
    evaluate_paths(store, g, t, true)
}

/// Stretch only; jump fields are left at zero. Useful for large coded stores.
pub fn evaluate_stretch(store: &Store, g: &FileGraph, t: usize) -> Result<MetricReport> {
    evaluate_paths(store, g, t, false)
}

fn evaluate_paths(store: &Store, g: &FileGraph, t: usize, with_jump: bool) -> Result<MetricReport> {
    check_sizes(store, g)?;
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    let ev = Evaluator::new(store)?;
    let mut per_path = Vec::new();
    let mut stretch_metric = Rational::from_integer(0);
    let mut jump_metric = 0;
    for p in enumerate_paths(g, t) {
        let (stretch, stretch_window) = ev.min_stretch(&p)?;
        let (jump, jump_witness) = if with_jump {
            ev.min_jump(&p)?
        } else {
            (0, RecoverySet(Vec::new()))
        };
        stretch_metric = stretch_metric.max(stretch);
        jump_metric = jump_metric.max(jump);
        per_path.push(PathMetric {
            path: p,
            stretch,
            stretch_window,
            jump,
            jump_witness,
        });
    }
    Ok(MetricReport {
        t,
        per_path,
        stretch_metric,
        jump_metric,
    })
}

/// Largest `|pos(u) - pos(v)|` over edges, for a permutation store.
pub fn max_displacement(s: &UncodedStore, g: &FileGraph) -> Result<usize> {
    if !s.is_permutation() || s.n() != g.n() {
        return Err(Error::InvalidStore(
            "displacement needs a permutation of the graph's vertices".into(),
        ));
    }
    let mut pos = vec![0usize; s.n() + 1];
    for (j, &v) in s.sequence().iter().enumerate() {
        pos[v] = j + 1;
    }
    Ok(g.edges().map(|(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::store::CodedStore;

    fn unc(n: usize, seq: &[usize]) -> Store {
        Store::Uncoded(UncodedStore::new(n, seq.to_vec()).unwrap())
    }

    fn path(v: &[usize]) -> Path {
        Path::canonical(v.to_vec())
    }

    #[test]
    fn reconstruct_from_xor() {
        let c = CodedStore::from_combinations(2, &[vec![1], vec![1, 2]]).unwrap();
        assert!(can_reconstruct(&c, &RecoverySet::new(vec![1, 2]), 2));
        assert!(!can_reconstruct(&c, &RecoverySet::new(vec![2]), 1));
    }

    #[test]
    fn minimal_sets_for_uncoded_stores() {
        let s = unc(3, &[1, 2, 3]);
        assert_eq!(
            minimal_recovery_sets(&s, &[1, 3]).unwrap(),
            vec![RecoverySet(vec![1, 3])]
        );
        let d = unc(2, &[1, 2, 1]);
        assert_eq!(
            minimal_recovery_sets(&d, &[1]).unwrap(),
            vec![RecoverySet(vec![1]), RecoverySet(vec![3])]
        );
    }

    #[test]
    fn coded_minimal_sets_filter_supersets() {
        // (x1, x1^x2, x2): chunk 1 from {1} or {2,3}
        let c = Store::Coded(CodedStore::from_combinations(2, &[vec![1], vec![1, 2], vec![2]]).unwrap());
        assert_eq!(
            minimal_recovery_sets(&c, &[1]).unwrap(),
            vec![RecoverySet(vec![1]), RecoverySet(vec![2, 3])]
        );
        // both chunks: any two columns
        assert_eq!(minimal_recovery_sets(&c, &[1, 2]).unwrap().len(), 3);
    }

    #[test]
    fn stretch_and_jump_basics() {
        let s = unc(4, &[1, 2, 3, 4]);
        assert_eq!(min_stretch(&s, &path(&[1, 3])).unwrap(), Rational::new(3, 2));
        let s3 = unc(3, &[1, 2, 3]);
        assert_eq!(min_jump(&s3, &path(&[1, 3])).unwrap(), 2);
        assert_eq!(min_jump(&s3, &path(&[1, 2, 3])).unwrap(), 1);
    }

    #[test]
    fn runs_counts_gaps() {
        assert_eq!(runs(&[]), 0);
        assert_eq!(runs(&[4]), 1);
        assert_eq!(runs(&[1, 2, 4, 5, 9]), 3);
    }

    #[test]
    fn rational_format() {
        assert_eq!(rational_string(&Rational::new(6, 4)), "3/2");
        assert_eq!(rational_string(&Rational::from_integer(1)), "1/1");
        assert_eq!(parse_rational("5/2"), Some(Rational::new(5, 2)));
        assert_eq!(parse_rational("5/0"), None);
    }

    #[test]
    fn identity_layout_of_path_graph() {
        let g = FileGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let r = evaluate(&unc(3, &[1, 2, 3]), &g, 2).unwrap();
        assert_eq!(r.stretch_metric, Rational::from_integer(1));
        assert_eq!(r.jump_metric, 1);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let g = FileGraph::new(4, [(1, 2)]).unwrap();
        assert!(evaluate(&unc(3, &[1, 2, 3]), &g, 2).is_err());
    }
}
