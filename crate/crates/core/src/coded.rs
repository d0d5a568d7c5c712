//! Coded stores: xor chains, the `[H;K]` reduction to chain form, and the
//! conversions from coded stores back to uncoded ones.

use crate::error::{Error, Result};
use crate::families::{example1_hubs, example2_hub, EXAMPLE1J_A, EXAMPLE1J_B};
use crate::gf2::{Basis, BitVec, ColumnSystem};
use crate::graph::{FileGraph, Vertex};
use crate::metrics::{evaluate_stretch, minimal_recovery_sets, RecoverySet};
use crate::store::{CodedStore, Store, UncodedStore};

/// Parity rows `H` and decoding rows `K` of a length-`m` code, rows of length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKCode {
    pub h: Vec<BitVec>,
    pub k: Vec<BitVec>,
}

impl HKCode {
    pub fn new(h: Vec<BitVec>, k: Vec<BitVec>) -> Result<Self> {
        let m = h.len() + k.len();
        if h.iter().chain(&k).any(|r| r.len() != m) {
            return Err(Error::InvalidParams(format!("every row needs {m} bits")));
        }
        let code = HKCode { h, k };
        let r = crate::gf2::rank(&code.rows());
        if r != m {
            return Err(Error::InvalidParams(format!("[H;K] has rank {r} < {m}")));
        }
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn m(&self) -> usize {
        self.h.len() + self.k.len()
    }

    fn rows(&self) -> Vec<BitVec> {
        self.h.iter().chain(&self.k).cloned().collect()
    }

    /// Null-space basis of the generator plus one decoding vector per chunk.
    pub fn from_store(c: &CodedStore) -> Result<Self> {
        let sys = ColumnSystem::new(c.n(), c.columns());
        let k = (0..c.n())
            .map(|i| sys.particular(&BitVec::unit(c.n(), i)).expect("lossless store"))
            .collect();
        HKCode::new(sys.kernel().to_vec(), k)
    }

    /// Generator columns: chunk row `i` is the vector orthogonal to `H` whose
    /// dot product with `K(j)` is `[i == j]`.
    pub fn generator_columns(&self) -> Vec<BitVec> {
        let (n, m) = (self.n(), self.m());
        let rows = self.rows();
        let cols: Vec<BitVec> = (0..m)
            .map(|j| {
                BitVec::from_indices(
                    m,
                    rows.iter().enumerate().filter(|(_, r)| r.get(j)).map(|(i, _)| i),
                )
            })
            .collect();
        let sys = ColumnSystem::new(m, &cols);
        let g_rows: Vec<BitVec> = (0..n)
            .map(|i| {
                sys.particular(&BitVec::unit(m, self.h.len() + i))
                    .expect("[H;K] is invertible")
            })
            .collect();
        (0..m)
            .map(|j| BitVec::from_indices(n, (0..n).filter(|&i| g_rows[i].get(j))))
            .collect()
    }

    pub fn to_store(&self) -> Result<CodedStore> {
        CodedStore::new(self.n(), self.generator_columns())
    }
}

/// `y_1 = x_{b_1}`, `y_i = x_{b_{i-1}} ^ x_{b_i}`, `y_{N+1} = x_{b_N}`, interleaved with plain chunks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorChainStore {
    pub a_seq: Vec<Vertex>,
    pub b_seq: Vec<Vertex>,
    /// 1-based store positions of `y_1..y_{N+1}`
    pub interleave: Vec<usize>,
}

impl XorChainStore {
    pub fn new(a_seq: Vec<Vertex>, b_seq: Vec<Vertex>, interleave: Vec<usize>) -> Result<Self> {
        let n = a_seq.len() + b_seq.len();
        let mut seen = vec![false; n + 1];
        for &v in a_seq.iter().chain(&b_seq) {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidStore(format!(
                    "chunk {v} repeated or outside 1..={n}"
                )));
            }
        }
        if b_seq.is_empty() || interleave.len() != b_seq.len() + 1 {
            return Err(Error::InvalidStore(
                "a chain of N chunks needs N+1 positions, N >= 1".into(),
            ));
        }
        if interleave.windows(2).any(|w| w[0] >= w[1])
            || interleave[0] == 0
            || *interleave.last().unwrap() > n + 1
        {
            return Err(Error::InvalidStore(format!(
                "chain positions must increase within 1..={}",
                n + 1
            )));
        }
        Ok(XorChainStore {
            a_seq,
            b_seq,
            interleave,
        })
    }

    pub fn n(&self) -> usize {
        self.a_seq.len() + self.b_seq.len()
    }

    /// Chunk ids xored into chain column `y_i`, `i` 1-based.
    pub fn chain_combination(&self, i: usize) -> Vec<Vertex> {
        let nb = self.b_seq.len();
        let mut c: Vec<Vertex> = [
            i.checked_sub(2).map(|j| self.b_seq[j]),
            (i <= nb).then(|| self.b_seq[i - 1]),
        ]
        .into_iter()
        .flatten()
        .collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn combinations(&self) -> Vec<Vec<Vertex>> {
        let mut plain = self.a_seq.iter();
        let mut chain = 1;
        (1..=self.n() + 1)
            .map(|p| {
                if self.interleave.get(chain - 1) == Some(&p) {
                    chain += 1;
                    self.chain_combination(chain - 1)
                } else {
                    vec![*plain.next().expect("length n+1")]
                }
            })
            .collect()
    }

    pub fn to_coded(&self) -> CodedStore {
        CodedStore::from_combinations(self.n(), &self.combinations()).expect("xor chain is lossless")
    }

    /// Reads a chain store back from its generator; the chain columns are the
    /// support of the single column dependency.
    pub fn from_coded(c: &CodedStore) -> Result<Self> {
        let not_chain = || Error::InvalidStore("store is not an xor chain".into());
        if c.m() != c.n() + 1 {
            return Err(not_chain());
        }
        let sys = ColumnSystem::new(c.n(), c.columns());
        let dep = sys.kernel().first().ok_or_else(not_chain)?;
        let interleave: Vec<usize> = dep.ones().map(|j| j + 1).collect();
        let mut a_seq = Vec::new();
        for j in 0..c.m() {
            if !dep.get(j) {
                match c.combination(j).as_slice() {
                    [v] => a_seq.push(*v),
                    _ => return Err(not_chain()),
                }
            }
        }
        let mut b_seq: Vec<Vertex> = Vec::new();
        for (i, &p) in interleave.iter().enumerate() {
            let combo = c.combination(p - 1);
            if i + 1 == interleave.len() {
                break;
            }
            let next = match (b_seq.last(), combo.as_slice()) {
                (None, [v]) => *v,
                (Some(&prev), [u, v]) if *u == prev => *v,
                (Some(&prev), [u, v]) if *v == prev => *u,
                _ => return Err(not_chain()),
            };
            b_seq.push(next);
        }
        let x = XorChainStore::new(a_seq, b_seq, interleave).map_err(|_| not_chain())?;
        if x.to_coded() != *c {
            return Err(not_chain());
        }
        Ok(x)
    }

    /// Prefix and suffix xors of the chain both equal `x_{b_i}` for every `i`.
    pub fn chain_identities_hold(&self) -> bool {
        let n = self.n();
        let ys: Vec<BitVec> = (1..=self.b_seq.len() + 1)
            .map(|i| BitVec::from_indices(n, self.chain_combination(i).into_iter().map(|v| v - 1)))
            .collect();
        (1..=self.b_seq.len()).all(|i| {
            let target = BitVec::unit(n, self.b_seq[i - 1] - 1);
            let sum = |r: &[BitVec]| r.iter().fold(BitVec::zeros(n), |acc, y| acc.xor(y));
            sum(&ys[..i]) == target && sum(&ys[i..]) == target
        })
    }
}

pub fn build_xor_chain(a_seq: &[Vertex], b_seq: &[Vertex], interleave: &[usize]) -> Result<CodedStore> {
    Ok(XorChainStore::new(a_seq.to_vec(), b_seq.to_vec(), interleave.to_vec())?.to_coded())
}

/// Support interval `[min, max]`, 1-based.
fn interval(d: &BitVec) -> (usize, usize) {
    (
        d.first_one().expect("nonzero") + 1,
        d.last_one().expect("nonzero") + 1,
    )
}

/// Per-chunk check that every input decoding vector's interval contains the
/// interval of some output decoding vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkAudit {
    pub chunk: Vertex,
    pub input: Vec<(usize, usize)>,
    pub output: Vec<(usize, usize)>,
    pub dominated: bool,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub code: HKCode,
    pub store: CodedStore,
    pub chain: XorChainStore,
    pub audit: Vec<ChunkAudit>,
}

impl Reduction {
    pub fn dominated(&self) -> bool {
        self.audit.iter().all(|a| a.dominated)
    }
}

fn coset_intervals(k: &BitVec, h: &[BitVec]) -> Vec<(usize, usize)> {
    crate::gf2::coset(k, h)
        .iter()
        .filter(|d| !d.is_zero())
        .map(interval)
        .collect()
}

/// Interval-domination audit of `after` against `before`, by coset enumeration.
pub fn audit_domination(before: &HKCode, after: &HKCode) -> Vec<ChunkAudit> {
    (0..before.n())
        .map(|i| {
            let input = coset_intervals(&before.k[i], &before.h);
            let output = coset_intervals(&after.k[i], &after.h);
            let dominated = input
                .iter()
                .all(|&(lo, hi)| output.iter().any(|&(a, b)| lo <= a && b <= hi));
            ChunkAudit {
                chunk: i + 1,
                input,
                output,
                dominated,
            }
        })
        .collect()
}

/// Rewrites a one-redundant code into xor-chain form without lengthening any
/// chunk's best recovery interval.
pub fn reduce_hk_canonical(code: &HKCode) -> Result<Reduction> {
    let (n, m) = (code.n(), code.m());
    if m != n + 1 {
        return Err(Error::InvalidParams(format!(
            "need m = n + 1, got n = {n}, m = {m}"
        )));
    }
    HKCode::new(code.h.clone(), code.k.clone())?;
    let mut h = code.h[0].clone();
    let mut k = code.k.clone();
    // largest left end and smallest right end over the two decoding vectors
    let lo_hi = |v: &BitVec, h: &BitVec| {
        let w = v.xor(h);
        let (a, b) = interval(v);
        let (c, d) = interval(&w);
        (a.max(c), b.min(d))
    };

    let mut rounds = 0;
    while let Some(i) = (0..n).find(|&i| {
        let (mn, mx) = lo_hi(&k[i], &h);
        k[i].count_ones() != 1 && mn <= mx
    }) {
        rounds += 1;
        if rounds > n * m + 1 {
            return Err(Error::Consistency("reduction does not terminate".into()));
        }
        let (mn, _) = lo_hi(&k[i], &h);
        let e = BitVec::unit(m, mn - 1);
        let mut others = Basis::new(m, m);
        others.insert(&h, 0);
        for (j, kj) in k.iter().enumerate() {
            if j != i {
                others.insert(kj, j + 1);
            }
        }
        if !others.contains(&e) {
            k[i] = e;
        } else {
            k[i].xor_assign(&e);
            let (after, _) = lo_hi(&k[i], &h);
            if after <= mn {
                return Err(Error::Consistency(format!(
                    "left end of chunk {} did not advance past {mn}",
                    i + 1
                )));
            }
        }
    }

    // rows sitting on the last t ones of H are flipped onto the first ones
    let ones: Vec<usize> = h.ones().collect();
    for row in k.iter_mut() {
        let sup: Vec<usize> = row.ones().collect();
        let t = sup.len();
        if t < ones.len() && sup == ones[ones.len() - t..] {
            row.xor_assign(&h);
        }
    }

    loop {
        let (hmin, hmax) = interval(&h);
        let pick = (0..n).find_map(|i| {
            (k[i].count_ones() == 1)
                .then(|| k[i].first_one().unwrap())
                .filter(|&j| j + 1 != hmin && j + 1 != hmax)
                .filter(|&j| h.get(j) || (0..n).any(|o| o != i && k[o].get(j)))
                .map(|j| (i, j))
        });
        let Some((i, j)) = pick else { break };
        for (o, row) in k.iter_mut().enumerate() {
            if o != i {
                row.set(j, false);
            }
        }
        h.set(j, false);
    }

    let out = HKCode::new(vec![h], k).map_err(|e| Error::Consistency(format!("reduction lost rank: {e}")))?;
    let store = out
        .to_store()
        .map_err(|e| Error::Consistency(format!("reduced code has no valid store: {e}")))?;
    let chain = XorChainStore::from_coded(&store)
        .map_err(|_| Error::Consistency("reduced store is not an xor chain".into()))?;
    let audit = audit_domination(code, &out);
    Ok(Reduction {
        code: out,
        store,
        chain,
        audit,
    })
}

/// Plain uncoded store from a chain store: chain ends whose far recovery set
/// cannot fit in any needed window are split off, then one chain column is
/// dropped and the rest decoded toward it, keeping the drop with least stretch.
pub fn coded_to_uncoded_2approx(x: &XorChainStore, g: &FileGraph, t: usize) -> Result<UncodedStore> {
    let coded = x.to_coded();
    let report = evaluate_stretch(&Store::Coded(coded), g, t)?;
    let w = report
        .per_path
        .iter()
        .map(|p| p.stretch_window.span())
        .max()
        .unwrap_or(1);
    let n = x.n();
    // slot contents: Some(v) plain, None chain
    let mut slots: Vec<Option<Vertex>> = vec![None; n + 1];
    let mut plain = x.a_seq.iter();
    for (p, slot) in slots.iter_mut().enumerate() {
        if !x.interleave.contains(&(p + 1)) {
            *slot = plain.next().copied();
        }
    }
    let mut pos = x.interleave.clone();
    let mut b = x.b_seq.clone();
    while b.len() > 1 {
        let last = pos.len() - 1;
        if pos[last] - pos[1] >= w {
            slots[pos[0] - 1] = Some(b.remove(0));
            pos.remove(0);
        } else if pos[last - 1] - pos[0] >= w {
            slots[pos[last] - 1] = Some(b.pop().unwrap());
            pos.pop();
        } else {
            break;
        }
    }
    // y_i -> x_{b_i} for i <= s, y_i -> x_{b_{i-1}} past the dropped y_{s+1}
    let mut best: Option<(crate::metrics::Rational, UncodedStore)> = None;
    for s in 0..pos.len() {
        let mut cand = slots.clone();
        for (i, &p) in pos.iter().enumerate() {
            if i < s {
                cand[p - 1] = Some(b[i]);
            } else if i > s {
                cand[p - 1] = Some(b[i - 1]);
            }
        }
        let seq = cand
            .into_iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != pos[s])
            .map(|(_, v)| v.expect("every slot filled"))
            .collect();
        let u = UncodedStore::new(n, seq)?;
        let st = evaluate_stretch(&Store::Uncoded(u.clone()), g, t)?.stretch_metric;
        if best.as_ref().is_none_or(|(b, _)| st < *b) {
            best = Some((st, u));
        }
    }
    // a one-link chain is a duplicated chunk whose copies may sit far apart;
    // re-placing that chunk anywhere is also a valid permutation
    if b.len() == 1 {
        let rest: Vec<Vertex> = slots.iter().flatten().copied().collect();
        for at in 0..=rest.len() {
            let mut seq = rest.clone();
            seq.insert(at, b[0]);
            let u = UncodedStore::new(n, seq)?;
            let st = evaluate_stretch(&Store::Uncoded(u.clone()), g, t)?.stretch_metric;
            if best.as_ref().is_none_or(|(b, _)| st < *b) {
                best = Some((st, u));
            }
        }
    }
    Ok(best.expect("chain is nonempty").1)
}

/// Kuhn's augmenting-path matching of chunks to columns of their recovery set.
fn perfect_matching(n: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn augment(u: usize, sets: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &c in &sets[u] {
            if !std::mem::replace(&mut seen[c], true)
                && (owner[c].is_none() || augment(owner[c].unwrap(), sets, seen, owner))
            {
                owner[c] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        if !augment(u, sets, &mut seen, &mut owner) {
            return None;
        }
    }
    owner.into_iter().collect()
}

/// Permutation store dominating a non-redundant coded store file by file:
/// every chunk takes a column from its unique minimal recovery set.
pub fn coded_to_uncoded_matching(c: &CodedStore) -> Result<UncodedStore> {
    let n = c.n();
    if c.m() != n {
        return Err(Error::InvalidParams(format!(
            "need m = n, got n = {n}, m = {}",
            c.m()
        )));
    }
    let store = Store::Coded(c.clone());
    let mut sets = Vec::with_capacity(n);
    for i in 1..=n {
        let mut r = minimal_recovery_sets(&store, &[i])?;
        if r.len() != 1 {
            return Err(Error::Consistency(format!(
                "chunk {i} has {} minimal recovery sets",
                r.len()
            )));
        }
        let RecoverySet(pos) = r.remove(0);
        sets.push(pos.into_iter().map(|p| p - 1).collect::<Vec<_>>());
    }
    let owner = perfect_matching(n, &sets)
        .ok_or_else(|| Error::Consistency("reconstruction graph has no perfect matching".into()))?;
    UncodedStore::new(n, owner.into_iter().map(|u| u + 1).collect())
}

/// Drops the single coded column of a one-redundant store (or the later copy of
/// the duplicated chunk when all columns are plain).
pub fn remove_coded_chunk_jump(c: &CodedStore) -> Result<UncodedStore> {
    let n = c.n();
    if c.m() != n + 1 {
        return Err(Error::InvalidParams(format!(
            "need m = n + 1, got n = {n}, m = {}",
            c.m()
        )));
    }
    let coded: Vec<usize> = (0..c.m()).filter(|&j| c.column(j).count_ones() != 1).collect();
    let drop = match coded.as_slice() {
        [j] => *j,
        [] => {
            let mut seen = vec![false; n + 1];
            (0..c.m())
                .find(|&j| std::mem::replace(&mut seen[c.combination(j)[0]], true))
                .expect("n+1 plain columns repeat a chunk")
        }
        more => {
            return Err(Error::InvalidStore(format!(
                "{} coded columns, expected at most one",
                more.len()
            )));
        }
    };
    let seq = (0..c.m())
        .filter(|&j| j != drop)
        .map(|j| c.combination(j)[0])
        .collect();
    UncodedStore::new(n, seq).map_err(|_| Error::Precondition("plain columns alone are lossy".into()))
}

pub const EXAMPLE_STORES: &[&str] = &[
    "example1_coded",
    "example1_uncoded_2dup",
    "example1_uncoded_perm",
    "example2_coded",
    "example1j_coded",
];

/// The worked-example stores, labeled as in [`crate::families`].
pub fn build_example_store(which: &str, big_n: usize) -> Result<Store> {
    let needs_n = which != "example1j_coded";
    if needs_n && big_n == 0 {
        return Err(Error::InvalidParams(format!("{which} needs N >= 1")));
    }
    let r = |lo: usize, hi: usize| (lo..=hi).map(|v| vec![v]).collect::<Vec<_>>();
    let nn = big_n;
    let (a, b) = example1_hubs(nn);
    let (n, combos) = match which {
        "example1_coded" => {
            let mut s = r(1, 2 * nn);
            s.push(vec![a]);
            s.extend(r(2 * nn + 1, 4 * nn));
            s.push(vec![a, b]);
            s.extend(r(4 * nn + 1, 6 * nn));
            s.push(vec![b]);
            s.extend(r(6 * nn + 1, 8 * nn));
            (8 * nn + 2, s)
        }
        "example1_uncoded_2dup" => {
            let mut s = r(1, 2 * nn);
            s.extend([vec![a], vec![b]]);
            s.extend(r(2 * nn + 1, 6 * nn));
            s.extend([vec![a], vec![b]]);
            s.extend(r(6 * nn + 1, 8 * nn));
            (8 * nn + 2, s)
        }
        "example1_uncoded_perm" => {
            let mut s = r(1, 3 * nn);
            s.push(vec![a]);
            s.extend(r(3 * nn + 1, 5 * nn));
            s.push(vec![b]);
            s.extend(r(5 * nn + 1, 8 * nn));
            (8 * nn + 2, s)
        }
        "example2_coded" => {
            let hub = |i: usize| example2_hub(nn, i);
            let mut s = r(1, 2 * nn);
            for i in 1..=nn + 1 {
                let mut y: Vec<Vertex> = Vec::new();
                if i > 1 {
                    y.push(hub(i - 1));
                }
                if i <= nn {
                    y.push(hub(i));
                }
                y.dedup();
                s.push(y);
                if i <= nn {
                    s.push(vec![2 * nn + i]);
                }
            }
            s.extend(r(3 * nn + 1, 5 * nn));
            (6 * nn, s)
        }
        "example1j_coded" => {
            let (a, b) = (EXAMPLE1J_A, EXAMPLE1J_B);
            (
                8,
                vec![
                    vec![1],
                    vec![a],
                    vec![2],
                    vec![3],
                    vec![a, b],
                    vec![4],
                    vec![5],
                    vec![b],
                    vec![6],
                ],
            )
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let c = CodedStore::from_combinations(n, &combos)?;
    Ok(match c.as_uncoded() {
        Some(u) => Store::Uncoded(u),
        None => Store::Coded(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    /// Input matrix of the worked reduction; rows 2..6 are `K(1)..K(5)`.
    pub(crate) fn designed_code() -> HKCode {
        HKCode::new(
            vec![bits("011011")],
            ["100000", "001011", "100001", "001100", "000101"]
                .iter()
                .map(|s| bits(s))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn designed_code_reduction() {
        let red = reduce_hk_canonical(&designed_code()).unwrap();
        assert_eq!(red.code.h, vec![bits("010011")]);
        let k: Vec<String> = red.code.k.iter().map(|r| r.to_bitstring()).collect();
        assert_eq!(k, ["100000", "010000", "010010", "001000", "000100"]);
        let combos: Vec<Vec<Vertex>> = (0..6).map(|j| red.store.combination(j)).collect();
        assert_eq!(
            combos,
            vec![vec![1], vec![2], vec![4], vec![5], vec![2, 3], vec![3]]
        );
        assert!(red.dominated());
        assert_eq!(red.chain.b_seq, vec![2, 3]);
    }

    #[test]
    fn chain_roundtrip_and_identities() {
        let x = XorChainStore::new(vec![1, 4], vec![2, 3, 5], vec![2, 3, 5, 6]).unwrap();
        assert!(x.chain_identities_hold());
        let c = x.to_coded();
        assert_eq!(XorChainStore::from_coded(&c).unwrap(), x);
        let red = reduce_hk_canonical(&HKCode::from_store(&c).unwrap()).unwrap();
        assert_eq!(red.store, c);
    }

    #[test]
    fn degenerate_chain_duplicates() {
        let c = build_xor_chain(&[1, 3], &[2], &[1, 3]).unwrap();
        let combos: Vec<Vec<Vertex>> = (0..4).map(|j| c.combination(j)).collect();
        assert_eq!(combos, vec![vec![2], vec![1], vec![2], vec![3]]);
        assert!(build_xor_chain(&[1, 2], &[2], &[1, 3]).is_err());
    }

    #[test]
    fn generator_roundtrip() {
        let c = build_example_store("example1j_coded", 0).unwrap().to_coded();
        let hk = HKCode::from_store(&c).unwrap();
        assert_eq!(hk.to_store().unwrap(), c);
    }

    #[test]
    fn matching_small() {
        let c = CodedStore::from_combinations(2, &[vec![1], vec![1, 2]]).unwrap();
        assert_eq!(coded_to_uncoded_matching(&c).unwrap().sequence(), &[1, 2]);
        let id = CodedStore::from_combinations(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(coded_to_uncoded_matching(&id).unwrap().sequence(), &[1, 2, 3]);
    }

    #[test]
    fn removal() {
        let c = build_example_store("example1j_coded", 0).unwrap().to_coded();
        assert_eq!(
            remove_coded_chunk_jump(&c).unwrap().sequence(),
            &[1, 7, 2, 3, 4, 5, 8, 6]
        );
        let dup = CodedStore::from_combinations(2, &[vec![1], vec![2], vec![1]]).unwrap();
        assert_eq!(remove_coded_chunk_jump(&dup).unwrap().sequence(), &[1, 2]);
    }

    #[test]
    fn example_store_shapes() {
        let s = build_example_store("example1_coded", 1).unwrap();
        assert_eq!(s.m(), 11);
        let c = s.to_coded();
        assert_eq!(c.combination(5), vec![9, 10]);
        assert_eq!(build_example_store("example1_uncoded_2dup", 1).unwrap().m(), 12);
        assert_eq!(build_example_store("example1j_coded", 0).unwrap().m(), 9);
        let e2 = build_example_store("example2_coded", 3).unwrap();
        assert_eq!(e2.m(), 19);
        let x = XorChainStore::from_coded(&e2.to_coded()).unwrap();
        assert_eq!(x.b_seq, vec![16, 17, 18]);
        assert!(x.chain_identities_hold());
        assert!(build_example_store("nope", 1).is_err());
    }
}
