//! Exhaustive ground truth for small instances. Every search refuses inputs
//! past its size guard unless the guard is lifted.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{enumerate_paths, FileGraph, RootedTree, Vertex};
use crate::jump_tree::UPathDecomposition;
use crate::metrics::Rational;

pub const GUARD_ENV: &str = "DEDUP_LAYOUT_GUARD_OVERRIDE";
pub const BANDWIDTH_MAX_N: usize = 10;
pub const METRIC_MAX_N: usize = 8;
pub const ZERO_FRAG_MAX_N: usize = 6;
pub const UF_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub override_guard: bool,
    /// worker threads; 0 uses the rayon default
    pub jobs: usize,
}

impl OracleOptions {
    /// Reads the guard override from the environment.
    pub fn from_env() -> Self {
        OracleOptions {
            override_guard: std::env::var(GUARD_ENV).is_ok_and(|v| v == "1"),
            jobs: 0,
        }
    }

    fn guard(&self, what: &'static str, limit: usize, got: usize) -> Result<()> {
        if got > limit && !self.override_guard {
            return Err(Error::Guard { what, limit, got });
        }
        Ok(())
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.jobs == 0 {
            return f();
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

/// Minimum over vertex orders of the largest edge displacement.
pub fn exact_bandwidth(g: &FileGraph, opts: &OracleOptions) -> Result<usize> {
    let n = g.n();
    opts.guard("exact_bandwidth", BANDWIDTH_MAX_N, n)?;
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v + 1).iter().map(|w| w - 1).collect())
        .collect();
    let best = AtomicU64::new(n as u64);
    // reversal symmetry: vertex 1 sits in the left half
    let half = (n - 1) / 2;

    fn dfs(adj: &[Vec<usize>], pos: &mut [usize], depth: usize, half: usize, best: &AtomicU64) {
        let n = adj.len();
        let b = best.load(Ordering::Relaxed) as usize;
        if depth == n {
            let bw = (0..n)
                .flat_map(|v| adj[v].iter().map(move |&w| (v, w)))
                .map(|(v, w)| pos[v].abs_diff(pos[w]))
                .max()
                .unwrap_or(0);
            best.fetch_min(bw as u64, Ordering::Relaxed);
            return;
        }
        if depth > half && pos[0] == usize::MAX {
            return;
        }
        for v in 0..n {
            if pos[v] != usize::MAX
                || adj[v]
                    .iter()
                    .any(|&w| pos[w] != usize::MAX && depth - pos[w] >= b)
            {
                continue;
            }
            pos[v] = depth;
            // a placed vertex with an unplaced neighbour stretches at least to the next slot
            let dead = (0..n).any(|w| {
                pos[w] != usize::MAX
                    && depth + 1 - pos[w] >= b
                    && adj[w].iter().any(|&u| pos[u] == usize::MAX)
            });
            if !dead {
                dfs(adj, pos, depth + 1, half, best);
            }
            pos[v] = usize::MAX;
        }
    }

    opts.run(|| {
        (0..n).into_par_iter().for_each(|first| {
            if first != 0 && half == 0 {
                return;
            }
            let mut pos = vec![usize::MAX; n];
            pos[first] = 0;
            dfs(&adj, &mut pos, 1, half, &best);
        })
    });
    Ok(best.into_inner() as usize)
}

/// Distinct vertex sets of `P(G, <= t)` as bitmasks over chunk ids minus one.
fn path_masks(g: &FileGraph, t: usize) -> Vec<u32> {
    let mut m: Vec<u32> = enumerate_paths(g, t)
        .iter()
        .map(|p| p.vertices().iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)))
        .collect();
    m.sort_unstable();
    m.dedup();
    m
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Stretch,
    Jump,
}

fn runs_of(mask: u32) -> u32 {
    (mask & !(mask << 1)).count_ones()
}

/// Window span and run count of one path on a finished store; a duplicated
/// chunk may be served by either copy.
fn score(pm: u32, dup_positions: Option<(u32, u32)>, obj: Objective) -> u64 {
    let one = |m: u32| match obj {
        Objective::Stretch => (32 - m.leading_zeros() - m.trailing_zeros()) as u64,
        Objective::Jump => runs_of(m) as u64,
    };
    match dup_positions {
        Some((a, b)) if pm & a != 0 => one(pm & !a).min(one(pm & !b)),
        _ => one(pm),
    }
}

struct MetricSearch {
    n: usize,
    m: usize,
    paths: Vec<u32>,
    lens: Vec<u64>,
    dup: Option<usize>,
    obj: Objective,
    /// best value as numerator over `scale` (`scale` = lcm of path lengths for stretch)
    best: AtomicU64,
    scale: u64,
}

impl MetricSearch {
    fn value(&self, num: u64, len: u64) -> u64 {
        match self.obj {
            Objective::Stretch => num * (self.scale / len),
            Objective::Jump => num,
        }
    }

    fn dfs(&self, seq: &mut Vec<usize>, left: &mut [u8], pms: &mut Vec<u32>) {
        let depth = seq.len();
        let best = self.best.load(Ordering::Relaxed);
        if depth == self.m {
            let dup_pos = self.dup.map(|d| {
                let mut it = (0..self.m).filter(|&j| seq[j] == d);
                (1u32 << it.next().unwrap(), 1u32 << it.next().unwrap())
            });
            let worst = self
                .paths
                .iter()
                .zip(&self.lens)
                .zip(pms.iter())
                .map(|((_, &len), &pm)| self.value(score(pm, dup_pos, self.obj), len))
                .max()
                .unwrap_or(0);
            self.best.fetch_min(worst, Ordering::Relaxed);
            return;
        }
        for c in 0..self.n {
            if left[c] == 0 {
                continue;
            }
            left[c] -= 1;
            seq.push(c);
            let mut dead = false;
            let saved: Vec<u32> = pms.clone();
            for (i, &p) in self.paths.iter().enumerate() {
                if p >> c & 1 == 1 {
                    pms[i] |= 1 << depth;
                }
                // files holding the duplicated chunk are only scored when complete
                let pm = pms[i];
                if pm == 0 || self.dup.is_some_and(|d| p >> d & 1 == 1) {
                    continue;
                }
                let placed = pm.count_ones() as u64;
                let bound = match self.obj {
                    Objective::Jump => runs_of(pm) as u64,
                    Objective::Stretch => {
                        let unplaced = self.lens[i] - placed;
                        let last = if unplaced == 0 {
                            31 - pm.leading_zeros() as u64
                        } else {
                            depth as u64 + unplaced
                        };
                        last + 1 - pm.trailing_zeros() as u64
                    }
                };
                if self.value(bound, self.lens[i]) >= best {
                    dead = true;
                    break;
                }
            }
            if !dead {
                self.dfs(seq, left, pms);
            }
            *pms = saved;
            seq.pop();
            left[c] += 1;
        }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn exact_metric(g: &FileGraph, t: usize, m: usize, obj: Objective, opts: &OracleOptions) -> Result<u64> {
    let n = g.n();
    let what = if obj == Objective::Stretch {
        "exact_stretch"
    } else {
        "exact_jump"
    };
    opts.guard(what, METRIC_MAX_N, n)?;
    if n == 0 || t == 0 {
        return Err(Error::InvalidParams("need n >= 1 and t >= 1".into()));
    }
    if m < n || m > n + 1 {
        return Err(Error::InvalidParams(format!(
            "uncoded search supports m in {n}..={}, got {m}",
            n + 1
        )));
    }
    if m > 31 {
        return Err(Error::Guard {
            what,
            limit: 31,
            got: m,
        });
    }
    let paths = path_masks(g, t);
    let lens: Vec<u64> = paths.iter().map(|p| p.count_ones() as u64).collect();
    let scale = lens.iter().fold(1, |a, &l| lcm(a, l));
    let dups: Vec<Option<usize>> = if m == n {
        vec![None]
    } else {
        (0..n).map(Some).collect()
    };
    let starts: Vec<(Option<usize>, usize)> =
        dups.iter().flat_map(|&d| (0..n).map(move |c| (d, c))).collect();
    let init = match obj {
        Objective::Stretch => m as u64 * scale + 1,
        Objective::Jump => m as u64 + 1,
    };
    let best = opts.run(|| {
        let shared = AtomicU64::new(init);
        starts.par_iter().for_each(|&(dup, first)| {
            let search = MetricSearch {
                n,
                m,
                paths: paths.clone(),
                lens: lens.clone(),
                dup,
                obj,
                best: AtomicU64::new(shared.load(Ordering::Relaxed)),
                scale,
            };
            let mut left = vec![1u8; n];
            if let Some(d) = dup {
                left[d] = 2;
            }
            left[first] -= 1;
            let mut seq = vec![first];
            let mut pms: Vec<u32> = paths
                .iter()
                .map(|&p| p & (1 << first) != 0)
                .map(u32::from)
                .collect();
            search.dfs(&mut seq, &mut left, &mut pms);
            shared.fetch_min(search.best.into_inner(), Ordering::Relaxed);
        });
        shared.into_inner()
    });
    Ok(best)
}

/// Smallest stretch metric over uncoded stores of length `m` (`n` or `n + 1`).
pub fn exact_stretch(g: &FileGraph, t: usize, m: usize, opts: &OracleOptions) -> Result<Rational> {
    let scale = path_masks(g, t)
        .iter()
        .fold(1, |a, p| lcm(a, p.count_ones() as u64));
    let v = exact_metric(g, t, m, Objective::Stretch, opts)?;
    Ok(Rational::new(v, scale))
}

/// Smallest jump metric over uncoded stores of length `m` (`n` or `n + 1`).
pub fn exact_jump(g: &FileGraph, t: usize, m: usize, opts: &OracleOptions) -> Result<usize> {
    Ok(exact_metric(g, t, m, Objective::Jump, opts)? as usize)
}

/// Shortest uncoded store in which every file fills a window of its own length.
pub fn exact_zero_frag_length(g: &FileGraph, t: usize, opts: &OracleOptions) -> Result<usize> {
    let n = g.n();
    opts.guard("exact_zero_frag_length", ZERO_FRAG_MAX_N, n)?;
    if n == 0 || t == 0 {
        return Err(Error::InvalidParams("need n >= 1 and t >= 1".into()));
    }
    let paths = path_masks(g, t);
    let t = paths.iter().map(|p| p.count_ones() as usize).max().unwrap_or(1);
    let index: std::collections::HashMap<u32, usize> =
        paths.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let by_len: Vec<usize> = (0..=t)
        .map(|l| paths.iter().filter(|p| p.count_ones() as usize == l).count())
        .collect();

    struct Zf<'a> {
        n: usize,
        t: usize,
        m: usize,
        index: &'a std::collections::HashMap<u32, usize>,
    }
    impl Zf<'_> {
        fn dfs(&self, seq: &mut Vec<usize>, covered: &mut [bool], open: &mut [usize]) -> bool {
            let d = seq.len();
            if open.iter().all(|&c| c == 0) {
                return true;
            }
            if d == self.m {
                return false;
            }
            // each further position ends one window of each length
            if open.iter().any(|&c| c > self.m - d) {
                return false;
            }
            for c in 0..self.n {
                if seq.last() == Some(&c) {
                    continue;
                }
                seq.push(c);
                let mut newly = Vec::new();
                let mut mask = 0u32;
                for l in 1..=self.t.min(seq.len()) {
                    let v = seq[seq.len() - l];
                    if mask >> v & 1 == 1 {
                        break;
                    }
                    mask |= 1 << v;
                    if let Some(&i) = self.index.get(&mask) {
                        if !covered[i] {
                            covered[i] = true;
                            open[l] -= 1;
                            newly.push((i, l));
                        }
                    }
                }
                let found = self.dfs(seq, covered, open);
                for (i, l) in newly {
                    covered[i] = false;
                    open[l] += 1;
                }
                seq.pop();
                if found {
                    return true;
                }
            }
            false
        }
    }

    let lower = (1..=t)
        .map(|l| if by_len[l] == 0 { 0 } else { by_len[l] + l - 1 })
        .max()
        .unwrap_or(n)
        .max(n);
    let mut m = lower;
    loop {
        let zf = Zf {
            n,
            t,
            m,
            index: &index,
        };
        let found = opts.run(|| {
            (0..n).into_par_iter().any(|first| {
                let mut covered = vec![false; paths.len()];
                let mut open = by_len.clone();
                if let Some(&i) = index.get(&(1 << first)) {
                    covered[i] = true;
                    open[1] -= 1;
                }
                zf.dfs(&mut vec![first], &mut covered, &mut open)
            })
        });
        if found {
            return Ok(m);
        }
        m += 1;
    }
}

/// Smallest largest path number over every unidirectional path decomposition.
pub fn exact_min_max_uf(tree: &RootedTree, opts: &OracleOptions) -> Result<usize> {
    let n = tree.n();
    opts.guard("exact_min_max_uf", UF_MAX_N, n)?;
    // a decomposition is a choice, per vertex, of at most one child continuing its path
    let choices: Vec<Vec<Option<Vertex>>> = (1..=n)
        .map(|v| {
            std::iter::once(None)
                .chain(tree.children(v).iter().copied().map(Some))
                .collect()
        })
        .collect();
    let mut pick = vec![0usize; n];
    let mut best = usize::MAX;
    loop {
        let mut up = vec![false; n + 1];
        for v in 1..=n {
            if let Some(c) = choices[v - 1][pick[v - 1]] {
                up[c] = true;
            }
        }
        let mut paths = Vec::new();
        for bottom in 1..=n {
            let continued = choices[bottom - 1][pick[bottom - 1]].is_some();
            if continued {
                continue;
            }
            let mut p = vec![bottom];
            let mut cur = bottom;
            while up[cur] {
                cur = tree.parent(cur).unwrap();
                p.push(cur);
            }
            paths.push(p);
        }
        let d = UPathDecomposition::new(tree, paths).expect("choices give a decomposition");
        best = best.min(d.max_path_number(tree));
        let mut i = 0;
        while i < n {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle_odd, multiply};

    fn opts() -> OracleOptions {
        OracleOptions::default()
    }

    fn path_graph(n: usize) -> FileGraph {
        FileGraph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> FileGraph {
        FileGraph::new(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn bandwidth_small() {
        assert_eq!(exact_bandwidth(&path_graph(6), &opts()).unwrap(), 1);
        assert_eq!(
            exact_bandwidth(&cycle_odd(5).unwrap().to_file_graph(), &opts()).unwrap(),
            2
        );
        assert_eq!(exact_bandwidth(&complete(4), &opts()).unwrap(), 3);
        assert!(exact_bandwidth(&multiply(2, 8).unwrap().to_file_graph(), &opts()).unwrap() >= 2);
        assert!(matches!(
            exact_bandwidth(&path_graph(11), &opts()),
            Err(Error::Guard { .. })
        ));
        let lifted = OracleOptions {
            override_guard: true,
            jobs: 2,
        };
        assert_eq!(exact_bandwidth(&path_graph(11), &lifted).unwrap(), 1);
    }

    #[test]
    fn metrics_small() {
        let p3 = path_graph(3);
        assert_eq!(
            exact_stretch(&p3, 2, 3, &opts()).unwrap(),
            Rational::from_integer(1)
        );
        assert_eq!(exact_jump(&p3, 2, 3, &opts()).unwrap(), 1);
        let c5 = cycle_odd(5).unwrap().to_file_graph();
        assert_eq!(exact_stretch(&c5, 2, 5, &opts()).unwrap(), Rational::new(3, 2));
        assert_eq!(exact_jump(&complete(3), 2, 3, &opts()).unwrap(), 2);
        assert_eq!(exact_jump(&complete(3), 2, 4, &opts()).unwrap(), 1);
        assert!(exact_jump(&p3, 2, 5, &opts()).is_err());
    }

    #[test]
    fn zero_frag_small() {
        assert_eq!(exact_zero_frag_length(&path_graph(3), 2, &opts()).unwrap(), 3);
        assert_eq!(exact_zero_frag_length(&complete(3), 2, &opts()).unwrap(), 4);
        let claw = FileGraph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(exact_zero_frag_length(&claw, 2, &opts()).unwrap(), 5);
    }

    #[test]
    fn uf_small() {
        let p = RootedTree::from_edges(4, &[(1, 2), (2, 3), (3, 4)], 1).unwrap();
        assert_eq!(exact_min_max_uf(&p, &opts()).unwrap(), 1);
        let star = RootedTree::from_edges(4, &[(1, 2), (1, 3), (1, 4)], 1).unwrap();
        assert_eq!(exact_min_max_uf(&star, &opts()).unwrap(), 2);
    }
}
