//! Stores in which every file occupies one contiguous window.

use crate::error::{Error, Result};
use crate::graph::{enumerate_paths, FileGraph, Vertex};
use crate::metrics::{evaluate_stretch, Rational};
use crate::store::{CodedStore, Store, UncodedStore};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroFragT2 {
    pub store: UncodedStore,
    pub length: usize,
    /// `|E| + 1 + ceil(|V_odd| / 2)`
    pub formula_upper_bound: usize,
    pub added_edges: Vec<(Vertex, Vertex)>,
}

/// Closed form `|E| + 1 + ceil(|V_odd|/2)`.
pub fn formula_upper_bound(g: &FileGraph) -> usize {
    let odd = (1..=g.n()).filter(|&v| g.degree(v) % 2 == 1).count();
    g.edge_count() + 1 + odd.div_ceil(2)
}

/// Eulerian trail of a multigraph given as an edge list, from `start`,
/// always leaving along the smallest unused neighbour.
fn euler_trail(n: usize, edges: &[(Vertex, Vertex)], start: Vertex) -> Vec<Vertex> {
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n + 1];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n + 1];
    let mut stack = vec![start];
    let mut trail = Vec::with_capacity(edges.len() + 1);
    while let Some(&u) = stack.last() {
        while next[u] < adj[u].len() && used[adj[u][next[u]].1] {
            next[u] += 1;
        }
        if next[u] == adj[u].len() {
            trail.push(u);
            stack.pop();
        } else {
            let (v, id) = adj[u][next[u]];
            used[id] = true;
            stack.push(v);
        }
    }
    trail.reverse();
    trail
}

/// Shortest store holding every edge as two adjacent positions: odd vertices
/// beyond the first two are paired by extra edges, then an Eulerian trail is
/// read off each component.
pub fn zero_frag_t2(g: &FileGraph) -> Result<ZeroFragT2> {
    if g.n() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let mut seq = Vec::new();
    let mut added_edges = Vec::new();
    for comp in g.components() {
        let mut edges: Vec<(Vertex, Vertex)> =
            g.edges().filter(|(u, _)| comp.binary_search(u).is_ok()).collect();
        let odd: Vec<Vertex> = comp.iter().copied().filter(|&v| g.degree(v) % 2 == 1).collect();
        for pair in odd.get(2..).unwrap_or(&[]).chunks(2) {
            edges.push((pair[0], pair[1]));
            added_edges.push((pair[0], pair[1]));
        }
        let start = odd.first().copied().unwrap_or(comp[0]);
        seq.extend(euler_trail(g.n(), &edges, start));
    }
    let store = UncodedStore::new(g.n(), seq)?;
    Ok(ZeroFragT2 {
        length: store.m(),
        store,
        formula_upper_bound: formula_upper_bound(g),
        added_edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroFragGeneral {
    pub store: UncodedStore,
    /// `|P(G, <= t)|`
    pub path_count: usize,
    /// `|P| / t`
    pub lower_bound: Rational,
    /// `t |P|`
    pub upper_bound: usize,
}

/// Concatenates the paths of `P(G, <= t)` that cannot be extended at either end.
pub fn zero_frag_general(g: &FileGraph, t: usize) -> Result<ZeroFragGeneral> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let paths = enumerate_paths(g, t);
    let extendable = |p: &[Vertex]| {
        p.len() < t
            && [p[0], p[p.len() - 1]]
                .iter()
                .any(|&e| g.neighbors(e).iter().any(|w| !p.contains(w)))
    };
    let seq: Vec<Vertex> = paths
        .iter()
        .filter(|p| !extendable(p.vertices()))
        .flat_map(|p| p.vertices().iter().copied())
        .collect();
    let path_count = paths.len();
    Ok(ZeroFragGeneral {
        store: UncodedStore::new(g.n(), seq)?,
        path_count,
        lower_bound: Rational::new(path_count as u64, t as u64),
        upper_bound: t * path_count,
    })
}

/// Uncoded store with stretch 1 at `t = 2` from a coded one: a two-chunk column
/// next to one of its chunks becomes the other chunk, other coded columns go.
/// Copies of the last chunk are appended so the length is unchanged.
/// Only edge files are required to be unfragmented on input.
pub fn decode_zero_frag_coded_t2(c: &CodedStore, g: &FileGraph) -> Result<UncodedStore> {
    let report = evaluate_stretch(&Store::Coded(c.clone()), g, 2)?;
    let one = Rational::from_integer(1);
    if let Some(p) = report
        .per_path
        .iter()
        .find(|p| p.path.len() == 2 && p.stretch != one)
    {
        return Err(Error::Precondition(format!(
            "edge {:?} is fragmented (stretch {})",
            p.path.vertices(),
            p.stretch
        )));
    }
    let unit = |j: usize| -> Option<Vertex> {
        let col = c.column(j);
        (col.count_ones() == 1).then(|| col.first_one().unwrap() + 1)
    };
    let mut seq = Vec::with_capacity(c.m());
    for j in 0..c.m() {
        let combo = c.combination(j);
        match combo.len() {
            1 => seq.push(combo[0]),
            2 => {
                let other = |x: Vertex| if x == combo[0] { combo[1] } else { combo[0] };
                let side = [j.checked_sub(1), Some(j + 1).filter(|&k| k < c.m())]
                    .into_iter()
                    .flatten()
                    .find_map(|k| unit(k).filter(|u| combo.contains(u)));
                if let Some(u) = side {
                    seq.push(other(u));
                }
            }
            _ => {}
        }
    }
    if let Some(&last) = seq.last() {
        seq.resize(c.m(), last);
    }
    UncodedStore::new(c.n(), seq)
        .map_err(|_| Error::Precondition("a chunk on no edge is stored only in coded form".into()))
}
