//! Jump-metric layouts for trees: min-max unidirectional path decompositions,
//! their linearization, decompositions read off a store, and caterpillar layouts.

use crate::error::{Error, Result};
use crate::graph::{RootedTree, Vertex};
use crate::metrics::runs;
use crate::store::UncodedStore;

/// Disjoint child-to-parent paths covering every vertex, each listed bottom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPathDecomposition {
    pub paths: Vec<Vec<Vertex>>,
}

impl UPathDecomposition {
    pub fn new(tree: &RootedTree, mut paths: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = vec![false; tree.n() + 1];
        for p in &paths {
            if !tree.is_unidirectional(p) {
                return Err(Error::InvalidParams(format!(
                    "{p:?} is not a child-to-parent path"
                )));
            }
            for &v in p {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidParams(format!("vertex {v} is in two paths")));
                }
            }
        }
        if let Some(v) = (1..=tree.n()).find(|&v| !seen[v]) {
            return Err(Error::InvalidParams(format!("vertex {v} is not covered")));
        }
        paths.sort_by_key(|p| *p.iter().min().unwrap());
        Ok(UPathDecomposition { paths })
    }

    /// Index of the path holding each vertex.
    pub fn owner(&self, n: usize) -> Vec<usize> {
        let mut own = vec![usize::MAX; n + 1];
        for (i, p) in self.paths.iter().enumerate() {
            for &v in p {
                own[v] = i;
            }
        }
        own
    }

    /// Number of decomposition paths meeting the vertex set `p`.
    pub fn path_number(&self, n: usize, p: &[Vertex]) -> usize {
        let own = self.owner(n);
        let mut hit: Vec<usize> = p.iter().map(|&v| own[v]).collect();
        hit.sort_unstable();
        hit.dedup();
        hit.len()
    }

    /// Largest path number over unidirectional paths; leaf-to-root paths suffice.
    pub fn max_path_number(&self, tree: &RootedTree) -> usize {
        let own = self.owner(tree.n());
        (1..=tree.n())
            .filter(|&v| tree.children(v).is_empty())
            .map(|leaf| {
                let climb = tree.climb(leaf, tree.root());
                1 + climb.windows(2).filter(|w| own[w[0]] != own[w[1]]).count()
            })
            .max()
            .unwrap_or(0)
    }
}

/// Bottom-up decomposition: each vertex extends the path of the child whose
/// subtree value is largest (ties to the smaller label).
pub fn min_max_decomposition(tree: &RootedTree) -> (UPathDecomposition, usize) {
    let n = tree.n();
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(tree.children(v));
    }
    let mut uf = vec![0usize; n + 1];
    let mut path_of = vec![usize::MAX; n + 1];
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    for &v in order.iter().rev() {
        let mut kids = tree.children(v).to_vec();
        kids.sort_by_key(|&c| (std::cmp::Reverse(uf[c]), c));
        match kids.as_slice() {
            [] => {
                uf[v] = 1;
                path_of[v] = paths.len();
                paths.push(vec![v]);
            }
            [first, rest @ ..] => {
                uf[v] = rest.first().map_or(uf[*first], |c| uf[*first].max(uf[*c] + 1));
                path_of[v] = path_of[*first];
                paths[path_of[v]].push(v);
            }
        }
    }
    let d = UPathDecomposition::new(tree, paths).expect("construction covers the tree");
    (d, uf[tree.root()])
}

/// Concatenates the paths, smallest label first, each written bottom to top.
pub fn linearize_decomposition(d: &UPathDecomposition) -> UncodedStore {
    let seq: Vec<Vertex> = d.paths.iter().flatten().copied().collect();
    UncodedStore::from_sequence(seq).expect("decomposition covers 1..=n")
}

/// Runs of store positions holding the vertices of `p`.
pub fn indicator_runs(s: &UncodedStore, p: &[Vertex]) -> usize {
    let mut inside = vec![false; s.n() + 1];
    for &v in p {
        inside[v] = true;
    }
    let pos: Vec<usize> = (1..=s.m()).filter(|&j| inside[s.sequence()[j - 1]]).collect();
    runs(&pos)
}

/// Largest indicator run count over unidirectional paths.
pub fn max_unidirectional_jump(tree: &RootedTree, s: &UncodedStore) -> usize {
    tree.unidirectional_paths()
        .iter()
        .map(|p| indicator_runs(s, p))
        .max()
        .unwrap_or(0)
}

/// Cuts `s` into maximal runs lying on one unidirectional path, covers each by
/// its shortest such path, then trims shared tops until the paths are disjoint.
pub fn decomposition_from_store(tree: &RootedTree, s: &UncodedStore) -> Result<UPathDecomposition> {
    let n = tree.n();
    if s.n() != n || !s.is_permutation() {
        return Err(Error::Precondition(
            "store must be a permutation of the tree's vertices".into(),
        ));
    }
    let seq = s.sequence();
    // a vertex set lies on one unidirectional path iff it is an ancestor chain
    let mut covers: Vec<(Vertex, Vertex)> = Vec::new();
    let (mut low, mut high) = (seq[0], seq[0]);
    for &v in &seq[1..] {
        if tree.is_ancestor(v, low) && tree.is_ancestor(high, v) {
            continue;
        } else if tree.is_ancestor(low, v) {
            low = v;
        } else if tree.is_ancestor(v, high) {
            high = v;
        } else {
            covers.push((low, high));
            (low, high) = (v, v);
        }
    }
    covers.push((low, high));
    let mut paths: Vec<Vec<Vertex>> = covers.iter().map(|&(lo, hi)| tree.climb(lo, hi)).collect();
    loop {
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, p) in paths.iter().enumerate() {
            for &v in p {
                holders[v].push(i);
            }
        }
        let Some(c) = (1..=n)
            .filter(|&v| holders[v].len() > 1)
            .min_by_key(|&v| (tree.depth(v), v))
        else {
            break;
        };
        let j = *holders[c]
            .iter()
            .rev()
            .find(|&&i| paths[i].last() == Some(&c))
            .ok_or_else(|| Error::Consistency(format!("shared vertex {c} tops no path")))?;
        paths[j].pop();
        if paths[j].is_empty() {
            paths.remove(j);
        }
    }
    UPathDecomposition::new(tree, paths)
}

/// Body path with hairs hanging off it, each hair listed from its attachment
/// end outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caterpillar {
    pub body: Vec<Vertex>,
    /// `(body index, hair)` ordered along the body
    pub hairs: Vec<(usize, Vec<Vertex>)>,
}

/// Longest path hanging from `from` away from `avoid`, ties to smaller labels.
fn longest_tail(adj: &[Vec<Vertex>], from: Vertex, avoid: &[bool]) -> Vec<Vertex> {
    let mut best: Vec<Vertex> = Vec::new();
    for &w in &adj[from] {
        if avoid[w] {
            continue;
        }
        let mut tail = vec![w];
        let mut prev = from;
        let mut cur = w;
        while let Some(&nx) = adj[cur].iter().find(|&&x| x != prev && !avoid[x]) {
            tail.push(nx);
            prev = cur;
            cur = nx;
        }
        if tail.len() > best.len() {
            best = tail;
        }
    }
    best
}

pub fn caterpillar_of(tree: &RootedTree) -> Result<Caterpillar> {
    let n = tree.n();
    let g = tree.to_file_graph();
    let adj: Vec<Vec<Vertex>> = (0..=n)
        .map(|v| if v == 0 { vec![] } else { g.neighbors(v).to_vec() })
        .collect();
    let branching: Vec<Vertex> = (1..=n).filter(|&v| g.degree(v) >= 3).collect();
    let not_cat = || Error::InvalidGraph("tree is not a caterpillar".into());
    let mut on_body = vec![false; n + 1];
    let mut body: Vec<Vertex> = match branching.as_slice() {
        [] => {
            let end = (1..=n).find(|&v| g.degree(v) <= 1).unwrap_or(1);
            let mut p = vec![end];
            on_body[end] = true;
            p.extend(longest_tail(&adj, end, &on_body));
            p
        }
        [first, ..] => {
            let u = *branching
                .iter()
                .max_by_key(|&&v| (tree.path_between(*first, v).len(), std::cmp::Reverse(v)))
                .unwrap();
            let w = *branching
                .iter()
                .max_by_key(|&&v| (tree.path_between(u, v).len(), std::cmp::Reverse(v)))
                .unwrap();
            let core = tree.path_between(u, w);
            for &v in &core {
                on_body[v] = true;
            }
            if branching.iter().any(|&b| !on_body[b]) {
                return Err(not_cat());
            }
            let mut head = longest_tail(&adj, u, &on_body);
            for &v in &head {
                on_body[v] = true;
            }
            let tail = longest_tail(&adj, w, &on_body);
            head.reverse();
            head.extend(core);
            head.extend(tail);
            head
        }
    };
    for &v in &body {
        on_body[v] = true;
    }
    if body.first() > body.last() {
        body.reverse();
    }
    let mut hairs = Vec::new();
    for (i, &b) in body.iter().enumerate() {
        let mut starts: Vec<Vertex> = adj[b].iter().copied().filter(|&x| !on_body[x]).collect();
        starts.sort_unstable();
        for s in starts {
            let mut hair = vec![s];
            let (mut prev, mut cur) = (b, s);
            while let Some(&nx) = adj[cur].iter().find(|&&x| x != prev) {
                hair.push(nx);
                prev = cur;
                cur = nx;
            }
            hairs.push((i, hair));
        }
    }
    Ok(Caterpillar { body, hairs })
}

/// Hairs in body order, each from its far end inward, then the body.
pub fn caterpillar_layout(tree: &RootedTree) -> Result<UncodedStore> {
    let cat = caterpillar_of(tree)?;
    let mut seq: Vec<Vertex> = Vec::with_capacity(tree.n());
    for (_, hair) in &cat.hairs {
        seq.extend(hair.iter().rev());
    }
    seq.extend(&cat.body);
    UncodedStore::new(tree.n(), seq)
}

/// Two-hair order: first hair inward, second hair outward, so the two hair
/// ends next to the body sit side by side, then the body.
pub fn two_hair_layout(tree: &RootedTree) -> Result<UncodedStore> {
    let cat = caterpillar_of(tree)?;
    let [(_, left), (_, right)] = cat.hairs.as_slice() else {
        return Err(Error::Precondition(format!(
            "need exactly two hairs, found {}",
            cat.hairs.len()
        )));
    };
    let mut seq: Vec<Vertex> = left.iter().rev().copied().collect();
    seq.extend(right);
    seq.extend(&cat.body);
    UncodedStore::new(tree.n(), seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{caterpillar12, caterpillar2, leaves16};
    use crate::graph::enumerate_paths;
    use crate::metrics::evaluate;
    use crate::store::Store;

    fn jump_all(tree: &RootedTree, s: &UncodedStore) -> usize {
        evaluate(&Store::Uncoded(s.clone()), &tree.to_file_graph(), tree.n())
            .unwrap()
            .jump_metric
    }

    fn star(c: usize) -> RootedTree {
        let edges: Vec<_> = (2..=c + 1).map(|v| (1, v)).collect();
        RootedTree::from_edges(c + 1, &edges, 1).unwrap()
    }

    #[test]
    fn path_and_star_values() {
        let p = RootedTree::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)], 1).unwrap();
        let (d, uf) = min_max_decomposition(&p);
        assert_eq!((d.paths.len(), uf), (1, 1));
        assert_eq!(jump_all(&p, &linearize_decomposition(&d)), 1);
        for c in 2..6 {
            let (d, uf) = min_max_decomposition(&star(c));
            assert_eq!(uf, 2);
            assert_eq!(d.max_path_number(&star(c)), 2);
        }
    }

    #[test]
    fn sixteen_leaves_give_sixteen_paths() {
        let t = leaves16();
        let (d, uf) = min_max_decomposition(&t);
        assert_eq!(d.paths.len(), 16);
        assert_eq!(d.max_path_number(&t), uf);
    }

    #[test]
    fn store_decomposition_factor_two() {
        let p = RootedTree::from_edges(4, &[(1, 2), (2, 3), (3, 4)], 1).unwrap();
        let s = UncodedStore::new(4, vec![4, 3, 2, 1]).unwrap();
        let d = decomposition_from_store(&p, &s).unwrap();
        assert_eq!(d.paths, vec![vec![4, 3, 2, 1]]);
        let t = star(5);
        let s = UncodedStore::new(6, vec![6, 5, 4, 3, 2, 1]).unwrap();
        let d = decomposition_from_store(&t, &s).unwrap();
        assert!(d.max_path_number(&t) <= 2 * max_unidirectional_jump(&t, &s));
    }

    #[test]
    fn caterpillars() {
        let t = caterpillar12();
        let cat = caterpillar_of(&t).unwrap();
        assert_eq!(cat.body, (1..=10).collect::<Vec<_>>());
        assert_eq!(cat.hairs.len(), 12);
        assert!(jump_all(&t, &caterpillar_layout(&t).unwrap()) <= 3);
        let t2 = caterpillar2();
        let s = two_hair_layout(&t2).unwrap();
        assert_eq!(s.sequence(), &[1, 2, 6, 7, 10, 9, 8, 3, 4, 5, 11, 12, 13]);
        assert_eq!(jump_all(&t2, &s), 2);
        let line = RootedTree::from_edges(3, &[(2, 1), (2, 3)], 2).unwrap();
        assert_eq!(jump_all(&line, &caterpillar_layout(&line).unwrap()), 1);
        let spider = RootedTree::from_edges(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)], 1).unwrap();
        assert!(caterpillar_of(&spider).is_ok());
        let not_cat = RootedTree::from_edges(
            10,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (2, 6),
                (3, 7),
                (3, 8),
                (4, 9),
                (4, 10),
            ],
            1,
        )
        .unwrap();
        assert!(caterpillar_of(&not_cat).is_err());
    }

    #[test]
    fn lca_split_identity() {
        let t = leaves16();
        let (d, _) = min_max_decomposition(&t);
        for p in enumerate_paths(&t.to_file_graph(), 4) {
            let v = p.vertices();
            let (a, b) = crate::graph::split_unidirectional(&t, v).unwrap();
            let n = t.n();
            assert_eq!(
                d.path_number(n, v) + 1,
                d.path_number(n, &a) + d.path_number(n, &b)
            );
        }
    }
}
