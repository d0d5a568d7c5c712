//! File-model graphs: general graphs, sparse Hamiltonian graphs and rooted trees.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Vertices are labelled `1..=n`.
pub type Vertex = usize;

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileGraph {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl FileGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) outside 1..={n}")));
            }
            if !set.insert(norm(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(FileGraph { n, edges: set, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&norm(u, v))
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }
}

/// A simple path in canonical orientation (first label < last label).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<Vertex>);

impl Path {
    /// Builds a path, reversing it if needed so that it is canonical.
    pub fn canonical(mut vertices: Vec<Vertex>) -> Self {
        if vertices.len() > 1 && vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks adjacency and distinctness against `g`.
    pub fn is_valid_in(&self, g: &FileGraph) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|&v| v >= 1 && v <= g.n() && seen.insert(v))
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// All canonical simple paths with `1..=t` vertices, in lexicographic order.
pub fn enumerate_paths(g: &FileGraph, t: usize) -> Vec<Path> {
    let mut out = Vec::new();
    if t == 0 {
        return out;
    }
    let mut visited = vec![false; g.n() + 1];
    let mut stack = Vec::with_capacity(t);
    for s in 1..=g.n() {
        visited[s] = true;
        stack.push(s);
        dfs_paths(g, t, &mut visited, &mut stack, &mut out);
        stack.pop();
        visited[s] = false;
    }
    out
}

fn dfs_paths(g: &FileGraph, t: usize, visited: &mut [bool], stack: &mut Vec<Vertex>, out: &mut Vec<Path>) {
    if stack.len() == 1 || stack[0] < stack[stack.len() - 1] {
        out.push(Path(stack.clone()));
    }
    if stack.len() == t {
        return;
    }
    let last = stack[stack.len() - 1];
    for &w in g.neighbors(last) {
        if !visited[w] {
            visited[w] = true;
            stack.push(w);
            dfs_paths(g, t, visited, stack, out);
            stack.pop();
            visited[w] = false;
        }
    }
}

/// A line `1..=n` plus arcs, no two arcs sharing a foot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseHamiltonianGraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

impl SparseHamiltonianGraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut feet = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in arcs {
            let (a, b) = norm(u, v);
            if a == 0 || b > n {
                return Err(Error::InvalidGraph(format!("arc ({u},{v}) outside 1..={n}")));
            }
            if b - a <= 1 {
                return Err(Error::InvalidGraph(format!(
                    "arc ({u},{v}) must span more than one line step"
                )));
            }
            if !feet.insert(a) || !feet.insert(b) {
                return Err(Error::InvalidGraph(format!(
                    "arc ({u},{v}) shares a foot with another arc"
                )));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(SparseHamiltonianGraph { n, arcs: list })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs as `(a, b)` with `a < b`, sorted by `a`.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// The other foot of the arc at `v`, if `v` is a foot.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.arcs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Sorted arc feet.
    pub fn feet(&self) -> Vec<Vertex> {
        let mut f: Vec<Vertex> = self.arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
        f.sort_unstable();
        f
    }

    pub fn to_file_graph(&self) -> FileGraph {
        let line = (1..self.n).map(|i| (i, i + 1));
        FileGraph::new(self.n, line.chain(self.arcs.iter().copied()))
            .expect("sparse Hamiltonian graph is a simple graph")
    }
}

/// Splits every line edge in two: `n' = 2n - 1`, arc `{u,v}` becomes `{2u-1, 2v-1}`.
pub fn double_graph(g: &SparseHamiltonianGraph) -> SparseHamiltonianGraph {
    let n = if g.n == 0 { 0 } else { 2 * g.n - 1 };
    SparseHamiltonianGraph::new(n, g.arcs.iter().map(|&(u, v)| (2 * u - 1, 2 * v - 1)))
        .expect("doubling preserves validity")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    n: usize,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn from_parents(n: usize, root: Vertex, parent: &BTreeMap<Vertex, Vertex>) -> Result<Self> {
        if root == 0 || root > n {
            return Err(Error::InvalidGraph(format!("root {root} outside 1..={n}")));
        }
        let mut par = vec![None; n + 1];
        for (&c, &p) in parent {
            if c == 0 || c > n || p == 0 || p > n {
                return Err(Error::InvalidGraph(format!("parent entry {c}->{p} out of range")));
            }
            if c == root {
                return Err(Error::InvalidGraph("root has a parent".into()));
            }
            if c == p {
                return Err(Error::InvalidGraph(format!("vertex {c} is its own parent")));
            }
            par[c] = Some(p);
        }
        if let Some(v) = (1..=n).find(|&v| v != root && par[v].is_none()) {
            return Err(Error::InvalidGraph(format!("vertex {v} has no parent")));
        }
        let mut children = vec![Vec::new(); n + 1];
        for (v, p) in par.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        // BFS from the root detects cycles and disconnection in one pass.
        let mut depth = vec![usize::MAX; n + 1];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut reached = 0;
        while let Some(v) = queue.pop_front() {
            reached += 1;
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                queue.push_back(c);
            }
        }
        if reached != n {
            return Err(Error::InvalidGraph(
                "parent map has a cycle or is disconnected".into(),
            ));
        }
        Ok(RootedTree {
            n,
            root,
            parent: par,
            children,
            depth,
        })
    }

    /// Roots an undirected tree given by its edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)], root: Vertex) -> Result<Self> {
        let g = FileGraph::new(n, edges.iter().copied())?;
        if g.edge_count() + 1 != n || !g.is_connected() {
            return Err(Error::InvalidGraph("edges do not form a tree".into()));
        }
        if root == 0 || root > n {
            return Err(Error::InvalidGraph(format!("root {root} outside 1..={n}")));
        }
        let mut parent = BTreeMap::new();
        let mut stack = vec![root];
        let mut seen = vec![false; n + 1];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent.insert(w, v);
                    stack.push(w);
                }
            }
        }
        Self::from_parents(n, root, &parent)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Children in increasing label order.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn parent_map(&self) -> BTreeMap<Vertex, Vertex> {
        (1..=self.n)
            .filter_map(|v| self.parent[v].map(|p| (v, p)))
            .collect()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n)
            .filter_map(|v| self.parent[v].map(|p| norm(v, p)))
            .collect()
    }

    pub fn to_file_graph(&self) -> FileGraph {
        FileGraph::new(self.n, self.edges()).expect("tree is a simple graph")
    }

    pub fn reroot(&self, root: Vertex) -> Result<Self> {
        Self::from_edges(self.n, &self.edges(), root)
    }

    /// True when `a` is an ancestor of `v` (or equal to it).
    pub fn is_ancestor(&self, a: Vertex, mut v: Vertex) -> bool {
        while self.depth[v] > self.depth[a] {
            v = self.parent[v].expect("non-root has a parent");
        }
        v == a
    }

    pub fn lca(&self, mut u: Vertex, mut v: Vertex) -> Vertex {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        u
    }

    /// Vertices from `v` up to its ancestor `top`, inclusive.
    pub fn climb(&self, mut v: Vertex, top: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        while v != top {
            v = self.parent[v].expect("top must be an ancestor");
            out.push(v);
        }
        out
    }

    /// Tree path between `u` and `v` as a vertex sequence from `u` to `v`.
    pub fn path_between(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let z = self.lca(u, v);
        let mut left = self.climb(u, z);
        let mut right = self.climb(v, z);
        right.pop();
        right.reverse();
        left.extend(right);
        left
    }

    /// All unidirectional (child to parent) paths, singletons included,
    /// listed bottom first.
    pub fn unidirectional_paths(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        for v in 1..=self.n {
            let mut p = vec![v];
            out.push(p.clone());
            let mut cur = v;
            while let Some(par) = self.parent[cur] {
                p.push(par);
                out.push(p.clone());
                cur = par;
            }
        }
        out
    }

    pub fn is_unidirectional(&self, p: &[Vertex]) -> bool {
        !p.is_empty() && p.windows(2).all(|w| self.parent[w[0]] == Some(w[1]))
    }
}

/// Splits a tree path at the lowest common ancestor `z` of its endpoints into
/// `(x..z, y..z)`, both running child to parent.
pub fn split_unidirectional(tree: &RootedTree, p: &[Vertex]) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
    if p.is_empty() || !tree.to_file_graph().has_path(p) {
        return Err(Error::Precondition(format!("{p:?} is not a path in the tree")));
    }
    let x = p[0];
    let y = p[p.len() - 1];
    let z = tree.lca(x, y);
    Ok((tree.climb(x, z), tree.climb(y, z)))
}

impl FileGraph {
    /// True when `p` is a simple path of this graph.
    pub fn has_path(&self, p: &[Vertex]) -> bool {
        Path(p.to_vec()).is_valid_in(self)
    }
}
