//! Named example graphs with pinned labelings.
//!
//! | family        | labeling |
//! |---------------|----------|
//! | `cycle_odd`   | line `1..=n`, arc `{1,n}` |
//! | `rainbow`     | line `1..=n`, arcs `{i, 2k+2-i}` for `i = 1..=k` |
//! | `multiply`    | line `1..=n`, arcs `{i, i*n/k}` for `i = 1..=k` |
//! | `three_arc`   | line `1..=17`, arcs `{2,10} {4,12} {8,16}` |
//! | `example1`    | line `1..=8N`, `a = 8N+1` joined to `1..=6N` and `b`, `b = 8N+2` joined to `2N+1..=8N` |
//! | `example2`    | line `1..=5N`, `b_i = 5N+i` joined to `2i-1..=3N+2i`, the `b_i` form a clique |
//! | `example1j`   | leaves `1,2,3` on `a = 7`, leaves `4,5,6` on `b = 8`, edge `a-b` |
//! | `caterpillar12` | body `1..=10`, two hairs at each of `3..=8` (length 1 at the ends, 2 inside), hair labels from 11 |
//! | `caterpillar2`  | body `1..=7`, hair `8-9-10` at 3, hair `11-12-13` at 5 |
//! | `leaves16`    | three-level tree with 16 leaves rooted at 1 |
//!
//! Trees are rooted at vertex 1.

use crate::error::{Error, Result};
use crate::graph::{FileGraph, RootedTree, SparseHamiltonianGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Graph(FileGraph),
    Sham(SparseHamiltonianGraph),
    Tree(RootedTree),
}

impl Generated {
    pub fn to_file_graph(&self) -> FileGraph {
        match self {
            Generated::Graph(g) => g.clone(),
            Generated::Sham(s) => s.to_file_graph(),
            Generated::Tree(t) => t.to_file_graph(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    /// vertex count (`cycle_odd`, `rainbow`, `multiply`)
    pub n: Option<usize>,
    /// arc count (`rainbow`, `multiply`)
    pub k: Option<usize>,
    /// scale parameter `N` of the two stretch examples
    pub big_n: Option<usize>,
}

pub const FAMILIES: &[&str] = &[
    "cycle_odd",
    "rainbow",
    "multiply",
    "three_arc",
    "example1",
    "example2",
    "example1j",
    "caterpillar12",
    "caterpillar2",
    "leaves16",
];

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("missing parameter {name}")))
}

pub fn gen_example(name: &str, p: &FamilyParams) -> Result<Generated> {
    Ok(match name {
        "cycle_odd" => Generated::Sham(cycle_odd(need(p.n, "n")?)?),
        "rainbow" => {
            let k = need(p.k, "k")?;
            Generated::Sham(rainbow(k, p.n.unwrap_or(2 * k + 1))?)
        }
        "multiply" => Generated::Sham(multiply(need(p.k, "k")?, need(p.n, "n")?)?),
        "three_arc" => Generated::Sham(three_arc()),
        "example1" => Generated::Graph(example1(need(p.big_n, "N")?)?),
        "example2" => Generated::Graph(example2(need(p.big_n, "N")?)?),
        "example1j" => Generated::Tree(example1j()),
        "caterpillar12" => Generated::Tree(caterpillar12()),
        "caterpillar2" => Generated::Tree(caterpillar2()),
        "leaves16" => Generated::Tree(leaves16()),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

pub fn cycle_odd(n: usize) -> Result<SparseHamiltonianGraph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "cycle_odd needs odd n >= 3, got {n}"
        )));
    }
    SparseHamiltonianGraph::new(n, [(1, n)])
}

pub fn rainbow(k: usize, n: usize) -> Result<SparseHamiltonianGraph> {
    if k == 0 || n < 2 * k + 1 {
        return Err(Error::InvalidParams(format!(
            "rainbow needs k >= 1 and n >= 2k+1, got k={k} n={n}"
        )));
    }
    SparseHamiltonianGraph::new(n, (1..=k).map(|i| (i, 2 * k + 2 - i)))
}

pub fn multiply(k: usize, n: usize) -> Result<SparseHamiltonianGraph> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidParams(format!(
            "multiply needs k >= 1 dividing n, got k={k} n={n}"
        )));
    }
    let step = n / k;
    SparseHamiltonianGraph::new(n, (1..=k).map(|i| (i, i * step)))
        .map_err(|e| Error::InvalidParams(format!("multiply(k={k}, n={n}): {e}")))
}

pub fn three_arc() -> SparseHamiltonianGraph {
    SparseHamiltonianGraph::new(17, [(2, 10), (4, 12), (8, 16)]).expect("fixture is valid")
}

/// Labels of the two hub chunks of [`example1`].
pub fn example1_hubs(big_n: usize) -> (Vertex, Vertex) {
    (8 * big_n + 1, 8 * big_n + 2)
}

pub fn example1(big_n: usize) -> Result<FileGraph> {
    if big_n == 0 {
        return Err(Error::InvalidParams("example1 needs N >= 1".into()));
    }
    let (a, b) = example1_hubs(big_n);
    let mut edges: Vec<(Vertex, Vertex)> = (1..8 * big_n).map(|i| (i, i + 1)).collect();
    edges.extend((1..=6 * big_n).map(|i| (i, a)));
    edges.extend((2 * big_n + 1..=8 * big_n).map(|i| (i, b)));
    edges.push((a, b));
    FileGraph::new(8 * big_n + 2, edges)
}

/// Label of `b_i` in [`example2`].
pub fn example2_hub(big_n: usize, i: usize) -> Vertex {
    5 * big_n + i
}

pub fn example2(big_n: usize) -> Result<FileGraph> {
    if big_n == 0 {
        return Err(Error::InvalidParams("example2 needs N >= 1".into()));
    }
    let mut edges: Vec<(Vertex, Vertex)> = (1..5 * big_n).map(|i| (i, i + 1)).collect();
    for i in 1..=big_n {
        let b = example2_hub(big_n, i);
        edges.extend((2 * i - 1..=3 * big_n + 2 * i).map(|j| (j, b)));
        for j in i + 1..=big_n {
            edges.push((b, example2_hub(big_n, j)));
        }
    }
    FileGraph::new(6 * big_n, edges)
}

pub const EXAMPLE1J_A: Vertex = 7;
pub const EXAMPLE1J_B: Vertex = 8;

pub fn example1j() -> RootedTree {
    let edges = [(1, 7), (2, 7), (3, 7), (4, 8), (5, 8), (6, 8), (7, 8)];
    RootedTree::from_edges(8, &edges, 1).expect("fixture is valid")
}

fn caterpillar(body: usize, hairs: &[(Vertex, usize)]) -> RootedTree {
    let mut edges: Vec<(Vertex, Vertex)> = (1..body).map(|i| (i, i + 1)).collect();
    let mut next = body + 1;
    for &(at, len) in hairs {
        let mut prev = at;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    RootedTree::from_edges(next - 1, &edges, 1).expect("fixture is valid")
}

pub fn caterpillar12() -> RootedTree {
    let mut hairs = Vec::new();
    for at in 3..=8 {
        let len = if at == 3 || at == 8 { 1 } else { 2 };
        hairs.push((at, len));
        hairs.push((at, len));
    }
    caterpillar(10, &hairs)
}

pub fn caterpillar2() -> RootedTree {
    caterpillar(7, &[(3, 3), (5, 3)])
}

pub fn leaves16() -> RootedTree {
    // internal skeleton, then leaf counts per internal vertex
    let skeleton = [
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 5),
        (2, 6),
        (3, 7),
        (7, 8),
        (4, 9),
        (4, 10),
        (4, 11),
    ];
    let leaf_counts = [(5, 3), (6, 3), (8, 4), (9, 2), (10, 1), (11, 3)];
    let mut edges = skeleton.to_vec();
    let mut next = 12;
    for (at, c) in leaf_counts {
        for _ in 0..c {
            edges.push((at, next));
            next += 1;
        }
    }
    RootedTree::from_edges(next - 1, &edges, 1).expect("fixture is valid")
}
