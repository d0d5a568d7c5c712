//! JSON file formats for graphs, stores and `[H;K]` codes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coded::HKCode;
use crate::error::{Error, Result};
use crate::families::Generated;
use crate::gf2::BitVec;
use crate::graph::{FileGraph, RootedTree, SparseHamiltonianGraph, Vertex};
use crate::metrics::{rational_string, MetricReport};
use crate::store::{CodedStore, Store, UncodedStore};

pub const GRAPH_FORMAT: &str = "dedup-layout/graph-v1";
pub const STORE_FORMAT: &str = "dedup-layout/store-v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub format: String,
    /// `graph`, `sham` (line `1..=n` plus `arcs`) or `tree` (rooted at `root`)
    pub kind: String,
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<[Vertex; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Vertex>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StoreFile {
    pub format: String,
    /// `uncoded` (uses `sequence`) or `coded` (uses `columns`)
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<Vertex>>,
    /// chunk ids xored into each stored column
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<Vertex>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HKFile {
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn pairs(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Vec<[Vertex; 2]> {
    edges.into_iter().map(|(a, b)| [a, b]).collect()
}

pub fn graph_file(g: &Generated) -> GraphFile {
    let fg = g.to_file_graph();
    let (kind, arcs, root) = match g {
        Generated::Graph(_) => ("graph", None, None),
        Generated::Sham(s) => ("sham", Some(pairs(s.arcs().iter().copied())), None),
        Generated::Tree(t) => ("tree", None, Some(t.root())),
    };
    GraphFile {
        format: GRAPH_FORMAT.into(),
        kind: kind.into(),
        n: fg.n(),
        edges: pairs(fg.edges()),
        arcs,
        root,
    }
}

pub fn graph_to_json(g: &Generated) -> String {
    serde_json::to_string_pretty(&graph_file(g)).expect("graph serializes")
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_graph(text: &str) -> Result<Generated> {
    let f: GraphFile = serde_json::from_str(text).map_err(parse_err)?;
    if f.format != GRAPH_FORMAT {
        return Err(Error::Parse(format!(
            "expected format {GRAPH_FORMAT}, got {}",
            f.format
        )));
    }
    let edges: Vec<(Vertex, Vertex)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
    match f.kind.as_str() {
        "graph" => Ok(Generated::Graph(FileGraph::new(f.n, edges)?)),
        "sham" => {
            let arcs = f
                .arcs
                .ok_or_else(|| Error::Parse("sham graph needs arcs".into()))?;
            let s = SparseHamiltonianGraph::new(f.n, arcs.iter().map(|a| (a[0], a[1])))?;
            if s.to_file_graph() != FileGraph::new(f.n, edges)? {
                return Err(Error::InvalidGraph("edges differ from line plus arcs".into()));
            }
            Ok(Generated::Sham(s))
        }
        "tree" => Ok(Generated::Tree(RootedTree::from_edges(
            f.n,
            &edges,
            f.root.unwrap_or(1),
        )?)),
        other => Err(Error::Parse(format!("unknown graph kind {other}"))),
    }
}

pub fn store_file(s: &Store) -> StoreFile {
    match s {
        Store::Uncoded(u) => StoreFile {
            format: STORE_FORMAT.into(),
            kind: "uncoded".into(),
            n: u.n(),
            sequence: Some(u.sequence().to_vec()),
            columns: None,
        },
        Store::Coded(c) => StoreFile {
            format: STORE_FORMAT.into(),
            kind: "coded".into(),
            n: c.n(),
            sequence: None,
            columns: Some((0..c.m()).map(|j| c.combination(j)).collect()),
        },
    }
}

pub fn store_to_value(s: &Store) -> Value {
    serde_json::to_value(store_file(s)).expect("store serializes")
}

pub fn store_to_json(s: &Store) -> String {
    serde_json::to_string_pretty(&store_file(s)).expect("store serializes")
}

/// Reads a store file, or the `store` field of a layout report.
pub fn parse_store(text: &str) -> Result<Store> {
    let mut v: Value = serde_json::from_str(text).map_err(parse_err)?;
    if v.get("format").is_none() {
        if let Some(inner) = v.get_mut("store") {
            v = inner.take();
        }
    }
    let f: StoreFile = serde_json::from_value(v).map_err(parse_err)?;
    if f.format != STORE_FORMAT {
        return Err(Error::Parse(format!(
            "expected format {STORE_FORMAT}, got {}",
            f.format
        )));
    }
    match (f.kind.as_str(), f.sequence, f.columns) {
        ("uncoded", Some(seq), _) => Ok(Store::Uncoded(UncodedStore::new(f.n, seq)?)),
        ("coded", _, Some(cols)) => Ok(Store::Coded(CodedStore::from_combinations(f.n, &cols)?)),
        (kind, _, _) => Err(Error::Parse(format!("store kind {kind} lacks its data field"))),
    }
}

pub fn hk_to_value(c: &HKCode) -> Value {
    json!({
        "H": c.h.iter().map(BitVec::to_bitstring).collect::<Vec<_>>(),
        "K": c.k.iter().map(BitVec::to_bitstring).collect::<Vec<_>>(),
    })
}

pub fn parse_hk(text: &str) -> Result<HKCode> {
    let f: HKFile = serde_json::from_str(text).map_err(parse_err)?;
    let rows = |v: &[String]| -> Result<Vec<BitVec>> {
        v.iter()
            .map(|s| BitVec::parse(s).ok_or_else(|| Error::Parse(format!("bad bit row {s:?}"))))
            .collect()
    };
    HKCode::new(rows(&f.h)?, rows(&f.k)?)
}

pub fn report_to_value(r: &MetricReport) -> Value {
    json!({
        "t": r.t,
        "stretch_metric": rational_string(&r.stretch_metric),
        "jump_metric": r.jump_metric,
        "per_path": r.per_path.iter().map(|p| json!({
            "path": p.path.vertices(),
            "stretch": rational_string(&p.stretch),
            "stretch_window": p.stretch_window.positions(),
            "jump": p.jump,
            "jump_witness": p.jump_witness.positions(),
        })).collect::<Vec<_>>(),
    })
}

/// Per-path metric table, one row per file.
pub fn report_to_csv(r: &MetricReport) -> String {
    let mut out = String::from("path,stretch,jump\n");
    for p in &r.per_path {
        let path: Vec<String> = p.path.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "{},{},{}\n",
            path.join("-"),
            rational_string(&p.stretch),
            p.jump
        ));
    }
    out
}
