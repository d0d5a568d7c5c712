//! Layouts of deduplicated chunk stores for graph-structured file collections.

pub mod cli;
pub mod coded;
pub mod consistency;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod folding;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod jump_tree;
pub mod metrics;
pub mod oracle;
pub mod store;
pub mod zero_frag;

pub use error::{Error, Result};
