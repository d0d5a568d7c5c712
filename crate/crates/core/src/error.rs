use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid store: {0}")]
    InvalidStore(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("infeasible fold plan: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded for {what}: {got} > {limit} (set DEDUP_LAYOUT_GUARD_OVERRIDE=1 to lift)")]
    Guard {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
