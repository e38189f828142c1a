use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex set must not be empty")]
    EmptySet,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    Dimension { rows: usize, cols: usize, n: usize },
    #[error("entry ({row}, {col}) breaks the support of the graph: nonzero iff arc ({col}, {row})")]
    Support { row: usize, col: usize },
    #[error("power {power} has a nonzero entry ({row}, {col}) although d({col}, {row}) > {power}")]
    ZeroPattern { row: usize, col: usize, power: usize },
    #[error("no distance-preserving realization after {attempts} attempts (seed {seed})")]
    SamplingExhausted { attempts: usize, seed: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
