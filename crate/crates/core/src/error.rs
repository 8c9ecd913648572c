use thiserror::Error;

/// Reasons a coordinate list is not an orthogonal terrain. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TerrainError {
    #[error("terrain needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("x decreases at vertex {index}")]
    NotMonotone { index: usize },
    #[error("edge {index} is neither horizontal nor vertical")]
    DiagonalEdge { index: usize },
    #[error("edge {index} has zero length")]
    ZeroLengthEdge { index: usize },
    #[error("vertex {index} is collinear with its neighbours")]
    CollinearVertex { index: usize },
    #[error("vertex {index} is outside the coordinate range")]
    CoordinateOutOfRange { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VisibilityError {
    #[error("vertex index {index} out of range for a terrain of {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("terrain has {len} vertices; the oracle cap is {cap}")]
    OracleCapExceeded { len: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {cap} nodes exhausted")]
    BudgetExceeded { cap: u64 },
    #[error("witness {witness} is seen by no candidate")]
    InfeasibleCover { witness: usize },
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("generator spec out of range: {0}")]
    SpecOutOfRange(String),
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("invalid terrain: {0}")]
    Terrain(#[from] TerrainError),
    #[error("malformed document: {0}")]
    Field(String),
}
