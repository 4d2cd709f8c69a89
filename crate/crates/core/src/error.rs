use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid vertex map: {0}")]
    InvalidVertexMap(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vertex map is not a graph morphism")]
    NotAMorphism,

    #[error("graph of size {size} exceeds the limit of {limit} vertices")]
    SizeLimitExceeded { size: usize, limit: usize },

    #[error("the subshift is empty (no bi-infinite paths)")]
    EmptySubshift,

    #[error("power iteration did not converge: residual {residual:e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("word length must be at least {min}, got {got}")]
    InvalidLength { min: usize, got: usize },

    #[error("{what} count {count} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: String,
        cap: u64,
    },

    #[error("word of length {len} is shorter than the code window {window}")]
    WordTooShort { len: usize, window: usize },

    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },

    #[error("invalid block code: {0}")]
    InvalidBlockCode(String),

    #[error("counts must be positive; length {length} has zero words")]
    ZeroCount { length: usize },

    #[error("no right-inverse graph morphism exists")]
    SectionAbsent,

    #[error("subset construction exceeded {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("invalid map specification: {0}")]
    InvalidSpec(String),

    #[error("grid not invariant: value {value} at grid point {index} outside 0..={n}")]
    GridNotInvariant { index: usize, value: i64, n: usize },

    #[error("piece {piece} is constant (the map must be nonconstant on every piece)")]
    ConstantPiece { piece: usize },

    #[error("vertex {vertex} is a sink in the Markov graph")]
    SinkInMarkovGraph { vertex: usize },

    #[error("grid mismatch: dynamics has n = {dynamics}, quotient has n = {quotient}")]
    GridMismatch { dynamics: usize, quotient: usize },

    #[error("quotient map decreases on piece {piece}")]
    NotMonotone { piece: usize },

    #[error("quotient map is not surjective: q(0) = {first}/{n}, q(1) = {last}/{n}")]
    NotSurjective { first: usize, last: usize, n: usize },

    #[error("expected a {expected} map specification")]
    WrongRole { expected: &'static str },

    #[error("no compatible selection: {0}")]
    NoCompatibleSelection(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
