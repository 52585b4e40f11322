use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by solver operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("label set width {found} does not match expected width {expected}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("start set has {len} labels but the budget is {k_bar}")]
    OverBudget { len: usize, k_bar: usize },

    #[error("start set contains label {label}, which is outside the candidate pool")]
    StartOutsidePool { label: usize },

    #[error("instance too large for oracle: C({ell}, {k}) = {subsets} subsets exceeds cap {cap}")]
    OracleTooLarge {
        ell: usize,
        k: usize,
        subsets: u128,
        cap: u64,
    },

    #[error("benchmark matrix needs at least one {0}")]
    EmptyMatrix(&'static str),

    #[error("invalid generator spec: {0}")]
    InvalidGenerator(String),

    #[error(transparent)]
    Instance(#[from] InstanceError),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Violations of the graph and instance invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance must have at least one vertex")]
    NoVertices,

    #[error("instance must have at least one label")]
    NoLabels,

    #[error("label budget {k_bar} outside 1..={ell}")]
    BudgetOutOfRange { k_bar: usize, ell: usize },

    #[error("edge {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },

    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },

    #[error("edge {index}: label {label} out of range for ell = {ell}")]
    LabelOutOfRange {
        index: usize,
        label: usize,
        ell: usize,
    },

    #[error("edge {index}: duplicate edge ({u}, {v}) with label {label}")]
    DuplicateEdge {
        index: usize,
        u: usize,
        v: usize,
        label: usize,
    },
}

/// Errors from reading the instance text format. Line numbers are 1-based.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,

    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },

    #[error("line {line}: label budget {k_bar} outside 1..={ell}")]
    BudgetOutOfRange {
        line: usize,
        k_bar: usize,
        ell: usize,
    },

    #[error("line {line}: malformed edge: {reason}")]
    MalformedEdge { line: usize, reason: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },

    #[error("line {line}: label {label} out of range for ell = {ell}")]
    LabelOutOfRange {
        line: usize,
        label: usize,
        ell: usize,
    },

    #[error("line {line}: duplicate edge ({u}, {v}) with label {label}")]
    DuplicateEdge {
        line: usize,
        u: usize,
        v: usize,
        label: usize,
    },

    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
