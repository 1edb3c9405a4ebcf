use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse error classes, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCategory {
    /// Malformed input text.
    Parse,
    /// Valid input on which the requested quantity is undefined.
    Domain,
    /// Invalid bridge or interface specification.
    Spec,
    /// A mathematical precondition of an operation does not hold.
    Precondition,
    /// The requested integration step is outside the stability region.
    Stability,
    /// I/O failure.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("connectivity is undefined for the empty graph")]
    EmptyGraph,
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {deviation:e}")]
    Asymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("not an unweighted graph Laplacian: {0}")]
    NotALaplacian(String),
    #[error("matrix dimensions do not match: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("operation needs at least {required} vertices, graph has {actual}")]
    TooFewVertices { required: usize, actual: usize },
    #[error("interface set must be a nonempty proper subset of the vertex set")]
    DegenerateInterface,

    #[error("bridge anchor {vertex} used twice on side {side}")]
    DuplicateAnchor { side: u8, vertex: usize },
    #[error("bridge anchor {vertex} out of range for side {side} ({vertex_count} vertices)")]
    InvalidAnchor {
        side: u8,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("bridge edge ({0}, {1}) listed twice")]
    DuplicateBridge(usize, usize),
    #[error("interface lists differ in length ({g1} vs {g2})")]
    InterfaceLengthMismatch { g1: usize, g2: usize },
    #[error("interface vertex {vertex} repeated in the list for graph {side}")]
    InterfaceRepeat { side: u8, vertex: usize },
    #[error("interface vertex {vertex} out of range for graph {side} ({vertex_count} vertices)")]
    InvalidInterfaceVertex {
        side: u8,
        vertex: usize,
        vertex_count: usize,
    },
    #[error(
        "interface is not a full subgraph: positions ({i}, {j}) map to {g1_pair:?} in graph 1 \
         and {g2_pair:?} in graph 2, edge present in graph 1: {in_g1}, in graph 2: {in_g2}"
    )]
    InterfaceEdgeMismatch {
        i: usize,
        j: usize,
        g1_pair: (usize, usize),
        g2_pair: (usize, usize),
        in_g1: bool,
        in_g2: bool,
    },
    #[error("cannot remove {requested} bridge edges, only {available} present")]
    NotEnoughBridgeEdges { requested: usize, available: usize },

    #[error("graph is disconnected: {0}")]
    Disconnected(&'static str),
    #[error("initial state has length {actual}, graph has {expected} vertices")]
    StateLengthMismatch { expected: usize, actual: usize },
    #[error("invalid simulation setting: {0}")]
    InvalidConfig(String),
    #[error("step size {dt} exceeds the stability bound {bound} (suggested dt = {suggested})")]
    Unstable { dt: f64, bound: f64, suggested: f64 },
    #[error("disagreement decayed only by a factor {achieved:.3e}; extend the horizon")]
    InsufficientDecay { achieved: f64 },
    #[error("initial state is already at consensus; there is no decay to fit")]
    NoDisagreement,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Parse { .. } => ErrorCategory::Parse,
            Io { .. } => ErrorCategory::Io,
            SelfLoop(_) | VertexOutOfRange { .. } | DuplicateEdge(..) => ErrorCategory::Parse,
            DuplicateAnchor { .. }
            | InvalidAnchor { .. }
            | DuplicateBridge(..)
            | InterfaceLengthMismatch { .. }
            | InterfaceRepeat { .. }
            | InvalidInterfaceVertex { .. }
            | InterfaceEdgeMismatch { .. }
            | NotEnoughBridgeEdges { .. } => ErrorCategory::Spec,
            Disconnected(_) | DegenerateInterface | OverlappingSets(_) | EmptySet => {
                ErrorCategory::Precondition
            }
            Unstable { .. } => ErrorCategory::Stability,
            EmptyGraph
            | Asymmetric { .. }
            | DimensionMismatch { .. }
            | NotALaplacian(_)
            | NoConvergence { .. }
            | TooFewVertices { .. }
            | StateLengthMismatch { .. }
            | InvalidConfig(_)
            | InsufficientDecay { .. }
            | NoDisagreement => ErrorCategory::Domain,
        }
    }

    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
