use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matching graph needs an even vertex count, got {0}")]
    OddMatching(usize),
    #[error("G(n, a) needs a <= n, got n = {n}, a = {a}")]
    SideTooLarge { n: usize, a: usize },
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("graph is not bipartite: odd cycle {0:?}")]
    OddCycle(Vec<usize>),
    #[error("permutation lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vertex {0} appears more than once in a permutation")]
    RepeatedVertex(usize),
    #[error("member {index} does not share the family's support and length")]
    SupportMismatch { index: usize },
    #[error("members {0} and {1} are identical")]
    DuplicateMember(usize, usize),
    #[error("a family needs at least one member")]
    EmptyFamily,
    #[error("supports overlap on vertices {0:?}")]
    OverlappingSupports(Vec<usize>),
    #[error("support vertex {0} is not a vertex of the graph")]
    SupportOutsideGraph(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what}: {needed} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("expected a family over the two vertices of a single edge, got support {0:?}")]
    NotSingleEdgeFamily(Vec<usize>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
