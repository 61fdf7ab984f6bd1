use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected: vertex {unreached} is not reachable from {root}")]
    Disconnected { root: usize, unreached: usize },

    #[error("layering covers {got} vertices but the graph has {expected}")]
    LayeringSize { expected: usize, got: usize },

    #[error("invalid layering: edge ({0}, {1}) spans more than one layer")]
    InvalidLayering(usize, usize),

    #[error("layer {0} is empty")]
    EmptyLayer(usize),

    #[error("instance too large for exact search: {what} is {got}, limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },

    #[error("no layered separator with at most {ell} vertices per layer exists")]
    NoSeparator { ell: usize },

    #[error("separator provider returned an invalid certificate: {0}")]
    BadCertificate(String),

    #[error("edge ({0}, {1}) has no endpoint in the separator")]
    EdgeNotIncidentToSeparator(usize, usize),

    #[error("invalid rotation system: {0}")]
    BadRotation(String),

    #[error("rotation system is not planar: V - E + F = {euler}, expected 2")]
    NotPlanar { euler: i64 },

    #[error("no balanced root-path separator found for a subgraph of {0} vertices")]
    NoBalancedCycle(usize),

    #[error("host vertex ({x}, {y}) touches {count} nations, cap is {cap}")]
    NationCap { x: usize, y: usize, count: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors raised by the exhaustive-search size guards.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}
