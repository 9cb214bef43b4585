use thiserror::Error;

/// Errors raised by graph construction, game dynamics and the counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("configuration belongs to a different graph")]
    GraphMismatch,

    #[error("configuration has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} holds {chips} chips and cannot fire (degree {degree})")]
    NotSupercritical { vertex: usize, chips: u32, degree: usize },

    #[error("cannot reverse-fire vertex {vertex}: neighbor {neighbor} holds no chips")]
    ReverseFireBlocked { vertex: usize, neighbor: usize },

    #[error("configuration is not relaxed: vertex {vertex} holds {chips} chips (degree {degree})")]
    NotRelaxed { vertex: usize, chips: u32, degree: usize },

    /// The burning algorithm stopped with `remaining` vertices, none of which
    /// holds at least as many chips as its remaining degree.
    #[error("configuration is not legal: burning stops with vertices {remaining:?} unburnt")]
    NotLegal { remaining: Vec<usize> },

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("{what} = {value} is outside the allowed range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("{what} exceeds the supported scale ({size} > {limit})")]
    ScaleExceeded {
        what: &'static str,
        size: String,
        limit: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
