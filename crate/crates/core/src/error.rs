use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edge end {0:?} is missing from the rotation of its endpoint")]
    DanglingEdgeEnd(String),
    #[error("edge end {0:?} appears more than once in the rotations")]
    DuplicateEdgeEnd(String),
    #[error("edge {0:?} has nonpositive weight")]
    NonPositiveWeight(String),
    #[error("terminal {0:?} has degree 0")]
    IsolatedTerminal(String),
    #[error("the surface is disconnected")]
    Disconnected,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("curve is inconsistent with face adjacency at step {0}")]
    BadCurve(usize),
    #[error("closed curve is contractible")]
    Contractible,
    #[error("region is not of the expected kind: {0}")]
    WrongRegionKind(String),
    #[error("terminals are mutually unreachable")]
    Unreachable,
    #[error("instance has {edges} edges, above the oracle cap of {cap}")]
    AboveCap { edges: usize, cap: usize },
    #[error("no valid candidate within caps: {0}")]
    NoCandidate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
