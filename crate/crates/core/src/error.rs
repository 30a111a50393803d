use thiserror::Error;

/// Errors raised by graph construction, parsing and the bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text or an edge list that does not describe a simple graph.
    #[error("malformed input at {location}: {reason}")]
    MalformedInput { location: Location, reason: String },

    /// Arguments outside the domain of an operation (k = 0, cycle with n < 3, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A theorem hypothesis required by a bound does not hold for this input.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// The exact oracle refuses graphs above its configured order cap.
    #[error("graph of order {order} exceeds the oracle cap of {cap} vertices")]
    ResourceLimit { order: usize, cap: usize },
}

/// Where in the input a malformed-input error was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// 0-based byte offset into a graph6 line.
    Byte(usize),
    /// 1-based line number in an edge-list text.
    Line(usize),
    /// Index into an in-memory edge list.
    Edge(usize),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Byte(b) => write!(f, "byte {b}"),
            Location::Line(l) => write!(f, "line {l}"),
            Location::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn malformed(location: Location, reason: impl Into<String>) -> Error {
    Error::MalformedInput {
        location,
        reason: reason.into(),
    }
}
