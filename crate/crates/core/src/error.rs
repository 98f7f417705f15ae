use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A variant specification does not match the regime of its `n`.
    #[error("inconsistent variant: {0}")]
    InconsistentVariant(String),

    /// Some cells are still cut by a Voronoi bisector at the depth limit.
    /// `cells` names at most the first few of the `count` offending cells.
    #[error("{count} cell(s) unresolved at depth {depth}: {}", cells.join(" "))]
    Resolution { depth: u32, count: usize, cells: Vec<String> },

    /// Codewords whose Voronoi region carries no mass.
    #[error("empty Voronoi region for codeword(s) {0:?}")]
    EmptyRegion(Vec<usize>),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
