use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which half of the normality certificate rejected a `(n, k)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalityFailure {
    /// `r = nk + 1` is not prime.
    CompositeModulus { r: u64 },
    /// The cosets `2^i K` overlap, so they cannot partition `Z_r^*`.
    Partition { r: u64 },
}

impl fmt::Display for NormalityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalityFailure::CompositeModulus { r } => write!(f, "r = {r} is composite"),
            NormalityFailure::Partition { r } => {
                write!(f, "cosets 2^i K do not partition Z_{r}^*")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("({n}, {k}) is not a normal basis type: {reason}")]
    NotNormalType {
        n: usize,
        k: usize,
        reason: NormalityFailure,
    },
    #[error("polynomial is not in the image of the Gauss period embedding")]
    NotInImage,
    #[error("Kummer unavailable: 3 does not divide 2^{d} - 1")]
    KummerUnavailable { d: usize },
    #[error("normal element is a cube; basis not Kummer-eligible")]
    CubeElement,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}
