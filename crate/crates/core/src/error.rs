use core::fmt;

/// Errors reported by zonokit operations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Shapes of the operands do not fit the operation.
    Dimension {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    /// A NaN or infinite entry was supplied.
    NonFinite { index: usize },
    /// The input has lower rank than the operation requires.
    Degenerate { required: usize, rank: usize },
    /// The square input is numerically singular.
    Singular,
    /// An index or size argument is outside its valid range.
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    /// A real parameter is outside its valid interval.
    Parameter { what: &'static str, value: f64 },
    /// The input exceeds a desk-scale enumeration bound.
    Capacity { limit: usize, found: usize },
    /// The matrices do not admit the requested orthogonal witness.
    NoWitness,
    /// No real exterior root exists for any admissible column sign pattern.
    NoRealRoot { det: f64 },
    /// A hypothesis of the operation fails at the given matrix entry.
    Hypothesis { row: usize, col: usize },
    /// A polygon is not strictly convex and counterclockwise at `vertex`.
    NotConvex { vertex: usize },
    /// A computed result failed its own verification.
    Inconsistent(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension {
                op,
                expected,
                found,
            } => write!(f, "{op}: expected dimension {expected}, found {found}"),
            Error::NonFinite { index } => write!(f, "non-finite entry at position {index}"),
            Error::Degenerate { required, rank } => {
                write!(f, "rank {rank} is below the required {required}")
            }
            Error::Singular => f.write_str("matrix is singular"),
            Error::OutOfRange { what, value, max } => {
                write!(f, "{what} = {value} is out of range (max {max})")
            }
            Error::Parameter { what, value } => write!(f, "{what} = {value} is out of range"),
            Error::Capacity { limit, found } => {
                write!(f, "{found} generators exceed the enumeration limit of {limit}")
            }
            Error::NoWitness => f.write_str("shape matrices differ; no congruence witness exists"),
            Error::NoRealRoot { det } => write!(
                f,
                "no real exterior root: re-signed determinant {det} is negative for every sign pattern"
            ),
            Error::Hypothesis { row, col } => {
                write!(f, "hypothesis violated at entry ({row}, {col})")
            }
            Error::NotConvex { vertex } => {
                write!(f, "polygon is not strictly convex counterclockwise at vertex {vertex}")
            }
            Error::Inconsistent(what) => write!(f, "verification failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
