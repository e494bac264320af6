//! Exact symbolic computation on the q-Minkowski space algebra, the
//! intermediate three-generator algebra, and the q-hyperboloid, together with
//! the braided vector fields and the braided Laplace and Maxwell operators
//! defined on them. Classical (q = 1) counterparts run on the same kernel and
//! serve as independent oracles.

pub mod algebra;
pub mod classical;
pub mod expr;
pub mod fields;
pub mod laplace;
pub mod linalg;
pub mod qgroup;
pub mod rmatrix;
pub mod scalar;
pub mod verify;

use std::fmt;

/// Library-wide error type.
#[derive(Clone, Debug)]
pub enum Error {
    Scalar(scalar::ScalarError),
    AlgebraMismatch {
        expected: algebra::AlgebraId,
        found: algebra::AlgebraId,
    },
    UnknownGenerator {
        name: String,
        algebra: algebra::AlgebraId,
    },
    /// Exact division failed: the dividend is not a multiple of the divisor.
    NonDivisible,
    /// Total-degree grading requested on a quotient algebra.
    GradingUndefined {
        algebra: algebra::AlgebraId,
    },
    /// A linear system that should be regular was singular.
    Singular(String),
    /// A construction that is unique for generic q degenerated.
    Degenerate(String),
    /// An operation required a linear (degree one) argument.
    NonLinear,
    Parse {
        pos: usize,
        msg: String,
    },
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Scalar(e) => write!(f, "{e}"),
            Error::AlgebraMismatch { expected, found } => {
                write!(
                    f,
                    "algebra mismatch: expected {expected:?}, found {found:?}"
                )
            }
            Error::UnknownGenerator { name, algebra } => {
                write!(f, "unknown generator `{name}` for {algebra:?}")
            }
            Error::NonDivisible => write!(f, "exact division failed"),
            Error::GradingUndefined { algebra } => {
                write!(f, "generator grading is not defined on {algebra:?}")
            }
            Error::Singular(what) => write!(f, "singular linear system: {what}"),
            Error::Degenerate(what) => write!(f, "degenerate construction: {what}"),
            Error::NonLinear => write!(f, "expected an element of degree one"),
            Error::Parse { pos, msg } => write!(f, "parse error at column {pos}: {msg}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<scalar::ScalarError> for Error {
    fn from(e: scalar::ScalarError) -> Self {
        Error::Scalar(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
