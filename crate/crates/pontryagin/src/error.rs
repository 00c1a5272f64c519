//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong, from bad input files to violated
/// preconditions of the operator calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes or ambient spaces of the operands do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A linear system has no solution (includes singular-matrix inversion).
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An operation requiring a Hermitian matrix received a non-Hermitian one.
    #[error("matrix is not Hermitian")]
    NotHermitian,

    /// The given point is not a resolvent point of the relation at hand.
    #[error("{0} is not in the resolvent set")]
    NotInResolventSet(String),

    /// The operation is only defined for the other representation form.
    #[error("operation requires the {expected} form, got {found}")]
    WrongForm {
        expected: &'static str,
        found: &'static str,
    },

    /// Two sample points are conjugate to each other, so the kernel
    /// difference quotient degenerates for that pair.
    #[error("degenerate sample pair ({0}, {1}): points are conjugate")]
    DegenerateSamplePair(String, String),

    /// The derivative at infinity is singular, so no projection exists.
    #[error("derivative at infinity is not invertible")]
    DerivativeNotInvertible,

    /// Q(z) is singular at the given point.
    #[error("Q({0}) is singular")]
    SingularQ(String),

    /// The domain of the relation is not invariant under the projection
    /// pair, so no block decomposition exists.
    #[error("domain not decomposable: {0}")]
    DomainNotDecomposable(String),

    /// Structural hypotheses of a construction are violated.
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    /// The input text could not be parsed.
    #[error("parse error{}: {message}", location_suffix(.line, .column))]
    ParseError {
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },

    /// The input parsed but violates a structural invariant.
    #[error("validation error: {0}")]
    ValidationError(String),
}

impl Error {
    pub fn parse(message: impl Into<String>) -> Self {
        Error::ParseError {
            line: None,
            column: None,
            message: message.into(),
        }
    }

    pub fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::ParseError {
            line: Some(line),
            column: Some(column),
            message: message.into(),
        }
    }
}

fn location_suffix(line: &Option<usize>, column: &Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}
