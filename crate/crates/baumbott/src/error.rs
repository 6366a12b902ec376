//! Error type shared by all modules.
//!
//! Every failure mode that can escape the library carries a stable error
//! code (see [`Error::code`]); the CLI serializes these codes verbatim.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials (or a polynomial and an evaluation point) disagree
    /// on the number of variables.
    VariableMismatch { expected: usize, found: usize },
    /// Variable index out of range for the ambient ring.
    IndexOutOfRange { index: usize, nvars: usize },
    /// A square matrix was required (e.g. the Jacobian of a field whose
    /// component count differs from its variable count).
    NonSquare { rows: usize, cols: usize },
    /// The quotient by the ideal is not finite-dimensional: the common
    /// zero locus of the generators is not isolated.
    InfiniteDimensional,
    /// Some variable is not nilpotent in the quotient, so the origin is
    /// not the only common zero in affine space. The caller must
    /// translate or decompose before computing a purely global residue.
    OriginNotOnlyZero { variable: usize },
    /// The vector field does not vanish at the given point.
    NotSingular,
    /// The weight of the symmetric polynomial does not match what the
    /// operation requires.
    DegreeMismatch { expected: usize, found: usize },
    /// Chart transport on P^2 produced a pole that cannot be cleared:
    /// the stated degree is wrong for the affine pair.
    PoleClearingFailed { detail: String },
    /// The foliation is degenerate on P^2: the line at infinity is
    /// invariant (x*Q_d - y*P_d vanishes identically), so the singular
    /// set is not a finite set of points and the shipped chart formulas
    /// do not apply.
    NotIsolatedOnP2,
    /// A numeric evaluation point lies exactly on the zero set of the
    /// field.
    OnSingularity,
    /// Text input could not be parsed; `offset` is a byte offset into
    /// the source.
    Parse { offset: usize, message: String },
    /// A symmetric-polynomial expression is not weighted homogeneous.
    NotWeightedHomogeneous { detail: String },
    /// An underlying error with location context attached (e.g. which
    /// singular point of a global sum check failed).
    WithContext { context: String, source: Box<Error> },
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::WithContext { source, .. } => source.code(),
            Error::InfiniteDimensional => "InfiniteDimensional",
            Error::OriginNotOnlyZero { .. } => "OriginNotOnlyZero",
            Error::NotSingular => "NotSingular",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::PoleClearingFailed { .. } => "PoleClearingFailed",
            Error::NotIsolatedOnP2 => "NotIsolatedOnP2",
            Error::OnSingularity => "OnSingularity",
            // Malformed inputs of any kind surface as parse errors.
            Error::Parse { .. }
            | Error::NotWeightedHomogeneous { .. }
            | Error::VariableMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NonSquare { .. } => "ParseError",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableMismatch { expected, found } => {
                write!(f, "variable count mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            Error::NonSquare { rows, cols } => {
                write!(f, "square matrix required, got {rows}x{cols}")
            }
            Error::InfiniteDimensional => {
                write!(f, "quotient algebra is infinite-dimensional: common zero locus is not isolated")
            }
            Error::OriginNotOnlyZero { variable } => {
                write!(
                    f,
                    "z{} is not nilpotent in the quotient: the origin is not the only common zero",
                    variable + 1
                )
            }
            Error::NotSingular => write!(f, "the field does not vanish at the given point"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "weight or size {found} does not match required {expected}")
            }
            Error::PoleClearingFailed { detail } => {
                write!(f, "chart transport failed to clear poles: {detail}")
            }
            Error::NotIsolatedOnP2 => {
                write!(f, "singular set on P^2 is not isolated: the line at infinity is invariant")
            }
            Error::OnSingularity => write!(f, "evaluation point lies on the zero set of the field"),
            Error::Parse { offset, message } => {
                write!(f, "parse error at byte {offset}: {message}")
            }
            Error::NotWeightedHomogeneous { detail } => {
                write!(f, "expression is not weighted homogeneous: {detail}")
            }
            Error::WithContext { context, source } => write!(f, "{context}: {source}"),
        }
    }
}

impl Error {
    pub fn with_context(self, context: impl Into<String>) -> Error {
        Error::WithContext { context: context.into(), source: Box::new(self) }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
