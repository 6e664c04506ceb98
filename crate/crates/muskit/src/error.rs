//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical kernel and the analysis layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands have incompatible dimensions.
    Dimension { expected: usize, found: usize },
    /// A matrix required to be Hermitian is not, or an expectation value
    /// came out with a non-negligible imaginary part. `location` names
    /// the worst offending entry when that is meaningful.
    Hermiticity {
        residual: f64,
        location: Option<(usize, usize)>,
    },
    /// An iterative eigensolve did not converge; carries the best
    /// (smallest) off-diagonal residual reached.
    Convergence { best_residual: f64 },
    /// Input is degenerate for the requested operation (zero vector,
    /// vanishing ΔB, empty sweep grid, ...).
    Degenerate(String),
    /// The sign rule for λ is undefined: ⟨C⟩ ≈ 0 while ΔA is not small.
    SignAmbiguous { delta_a: f64, c: f64 },
    /// A grid is too coarse or too short to resolve the requested state.
    Resolution(String),
    /// A vector expected to be normalized is not; carries its norm.
    Normalization { norm: f64 },
    /// Construction-time validation failure (non-finite entry, empty
    /// vector, bad option value, ...).
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Hermiticity {
                residual,
                location: Some((row, col)),
            } => write!(
                f,
                "hermiticity violated: residual {residual:.3e}, worst entry ({row}, {col})"
            ),
            Error::Hermiticity {
                residual,
                location: None,
            } => write!(
                f,
                "hermiticity violated: expectation value has imaginary part {residual:.3e}"
            ),
            Error::Convergence { best_residual } => write!(
                f,
                "eigensolver did not converge (best residual {best_residual:.3e})"
            ),
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Error::SignAmbiguous { delta_a, c } => write!(
                f,
                "sign of lambda is ambiguous: <C> = {c:.3e} vanishes while dA = {delta_a:.3e} does not"
            ),
            Error::Resolution(msg) => write!(f, "grid resolution: {msg}"),
            Error::Normalization { norm } => {
                write!(f, "state is not normalized: norm = {norm:.17e}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
