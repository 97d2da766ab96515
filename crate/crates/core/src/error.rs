use core::fmt;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operator expected to be Hermitian; `deviation` is `max |h - h†|`.
    NotHermitian {
        deviation: f64,
    },
    /// Operator expected to be unitary; `deviation` is `max |u u† - 1|`.
    NotUnitary {
        deviation: f64,
    },
    /// Matrix is not a valid density operator.
    NotDensity {
        reason: &'static str,
    },
    /// Bloch vector longer than one.
    OutsideBlochBall {
        norm: f64,
    },
    /// A pure joint state was required; `purity` is `tr(rho^2)`.
    MixedJointState {
        purity: f64,
    },
    /// Surface grid needs at least two points per angle.
    InvalidGrid {
        n_theta: usize,
        n_phi: usize,
    },
    InvalidArgument(&'static str),
    /// Numerical decomposition did not converge to the requested accuracy.
    Decomposition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { deviation } => {
                write!(f, "operator is not Hermitian (deviation {deviation:.3e})")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "operator is not unitary (deviation {deviation:.3e})")
            }
            Error::NotDensity { reason } => write!(f, "not a density matrix: {reason}"),
            Error::OutsideBlochBall { norm } => {
                write!(f, "Bloch vector norm {norm} exceeds 1")
            }
            Error::MixedJointState { purity } => {
                write!(f, "joint state is mixed (purity {purity:.6}); concurrence needs a pure state")
            }
            Error::InvalidGrid { n_theta, n_phi } => {
                write!(f, "surface grid {n_theta}x{n_phi} is too small (need at least 2x2)")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Decomposition(msg) => write!(f, "decomposition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
