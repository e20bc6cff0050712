//! Error type shared by the model, engine and oracle modules.

use thiserror::Error;

/// Everything that can go wrong while building a model, running the
/// expansion or evaluating an exact-period oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("frequency omega must be positive, got {0}")]
    NonPositiveOmega(f64),

    #[error("amplitude must be positive, got {0}")]
    NonPositiveAmplitude(f64),

    #[error("interpolation parameter lambda must be non-negative, got {0}")]
    NegativeLambda(f64),

    #[error("expansion order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("interpolating frequency omega^2 + lambda^2 = {0} is not positive")]
    NonPositiveInterpolator(f64),

    #[error("order {n} is out of range; state holds orders 0..{available}")]
    OrderOutOfRange { n: usize, available: usize },

    #[error("driving term at order {order} keeps a cos(tau) component {coeff:e} after secular cancellation")]
    SecularResidue { order: usize, coeff: f64 },

    #[error("unbounded motion: omega^2 + mu*A^2 = {0} is not positive")]
    UnboundedMotion(f64),

    #[error("elliptic modulus is not real for mu = {0} < 0; use the quadrature oracle")]
    UnsupportedModulus(f64),

    #[error("PMS stationary point is not real for mu = {0} < 0")]
    PmsUndefined(f64),

    #[error("no stationary point of Omega^2(lambda) found in [0, {0}]")]
    PmsNotFound(f64),

    #[error("no period-defining zero crossing found within {0} time units")]
    IntegrationFailure(f64),

    #[error("rescaling requires nonzero couplings of equal sign, got {from} -> {to}")]
    RescaleSignMismatch { from: f64, to: f64 },

    #[error("expansion state parts mismatch: {0} alphas vs {1} solutions")]
    StatePartsMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
