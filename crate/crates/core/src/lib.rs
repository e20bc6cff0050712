//! Perturbative frequency of the cubic anharmonic oscillator
//! `x'' + omega^2 x = -mu x^3`, with an interpolated linear term whose
//! artificial frequency is fixed by minimal sensitivity, plus exact-period
//! oracles to measure every approximation against.
//!
//! The crate has four layers:
//!
//! - [`trigseries`]: the closed cosine-series algebra all iterates live in;
//! - [`engine`]: the order-by-order recursion to arbitrary order, with
//!   secular-term cancellation fixing the frequency coefficients;
//! - [`closed_forms`]: the explicit order-3 expressions, the stationary
//!   interpolation point and the resulting rational frequency (in the
//!   derived and, for comparison, the less accurate printed variant);
//! - [`oracle`]: the exact period by elliptic integral, regularized
//!   quadrature and direct time integration.
//!
//! [`pms`] holds the generic numeric stationarity search shared by the
//! engine and the closed forms.

pub mod closed_forms;
pub mod engine;
mod error;
pub mod oracle;
pub mod pms;
pub mod trigseries;

pub use closed_forms::{FrequencyResult, MethodTag};
pub use engine::{ExpansionState, ModelSpec, MAX_ORDER};
pub use error::{Error, Result};
pub use oracle::{EnergyModel, PeriodMethod, PeriodResult};
pub use trigseries::CosineSeries;
