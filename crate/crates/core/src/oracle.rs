//! Ground-truth period of the oscillator by three independent routes.
//!
//! The energy integral gives the exact period as a turning-point integral;
//! a sine substitution removes the endpoint singularity analytically,
//! leaving a smooth integrand for fixed-order Gauss-Legendre quadrature.
//! For a non-negative coupling the same integral reduces to a complete
//! elliptic integral evaluated by the arithmetic-geometric mean (DLMF
//! 19.8). A fixed-step fourth-order time integration with zero-crossing
//! refinement provides a third route that shares no algebra with the
//! other two, so a common mistake cannot hide.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::engine::ModelSpec;
use crate::error::{Error, Result};

/// Which route produced a period.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodMethod {
    EllipticAgm,
    Quadrature,
    Ode,
}

/// An exact-period value with its provenance and an absolute error
/// estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodResult {
    pub period: f64,
    pub method: PeriodMethod,
    pub est_error: f64,
}

/// The conserved energy `v^2/2 + V(x)` with `V(x) = omega^2 x^2/2 + mu x^4/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyModel {
    omega: f64,
    mu: f64,
}

impl EnergyModel {
    pub fn new(omega: f64, mu: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::NonFinite {
                name: "omega",
                value: omega,
            });
        }
        if !mu.is_finite() {
            return Err(Error::NonFinite {
                name: "mu",
                value: mu,
            });
        }
        if omega <= 0.0 {
            return Err(Error::NonPositiveOmega(omega));
        }
        Ok(Self { omega, mu })
    }

    pub fn potential(&self, x: f64) -> f64 {
        0.5 * self.omega * self.omega * x * x + 0.25 * self.mu * x.powi(4)
    }

    /// Energy of the motion released at rest from `x = a`.
    pub fn energy_of_amplitude(&self, a: f64) -> f64 {
        self.potential(a)
    }

    pub fn energy(&self, x: f64, v: f64) -> f64 {
        0.5 * v * v + self.potential(x)
    }

    /// Restoring acceleration `-omega^2 x - mu x^3`.
    pub fn acceleration(&self, x: f64) -> f64 {
        -(self.omega * self.omega) * x - self.mu * x * x * x
    }
}

/// Number of Gauss-Legendre nodes for the period integral. Far more than
/// the smooth transformed integrand needs; the half-interval refinement
/// below reports how little is left.
const GAUSS_ORDER: usize = 64;

/// Fixed steps per estimated period in the time integration.
const ODE_STEPS_PER_PERIOD: usize = 2000;

fn check_bounded(spec: &ModelSpec) -> Result<f64> {
    let indicator = spec.bounded_indicator();
    if indicator <= 0.0 {
        return Err(Error::UnboundedMotion(indicator));
    }
    Ok(indicator)
}

/// Exact period via the regularized turning-point integral.
///
/// Substituting `x = A sin(theta)` into `T = 2 int dx / sqrt(2(E - V))`
/// cancels the `sqrt(A^2 - x^2)` endpoint singularity exactly and leaves
///
/// ```text
/// T = 4 int_0^{pi/2} dtheta / sqrt(omega^2 + mu A^2 (1 + sin^2 theta) / 2)
/// ```
///
/// which is evaluated on one and on two Gauss-Legendre panels; the
/// difference feeds the error estimate. Valid for either sign of `mu`
/// while `omega^2 + mu A^2 > 0`.
pub fn period_quadrature(spec: &ModelSpec) -> Result<PeriodResult> {
    check_bounded(spec)?;
    let w2 = spec.omega() * spec.omega();
    let mu_a2 = spec.mu() * spec.amplitude() * spec.amplitude();
    let integrand = |theta: f64| {
        let s = theta.sin();
        1.0 / (w2 + 0.5 * mu_a2 * (1.0 + s * s)).sqrt()
    };
    let coarse = gauss_legendre(&integrand, 0.0, PI / 2.0);
    let refined =
        gauss_legendre(&integrand, 0.0, PI / 4.0) + gauss_legendre(&integrand, PI / 4.0, PI / 2.0);
    Ok(PeriodResult {
        period: 4.0 * refined,
        method: PeriodMethod::Quadrature,
        est_error: 4.0 * (refined - coarse).abs(),
    })
}

/// Exact period via the complete elliptic integral,
/// `T = 4 K(k) / sqrt(omega^2 + mu A^2)` with
/// `k^2 = mu A^2 / (2 (omega^2 + mu A^2))`.
///
/// The modulus stays below `k^2 = 1/2` for every bounded `mu >= 0`, where
/// the AGM converges quadratically. Negative `mu` is rejected; use
/// [`period_quadrature`] there.
pub fn period_elliptic(spec: &ModelSpec) -> Result<PeriodResult> {
    if spec.mu() < 0.0 {
        return Err(Error::UnsupportedModulus(spec.mu()));
    }
    let s = check_bounded(spec)?;
    let m = spec.mu() * spec.amplitude() * spec.amplitude() / (2.0 * s);
    let period = 4.0 * elliptic_k(m) / s.sqrt();
    Ok(PeriodResult {
        period,
        method: PeriodMethod::EllipticAgm,
        // AGM is iterated to relative machine convergence.
        est_error: 8.0 * f64::EPSILON * period,
    })
}

/// Exact period via direct time integration of `x'' = -omega^2 x - mu x^3`
/// from `x(0) = A`, `x'(0) = 0`.
///
/// Classic fourth-order steps of size `T_est / 2000` (with `T_est` from
/// the quadrature route, used only to size the step) until the velocity
/// crosses zero with `x < 0`, which marks the half period; the crossing is
/// refined on a cubic Hermite interpolant of the velocity. Fails if no
/// crossing appears within `3 T_est`.
pub fn period_ode(spec: &ModelSpec) -> Result<PeriodResult> {
    let t_est = period_quadrature(spec)?.period;
    let model = EnergyModel::new(spec.omega(), spec.mu())?;
    let h = t_est / ODE_STEPS_PER_PERIOD as f64;
    let horizon = 3.0 * t_est;

    let mut t = 0.0;
    let mut x = spec.amplitude();
    let mut v = 0.0;
    while t < horizon {
        let (x_next, v_next) = rk4_step(&model, x, v, h);
        if v < 0.0 && v_next >= 0.0 && x_next < 0.0 {
            let theta = refine_crossing(&model, x, v, x_next, v_next, h);
            let half_period = t + theta * h;
            let period = 2.0 * half_period;
            // Fourth-order accumulation over ~1000 steps, with margin.
            let phase_step = 2.0 * PI / ODE_STEPS_PER_PERIOD as f64;
            let est_error = period * phase_step.powi(4) * 10.0;
            return Ok(PeriodResult {
                period,
                method: PeriodMethod::Ode,
                est_error,
            });
        }
        t += h;
        x = x_next;
        v = v_next;
    }
    Err(Error::IntegrationFailure(horizon))
}

/// Exact angular frequency `2 pi / T`, via the elliptic route when
/// `mu >= 0` and quadrature otherwise.
pub fn omega_exact(spec: &ModelSpec) -> Result<f64> {
    let period = if spec.mu() >= 0.0 {
        period_elliptic(spec)?.period
    } else {
        period_quadrature(spec)?.period
    };
    Ok(2.0 * PI / period)
}

/// Relative energy drift of the fixed-step integrator over `n_periods`
/// full periods: the worst `|E(t) - E(0)| / E(0)` seen at any step.
/// A conservation probe for the [`period_ode`] route.
pub fn energy_drift(spec: &ModelSpec, n_periods: usize) -> Result<f64> {
    let t_est = period_quadrature(spec)?.period;
    let model = EnergyModel::new(spec.omega(), spec.mu())?;
    let h = t_est / ODE_STEPS_PER_PERIOD as f64;
    let steps = ODE_STEPS_PER_PERIOD * n_periods;

    let mut x = spec.amplitude();
    let mut v = 0.0;
    let e0 = model.energy(x, v);
    let mut worst: f64 = 0.0;
    for _ in 0..steps {
        (x, v) = rk4_step(&model, x, v, h);
        worst = worst.max((model.energy(x, v) - e0).abs() / e0.abs());
    }
    Ok(worst)
}

fn rk4_step(model: &EnergyModel, x: f64, v: f64, h: f64) -> (f64, f64) {
    let a1 = model.acceleration(x);
    let (k2x, k2v) = (v + 0.5 * h * a1, model.acceleration(x + 0.5 * h * v));
    let (k3x, k3v) = (v + 0.5 * h * k2v, model.acceleration(x + 0.5 * h * k2x));
    let (k4x, k4v) = (v + h * k3v, model.acceleration(x + h * k3x));
    (
        x + h / 6.0 * (v + 2.0 * k2x + 2.0 * k3x + k4x),
        v + h / 6.0 * (a1 + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

/// Root of the cubic Hermite interpolant of `v` on a step `[0, 1]` with
/// endpoint values and slopes, found by safeguarded Newton from the
/// secant guess. Returns the fractional step position of the crossing.
fn refine_crossing(model: &EnergyModel, x0: f64, v0: f64, x1: f64, v1: f64, h: f64) -> f64 {
    let a0 = h * model.acceleration(x0);
    let a1 = h * model.acceleration(x1);
    let value = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * v0
            + (s3 - 2.0 * s2 + s) * a0
            + (-2.0 * s3 + 3.0 * s2) * v1
            + (s3 - s2) * a1
    };
    let slope = |s: f64| {
        let s2 = s * s;
        (6.0 * s2 - 6.0 * s) * v0
            + (3.0 * s2 - 4.0 * s + 1.0) * a0
            + (-6.0 * s2 + 6.0 * s) * v1
            + (3.0 * s2 - 2.0 * s) * a1
    };

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut s = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
    for _ in 0..60 {
        let f = value(s);
        if f == 0.0 {
            return s;
        }
        // Maintain the bracket: v(0) < 0 <= v(1).
        if f < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let d = slope(s);
        let newton = if d != 0.0 { s - f / d } else { f64::NAN };
        s = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-13 {
            break;
        }
    }
    s
}

/// Complete elliptic integral of the first kind `K(m)` in the parameter
/// convention `m = k^2`, by the arithmetic-geometric mean (DLMF 19.8.5),
/// iterated to relative machine convergence.
fn elliptic_k(m: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&m));
    if m == 0.0 {
        return PI / 2.0;
    }
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..30 {
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        if (a_next - b_next).abs() < 1e-15 * a_next {
            return PI / (2.0 * a_next);
        }
        a = a_next;
        b = b_next;
    }
    PI / (2.0 * a)
}

/// Nodes and weights of the `GAUSS_ORDER`-point Gauss-Legendre rule on
/// `[-1, 1]`, computed once by Newton iteration on the Legendre
/// recurrence.
fn gauss_nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            // Tricomi-style initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p, d) = legendre_and_derivative(n, x);
                    dp = d;
                    x -= p / d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push((x, w));
        }
        out
    })
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

fn gauss_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_nodes()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}
