//! Closed-form order-3 frequency expressions and the stationary
//! interpolation point.
//!
//! These are the explicit formulas the engine recursion reproduces
//! numerically: the four frequency coefficients, the order-3 total as a
//! function of the interpolation parameter, the stationary (minimal
//! sensitivity) choice of that parameter, and the resulting closed
//! rational frequency in two variants. The `derived` variant comes from
//! substituting the stationary point into the order-3 total and carries a
//! `69 A^4 mu^2` numerator term; the `printed` variant keeps `64 A^4 mu^2`
//! instead and is retained for side-by-side comparison because it is
//! roughly thirty times less accurate (about 1.3% in `Omega^2` at
//! `omega = mu = A = 1` against the exact oracle, versus 0.004%).

use crate::engine::ModelSpec;
use crate::error::{Error, Result};

/// How a frequency value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    /// Plain distorted-time expansion, `lambda = 0`.
    Lp,
    /// Interpolated expansion evaluated at the stationary `lambda`.
    LpldePms,
    /// Interpolated expansion at a caller-fixed `lambda > 0`.
    LpldeFixedLambda,
}

/// A squared frequency together with its per-order build-up.
///
/// `partials[m]` is the cumulative sum `alpha_0 + ... + alpha_m`;
/// `omega_squared` always equals the last partial.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyResult {
    pub omega_squared: f64,
    pub partials: Vec<f64>,
    pub lambda_used: f64,
    pub method_tag: MethodTag,
}

impl FrequencyResult {
    /// False when the truncated sum turned non-positive, which signals
    /// parameters outside the expansion's validity (strongly negative
    /// `mu`); no real frequency corresponds to the value then.
    pub fn is_physical(&self) -> bool {
        self.omega_squared > 0.0
    }

    /// The frequency itself, when physical.
    pub fn omega(&self) -> Option<f64> {
        self.is_physical().then(|| self.omega_squared.sqrt())
    }
}

/// The four closed-form frequency coefficients `alpha_0..alpha_3`:
///
/// ```text
/// alpha_0 = omega^2 + lambda^2
/// alpha_1 = 3 A^2 mu / 4 - lambda^2
/// alpha_2 = -3 A^4 mu^2 / (128 (omega^2+lambda^2))
/// alpha_3 = 3 A^4 mu^2 (3 A^2 mu - 4 lambda^2) / (512 (omega^2+lambda^2)^2)
/// ```
pub fn alpha_coeffs(spec: &ModelSpec) -> [f64; 4] {
    let a2mu = spec.amplitude() * spec.amplitude() * spec.mu();
    let lambda_sq = spec.lambda() * spec.lambda();
    let a0 = spec.interpolator_squared();
    [
        a0,
        0.75 * a2mu - lambda_sq,
        -3.0 * a2mu * a2mu / (128.0 * a0),
        3.0 * a2mu * a2mu * (3.0 * a2mu - 4.0 * lambda_sq) / (512.0 * a0 * a0),
    ]
}

/// The order-3 squared frequency at the spec's `lambda`.
pub fn omega2_order3(spec: &ModelSpec) -> FrequencyResult {
    let alphas = alpha_coeffs(spec);
    let mut partials = Vec::with_capacity(4);
    let mut total = 0.0;
    for a in alphas {
        total += a;
        partials.push(total);
    }
    FrequencyResult {
        omega_squared: total,
        partials,
        lambda_used: spec.lambda(),
        method_tag: if spec.lambda() == 0.0 {
            MethodTag::Lp
        } else {
            MethodTag::LpldeFixedLambda
        },
    }
}

/// The stationary interpolation frequency `lambda* = A sqrt(3 mu) / 2`,
/// where the order-3 total is insensitive to `lambda`. Undefined for
/// `mu < 0` (callers fall back to `lambda = 0`).
pub fn pms_lambda(spec: &ModelSpec) -> Result<f64> {
    if spec.mu() < 0.0 {
        return Err(Error::PmsUndefined(spec.mu()));
    }
    Ok(0.5 * spec.amplitude() * (3.0 * spec.mu()).sqrt())
}

/// The order-3 frequency at the stationary point, in the form obtained by
/// substituting `lambda*^2 = 3 A^2 mu / 4` into the order-3 total:
///
/// ```text
/// Omega^2 = (69 A^4 mu^2 + 192 A^2 mu omega^2 + 128 omega^4)
///           / (96 A^2 mu + 128 omega^2)
/// ```
///
/// Evaluated as `omega^2 + 3 t (23 t + 32 omega^2) / (32 (3 t + 4 omega^2))`
/// with `t = A^2 mu`, which is the same rational function but makes the
/// harmonic limit `mu = 0 -> omega^2` exact. The expression depends on the
/// amplitude and coupling only through `t`, so it inherits the rescaling
/// invariance of the equation of motion.
pub fn omega2_pms_derived(spec: &ModelSpec) -> Result<FrequencyResult> {
    let lambda_star = pms_lambda(spec)?;
    let w2 = spec.omega() * spec.omega();
    let t = spec.amplitude() * spec.amplitude() * spec.mu();
    let omega_squared = w2 + 3.0 * t * (23.0 * t + 32.0 * w2) / (32.0 * (3.0 * t + 4.0 * w2));
    Ok(pms_result(spec, lambda_star, omega_squared))
}

/// The stationary-point frequency with the `64 A^4 mu^2` numerator term,
/// kept verbatim for comparison output:
///
/// ```text
/// Omega^2 = (64 A^4 mu^2 + 192 A^2 mu omega^2 + 128 omega^4)
///           / (96 A^2 mu + 128 omega^2)
/// ```
///
/// Evaluated as `omega^2 + t (2 t + 3 omega^2) / (3 t + 4 omega^2)` with
/// `t = A^2 mu`.
pub fn omega2_pms_printed(spec: &ModelSpec) -> Result<FrequencyResult> {
    let lambda_star = pms_lambda(spec)?;
    let w2 = spec.omega() * spec.omega();
    let t = spec.amplitude() * spec.amplitude() * spec.mu();
    let omega_squared = w2 + t * (2.0 * t + 3.0 * w2) / (3.0 * t + 4.0 * w2);
    Ok(pms_result(spec, lambda_star, omega_squared))
}

/// Builds the PMS-tagged result. The partial sums are the cumulative
/// alphas at `lambda*` (where `alpha_3` vanishes identically); the final
/// entry is pinned to the closed rational value so the
/// `omega_squared == last partial` invariant holds exactly.
fn pms_result(spec: &ModelSpec, lambda_star: f64, omega_squared: f64) -> FrequencyResult {
    let at_star = spec
        .with_lambda(lambda_star)
        .expect("stationary lambda is finite and non-negative");
    let alphas = alpha_coeffs(&at_star);
    let p0 = alphas[0];
    let p1 = p0 + alphas[1];
    let p2 = p1 + alphas[2];
    FrequencyResult {
        omega_squared,
        partials: vec![p0, p1, p2, omega_squared],
        lambda_used: lambda_star,
        method_tag: MethodTag::LpldePms,
    }
}

/// Rescales the coupling while preserving `A^2 mu` (and therefore every
/// frequency in this module): `mu -> mu_new`, `A -> A sqrt(mu / mu_new)`.
/// Both couplings must be nonzero and of the same sign.
pub fn rescale(spec: &ModelSpec, mu_new: f64) -> Result<ModelSpec> {
    if spec.mu() == 0.0 || mu_new == 0.0 || spec.mu().signum() != mu_new.signum() {
        return Err(Error::RescaleSignMismatch {
            from: spec.mu(),
            to: mu_new,
        });
    }
    let amplitude = spec.amplitude() * (spec.mu() / mu_new).sqrt();
    ModelSpec::new(spec.omega(), mu_new, amplitude, spec.lambda(), spec.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(omega: f64, mu: f64, amplitude: f64, lambda: f64) -> ModelSpec {
        ModelSpec::new(omega, mu, amplitude, lambda, 3).unwrap()
    }

    fn assert_rel(got: f64, want: f64, tol: f64, msg: &str) {
        let denom = want.abs().max(f64::MIN_POSITIVE);
        assert!(
            ((got - want) / denom).abs() <= tol,
            "{msg}: expected {want}, got {got}"
        );
    }

    #[test]
    fn alpha_coeffs_unit_point() {
        let [a0, a1, a2, a3] = alpha_coeffs(&spec(1.0, 1.0, 1.0, 0.0));
        assert_eq!(a0, 1.0);
        assert_eq!(a1, 0.75);
        assert_rel(a2, -3.0 / 128.0, 1e-15, "alpha_2");
        assert_rel(a3, 9.0 / 512.0, 1e-15, "alpha_3");
    }

    #[test]
    fn alpha_coeffs_linear_oscillator() {
        let [a0, a1, a2, a3] = alpha_coeffs(&spec(1.7, 0.0, 2.0, 0.0));
        assert_eq!([a0, a1, a2, a3], [1.7 * 1.7, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn alpha3_vanishes_at_stationary_lambda() {
        let s = spec(1.0, 1.0, 1.0, 0.75f64.sqrt());
        let [.., a3] = alpha_coeffs(&s);
        assert!(a3.abs() < 1e-16, "alpha_3 = {a3}");
    }

    #[test]
    fn omega2_order3_values() {
        let f = omega2_order3(&spec(1.0, 1.0, 1.0, 0.0));
        assert_rel(f.omega_squared, 1.744140625, 1e-15, "lambda = 0");
        assert_eq!(f.method_tag, MethodTag::Lp);
        assert_eq!(f.omega_squared, *f.partials.last().unwrap());

        let f = omega2_order3(&spec(1.4, 0.0, 3.0, 0.7));
        assert_rel(f.omega_squared, 1.4 * 1.4, 1e-15, "mu = 0");
        assert_eq!(f.method_tag, MethodTag::LpldeFixedLambda);

        let f = omega2_order3(&spec(1.0, 1.0, 1.0, 0.75f64.sqrt()));
        assert_rel(f.omega_squared, 389.0 / 224.0, 1e-14, "stationary lambda");
    }

    #[test]
    fn pms_lambda_examples() {
        assert_rel(
            pms_lambda(&spec(1.0, 3.0, 2.0, 0.0)).unwrap(),
            3.0,
            1e-15,
            "A=2 mu=3",
        );
        assert_eq!(pms_lambda(&spec(1.0, 0.0, 1.0, 0.0)).unwrap(), 0.0);
        assert_rel(
            pms_lambda(&spec(1.0, 1.0, 1.0, 0.0)).unwrap(),
            0.75f64.sqrt(),
            1e-15,
            "A=1 mu=1",
        );
        assert!(matches!(
            pms_lambda(&spec(1.0, -1.0, 1.0, 0.0)),
            Err(Error::PmsUndefined(_))
        ));
    }

    #[test]
    fn derived_pms_values() {
        let f = omega2_pms_derived(&spec(1.0, 1.0, 1.0, 0.0)).unwrap();
        assert_rel(f.omega_squared, 389.0 / 224.0, 1e-15, "unit point");
        assert_eq!(f.method_tag, MethodTag::LpldePms);
        assert_rel(f.lambda_used, 0.75f64.sqrt(), 1e-15, "lambda*");
        assert_eq!(f.omega_squared, *f.partials.last().unwrap());

        let f = omega2_pms_derived(&spec(2.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(f.omega_squared, 4.0, "harmonic limit is exact");
    }

    #[test]
    fn derived_pms_large_amplitude_slope() {
        // Omega^2 / A^2 -> 69/96 = 23/32 as A grows with omega = mu = 1.
        let a = 1.0e6;
        let f = omega2_pms_derived(&spec(1.0, 1.0, a, 0.0)).unwrap();
        assert_rel(
            f.omega_squared / (a * a),
            23.0 / 32.0,
            1e-5,
            "quartic slope",
        );
    }

    #[test]
    fn printed_pms_values() {
        let f = omega2_pms_printed(&spec(1.0, 1.0, 1.0, 0.0)).unwrap();
        assert_rel(f.omega_squared, 384.0 / 224.0, 1e-15, "unit point");

        let f = omega2_pms_printed(&spec(1.3, 0.0, 2.0, 0.0)).unwrap();
        assert_eq!(f.omega_squared, 1.3 * 1.3, "harmonic limit is exact");
    }

    #[test]
    fn printed_minus_derived_gap() {
        // derived - printed = 5 A^4 mu^2 / (96 A^2 mu + 128 omega^2)
        let s = spec(1.0, 1.0, 1.0, 0.0);
        let d = omega2_pms_derived(&s).unwrap().omega_squared;
        let p = omega2_pms_printed(&s).unwrap().omega_squared;
        assert_rel(d - p, 5.0 / 224.0, 1e-12, "numerator gap");
    }

    #[test]
    fn rescale_preserves_a2mu() {
        let s = spec(1.0, 4.0, 1.0, 0.0);
        let r = rescale(&s, 1.0).unwrap();
        assert_rel(r.amplitude(), 2.0, 1e-15, "A' = A sqrt(mu/mu')");
        assert_eq!(r.mu(), 1.0);

        let same = rescale(&s, 4.0).unwrap();
        assert_eq!(same, s);

        let s = spec(1.0, 2.0, 3.0, 0.0);
        let r = rescale(&s, 0.5).unwrap();
        assert_rel(
            r.amplitude() * r.amplitude() * r.mu(),
            18.0,
            1e-14,
            "A^2 mu preserved",
        );

        assert!(rescale(&s, -1.0).is_err());
        assert!(rescale(&s, 0.0).is_err());
        assert!(rescale(&spec(1.0, 0.0, 1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn order3_at_stationary_lambda_equals_derived() {
        for (omega, mu, a) in [(1.0, 1.0, 1.0), (0.7, 2.5, 1.6), (1.9, 0.3, 4.2)] {
            let s = spec(omega, mu, a, 0.0);
            let lambda_star = pms_lambda(&s).unwrap();
            let via_sub = omega2_order3(&s.with_lambda(lambda_star).unwrap());
            let closed = omega2_pms_derived(&s).unwrap();
            assert_rel(
                via_sub.omega_squared,
                closed.omega_squared,
                1e-14,
                "substitution consistency",
            );
        }
    }

    #[test]
    fn stationarity_of_order3_at_pms_lambda() {
        for (omega, mu, a) in [(1.0, 1.0, 1.0), (0.6, 3.0, 2.0), (1.5, 0.2, 0.8)] {
            let s = spec(omega, mu, a, 0.0);
            let lambda_star = pms_lambda(&s).unwrap();
            let h = 1e-5;
            let up = omega2_order3(&s.with_lambda(lambda_star + h).unwrap()).omega_squared;
            let down = omega2_order3(&s.with_lambda(lambda_star - h).unwrap()).omega_squared;
            let deriv = (up - down) / (2.0 * h);
            let scale = omega2_order3(&s.with_lambda(lambda_star).unwrap()).omega_squared;
            assert!(
                deriv.abs() < 1e-8 * scale,
                "dOmega^2/dlambda = {deriv} at lambda* for ({omega}, {mu}, {a})"
            );
        }
    }

    #[test]
    fn lambda_zero_matches_plain_expansion_formula() {
        for (omega, mu, a) in [(1.0, 1.0, 1.0), (0.8, 4.0, 0.5), (2.0, 0.3, 3.0)] {
            let s = spec(omega, mu, a, 0.0);
            let w2 = omega * omega;
            let t = a * a * mu;
            let reference =
                w2 + 0.75 * t - 3.0 * t * t / (128.0 * w2) + 9.0 * t * t * t / (512.0 * w2 * w2);
            assert_rel(
                omega2_order3(&s).omega_squared,
                reference,
                1e-14,
                "plain order-3 expansion",
            );
        }
    }
}
