//! Numeric stationary-point search for the interpolation parameter.
//!
//! The minimal-sensitivity prescription fixes the artificial frequency
//! `lambda` where the observable is locally flat, `d Omega^2 / d lambda = 0`.
//! Since `Omega^2` is smooth and even in `lambda`, the derivative is taken
//! by central differences and roots are bracketed on a grid, then pinned
//! by bisection. When several interior stationary points exist the
//! flattest one (smallest second-derivative magnitude) wins.

/// Grid intervals used to bracket sign changes of the derivative.
const SCAN_INTERVALS: usize = 256;

/// Bisection iteration cap; the bracket shrinks by 2^-1 per step.
const BISECT_ITERS: usize = 100;

/// Central-difference step for the first derivative, scaled as
/// `FD_STEP_REL * (1 + lambda)`.
const FD_STEP_REL: f64 = 1e-5;

/// Step for the tie-breaking second difference (larger, since second
/// differences lose more precision).
const FD2_STEP_REL: f64 = 1e-4;

/// Finds the stationary `lambda` of `omega2` in `(0, lambda_max)`.
///
/// `omega2` must be defined for non-negative arguments and even in
/// `lambda` (it only ever depends on `lambda^2`); evaluations at slightly
/// negative arguments are reflected. Returns `None` when no interior sign
/// change of the derivative exists, e.g. when the truncation order makes
/// the frequency monotone in the interpolation parameter.
pub fn find_stationary_lambda(omega2: impl Fn(f64) -> f64, lambda_max: f64) -> Option<f64> {
    let f = |lambda: f64| omega2(lambda.abs());
    let deriv = |lambda: f64| {
        let h = FD_STEP_REL * (1.0 + lambda);
        (f(lambda + h) - f(lambda - h)) / (2.0 * h)
    };

    let mut roots = Vec::new();
    let step = lambda_max / SCAN_INTERVALS as f64;
    let mut prev_lambda: f64 = 0.0;
    // The derivative vanishes identically at lambda = 0 by evenness, so
    // the scan starts one interval in and only interior brackets count.
    let mut prev_g = deriv(step);
    for i in 2..=SCAN_INTERVALS {
        let lambda = step * i as f64;
        let g = deriv(lambda);
        if prev_g == 0.0 {
            roots.push(prev_lambda);
        } else if prev_g * g < 0.0 {
            roots.push(bisect(&deriv, prev_lambda.max(step), lambda));
        }
        prev_lambda = lambda;
        prev_g = g;
    }

    match roots.len() {
        0 => None,
        1 => Some(roots[0]),
        _ => {
            // Flattest stationary point: smallest |d^2 Omega^2 / d lambda^2|.
            roots
                .into_iter()
                .min_by(|&a, &b| second_diff_abs(&f, a).total_cmp(&second_diff_abs(&f, b)))
        }
    }
}

fn bisect(deriv: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = deriv(lo);
    for _ in 0..BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * (1.0 + mid) {
            return mid;
        }
        let g_mid = deriv(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if g_lo * g_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    0.5 * (lo + hi)
}

fn second_diff_abs(f: &impl Fn(f64) -> f64, lambda: f64) -> f64 {
    let h = FD2_STEP_REL * (1.0 + lambda);
    ((f(lambda + h) - 2.0 * f(lambda) + f(lambda - h)) / (h * h)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_single_interior_minimum() {
        // f(x) = (x^2 - 2)^2 is even with an interior stationary point at sqrt(2).
        let f = |x: f64| (x * x - 2.0) * (x * x - 2.0);
        let root = find_stationary_lambda(f, 4.0).unwrap();
        assert!((root - 2.0f64.sqrt()).abs() < 1e-7, "got {root}");
    }

    #[test]
    fn monotone_function_has_no_stationary_point() {
        assert!(find_stationary_lambda(|x| x * x + 1.0, 3.0).is_none());
    }

    #[test]
    fn tie_break_picks_flattest_point() {
        // Stationary points at 1, 1.5 and 2 with |f''| = 2, 1 and 2:
        // the midpoint is the flattest.
        let f = |x: f64| ((x - 1.0) * (x - 2.0)).powi(2);
        let root = find_stationary_lambda(f, 3.0).unwrap();
        assert!((root - 1.5).abs() < 1e-7, "got {root}");
    }
}
