//! Order-by-order distorted-time recursion with a lambda-interpolated
//! linear term.
//!
//! The oscillator `x'' + omega^2 x = -mu x^3` is rewritten in the scaled
//! time `tau = Omega t` with an artificial linear frequency shift
//! `lambda^2` moved across the equals sign:
//!
//! ```text
//! Omega^2 x''(tau) + (omega^2 + lambda^2) x(tau) = delta [ lambda^2 x - mu x^3 ]
//! ```
//!
//! Both `Omega^2 = sum_n alpha_n` and `x = sum_n x_n(tau)` are expanded in
//! the bookkeeping parameter `delta` (set to one at the end; the order
//! index is the only trace of it). Each order produces a linear
//! inhomogeneous equation whose resonant `cos(tau)` forcing would grow
//! secularly in time; choosing `alpha_n` to cancel it fixes the frequency
//! corrections order by order. Everything lives in the closed algebra of
//! [`CosineSeries`].

use crate::closed_forms::{FrequencyResult, MethodTag};
use crate::error::{Error, Result};
use crate::pms;
use crate::trigseries::CosineSeries;

/// Highest supported expansion order. Beyond this, double-precision
/// cancellation in high harmonics is untrusted.
pub const MAX_ORDER: usize = 16;

/// Relative tolerance on the residual `cos(tau)` component accepted by
/// [`ExpansionState::solve_order`]; anything larger signals a
/// secular-cancellation bug upstream.
const SECULAR_RESIDUE_REL: f64 = 1e-10;

/// One Duffing problem instance plus the expansion controls.
///
/// `omega` is the linear frequency, `mu` the cubic coupling, `amplitude`
/// the initial displacement `x(0) = A` (with `x'(0) = 0`), `lambda` the
/// artificial interpolation frequency and `order` the truncation order of
/// the expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelSpec {
    omega: f64,
    mu: f64,
    amplitude: f64,
    lambda: f64,
    order: usize,
}

impl ModelSpec {
    /// Validates and builds a model. `omega` and `amplitude` must be
    /// positive, `lambda` non-negative, `order <= MAX_ORDER`, everything
    /// finite. `mu` may have either sign.
    pub fn new(omega: f64, mu: f64, amplitude: f64, lambda: f64, order: usize) -> Result<Self> {
        for (name, value) in [
            ("omega", omega),
            ("mu", mu),
            ("amplitude", amplitude),
            ("lambda", lambda),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if omega <= 0.0 {
            return Err(Error::NonPositiveOmega(omega));
        }
        if amplitude <= 0.0 {
            return Err(Error::NonPositiveAmplitude(amplitude));
        }
        if lambda < 0.0 {
            return Err(Error::NegativeLambda(lambda));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Ok(Self {
            omega,
            mu,
            amplitude,
            lambda,
            order,
        })
    }

    /// Same model with a different interpolation frequency.
    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(self.omega, self.mu, self.amplitude, lambda, self.order)
    }

    /// Same model truncated at a different order.
    pub fn with_order(self, order: usize) -> Result<Self> {
        Self::new(self.omega, self.mu, self.amplitude, self.lambda, order)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The interpolating linear frequency squared, `omega^2 + lambda^2`.
    /// This is also the zeroth-order coefficient `alpha_0`.
    pub fn interpolator_squared(&self) -> f64 {
        self.omega * self.omega + self.lambda * self.lambda
    }

    /// `omega^2 + mu A^2`. Positive iff the motion starting at rest from
    /// `x = A` is a bounded oscillation.
    pub fn bounded_indicator(&self) -> f64 {
        self.omega * self.omega + self.mu * self.amplitude * self.amplitude
    }
}

/// The accumulated frequency coefficients `alpha_0..alpha_N` and solution
/// corrections `x_0(tau)..x_N(tau)`.
#[derive(Clone, Debug)]
pub struct ExpansionState {
    spec: ModelSpec,
    /// Polynomial coefficients of the perturbing force `f(x)` on the
    /// right-hand side; the spec's cubic `-mu x^3` unless the state was
    /// built through [`Self::run_polynomial`].
    force: Vec<f64>,
    alphas: Vec<f64>,
    solutions: Vec<CosineSeries>,
}

impl ExpansionState {
    /// Zeroth order: `alpha_0 = omega^2 + lambda^2`, `x_0 = A cos(tau)`.
    pub fn init(spec: ModelSpec) -> Result<Self> {
        Self::init_with_force(spec, vec![0.0, 0.0, 0.0, -spec.mu])
    }

    fn init_with_force(spec: ModelSpec, force: Vec<f64>) -> Result<Self> {
        let alpha0 = spec.interpolator_squared();
        if alpha0 <= 0.0 {
            return Err(Error::NonPositiveInterpolator(alpha0));
        }
        Ok(Self {
            spec,
            force,
            alphas: vec![alpha0],
            solutions: vec![CosineSeries::harmonic(1, spec.amplitude)],
        })
    }

    /// Rebuilds a state from raw parts. Intended for diagnostics (for
    /// example, probing how the residual reacts to a corrupted
    /// coefficient); no claim is made that the parts satisfy the
    /// recursion.
    pub fn from_parts(
        spec: ModelSpec,
        alphas: Vec<f64>,
        solutions: Vec<CosineSeries>,
    ) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != solutions.len() {
            return Err(Error::StatePartsMismatch(alphas.len(), solutions.len()));
        }
        Ok(Self {
            spec,
            force: vec![0.0, 0.0, 0.0, -spec.mu],
            alphas,
            solutions,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    /// Frequency coefficients computed so far, `alpha_0..alpha_n`.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Solution corrections computed so far, `x_0..x_n`.
    pub fn solutions(&self) -> &[CosineSeries] {
        &self.solutions
    }

    /// Number of fully computed orders minus one.
    pub fn highest_order(&self) -> usize {
        self.solutions.len() - 1
    }

    /// The `alpha_n`-independent part of the order-`n` driving term:
    ///
    /// ```text
    /// S~_n = - sum_{k=1}^{n-1} alpha_k x''_{n-k} + lambda^2 x_{n-1} - mu [x^3]_{n-1}
    /// ```
    ///
    /// where `[x^3]_{n-1}` is the order-(n-1) coefficient of the cube of
    /// the truncated solution series (for a general polynomial force the
    /// last term is `[f(x)]_{n-1}`). The remaining `+ alpha_n A cos(tau)`
    /// piece (from `-alpha_n x_0''`) is supplied by
    /// [`Self::cancel_secular`].
    pub fn driving_term(&self, n: usize) -> Result<CosineSeries> {
        if n == 0 || n > self.solutions.len() || n > self.alphas.len() {
            return Err(Error::OrderOutOfRange {
                n,
                available: self.solutions.len(),
            });
        }
        let lambda_sq = self.spec.lambda * self.spec.lambda;
        let mut s = self.solutions[n - 1].scale(lambda_sq);
        s = s.add(&force_order(&self.solutions, &self.force, n - 1));
        for k in 1..n {
            s = s.sub(
                &self.solutions[n - k]
                    .second_derivative()
                    .scale(self.alphas[k]),
            );
        }
        Ok(s)
    }

    /// Fixes `alpha_n` by cancelling the resonant `cos(tau)` forcing:
    /// the full driving term `S~_n + alpha_n A cos(tau)` must have a zero
    /// fundamental component, so `alpha_n = -s_1 / A`. Appends the value
    /// to the state and returns it.
    pub fn cancel_secular(&mut self, n: usize, driving: &CosineSeries) -> Result<f64> {
        if n != self.alphas.len() {
            return Err(Error::OrderOutOfRange {
                n,
                available: self.alphas.len(),
            });
        }
        let alpha_n = -driving.coeff(1) / self.spec.amplitude;
        self.alphas.push(alpha_n);
        Ok(alpha_n)
    }

    /// Solves the order-`n` linear equation for `x_n` given the driving
    /// term with its `cos(tau)` component already cancelled.
    ///
    /// Harmonic `k != 1` gets `s_k / ((omega^2+lambda^2)(1-k^2))` (for
    /// `k = 0` this is `s_0 / (omega^2+lambda^2)`); the free homogeneous
    /// `cos(tau)` coefficient is then fixed so that `x_n(0) = 0`, keeping
    /// the total amplitude pinned at `A`.
    pub fn solve_order(&mut self, n: usize, reduced: &CosineSeries) -> Result<CosineSeries> {
        if n == 0 || n != self.solutions.len() {
            return Err(Error::OrderOutOfRange {
                n,
                available: self.solutions.len(),
            });
        }
        let residue = reduced.coeff(1);
        let scale = reduced.max_abs_coeff();
        if residue != 0.0 && residue.abs() > SECULAR_RESIDUE_REL * scale {
            return Err(Error::SecularResidue {
                order: n,
                coeff: residue,
            });
        }
        let alpha0 = self.alphas[0];
        let mut sum_others = 0.0;
        let mut pairs = Vec::new();
        for (k, c) in reduced.iter() {
            if k == 1 {
                continue;
            }
            let kf = k as f64;
            let coeff = c / (alpha0 * (1.0 - kf * kf));
            sum_others += coeff;
            pairs.push((k, coeff));
        }
        pairs.push((1, -sum_others));
        let x_n = CosineSeries::from_pairs(pairs);
        self.solutions.push(x_n.clone());
        Ok(x_n)
    }

    /// Runs the recursion through the spec's order.
    pub fn run(spec: ModelSpec) -> Result<Self> {
        Self::init(spec)?.advance_through(spec.order)
    }

    /// Runs the recursion with an arbitrary polynomial perturbing force
    /// `f(x) = sum_j force[j] x^j` in place of the spec's cubic
    /// `-mu x^3` (which corresponds to `force = [0, 0, 0, -mu]`); the
    /// spec's `mu` is not consulted. Everything else works identically:
    /// the force enters through exact series composition, the resonant
    /// component fixes each `alpha_n`, and `x_n(0) = 0`.
    pub fn run_polynomial(spec: ModelSpec, force: &[f64]) -> Result<Self> {
        if let Some(&bad) = force.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                name: "force coefficient",
                value: bad,
            });
        }
        Self::init_with_force(spec, force.to_vec())?.advance_through(spec.order)
    }

    fn advance_through(mut self, order: usize) -> Result<Self> {
        let resonant = CosineSeries::harmonic(1, self.spec.amplitude);
        for n in 1..=order {
            let driving = self.driving_term(n)?;
            let alpha_n = self.cancel_secular(n, &driving)?;
            let reduced = driving.add(&resonant.scale(alpha_n));
            self.solve_order(n, &reduced)?;
        }
        Ok(self)
    }

    /// Total `Omega^2 = sum alpha_n` with the cumulative per-order sums.
    ///
    /// A non-positive total is still returned; check
    /// [`FrequencyResult::is_physical`] before taking square roots.
    pub fn frequency_squared(&self) -> FrequencyResult {
        let mut partials = Vec::with_capacity(self.alphas.len());
        let mut total = 0.0;
        for &a in &self.alphas {
            total += a;
            partials.push(total);
        }
        let method_tag = if self.spec.lambda == 0.0 {
            MethodTag::Lp
        } else {
            MethodTag::LpldeFixedLambda
        };
        FrequencyResult {
            omega_squared: total,
            partials,
            lambda_used: self.spec.lambda,
            method_tag,
        }
    }

    /// Order-by-order residual of the interpolated equation of motion.
    ///
    /// For each order `m` the expansion must balance
    ///
    /// ```text
    /// sum_{k=0}^{m} alpha_k x''_{m-k} + (omega^2+lambda^2) x_m
    ///     = lambda^2 x_{m-1} - mu [x^3]_{m-1}
    /// ```
    ///
    /// (right-hand side absent for `m = 0`). Returns the worst absolute
    /// imbalance over the samples, normalized by the largest coefficient
    /// magnitude among the participating terms of that order, i.e. a
    /// result of `r` means the equations balance to `r` times their own
    /// coefficient scale.
    pub fn residual(&self, tau_samples: &[f64]) -> f64 {
        let lambda_sq = self.spec.lambda * self.spec.lambda;
        let alpha0 = self.spec.interpolator_squared();
        let mut worst: f64 = 0.0;
        for m in 0..self.solutions.len() {
            let mut terms: Vec<CosineSeries> = Vec::new();
            for k in 0..=m {
                terms.push(
                    self.solutions[m - k]
                        .second_derivative()
                        .scale(self.alphas[k]),
                );
            }
            terms.push(self.solutions[m].scale(alpha0));
            if m >= 1 {
                terms.push(self.solutions[m - 1].scale(-lambda_sq));
                terms.push(force_order(&self.solutions, &self.force, m - 1).scale(-1.0));
            }
            let scale = terms
                .iter()
                .map(CosineSeries::max_abs_coeff)
                .fold(0.0, f64::max);
            if scale == 0.0 {
                continue;
            }
            let mut balance = CosineSeries::zero();
            for t in &terms {
                balance = balance.add(t);
            }
            for &tau in tau_samples {
                worst = worst.max(balance.eval(tau).abs() / scale);
            }
        }
        worst
    }
}

/// The order-`m` delta-coefficient of `f(sum_i delta^i x_i)` for a
/// polynomial force `f(x) = sum_j poly[j] x^j`, via the per-order table of
/// powers of the truncated series. Exact: only series products and sums.
fn force_order(solutions: &[CosineSeries], poly: &[f64], m: usize) -> CosineSeries {
    let mut result = CosineSeries::zero();
    // power[p] holds the order-p coefficient of x^j, starting at x^0 = 1.
    let mut power: Vec<CosineSeries> = Vec::with_capacity(m + 1);
    power.push(CosineSeries::constant(1.0));
    power.resize(m + 1, CosineSeries::zero());
    for (j, &c) in poly.iter().enumerate() {
        if j > 0 {
            let mut next = vec![CosineSeries::zero(); m + 1];
            for (p, slot) in next.iter_mut().enumerate() {
                for i in 0..=p {
                    if p - i < solutions.len() {
                        *slot = slot.add(&power[i].mul(&solutions[p - i]));
                    }
                }
            }
            power = next;
        }
        if c != 0.0 {
            result = result.add(&power[m].scale(c));
        }
    }
    result
}

/// Numerically locates the stationary interpolation frequency of the
/// order-`order` expansion: the lambda at which `d Omega^2 / d lambda`
/// vanishes, searched over `[0, 4 A sqrt(max(mu, 0)) + omega]`.
///
/// Errors with [`Error::PmsUndefined`] for `mu < 0` (the stationary point
/// leaves the real line; callers usually fall back to `lambda = 0`) and
/// [`Error::PmsNotFound`] when no interior stationary point exists, which
/// is the generic situation at even orders.
pub fn pms_lambda_numeric(omega: f64, mu: f64, amplitude: f64, order: usize) -> Result<f64> {
    if mu < 0.0 {
        return Err(Error::PmsUndefined(mu));
    }
    // Validate the rest of the parameters once up front.
    let base = ModelSpec::new(omega, mu, amplitude, 0.0, order)?;
    if mu == 0.0 {
        return Ok(0.0);
    }
    let lambda_max = 4.0 * amplitude * mu.sqrt() + omega;
    let omega2 = |lambda: f64| -> f64 {
        let spec = base
            .with_lambda(lambda.abs())
            .expect("lambda magnitude is always admissible");
        ExpansionState::run(spec)
            .expect("validated spec must run")
            .frequency_squared()
            .omega_squared
    };
    pms::find_stationary_lambda(omega2, lambda_max).ok_or(Error::PmsNotFound(lambda_max))
}
