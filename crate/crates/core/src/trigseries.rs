//! Exact arithmetic on finite cosine series in the scaled time `tau`.
//!
//! Every perturbative iterate and driving term in this crate is a finite sum
//! of `cos(k*tau)` harmonics. That class is closed under addition,
//! multiplication (via the product-to-sum identity) and double
//! differentiation, so the whole order-by-order recursion can run inside it
//! without ever seeing a sine or a non-integer frequency.

use std::collections::BTreeMap;

/// Relative prune threshold: after every operation, coefficients smaller
/// than this fraction of the largest coefficient magnitude are dropped.
/// Keeps the harmonic support tight against round-off debris.
const PRUNE_REL: f64 = 1e-14;

/// A finite, even trigonometric polynomial `sum_k c_k cos(k*tau)`.
///
/// Coefficients are stored sparsely; an absent harmonic has coefficient
/// zero. The zero series is the empty map.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CosineSeries {
    coeffs: BTreeMap<u32, f64>,
}

impl CosineSeries {
    /// The zero series.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single harmonic `c * cos(k*tau)`.
    pub fn harmonic(k: u32, c: f64) -> Self {
        let mut s = Self::default();
        if c != 0.0 {
            s.coeffs.insert(k, c);
        }
        s
    }

    /// The constant series `c` (harmonic 0).
    pub fn constant(c: f64) -> Self {
        Self::harmonic(0, c)
    }

    /// Builds a series from `(harmonic, coefficient)` pairs, summing
    /// duplicates and pruning.
    pub fn from_pairs<I: IntoIterator<Item = (u32, f64)>>(pairs: I) -> Self {
        let mut s = Self::default();
        for (k, c) in pairs {
            *s.coeffs.entry(k).or_insert(0.0) += c;
        }
        s.prune();
        s
    }

    /// Coefficient of `cos(k*tau)`; zero when the harmonic is absent.
    pub fn coeff(&self, k: u32) -> f64 {
        self.coeffs.get(&k).copied().unwrap_or(0.0)
    }

    /// Iterates over the nonzero `(harmonic, coefficient)` pairs in
    /// ascending harmonic order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest harmonic with a nonzero coefficient.
    pub fn max_harmonic(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest coefficient magnitude; zero for the zero series.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Coefficient-wise sum; the harmonic support is the union of inputs.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            *out.coeffs.entry(k).or_insert(0.0) += c;
        }
        out.prune();
        out
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Multiplies every coefficient by the scalar `s`.
    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::default();
        for (&k, &c) in &self.coeffs {
            out.coeffs.insert(k, c * s);
        }
        out.prune();
        out
    }

    /// Exact product using `cos(j) cos(k) = (cos(j+k) + cos(|j-k|)) / 2`.
    ///
    /// The maximum harmonic of the result is the sum of the inputs' maxima.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&j, &a) in &self.coeffs {
            for (&k, &b) in &other.coeffs {
                let half = 0.5 * a * b;
                *out.coeffs.entry(j + k).or_insert(0.0) += half;
                *out.coeffs.entry(j.abs_diff(k)).or_insert(0.0) += half;
            }
        }
        out.prune();
        out
    }

    /// `d^2/dtau^2`: harmonic `k` picks up a factor `-k^2`, the constant
    /// term is annihilated.
    pub fn second_derivative(&self) -> Self {
        let mut out = Self::default();
        for (&k, &c) in &self.coeffs {
            if k > 0 {
                let k2 = (k as f64) * (k as f64);
                out.coeffs.insert(k, -k2 * c);
            }
        }
        out.prune();
        out
    }

    /// Evaluates `sum_k c_k cos(k*tau)` at the given scaled time.
    pub fn eval(&self, tau: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&k, &c)| c * (k as f64 * tau).cos())
            .sum()
    }

    /// Applies the polynomial `c_0 + c_1 x + c_2 x^2 + ...` to a series by
    /// Horner's scheme over the series algebra. Exact for polynomial
    /// nonlinearities; this is how a smooth restoring force enters the
    /// recursion without symbolic differentiation.
    pub fn poly_apply(poly: &[f64], x: &Self) -> Self {
        let mut acc = Self::zero();
        for &c in poly.iter().rev() {
            acc = acc.mul(x).add(&Self::constant(c));
        }
        acc
    }

    fn prune(&mut self) {
        let m = self.max_abs_coeff();
        self.coeffs
            .retain(|_, c| *c != 0.0 && c.abs() >= PRUNE_REL * m);
    }
}
