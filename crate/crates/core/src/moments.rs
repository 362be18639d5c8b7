//! Closed-form HCS normalization and field moments.
//!
//! The textbook form of `⟨a†ⁿaᵐ⟩` carries a prefactor `α*^{n−1}α^{m−1}`
//! outside the bracket. Here that prefactor is multiplied into every bracket
//! term, so each term is a monomial `α*^p α^q` with `p, q ≥ 0` and the result
//! stays well defined at `n = 0`, `m = 0` and `α = 0`.

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::combin::dd_powers;
use crate::error::{Error, Result};
use crate::params::{HcsParams, MomentKey};
use crate::witnesses::MomentProvider;

/// `𝒩 = [1 + 2√(ε(1−ε))·Re[αe^{−iφ}] + (1−ε)|α|²]^{−1/2}`.
pub fn normalization(params: &HcsParams) -> f64 {
    norm_sqr(params).sqrt()
}

/// `𝒩²`.
fn norm_sqr(params: &HcsParams) -> f64 {
    let eps = params.epsilon();
    let alpha = params.alpha();
    let cross = (eps * (1.0 - eps)).sqrt() * (alpha * Complex64::from_polar(1.0, -params.phi())).re;
    1.0 / (1.0 + 2.0 * cross + (1.0 - eps) * alpha.norm_sqr())
}

/// `⟨a†ⁿaᵐ⟩` for the normalized HCS.
pub fn moment(params: &HcsParams, key: MomentKey) -> Result<Complex64> {
    key.check_cap()?;
    Ok(raw_moment(params, key) * norm_sqr(params))
}

/// Bracket of the moment expression, without `𝒩²`.
fn raw_moment(params: &HcsParams, key: MomentKey) -> Complex64 {
    let eps = params.epsilon();
    let mix = (eps * (1.0 - eps)).sqrt();
    let alpha = params.alpha();
    let MomentKey { n, m } = key;
    // α*^p α^q from double-double power tables, rounded once at the end
    let conj_pows = dd_powers(alpha.conj(), n + 1);
    let alpha_pows = dd_powers(alpha, m + 1);
    let mono = |p: u32, q: u32| conj_pows[p as usize].mul(alpha_pows[q as usize]).to_c64();
    let phase = Complex64::from_polar(1.0, params.phi());

    let coherent = mono(n, m) * eps;

    // ⟨α|a†ⁿaᵐa†|α⟩ and ⟨α|a a†ⁿaᵐ|α⟩
    let mut right = mono(n + 1, m);
    if m > 0 {
        right += mono(n, m - 1) * m as f64;
    }
    let mut left = mono(n, m + 1);
    if n > 0 {
        left += mono(n - 1, m) * n as f64;
    }
    let cross = (phase * right + phase.conj() * left) * mix;

    // ⟨α|a a†ⁿaᵐ a†|α⟩
    let mut added = mono(n + 1, m + 1) + mono(n, m) * (n + m + 1) as f64;
    if n > 0 && m > 0 {
        added += mono(n - 1, m - 1) * (n as f64 * m as f64);
    }

    coherent + cross + added * (1.0 - eps)
}

/// `⟨a⟩` from its dedicated expression.
pub fn mean_a(params: &HcsParams) -> Complex64 {
    let eps = params.epsilon();
    let mix = (eps * (1.0 - eps)).sqrt();
    let alpha = params.alpha();
    let abs2 = alpha.norm_sqr();
    let phase = Complex64::from_polar(1.0, params.phi());
    let bracket = alpha * eps
        + (phase * (1.0 + abs2) + phase.conj() * alpha * alpha) * mix
        + alpha * (2.0 + abs2) * (1.0 - eps);
    bracket * norm_sqr(params)
}

/// `⟨a†a⟩` from its dedicated expression.
pub fn mean_number(params: &HcsParams) -> f64 {
    let eps = params.epsilon();
    let alpha = params.alpha();
    let abs2 = alpha.norm_sqr();
    let re = (alpha * Complex64::from_polar(1.0, -params.phi())).re;
    let bracket = 1.0 - eps
        + (3.0 - 2.0 * eps) * abs2
        + (1.0 - eps) * abs2 * abs2
        + 2.0 * (eps * (1.0 - eps)).sqrt() * (1.0 + abs2) * re;
    bracket * norm_sqr(params)
}

/// Closed-form [`MomentProvider`] for a fixed HCS.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    params: HcsParams,
    norm_sqr: f64,
}

impl ClosedForm {
    pub fn new(params: HcsParams) -> Self {
        Self {
            params,
            norm_sqr: norm_sqr(&params),
        }
    }

    pub fn params(&self) -> &HcsParams {
        &self.params
    }
}

impl MomentProvider for ClosedForm {
    fn moment(&self, key: MomentKey) -> Result<Complex64> {
        key.check_cap()?;
        Ok(raw_moment(&self.params, key) * self.norm_sqr)
    }

    fn mean_a(&self) -> Result<Complex64> {
        Ok(mean_a(&self.params))
    }

    fn mean_number(&self) -> Result<f64> {
        let n = mean_number(&self.params);
        if n.is_finite() {
            Ok(n)
        } else {
            Err(Error::NonFinite("<a†a>"))
        }
    }
}
