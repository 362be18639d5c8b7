//! Brute-force truncated Fock-space engine.
//!
//! States are amplitude vectors over `|0⟩…|dim−1⟩`. Every quantity is computed
//! by applying ladder operators to the vector directly, which makes this module
//! the independent reference for the closed-form results in
//! [`moments`](crate::moments) and [`witnesses`](crate::witnesses).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::combin::CompensatedSum;
use crate::error::{Error, Result};
use crate::params::{HcsParams, MomentKey};
use crate::witnesses::{MomentProvider, QuadratureSpec};

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
pub const DEFAULT_MIN_DIM: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How to pick and check the Fock cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Largest acceptable probability mass beyond the cutoff.
    pub tail_tol: f64,
    pub min_dim: usize,
    /// Extra levels on top of the photon-number heuristic.
    pub headroom: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: DEFAULT_TAIL_TOL,
            min_dim: DEFAULT_MIN_DIM,
            headroom: 2,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tail_tol: f64, min_dim: usize) -> Result<Self> {
        if !(tail_tol.is_finite() && tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::InvalidParameter("tail tolerance must lie in (0, 1)"));
        }
        if min_dim < DEFAULT_MIN_DIM {
            return Err(Error::InvalidParameter("min_dim must be at least 16"));
        }
        Ok(Self {
            tail_tol,
            min_dim,
            headroom: 2,
        })
    }

    /// Reserves room for ladder products up to `power`.
    pub fn with_ladder_power(mut self, power: usize) -> Self {
        self.headroom = power + 2;
        self
    }
}

/// Smallest adequate cutoff for a coherent amplitude `alpha`.
///
/// Returns at least `policy.min_dim`, at least `⌈|α|² + 10√(|α|²+1)⌉ + headroom`,
/// and large enough that the Poisson tail of `|α|²` beyond `dim − 2` is below
/// `policy.tail_tol`.
pub fn choose_truncation(alpha: Complex64, policy: &TruncationPolicy) -> usize {
    let mean = alpha.norm_sqr();
    let heuristic = (mean + 10.0 * (mean + 1.0).sqrt()).ceil() as usize + policy.headroom;
    let mut dim = policy.min_dim.max(heuristic).max(2);
    while poisson_tail(mean, dim - 1) >= policy.tail_tol {
        dim += 1;
    }
    dim
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `P(N ≥ from)` for `N ~ Poisson(mean)`.
pub fn poisson_tail(mean: f64, from: usize) -> f64 {
    if mean == 0.0 {
        return if from == 0 { 1.0 } else { 0.0 };
    }
    let mut term = (-mean + from as f64 * mean.ln() - ln_factorial(from)).exp();
    let mut sum = 0.0;
    let mut k = from;
    loop {
        sum += term;
        k += 1;
        term *= mean / k as f64;
        if (k as f64 > mean && term <= sum * 1e-18) || term == 0.0 {
            break;
        }
    }
    sum.min(1.0)
}

/// Untruncated coherent amplitudes `e^{−|α|²/2} αᵏ/√(k!)`, generated lazily.
struct CoherentAmplitudes {
    k: usize,
    ln_mag: f64,
    ln_abs: f64,
    arg: f64,
    zero: bool,
}

impl CoherentAmplitudes {
    fn new(alpha: Complex64) -> Self {
        let abs = alpha.norm();
        Self {
            k: 0,
            ln_mag: -0.5 * abs * abs,
            ln_abs: abs.ln(),
            arg: if abs == 0.0 { 0.0 } else { alpha.arg() },
            zero: abs == 0.0,
        }
    }
}

impl Iterator for CoherentAmplitudes {
    type Item = Complex64;

    fn next(&mut self) -> Option<Complex64> {
        let k = self.k;
        if k > 0 {
            self.ln_mag += self.ln_abs - 0.5 * (k as f64).ln();
        }
        self.k += 1;
        if self.zero {
            return Some(if k == 0 { Complex64::new(1.0, 0.0) } else { ZERO });
        }
        Some(Complex64::from_polar(self.ln_mag.exp(), k as f64 * self.arg))
    }
}

/// Generates amplitudes `f(k)` for `k < dim` and sums `|f(k)|²` over `k ≥ dim`
/// until the (eventually decreasing) terms are negligible.
fn amplitudes_with_tail(
    dim: usize,
    mean: f64,
    mut next: impl FnMut() -> Complex64,
) -> (Vec<Complex64>, f64) {
    let amps: Vec<Complex64> = (0..dim).map(|_| next()).collect();
    let mut tail = 0.0;
    let mut k = dim;
    loop {
        let p = next().norm_sqr();
        tail += p;
        k += 1;
        if (k as f64 > mean + 2.0 && p <= tail * 1e-18) || (k as f64 > mean + 2.0 && p == 0.0) {
            break;
        }
    }
    (amps, tail)
}

/// Truncated Fock-basis state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
    tail_mass: f64,
}

impl FockVector {
    /// Wraps raw amplitudes. No normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidParameter("empty Fock vector"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("Fock amplitude"));
        }
        Ok(Self {
            amps,
            tail_mass: 0.0,
        })
    }

    /// Number state `|k⟩` in a basis of size `dim`.
    pub fn number_state(k: usize, dim: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::LadderExceedsDim {
                power: k as u32,
                dim,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(amps)
    }

    pub(crate) fn with_tail(mut self, tail_mass: f64) -> Self {
        self.tail_mass = tail_mass;
        self
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Probability mass of the exact state that lies beyond the cutoff.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Returns a unit-norm copy.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        let s = 1.0 / n.sqrt();
        Ok(Self {
            amps: self.amps.iter().map(|z| z * s).collect(),
            tail_mass: self.tail_mass,
        })
    }

    /// `⟨self|other⟩`, zero-padding the shorter vector.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        let mut s = CompensatedSum::default();
        for (u, v) in self.amps.iter().zip(&other.amps) {
            s.add(u.conj() * v);
        }
        s.value()
    }

    /// Zero-pads to `dim` levels; never truncates.
    pub fn padded(&self, dim: usize) -> Self {
        let mut amps = self.amps.clone();
        if dim > amps.len() {
            amps.resize(dim, ZERO);
        }
        Self {
            amps,
            tail_mass: self.tail_mass,
        }
    }
}

fn check_tail(dim: usize, tail_mass: f64, tol: f64) -> Result<()> {
    if tail_mass > tol || !tail_mass.is_finite() {
        Err(Error::InadequateTruncation { dim, tail_mass, tol })
    } else {
        Ok(())
    }
}

/// Coherent state `|α⟩` on `dim` levels, renormalized within the truncation.
pub fn build_coherent(alpha: Complex64, dim: usize, tail_tol: f64) -> Result<FockVector> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive"));
    }
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    let mut coh = CoherentAmplitudes::new(alpha);
    let (amps, tail) = amplitudes_with_tail(dim, alpha.norm_sqr(), || coh.next().unwrap_or(ZERO));
    check_tail(dim, tail, tail_tol)?;
    FockVector::from_amplitudes(amps)?.with_tail(tail).normalized()
}

/// HCS amplitudes before normalization, and their mass beyond the cutoff.
pub(crate) fn hcs_raw(params: &HcsParams, dim: usize) -> (Vec<Complex64>, f64) {
    let eps = params.epsilon();
    let w_coh = eps.sqrt();
    let w_add = Complex64::from_polar((1.0 - eps).sqrt(), params.phi());
    let mut coh = CoherentAmplitudes::new(params.alpha());
    let mut prev = ZERO;
    let mut k = 0usize;
    // a†|α⟩ contributes √k·c_{k−1} at level k
    let next = || {
        let c = coh.next().unwrap_or(ZERO);
        let v = c * w_coh + w_add * (k as f64).sqrt() * prev;
        prev = c;
        k += 1;
        v
    };
    amplitudes_with_tail(dim, params.alpha().norm_sqr() + 1.0, next)
}

/// `√ε|α⟩ + √(1−ε)e^{iφ}a†|α⟩` on `dim` levels, normalized numerically.
pub fn build_hcs(params: &HcsParams, dim: usize, tail_tol: f64) -> Result<FockVector> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive"));
    }
    let (amps, tail) = hcs_raw(params, dim);
    let v = FockVector::from_amplitudes(amps)?;
    let rel_tail = tail / (v.norm_sqr() + tail);
    check_tail(dim, rel_tail, tail_tol)?;
    v.with_tail(rel_tail).normalized()
}

/// `aᵖ v`; the result has `len − p` entries.
fn lower(v: &[Complex64], power: u32) -> Vec<Complex64> {
    let mut w = v.to_vec();
    for _ in 0..power {
        w = (0..w.len().saturating_sub(1))
            .map(|k| w[k + 1] * ((k + 1) as f64).sqrt())
            .collect();
    }
    w
}

/// `⟨ψ|a†ⁿaᵐ|ψ⟩ = ⟨aⁿψ|aᵐψ⟩`.
pub fn numeric_moment(state: &FockVector, key: MomentKey) -> Result<Complex64> {
    let dim = state.dim();
    let power = key.n.max(key.m);
    if power as usize >= dim {
        return Err(Error::LadderExceedsDim { power, dim });
    }
    let left = lower(&state.amps, key.n);
    let right = lower(&state.amps, key.m);
    let mut s = CompensatedSum::default();
    for (u, v) in left.iter().zip(&right) {
        s.add(u.conj() * v);
    }
    Ok(s.value())
}

/// `X_ψ w` with `X_ψ = (a†e^{iψ} + ae^{−iψ})/√2`, on the same support.
fn apply_quadrature(w: &[Complex64], psi: f64) -> Vec<Complex64> {
    let up = Complex64::from_polar(core::f64::consts::FRAC_1_SQRT_2, psi);
    let down = up.conj();
    let dim = w.len();
    (0..dim)
        .map(|k| {
            let mut z = ZERO;
            if k > 0 {
                z += up * (k as f64).sqrt() * w[k - 1];
            }
            if k + 1 < dim {
                z += down * ((k + 1) as f64).sqrt() * w[k + 1];
            }
            z
        })
        .collect()
}

/// `⟨(ΔX_ψ)^order⟩` by repeated application of `X_ψ − ⟨X_ψ⟩` to the state.
///
/// The state is zero-padded by `order` levels first, so the powered operator
/// never leaves the basis and no extra truncation error enters. The quadrature
/// matrix is the physical one with unit commutator; `quad.commutator_c` is not
/// used here.
pub fn quadrature_central_moment(state: &FockVector, quad: &QuadratureSpec, order: u32) -> Result<f64> {
    if order == 0 || order % 2 == 1 || order > 10 {
        return Err(Error::OrderOutOfRange { order, max: 10 });
    }
    let psi_vec = state.padded(state.dim() + order as usize + 1).amps;
    let psi = quad.psi;
    let xs = apply_quadrature(&psi_vec, psi);
    let mean = dot(&psi_vec, &xs).re;
    let mut w = psi_vec.clone();
    for _ in 0..order {
        let xw = apply_quadrature(&w, psi);
        w = xw.iter().zip(&w).map(|(x, v)| x - v * mean).collect();
    }
    let z = dot(&psi_vec, &w);
    if z.im.abs() > 1e-10 * z.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue { re: z.re, im: z.im });
    }
    Ok(z.re)
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let mut s = CompensatedSum::default();
    for (a, b) in u.iter().zip(v) {
        s.add(a.conj() * b);
    }
    s.value()
}

/// `|⟨u|v⟩|²` for unit-norm inputs of possibly different dimension.
pub fn fidelity(u: &FockVector, v: &FockVector) -> Result<f64> {
    for s in [u, v] {
        let n = s.norm_sqr();
        if (n - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
    }
    Ok(u.inner(v).norm_sqr().clamp(0.0, 1.0))
}

impl MomentProvider for FockVector {
    fn moment(&self, key: MomentKey) -> Result<Complex64> {
        key.check_cap()?;
        numeric_moment(self, key)
    }

    fn mean_a(&self) -> Result<Complex64> {
        numeric_moment(self, MomentKey::new(0, 1))
    }
}
