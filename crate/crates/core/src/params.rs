//! State parameters and moment keys.

use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported `n + m` for `⟨a†ⁿaᵐ⟩`.
pub const MOMENT_CAP: u32 = 24;

/// The `(ε, φ, α)` triple of a hybrid coherent state
/// `𝒩[√ε|α⟩ + √(1−ε)e^{iφ}a†|α⟩]`.
///
/// `phi` is stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcsParams {
    epsilon: f64,
    phi: f64,
    alpha: Complex64,
}

impl HcsParams {
    pub fn new(epsilon: f64, phi: f64, alpha: Complex64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::NonFinite("epsilon"));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::EpsilonOutOfRange(epsilon));
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        Ok(Self {
            epsilon,
            phi: normalize_angle(phi),
            alpha,
        })
    }

    /// Builds the state from `|α|` and `arg α`.
    pub fn from_polar(epsilon: f64, phi: f64, alpha_abs: f64, alpha_arg: f64) -> Result<Self> {
        if !alpha_abs.is_finite() || !alpha_arg.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if alpha_abs < 0.0 {
            return Err(Error::InvalidParameter("|alpha| must be non-negative"));
        }
        Self::new(epsilon, phi, Complex64::from_polar(alpha_abs, alpha_arg))
    }

    /// Plain coherent state `|α⟩` (ε = 1).
    pub fn coherent(alpha: Complex64) -> Result<Self> {
        Self::new(1.0, 0.0, alpha)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn alpha_abs(&self) -> f64 {
        self.alpha.norm()
    }

    /// `ζ = arg α`, zero when `α = 0`.
    pub fn alpha_arg(&self) -> f64 {
        if self.alpha == Complex64::new(0.0, 0.0) {
            0.0
        } else {
            self.alpha.arg()
        }
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut r = theta % TAU;
    if r < 0.0 {
        r += TAU;
    }
    // tiny negative inputs round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Names the normally ordered moment `⟨a†ⁿaᵐ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentKey {
    pub n: u32,
    pub m: u32,
}

impl MomentKey {
    pub const fn new(n: u32, m: u32) -> Self {
        Self { n, m }
    }

    pub fn order(&self) -> u32 {
        self.n + self.m
    }

    /// The key of the Hermitian-conjugate moment.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m, self.n)
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        if self.order() > MOMENT_CAP {
            Err(Error::MomentCapExceeded {
                n: self.n,
                m: self.m,
                cap: MOMENT_CAP,
            })
        } else {
            Ok(())
        }
    }
}
