//! Heralded preparation of the HCS.
//!
//! A single photon and the vacuum enter a 50:50 beam splitter; the photon
//! leaves in the dual-rail superposition `(|10⟩_bc + i|01⟩_bc)/√2`. Arm `b`
//! picks up a phase `θ` and couples to the coherent mode `a` through a
//! cross-Kerr medium with phase `Φ`. The arms recombine on a variable beam
//! splitter (`t́`, `ŕ`) and a click at detector D1 heralds mode `a` in
//! `c₁|α⟩ + c₂a†|α⟩` with `c₁ = t́e^{iθ} − ŕ`, `c₂ = −it́e^{iθ}Φα`
//! (up to a common `1/√2`).
//!
//! Because exactly one photon is shared by arms `b` and `c`, the joint state
//! lives in `dim × {|10⟩, |01⟩}` and is stored as two mode-`a` vectors.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fock::{build_coherent, choose_truncation, FockVector, TruncationPolicy};
use crate::params::{normalize_angle, HcsParams};

/// Heralding probabilities below this are treated as "D1 never fires".
const DEGENERATE_PROB: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KerrMode {
    /// First-order expansion `1 − iΦ n̂_a n̂_b`, valid for `Φ ≪ 1`.
    Linearized,
    /// Full unitary `e^{−iΦ n̂_a n̂_b}`.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeraldingParams {
    t_bs2: f64,
    r_bs2: f64,
    theta: f64,
    phi_xpm: f64,
    alpha: Complex64,
    kerr_mode: KerrMode,
}

impl HeraldingParams {
    pub fn new(
        t_bs2: f64,
        r_bs2: f64,
        theta: f64,
        phi_xpm: f64,
        alpha: Complex64,
        kerr_mode: KerrMode,
    ) -> Result<Self> {
        for (v, name) in [(t_bs2, "t"), (r_bs2, "r"), (theta, "theta"), (phi_xpm, "Kerr phase")] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if !(0.0..=1.0).contains(&t_bs2)
            || !(0.0..=1.0).contains(&r_bs2)
            || (t_bs2 * t_bs2 + r_bs2 * r_bs2 - 1.0).abs() > 1e-12
        {
            return Err(Error::NonUnitaryBeamSplitter { t: t_bs2, r: r_bs2 });
        }
        if phi_xpm < 0.0 {
            return Err(Error::InvalidParameter("Kerr phase must be non-negative"));
        }
        Ok(Self {
            t_bs2,
            r_bs2,
            theta,
            phi_xpm,
            alpha,
            kerr_mode,
        })
    }

    /// Takes `ŕ = √(1 − t́²)`.
    pub fn from_transmissivity(
        t_bs2: f64,
        theta: f64,
        phi_xpm: f64,
        alpha: Complex64,
        kerr_mode: KerrMode,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&t_bs2) {
            return Err(Error::NonUnitaryBeamSplitter {
                t: t_bs2,
                r: f64::NAN,
            });
        }
        Self::new(t_bs2, (1.0 - t_bs2 * t_bs2).sqrt(), theta, phi_xpm, alpha, kerr_mode)
    }

    pub fn with_kerr_mode(mut self, kerr_mode: KerrMode) -> Self {
        self.kerr_mode = kerr_mode;
        self
    }

    pub fn with_phi_xpm(mut self, phi_xpm: f64) -> Result<Self> {
        if !(phi_xpm.is_finite() && phi_xpm >= 0.0) {
            return Err(Error::InvalidParameter("Kerr phase must be non-negative"));
        }
        self.phi_xpm = phi_xpm;
        Ok(self)
    }

    pub fn t_bs2(&self) -> f64 {
        self.t_bs2
    }

    pub fn r_bs2(&self) -> f64 {
        self.r_bs2
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi_xpm(&self) -> f64 {
        self.phi_xpm
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn kerr_mode(&self) -> KerrMode {
        self.kerr_mode
    }

    /// `(c₁, c₂)` of the heralded superposition `c₁|α⟩ + c₂a†|α⟩`.
    pub fn branch_amplitudes(&self) -> (Complex64, Complex64) {
        let arm_b = Complex64::from_polar(self.t_bs2, self.theta);
        let c1 = arm_b - self.r_bs2;
        let c2 = -Complex64::i() * arm_b * self.phi_xpm * self.alpha;
        (c1, c2)
    }
}

fn arg_or_zero(z: Complex64) -> f64 {
    if z.norm_sqr() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

/// The `(ε, φ, α)` realized by a D1 click, from the branch amplitudes alone.
pub fn map_to_hcs(hp: &HeraldingParams) -> Result<HcsParams> {
    let (c1, c2) = hp.branch_amplitudes();
    let w1 = c1.norm_sqr();
    let w2 = c2.norm_sqr();
    if w1 + w2 == 0.0 {
        return Err(Error::DegenerateBranches);
    }
    let epsilon = (w1 / (w1 + w2)).clamp(0.0, 1.0);
    let phi = if w2 == 0.0 {
        0.0
    } else {
        normalize_angle(arg_or_zero(c2) - arg_or_zero(c1))
    };
    HcsParams::new(epsilon, phi, hp.alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeraldOutcome {
    /// Normalized mode-`a` state after the D1 click.
    pub state_a: FockVector,
    /// Squared norm of the D1 branch. Approximate in linearized mode, where
    /// the Kerr operator is not unitary.
    pub success_prob: f64,
    pub mapped: HcsParams,
    pub branch_c1: Complex64,
    pub branch_c2: Complex64,
    /// Joint-state norm² after BS2, before projection.
    pub joint_norm_sqr: f64,
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Runs the interferometer on a truncated Fock basis for mode `a` and projects
/// onto a click at D1.
pub fn simulate_herald(hp: &HeraldingParams, policy: &TruncationPolicy) -> Result<HeraldOutcome> {
    let mapped = map_to_hcs(hp)?;
    let dim = choose_truncation(hp.alpha, policy);
    let coherent = build_coherent(hp.alpha, dim, policy.tail_tol)?;
    let amps = coherent.amplitudes();

    // BS1 then the θ phase on arm b: (e^{iθ}|10⟩ + i|01⟩)/√2 ⊗ |α⟩
    let on_b = Complex64::from_polar(FRAC_1_SQRT_2, hp.theta);
    let on_c = Complex64::new(0.0, FRAC_1_SQRT_2);
    let phi = hp.phi_xpm;
    let arm_b: Vec<Complex64> = amps
        .iter()
        .enumerate()
        .map(|(k, &z)| {
            let kerr = match hp.kerr_mode {
                KerrMode::Exact => Complex64::from_polar(1.0, -phi * k as f64),
                KerrMode::Linearized => Complex64::new(1.0, -phi * k as f64),
            };
            z * on_b * kerr
        })
        .collect();
    let arm_c: Vec<Complex64> = amps.iter().map(|&z| z * on_c).collect();

    // BS2: |10⟩ → t|10⟩ + ir|01⟩, |01⟩ → ir|10⟩ + t|01⟩
    let t = hp.t_bs2;
    let ir = Complex64::new(0.0, hp.r_bs2);
    let d1: Vec<Complex64> = arm_b.iter().zip(&arm_c).map(|(b, c)| b * t + c * ir).collect();
    let d2: Vec<Complex64> = arm_b.iter().zip(&arm_c).map(|(b, c)| b * ir + c * t).collect();

    let success_prob = norm_sqr(&d1);
    let joint_norm_sqr = success_prob + norm_sqr(&d2);
    if !(success_prob > DEGENERATE_PROB) {
        return Err(Error::DegenerateBranches);
    }
    let state_a = FockVector::from_amplitudes(d1)?
        .with_tail(coherent.tail_mass())
        .normalized()?;
    Ok(HeraldOutcome {
        state_a,
        success_prob: success_prob.min(1.0),
        mapped,
        branch_c1: hp.branch_amplitudes().0,
        branch_c2: hp.branch_amplitudes().1,
        joint_norm_sqr,
    })
}
