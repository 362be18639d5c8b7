//! Hong–Mandel higher-order squeezing and Pathak–Garcia higher-order
//! antibunching, evaluated from any source of normally ordered moments.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::combin::{binomial_row, dd_powers, factorial, ComplexDd, CompensatedSum};
use crate::error::{Error, Result};
use crate::params::MomentKey;

/// Largest `k` accepted by [`normally_ordered_central_moment`].
pub const CENTRAL_MOMENT_CAP: u32 = 12;
/// Largest `n` accepted by [`hm_squeezing`] (a 10th-order variance).
pub const SQUEEZING_CAP: u32 = 5;
/// Largest `n` accepted by [`hoa_g`]; keeps `2(n+1)` within the moment cap.
pub const ANTIBUNCHING_CAP: u32 = 11;

/// Source of `⟨a†ⁿaᵐ⟩` and `⟨a⟩` for one fixed state.
///
/// Implementations must satisfy `moment(n, m) = conj(moment(m, n))`.
pub trait MomentProvider {
    fn moment(&self, key: MomentKey) -> Result<Complex64>;

    fn mean_a(&self) -> Result<Complex64>;

    fn mean_number(&self) -> Result<f64> {
        Ok(self.moment(MomentKey::new(1, 1))?.re)
    }
}

impl<P: MomentProvider + ?Sized> MomentProvider for &P {
    fn moment(&self, key: MomentKey) -> Result<Complex64> {
        (**self).moment(key)
    }

    fn mean_a(&self) -> Result<Complex64> {
        (**self).mean_a()
    }

    fn mean_number(&self) -> Result<f64> {
        (**self).mean_number()
    }
}

/// Quadrature `X_ψ = (a†e^{iψ} + ae^{−iψ})/√2` and the constant `C` in
/// `[X_ψ, X_{ψ+π/2}] = iC`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub psi: f64,
    pub commutator_c: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            psi: 0.0,
            commutator_c: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn new(psi: f64, commutator_c: f64) -> Result<Self> {
        if !psi.is_finite() {
            return Err(Error::NonFinite("psi"));
        }
        if !(commutator_c.is_finite() && commutator_c > 0.0) {
            return Err(Error::InvalidParameter("commutator constant must be positive"));
        }
        Ok(Self { psi, commutator_c })
    }

    pub fn at(psi: f64) -> Self {
        Self {
            psi,
            ..Self::default()
        }
    }

    /// The conjugate quadrature `X_{ψ+π/2}`.
    pub fn conjugate(&self) -> Self {
        Self {
            psi: self.psi + FRAC_PI_2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingResult {
    /// `2n`.
    pub order_2n: u32,
    /// `S_ψ^(2n)`; negative means 2n-order squeezing.
    pub s_value: f64,
    /// `⟨(ΔX_ψ)^{2n}⟩ = s_value + cs_benchmark`.
    pub total_variance: f64,
    /// `(2n−1)!!(C/2)ⁿ`, the coherent-state value.
    pub cs_benchmark: f64,
    pub squeezed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntibunchingResult {
    pub order_n: u32,
    /// `g^(n+1) = ⟨a†^{n+1}a^{n+1}⟩ / ⟨a†a⟩^{n+1}`.
    pub g_value: f64,
    pub antibunched: bool,
}

/// `k!!`; `k ≤ 0` gives 1.
pub fn double_factorial(k: i64) -> u128 {
    let mut acc = 1u128;
    let mut i = k;
    while i > 1 {
        acc *= i as u128;
        i -= 2;
    }
    acc
}

/// Accepts `z` as real if its imaginary part is within rounding of `scale`.
fn real_part(z: Complex64, scale: f64) -> Result<f64> {
    let tol = 1e-10 + 64.0 * f64::EPSILON * scale;
    if z.im.abs() > tol {
        Err(Error::ImaginaryResidue { re: z.re, im: z.im })
    } else {
        Ok(z.re)
    }
}

/// `⟨:(ΔX_ψ)^k:⟩` by the double-binomial expansion
///
/// `Σ_p C(k,p)(−1)^p 2^{−k/2} [Σ_l C(k−p,l)⟨a†^{k−p−l}a^l⟩e^{i(k−p−2l)ψ}]
/// [Σ_j C(p,j)⟨a†⟩^{p−j}⟨a⟩^j e^{i(p−2j)ψ}]`.
///
/// `⟨a†⟩` is always taken as `conj(⟨a⟩)`.
pub fn normally_ordered_central_moment<P: MomentProvider + ?Sized>(
    provider: &P,
    quad: &QuadratureSpec,
    k: u32,
) -> Result<f64> {
    if k == 0 || k > CENTRAL_MOMENT_CAP {
        return Err(Error::OrderOutOfRange {
            order: k,
            max: CENTRAL_MOMENT_CAP,
        });
    }
    let a = provider.mean_a()?;
    let a_dag = a.conj();
    let pascal: Vec<Vec<u128>> = (0..=k).map(binomial_row).collect();
    let a_pows = dd_powers(a, k);
    let a_dag_pows = dd_powers(a_dag, k);

    // Every term carries e^{i(k−2s)ψ} with s = l + j. Terms sharing a phase
    // are accumulated first, in double-double, so that cancellations between
    // them happen before any rounding of the phase factor.
    let mut by_phase = alloc::vec![ComplexDd::default(); k as usize + 1];
    let mut scale = 0.0;
    for p in 0..=k {
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let outer = pascal[k as usize][p as usize] as f64 * sign;
        let r = k - p;
        for l in 0..=r {
            let mom = provider.moment(MomentKey::new(r - l, l))?;
            let field = ComplexDd::from_c64(mom).scale(outer * pascal[r as usize][l as usize] as f64);
            for j in 0..=p {
                let mean = a_dag_pows[(p - j) as usize].mul(a_pows[j as usize]);
                let term = field.mul(mean).scale(pascal[p as usize][j as usize] as f64);
                scale += term.to_c64().norm();
                let slot = &mut by_phase[(l + j) as usize];
                *slot = slot.add(term);
            }
        }
    }
    let mut sum = CompensatedSum::default();
    for (s, partial) in by_phase.iter().enumerate() {
        let rotor = Complex64::from_polar(1.0, (k as f64 - 2.0 * s as f64) * quad.psi);
        sum.add(partial.to_c64() * rotor);
    }
    let prefactor = FRAC_1_SQRT_2.powi(k as i32);
    real_part(sum.value() * prefactor, scale * prefactor)
}

/// Weight `(2n)! / ((2m+2)! (n−m−1)!)`, computed exactly.
fn squeezing_weight(n: u32, m: u32) -> u128 {
    factorial(2 * n) / (factorial(2 * m + 2) * factorial(n - m - 1))
}

/// Hong–Mandel 2n-order squeezing functional
///
/// `S_ψ^(2n) = Σ_{m=0}^{n−1} (2n)!/((2m+2)!(n−m−1)!) (C/4)^{n−m−1} ⟨:(ΔX_ψ)^{2m+2}:⟩`.
pub fn hm_squeezing<P: MomentProvider + ?Sized>(
    provider: &P,
    quad: &QuadratureSpec,
    n: u32,
) -> Result<SqueezingResult> {
    if n == 0 || n > SQUEEZING_CAP {
        return Err(Error::OrderOutOfRange {
            order: n,
            max: SQUEEZING_CAP,
        });
    }
    let c = quad.commutator_c;
    let mut sum = CompensatedSum::default();
    for m in 0..n {
        let weight = squeezing_weight(n, m) as f64 * (c / 4.0).powi((n - m - 1) as i32);
        let central = normally_ordered_central_moment(provider, quad, 2 * m + 2)?;
        sum.add(Complex64::new(weight * central, 0.0));
    }
    let s_value = sum.value().re;
    let cs_benchmark = double_factorial(2 * n as i64 - 1) as f64 * (c / 2.0).powi(n as i32);
    Ok(SqueezingResult {
        order_2n: 2 * n,
        s_value,
        total_variance: s_value + cs_benchmark,
        cs_benchmark,
        squeezed: s_value < 0.0,
    })
}

/// Pathak–Garcia `g^(n+1)`; `n = 1` is ordinary antibunching.
pub fn hoa_g<P: MomentProvider + ?Sized>(provider: &P, n: u32) -> Result<AntibunchingResult> {
    if n == 0 || n > ANTIBUNCHING_CAP {
        return Err(Error::OrderOutOfRange {
            order: n,
            max: ANTIBUNCHING_CAP,
        });
    }
    let number = provider.mean_number()?;
    if !(number > 0.0) {
        return Err(Error::VacuumState);
    }
    let top = provider.moment(MomentKey::new(n + 1, n + 1))?;
    let top = real_part(top, top.norm())?;
    let g_value = (top / number.powi(n as i32 + 1)).max(0.0);
    if !g_value.is_finite() {
        return Err(Error::NonFinite("g"));
    }
    Ok(AntibunchingResult {
        order_n: n,
        g_value,
        antibunched: g_value < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::ClosedForm;
    use crate::params::HcsParams;
    use approx::assert_relative_eq;

    fn provider(eps: f64, phi: f64, alpha: f64) -> ClosedForm {
        ClosedForm::new(HcsParams::new(eps, phi, Complex64::new(alpha, 0.0)).unwrap())
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), 1);
        assert_eq!(double_factorial(0), 1);
        assert_eq!(double_factorial(1), 1);
        assert_eq!(double_factorial(3), 3);
        assert_eq!(double_factorial(5), 15);
        assert_eq!(double_factorial(9), 945);
    }

    #[test]
    fn weights_are_exact() {
        // n = 2: m = 0 → 4!/(2!·1!) = 12, m = 1 → 1
        assert_eq!(squeezing_weight(2, 0), 12);
        assert_eq!(squeezing_weight(2, 1), 1);
        assert_eq!(squeezing_weight(3, 0), 180);
        assert_eq!(squeezing_weight(3, 1), 30);
        assert_eq!(squeezing_weight(5, 0), 3_628_800 / (2 * 24));
    }

    #[test]
    fn central_moment_examples() {
        let q = QuadratureSpec::default();
        for psi in [0.0, 0.4, 2.0] {
            let v = normally_ordered_central_moment(&provider(1.0, 0.0, 1.7), &QuadratureSpec::at(psi), 2).unwrap();
            assert!(v.abs() < 1e-14);
        }
        let v = normally_ordered_central_moment(&provider(0.5, 0.0, 0.0), &q, 2).unwrap();
        assert!(v.abs() < 1e-15);
        let v = normally_ordered_central_moment(&provider(0.75, 0.0, 0.0), &q, 2).unwrap();
        assert_relative_eq!(v, -0.125, epsilon = 1e-15);
        assert!(normally_ordered_central_moment(&provider(0.75, 0.0, 0.0), &q, 13).is_err());
        assert!(normally_ordered_central_moment(&provider(0.75, 0.0, 0.0), &q, 0).is_err());
    }

    #[test]
    fn central_moment_two_level_formula() {
        // (1−ε)(1−2ε cos²(φ−ψ)) for α = 0
        for (eps, phi, psi) in [(0.3, 0.2, 1.1), (0.9, 2.5, 0.0), (0.6, 0.0, 0.7)] {
            let v = normally_ordered_central_moment(&provider(eps, phi, 0.0), &QuadratureSpec::at(psi), 2).unwrap();
            let expect = (1.0 - eps) * (1.0 - 2.0 * eps * (phi - psi).cos().powi(2));
            assert_relative_eq!(v, expect, epsilon = 1e-14);
        }
    }

    #[test]
    fn squeezing_examples() {
        let q = QuadratureSpec::default();
        let r = hm_squeezing(&provider(1.0, 0.0, 1.3), &q, 3).unwrap();
        assert!(r.s_value.abs() < 1e-12);
        assert_eq!(r.cs_benchmark, 15.0 / 8.0);
        assert!(!r.squeezed || r.s_value < 0.0);

        let r = hm_squeezing(&provider(0.75, 0.0, 0.0), &q, 1).unwrap();
        assert_relative_eq!(r.s_value, -0.125, epsilon = 1e-15);
        assert!(r.squeezed);
        assert_relative_eq!(r.total_variance, 0.375, epsilon = 1e-15);

        let r = hm_squeezing(&provider(0.75, 0.0, 0.0), &q, 2).unwrap();
        assert_relative_eq!(r.s_value, -0.234375, epsilon = 1e-14);
        assert!(r.squeezed);
        assert_eq!(r.order_2n, 4);

        assert!(hm_squeezing(&provider(0.75, 0.0, 0.0), &q, 6).is_err());
    }

    #[test]
    fn commutator_constant_scales_weights() {
        let p = provider(0.75, 0.0, 0.0);
        let q = QuadratureSpec::new(0.0, 2.0).unwrap();
        let r = hm_squeezing(&p, &q, 2).unwrap();
        let nocm2 = normally_ordered_central_moment(&p, &q, 2).unwrap();
        let nocm4 = normally_ordered_central_moment(&p, &q, 4).unwrap();
        assert_relative_eq!(r.s_value, nocm4 + 12.0 * 0.5 * nocm2, epsilon = 1e-14);
        assert_eq!(r.cs_benchmark, 3.0);
        assert!(QuadratureSpec::new(0.0, 0.0).is_err());
    }

    #[test]
    fn antibunching_examples() {
        let r = hoa_g(&provider(1.0, 0.0, 1.1), 2).unwrap();
        assert_relative_eq!(r.g_value, 1.0, epsilon = 1e-13);
        let r = hoa_g(&provider(0.0, 0.0, 0.0), 1).unwrap();
        assert_eq!(r.g_value, 0.0);
        assert!(r.antibunched);
        let r = hoa_g(&provider(0.0, 0.0, 1.0), 1).unwrap();
        assert_relative_eq!(r.g_value, 0.8, epsilon = 1e-14);
        assert!(r.antibunched);
    }

    #[test]
    fn antibunching_rejects_vacuum() {
        assert_eq!(hoa_g(&provider(1.0, 0.0, 0.0), 1), Err(Error::VacuumState));
        assert!(hoa_g(&provider(0.5, 0.0, 1.0), 0).is_err());
        assert!(hoa_g(&provider(0.5, 0.0, 1.0), 12).is_err());
    }
}
