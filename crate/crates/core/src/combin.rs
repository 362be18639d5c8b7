//! Exact small-integer combinatorics and compensated summation.

use alloc::vec::Vec;

use num_complex::Complex64;

/// `k!` for `k <= 34`.
pub(crate) fn factorial(k: u32) -> u128 {
    debug_assert!(k <= 34);
    (1..=k as u128).product()
}

/// Row `k` of Pascal's triangle.
pub(crate) fn binomial_row(k: u32) -> Vec<u128> {
    let mut row = alloc::vec![1u128];
    for _ in 0..k {
        let mut next = alloc::vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Neumaier-compensated accumulator for complex terms.
#[derive(Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = acc;
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Unevaluated sum `hi + lo` carrying roughly twice the precision of `f64`.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Dekker split of `a` into two 26-bit halves.
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl DoubleDouble {
    pub(crate) const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    pub(crate) fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(crate) fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

/// Complex number over [`DoubleDouble`] parts.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub(crate) struct ComplexDd {
    pub(crate) re: DoubleDouble,
    pub(crate) im: DoubleDouble,
}

impl ComplexDd {
    pub(crate) const ONE: Self = Self {
        re: DoubleDouble::from_f64(1.0),
        im: DoubleDouble::from_f64(0.0),
    };

    pub(crate) fn from_c64(z: Complex64) -> Self {
        Self {
            re: DoubleDouble::from_f64(z.re),
            im: DoubleDouble::from_f64(z.im),
        }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn add(self, o: Self) -> Self {
        Self {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub(crate) fn mul(self, o: Self) -> Self {
        Self {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub(crate) fn scale(self, k: f64) -> Self {
        let k = DoubleDouble::from_f64(k);
        Self {
            re: self.re.mul(k),
            im: self.im.mul(k),
        }
    }
}

/// `[1, z, z², …, z^max]` in double-double.
pub(crate) fn dd_powers(z: Complex64, max: u32) -> Vec<ComplexDd> {
    let z = ComplexDd::from_c64(z);
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = ComplexDd::ONE;
    for _ in 0..=max {
        out.push(acc);
        acc = acc.mul(z);
    }
    out
}
