//! Roots of unity `exp(2πi j/q)` for power-of-two `q`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Lookup table of the `q`-th roots of unity, indexed modulo `q`.
///
/// Exponents are reduced with a bit mask, so wrapping `u64` arithmetic on the
/// exponent is harmless.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    mask: u64,
    table: Vec<Complex64>,
}

impl RootsOfUnity {
    /// `q` must be a power of two.
    pub fn new(q: u64) -> Self {
        assert!(q.is_power_of_two(), "q = {q} is not a power of two");
        let table = (0..q)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / q as f64))
            .collect();
        Self { mask: q - 1, table }
    }

    pub fn q(&self) -> u64 {
        self.mask + 1
    }

    /// `exp(2πi e/q)`.
    #[inline]
    pub fn pow(&self, e: u64) -> Complex64 {
        self.table[(e & self.mask) as usize]
    }

    /// `exp(−2πi e/q)`.
    #[inline]
    pub fn pow_neg(&self, e: u64) -> Complex64 {
        self.table[(e.wrapping_neg() & self.mask) as usize]
    }

    /// `exp(2πi e/q)` for a signed exponent.
    #[inline]
    pub fn pow_signed(&self, e: i64) -> Complex64 {
        self.pow(e as u64)
    }
}

/// `Σ_{f=0}^{terms-1} exp(2πi f·e/q)` in closed form.
pub fn geometric_sum(roots: &RootsOfUnity, e: u64, terms: u64) -> Complex64 {
    if e & (roots.q() - 1) == 0 {
        return Complex64::new(terms as f64, 0.0);
    }
    let ratio = roots.pow(e);
    let last = roots.pow(e.wrapping_mul(terms));
    (last - 1.0) / (ratio - 1.0)
}
