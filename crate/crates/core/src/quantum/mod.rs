//! The exact quantum side of period finding.
//!
//! The second register is stored by residue class: `|x^a mod N⟩` depends on
//! `a` only through `k = a mod L`, so a post-QFT state is a `q × L` table of
//! amplitudes rather than a `q × N` one.

pub mod distribution;
pub mod gates;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::numtheory::{gcd, multiplicative_order, residues, MAX_WIDTH};
use crate::phase::{geometric_sum, RootsOfUnity};

pub use distribution::{
    quantum_distribution, DistributionRow, DistributionSource, DistributionTable, KMode,
};
pub use gates::{apply_gate_string, build_gate_string, qft_matrix, GateDescriptor};

/// `q^{−1/2} exp(2πi a·c/q)`.
pub fn qft_amplitude(a: u64, c: u64, q: u64) -> Complex64 {
    let phase = 2.0 * PI * (a.wrapping_mul(c) % q) as f64 / q as f64;
    Complex64::from_polar(1.0 / (q as f64).sqrt(), phase)
}

/// `{Lĉ}_q`: the representative of `L·ĉ mod q` in `(−q/2, q/2]`.
pub fn residue_bracket(period: u64, c_hat: u64, q: u64) -> i64 {
    let r = (period as u128 * c_hat as u128 % q as u128) as i64;
    let q = q as i64;
    if 2 * r > q {
        r - q
    } else {
        r
    }
}

/// Every `ĉ` with `|{Lĉ}_q| < L/2`.
pub fn good_c_values(q: u64, period: u64) -> Vec<u64> {
    (0..q)
        .filter(|&c| 2 * residue_bracket(period, c, q).unsigned_abs() < period)
        .collect()
}

pub fn is_good_c(c_hat: u64, q: u64, period: u64) -> bool {
    2 * residue_bracket(period, c_hat, q).unsigned_abs() < period
}

/// `4 / (π² L²)`.
pub fn probability_lower_bound(period: u64) -> f64 {
    4.0 / (PI * PI * (period * period) as f64)
}

/// Number of `a ∈ [0, q)` with `a ≡ k (mod L)`: `⌊(q − k − 1)/L⌋ + 1`.
pub fn class_size(k: u64, q: u64, period: u64) -> u64 {
    (q - k - 1) / period + 1
}

/// Shor's probability of observing `(ĉ, x^k)`, via the closed-form geometric sum.
pub fn shor_probability(c_hat: u64, k: u64, q: u64, period: u64) -> f64 {
    let terms = class_size(k, q, period) as f64;
    let r = residue_bracket(period, c_hat, q);
    if r == 0 {
        return (terms / q as f64).powi(2);
    }
    let half_angle = PI * r as f64 / q as f64;
    let num = (terms * half_angle).sin();
    let den = half_angle.sin();
    (num / den / q as f64).powi(2)
}

/// Amplitudes `amp(c, k)` of a state `Σ_{c,k} amp(c,k) |c⟩|x^k mod N⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemistateCoefficients {
    q: u64,
    residues: Vec<u64>,
    /// Row-major `q × L`.
    amp: Vec<Complex64>,
}

impl SemistateCoefficients {
    pub fn new(q: u64, residues: Vec<u64>, amp: Vec<Complex64>) -> Self {
        assert_eq!(amp.len() as u64, q * residues.len() as u64);
        Self { q, residues, amp }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn period(&self) -> u64 {
        self.residues.len() as u64
    }

    /// `x^k mod N` for each residue class `k`.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn amp(&self, c: u64, k: u64) -> Complex64 {
        self.amp[(c * self.period() + k) as usize]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn probability(&self, c: u64, k: u64) -> f64 {
        self.amp(c, k).norm_sqr()
    }

    /// `Σ_k |amp(c, k)|²`.
    pub fn marginal(&self, c: u64) -> f64 {
        (0..self.period()).map(|k| self.probability(c, k)).sum()
    }

    /// `⟨ψ|ψ⟩ = Σ_{c,k} |amp(c, k)|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest modulus of the difference between two coefficient tables.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.q, other.q);
        assert_eq!(self.residues, other.residues);
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Validated `(q, L, residues)` for an `(N, x, l)` instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub n: u64,
    pub x: u64,
    pub width: u32,
    pub q: u64,
    pub period: u64,
    pub residues: Vec<u64>,
}

impl Instance {
    pub fn new(n: u64, x: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(invalid(format!("register width {width} outside 1..={MAX_WIDTH}")));
        }
        let q = 1u64 << width;
        if q < n {
            return Err(invalid(format!("q = 2^{width} = {q} is smaller than N = {n}")));
        }
        let g = gcd(x % n.max(1), n);
        if g != 1 {
            return Err(Error::NotCoprime { x, n, gcd: g });
        }
        let period = multiplicative_order(x, n)?;
        let residues = residues(x, period, n)?;
        Ok(Self {
            n,
            x,
            width,
            q,
            period,
            residues,
        })
    }
}

/// The post-QFT state `|s′⟩ = (1/q) Σ_{a,c} e^{2πi ac/q} |c⟩|x^a mod N⟩`.
pub fn shor_state(n: u64, x: u64, width: u32) -> Result<SemistateCoefficients> {
    let inst = Instance::new(n, x, width)?;
    Ok(shor_state_for(&inst))
}

pub(crate) fn shor_state_for(inst: &Instance) -> SemistateCoefficients {
    let (q, period) = (inst.q, inst.period);
    let roots = RootsOfUnity::new(q);
    let scale = 1.0 / q as f64;
    let mut amp = vec![Complex64::new(0.0, 0.0); (q * period) as usize];
    amp.par_chunks_mut(period as usize)
        .enumerate()
        .for_each(|(c, row)| {
            let c = c as u64;
            for (k, slot) in row.iter_mut().enumerate() {
                let k = k as u64;
                // Σ_f e^{2πi (k + fL) c / q}
                let sum = roots.pow(k * c)
                    * geometric_sum(&roots, period.wrapping_mul(c), class_size(k, q, period));
                *slot = sum * scale;
            }
        });
    SemistateCoefficients::new(q, inst.residues.clone(), amp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qft_amplitude_examples() {
        let a = qft_amplitude(0, 5, 8);
        assert!((a - Complex64::new(1.0 / 8f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((qft_amplitude(1, 1, 2) - Complex64::new(-FRAC, 0.0)).norm() < 1e-15);
        let expected = Complex64::from_polar(1.0 / 8f64.sqrt(), -PI / 4.0);
        assert!((qft_amplitude(3, 5, 8) - expected).norm() < 1e-15);
    }
    const FRAC: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn residue_bracket_examples() {
        assert_eq!(residue_bracket(10, 26, 256), 4);
        assert_eq!(residue_bracket(10, 0, 256), 0);
        assert_eq!(residue_bracket(10, 25, 256), -6);
        // tie at q/2 goes to +q/2
        assert_eq!(residue_bracket(2, 64, 256), 128);
        for c in 0..256 {
            let r = residue_bracket(10, c, 256);
            assert!(r > -128 && r <= 128);
            assert_eq!((10 * c as i64 - r).rem_euclid(256), 0);
        }
    }

    #[test]
    fn good_c_examples() {
        assert_eq!(
            good_c_values(256, 10),
            vec![0, 26, 51, 77, 102, 128, 154, 179, 205, 230]
        );
        assert_eq!(good_c_values(16, 4), vec![0, 4, 8, 12]);
        assert_eq!(good_c_values(256, 16), (0..16).map(|j| 16 * j).collect::<Vec<_>>());
    }

    #[test]
    fn lower_bound_examples() {
        assert!((probability_lower_bound(10) - 4.0 / (100.0 * PI * PI)).abs() < 1e-18);
        assert!((probability_lower_bound(10) - 4.05e-3).abs() < 1e-5);
        assert_eq!(probability_lower_bound(1), 4.0 / (PI * PI));
    }

    #[test]
    fn shor_probability_examples() {
        let peak = shor_probability(0, 0, 256, 10);
        assert!((peak - (26.0f64 / 256.0).powi(2)).abs() < 1e-15);
        assert!(shor_probability(77, 1, 256, 10) > 1.0 / 300.0);
    }

    #[test]
    fn parseval_per_class() {
        for (q, period) in [(64u64, 6u64), (256, 10), (128, 12)] {
            let mut total = 0.0;
            for k in 0..period {
                let s: f64 = (0..q).map(|c| shor_probability(c, k, q, period)).sum();
                let expected = class_size(k, q, period) as f64 / q as f64;
                assert!((s - expected).abs() < 1e-10);
                total += s;
            }
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn shor_state_examples() {
        let s = shor_state(33, 5, 8).unwrap();
        assert_eq!(s.period(), 10);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((s.amp(0, 0) - Complex64::new(26.0 / 256.0, 0.0)).norm() < 1e-15);

        let s = shor_state(15, 2, 4).unwrap();
        assert_eq!(s.period(), 4);
        assert_eq!(s.residues(), &[1, 2, 4, 8]);
        let a = s.amp(4, 0);
        assert!((a - Complex64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn shor_state_errors() {
        assert!(matches!(
            shor_state(33, 3, 8),
            Err(Error::NotCoprime { gcd: 3, .. })
        ));
        assert!(matches!(shor_state(33, 5, 5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn state_probability_matches_closed_form() {
        let s = shor_state(33, 5, 8).unwrap();
        for c in 0..256 {
            for k in 0..10 {
                let p = shor_probability(c, k, 256, 10);
                assert!((s.probability(c, k) - p).abs() < 1e-12);
            }
        }
    }
}
