//! Unoptimized direct sums. Phases are computed with `f64` trig and residues
//! by repeated multiplication, so nothing here shares code with the closed forms.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::quadrature::{quadrature_integral_i, Quadrature};
use crate::error::{invalid, Error, Result};
use crate::numtheory::gcd;
use crate::quantum::SemistateCoefficients;
use crate::semiclassical::integral_i;

/// Largest `q` accepted by [`brute_shor_probability`].
pub const MAX_BRUTE_Q: u64 = 1 << 16;

/// Widest register for [`brute_semistate`].
pub const MAX_BRUTE_SEMISTATE_WIDTH: u32 = 4;

/// Widest register for [`brute_paper_semistate`].
pub const MAX_BRUTE_PAPER_WIDTH: u32 = 8;

fn cis(num: u64, q: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (num % q) as f64 / q as f64)
}

/// Shor's probability as `|q⁻¹ Σ_{a ≡ k (mod L)} e^{2πi ac/q}|²`, scanning every `a < q`.
pub fn brute_shor_probability(c_hat: u64, k: u64, q: u64, period: u64) -> Result<f64> {
    if q > MAX_BRUTE_Q {
        return Err(Error::ResourceLimit(format!("q = {q} exceeds {MAX_BRUTE_Q}")));
    }
    if period == 0 || k >= period || c_hat >= q {
        return Err(invalid("need L ≥ 1, k < L and ĉ < q"));
    }
    let sum: Complex64 = (0..q)
        .filter(|a| a % period == k)
        .map(|a| cis(a * c_hat, q))
        .sum();
    Ok((sum / q as f64).norm_sqr())
}

/// `h(b, c)` as the literal product `Π_i (1 + δ_{b_i c_i})`.
fn h_product(b: u64, c: u64, width: u32) -> f64 {
    (0..width)
        .map(|i| if (b >> i) & 1 == (c >> i) & 1 { 2.0 } else { 1.0 })
        .product()
}

/// `x^a mod N` for `a < q`, and the distinct residues in order of first appearance.
fn residue_classes(n: u64, x: u64, q: u64) -> Result<(Vec<usize>, Vec<u64>)> {
    if n < 2 || gcd(x % n, n) != 1 {
        return Err(invalid(format!("{x} must be coprime to N = {n} ≥ 2")));
    }
    let mut index = HashMap::new();
    let mut residues = Vec::new();
    let mut class = Vec::with_capacity(q as usize);
    let mut v = 1 % n;
    for _ in 0..q {
        let next = index.len();
        let k = *index.entry(v).or_insert_with(|| {
            residues.push(v);
            next
        });
        class.push(k);
        v = v * (x % n) % n;
    }
    Ok((class, residues))
}

fn check_instance(n: u64, width: u32, max: u32) -> Result<u64> {
    if width == 0 || width > max {
        return Err(Error::ResourceLimit(format!("brute force needs 1 ≤ l ≤ {max}, got {width}")));
    }
    let q = 1u64 << width;
    if q < n {
        return Err(invalid(format!("q = {q} is smaller than N = {n}")));
    }
    Ok(q)
}

/// How [`brute_semistate`] obtains each `𝓘_{acbd}`.
#[derive(Debug, Clone, Copy)]
pub enum IntegralSource<'a> {
    ClosedForm,
    /// Only for `l ≤ 2`.
    Quadrature(&'a Quadrature),
}

/// `|𝒮′⟩` from the full sum `(1/π^l) Σ_{a,b,d} e^{2πi bd/q} 𝓘_{acbd}`.
pub fn brute_semistate(
    n: u64,
    x: u64,
    width: u32,
    source: IntegralSource<'_>,
) -> Result<SemistateCoefficients> {
    let q = check_instance(n, width, MAX_BRUTE_SEMISTATE_WIDTH)?;
    let (class, residues) = residue_classes(n, x, q)?;
    let period = residues.len();
    let mut amp = vec![Complex64::new(0.0, 0.0); q as usize * period];
    let scale = PI.powi(-(width as i32));
    for c in 0..q {
        for a in 0..q {
            let mut sum = Complex64::new(0.0, 0.0);
            for b in 0..q {
                for d in 0..q {
                    let integral = match source {
                        IntegralSource::ClosedForm => integral_i(a, c, b, d, width),
                        IntegralSource::Quadrature(quad) => {
                            quadrature_integral_i(a, c, b, d, width, quad)?.value
                        }
                    };
                    if integral != 0.0 {
                        sum += cis(b * d, q) * integral;
                    }
                }
            }
            amp[c as usize * period + class[a as usize]] += sum * scale;
        }
    }
    Ok(SemistateCoefficients::new(q, residues, amp))
}

/// `|𝒮′⟩` in the unrestricted form `(1/(3^l q)) Σ_{a,b} h(b, c) e^{2πi b(b + c − a)/q}`,
/// with `b + c − a` an unrestricted integer.
pub fn brute_paper_semistate(n: u64, x: u64, width: u32) -> Result<SemistateCoefficients> {
    let q = check_instance(n, width, MAX_BRUTE_PAPER_WIDTH)?;
    let (class, residues) = residue_classes(n, x, q)?;
    let period = residues.len();
    let scale = 1.0 / (3f64.powi(width as i32) * q as f64);
    let mut amp = vec![Complex64::new(0.0, 0.0); q as usize * period];
    for c in 0..q {
        for a in 0..q {
            let mut sum = Complex64::new(0.0, 0.0);
            for b in 0..q {
                let e = (b * (b + c + q - a)) % q;
                sum += cis(e, q) * h_product(b, c, width);
            }
            amp[c as usize * period + class[a as usize]] += sum * scale;
        }
    }
    Ok(SemistateCoefficients::new(q, residues, amp))
}
