//! Diagonal coherent-state symbols `ℳ^λ = ⟨λ|ℳ|λ⟩`.
//!
//! With `|λ_i⟩ = (1 + |λ_i|²)^{−1/2} (|0⟩ + λ_i|1⟩)` the symbol of a matrix is
//! `Λ Σ_{n,m} M_{nm} Π_i λ̄_i^{n_i} λ_i^{m_i}`, where `Λ = Π_i (1 + |λ_i|²)^{−1}`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::matrix::DenseMatrix;
use crate::phase::RootsOfUnity;
use crate::quantum::gates::{build_gate_string, GateDescriptor};

/// Widest register for which [`phi_symbol`] evaluates its `q²`-term sum.
pub const MAX_PHI_SYMBOL_WIDTH: u32 = 8;

/// Widest register accepted by [`CoherentSymbol`].
pub const MAX_SYMBOL_WIDTH: u32 = 10;

fn check_finite(lambdas: &[Complex64]) -> Result<()> {
    match lambdas.iter().find(|l| !l.re.is_finite() || !l.im.is_finite()) {
        Some(l) => Err(invalid(format!("λ = {l} is not finite"))),
        None => Ok(()),
    }
}

/// `Λ = Π_i (1 + |λ_i|²)^{−1}`.
pub fn lambda_prefactor(lambdas: &[Complex64]) -> f64 {
    lambdas.iter().map(|l| 1.0 / (1.0 + l.norm_sqr())).product()
}

/// `R^λ = (1 + |λ|²)^{−1} (1 + λ + λ̄ − λλ̄)/√2`.
pub fn r_symbol(lambda: Complex64) -> Complex64 {
    let s = lambda.norm_sqr();
    (1.0 + lambda + lambda.conj() - s) * (FRAC_1_SQRT_2 / (1.0 + s))
}

/// `S^λ_{ij} = Λ_{ij} (1 + |λ_i|² + |λ_j|² + e^{iθ}|λ_i|²|λ_j|²)`.
pub fn s_symbol(lambda_i: Complex64, lambda_j: Complex64, theta: f64) -> Complex64 {
    let (si, sj) = (lambda_i.norm_sqr(), lambda_j.norm_sqr());
    let body = 1.0 + si + sj + Complex64::from_polar(si * sj, theta);
    body / ((1.0 + si) * (1.0 + sj))
}

/// `Π_i λ_i^{b_i}` for every `b < 2^l`, with bit `i` of `b` paired to `λ_i`.
fn monomials(lambdas: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &l in lambdas {
        let upper: Vec<Complex64> = out.iter().map(|m| m * l).collect();
        out.extend(upper);
    }
    out
}

/// `Φ^λ = q^{−1/2} Λ Σ_{b,d} e^{2πi bd/q} Π_i λ_i^{b_i} λ̄_i^{d_{l−1−i}}`, summed
/// term by term.
pub fn phi_symbol(lambdas: &[Complex64]) -> Result<Complex64> {
    let width = lambdas.len() as u32;
    if width == 0 {
        return Err(invalid("Φ^λ needs at least one λ"));
    }
    if width > MAX_PHI_SYMBOL_WIDTH {
        return Err(Error::ResourceLimit(format!(
            "Φ^λ at l = {width} exceeds l ≤ {MAX_PHI_SYMBOL_WIDTH}"
        )));
    }
    check_finite(lambdas)?;
    let q = 1u64 << width;
    let roots = RootsOfUnity::new(q);
    let plain = monomials(lambdas);
    // λ̄ paired with the reversed label: bit (l−1−i) of d goes with λ̄_i.
    let reversed: Vec<Complex64> = lambdas.iter().rev().map(|l| l.conj()).collect();
    let barred = monomials(&reversed);
    let mut sum = Complex64::new(0.0, 0.0);
    for b in 0..q {
        let mut row = Complex64::new(0.0, 0.0);
        for d in 0..q {
            row += roots.pow(b * d) * barred[d as usize];
        }
        sum += plain[b as usize] * row;
    }
    Ok(sum * (lambda_prefactor(lambdas) / (q as f64).sqrt()))
}

/// Product of the `R`/`S` symbols in gate-string order. Not equal to
/// [`phi_symbol`] for `l ≥ 2`.
pub fn classical_phi_product(lambdas: &[Complex64]) -> Result<Complex64> {
    check_finite(lambdas)?;
    let gates = build_gate_string(lambdas.len() as u32)?;
    Ok(gates
        .iter()
        .map(|g| match *g {
            GateDescriptor::R { target } => r_symbol(lambdas[target as usize]),
            GateDescriptor::S {
                target,
                control,
                theta,
            } => s_symbol(lambdas[target as usize], lambdas[control as usize], theta),
        })
        .product())
}

/// The coefficients `M_{nm}` of a symbol, keyed by row bits `n` and column
/// bits `m`. The `Λ` prefactor is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSymbol {
    width: u32,
    coeffs: DenseMatrix,
}

impl CoherentSymbol {
    pub fn symbol_of(m: &DenseMatrix, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_SYMBOL_WIDTH {
            return Err(invalid(format!("symbol width {width} outside 1..={MAX_SYMBOL_WIDTH}")));
        }
        if m.dim() != 1usize << width {
            return Err(invalid(format!(
                "matrix is {0}x{0}, expected 2^{width}",
                m.dim()
            )));
        }
        Ok(Self {
            width,
            coeffs: m.clone(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// `M_{nm}`.
    pub fn coeff(&self, n: usize, m: usize) -> Complex64 {
        self.coeffs[(n, m)]
    }

    /// Reads the matrix back off the monomial coefficients.
    pub fn reconstruct(&self) -> DenseMatrix {
        self.coeffs.clone()
    }

    /// `⟨λ|M|λ⟩` by monomial summation.
    pub fn evaluate(&self, lambdas: &[Complex64]) -> Result<Complex64> {
        if lambdas.len() as u32 != self.width {
            return Err(invalid(format!(
                "{} values of λ given for width {}",
                lambdas.len(),
                self.width
            )));
        }
        check_finite(lambdas)?;
        let plain = monomials(lambdas);
        let sum: Complex64 = plain
            .iter()
            .enumerate()
            .map(|(n, left)| {
                let row: Complex64 = self.coeffs.row(n).iter().zip(&plain).map(|(c, p)| c * p).sum();
                left.conj() * row
            })
            .sum();
        Ok(sum * lambda_prefactor(lambdas))
    }

    /// `∫dμ(λ) ℳ^λ`: only diagonal monomials survive and each integrates to 1.
    pub fn trace_integral(&self) -> Complex64 {
        self.coeffs.trace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::gates::apply_gate_string;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_lambdas(rng: &mut ChaCha8Rng, l: usize) -> Vec<Complex64> {
        (0..l)
            .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect()
    }

    #[test]
    fn r_symbol_examples() {
        for l in [c(0.0, 0.0), c(1.0, 0.0)] {
            assert!((r_symbol(l) - FRAC_1_SQRT_2).norm() < 1e-15);
        }
        // λ = i: 1 + λ + λ̄ − λλ̄ = 1 + 0 − 1, so ⟨i|R|i⟩ vanishes.
        assert!(r_symbol(c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn s_symbol_examples() {
        assert_eq!(s_symbol(c(0.0, 0.0), c(0.0, 0.0), 0.3), c(1.0, 0.0));
        assert!((s_symbol(c(1.0, 0.0), c(1.0, 0.0), PI) - 0.5).norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let l = random_lambdas(&mut rng, 2);
            assert!((s_symbol(l[0], l[1], 0.0) - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn symbols_match_gate_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = CoherentSymbol::symbol_of(&GateDescriptor::r(0).local_matrix(), 1).unwrap();
        let s = CoherentSymbol::symbol_of(&GateDescriptor::s(0, 1).local_matrix(), 2).unwrap();
        for _ in 0..50 {
            let l = random_lambdas(&mut rng, 2);
            assert!((r.evaluate(&l[..1]).unwrap() - r_symbol(l[0])).norm() < 1e-12);
            let expected = s_symbol(l[0], l[1], PI / 2.0);
            assert!((s.evaluate(&l).unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn phi_symbol_examples() {
        assert!((phi_symbol(&[c(0.0, 0.0)]).unwrap() - FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((phi_symbol(&[c(0.0, 0.0); 2]).unwrap() - 0.5).norm() < 1e-15);
        assert!(matches!(phi_symbol(&[c(0.0, 0.0); 9]), Err(Error::ResourceLimit(_))));
        assert!(phi_symbol(&[]).is_err());
    }

    #[test]
    fn phi_symbol_matches_gate_product_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for l in 1..=4u32 {
            let sym = CoherentSymbol::symbol_of(&apply_gate_string(l).unwrap(), l).unwrap();
            for _ in 0..100 {
                let lambdas = random_lambdas(&mut rng, l as usize);
                let a = phi_symbol(&lambdas).unwrap();
                let b = sym.evaluate(&lambdas).unwrap();
                assert!((a - b).norm() < 1e-10, "l = {l}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn classical_product_examples() {
        for l in 1..=6 {
            let v = classical_phi_product(&vec![c(0.0, 0.0); l]).unwrap();
            assert!((v - FRAC_1_SQRT_2.powi(l as i32)).norm() < 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let l = random_lambdas(&mut rng, 1);
            assert_eq!(classical_phi_product(&l).unwrap(), r_symbol(l[0]));
            assert!((phi_symbol(&l).unwrap() - r_symbol(l[0])).norm() < 1e-14);
        }
        // S^λ at λ = 1 carries Λ = 1/4, so the middle factor is (3 + i)/4.
        let v = classical_phi_product(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v - c(3.0, 1.0) / 8.0).norm() < 1e-15);
        let phi = phi_symbol(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v - phi).norm() > 1e-3);
    }

    #[test]
    fn symbol_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in 1..=3u32 {
            let dim = 1usize << l;
            for _ in 0..100 {
                let m = DenseMatrix::from_fn(dim, |_, _| c(rng.gen(), rng.gen()));
                let s = CoherentSymbol::symbol_of(&m, l).unwrap();
                assert_eq!(s.reconstruct(), m);
                assert!((s.trace_integral() - m.trace()).norm() < 1e-12);
            }
        }
        let id = CoherentSymbol::symbol_of(&DenseMatrix::identity(4), 2).unwrap();
        assert_eq!(id.trace_integral(), c(4.0, 0.0));
        assert!(CoherentSymbol::symbol_of(&DenseMatrix::identity(4), 3).is_err());
    }

    #[test]
    fn phi_two_bit_symbol() {
        let s = CoherentSymbol::symbol_of(&apply_gate_string(2).unwrap(), 2).unwrap();
        let beta = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        #[rustfmt::skip]
        let expected = [
            [one,  one,  one,  one],
            [one, -one,  one, -one],
            [one,  beta, -one, -beta],
            [one, -beta, -one,  beta],
        ];
        for (n, row) in expected.iter().enumerate() {
            for (m, e) in row.iter().enumerate() {
                assert!((s.coeff(n, m) * 2.0 - e).norm() < 1e-15);
            }
        }
        assert!((s.trace_integral() - (beta - 1.0) / 2.0).norm() < 1e-12);
    }
}
