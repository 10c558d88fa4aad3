//! The coherent-state (semiclassical) approximation of period finding.
//!
//! Keeping only the diagonal `⟨λ|Φ|λ⟩` and integrating over `λ` replaces the
//! post-QFT state by
//!
//! `|𝒮′⟩ = (1/(3^l q)) Σ_{a,c,b} h(b, c) e^{2πi b(b + c − a)/q} |c⟩|x^a mod N⟩`.
//!
//! Two readings of the `b` sum are provided. [`SemiclassicalMode::PaperFormula`]
//! takes it over every `b`, treating `d = b + c − a` as an integer phase.
//! [`SemiclassicalMode::StrictIntegral`] keeps only the `b` allowed by the
//! angular selection rule `d_i = b_i + c_i − a_i ∈ {0, 1}` for every bit.

pub mod envelope;
pub mod integrals;
pub mod symbols;

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numtheory::{bits_for, low_mask};
use crate::phase::{geometric_sum, RootsOfUnity};
use crate::quantum::distribution::check_k;
use crate::quantum::{
    class_size, shor_probability, DistributionSource, DistributionTable, Instance, KMode,
    SemistateCoefficients,
};

pub use envelope::{appendixb_envelope, half_width_zeta, htilde};
pub use integrals::{integral_i, selection_rule, valid_pairs};
pub use symbols::{
    classical_phi_product, lambda_prefactor, phi_symbol, r_symbol, s_symbol, CoherentSymbol,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemiclassicalMode {
    PaperFormula,
    StrictIntegral,
}

impl fmt::Display for SemiclassicalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PaperFormula => "paper-formula",
            Self::StrictIntegral => "strict-integral",
        })
    }
}

/// Evaluation mode plus the `ĉ` coarse-graining window `Δĉ ∈ {0, 1}`.
///
/// With `Δĉ = 1` each probability is summed over `ĉ − 1, ĉ, ĉ + 1 (mod q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiclassicalParams {
    mode: SemiclassicalMode,
    coarse_grain: u8,
}

impl SemiclassicalParams {
    pub fn new(mode: SemiclassicalMode, coarse_grain: u8) -> Result<Self> {
        if coarse_grain > 1 {
            return Err(invalid(format!("coarse-grain window {coarse_grain} must be 0 or 1")));
        }
        Ok(Self { mode, coarse_grain })
    }

    pub fn paper() -> Self {
        Self {
            mode: SemiclassicalMode::PaperFormula,
            coarse_grain: 0,
        }
    }

    pub fn strict() -> Self {
        Self {
            mode: SemiclassicalMode::StrictIntegral,
            coarse_grain: 0,
        }
    }

    pub fn mode(&self) -> SemiclassicalMode {
        self.mode
    }

    pub fn coarse_grain(&self) -> u8 {
        self.coarse_grain
    }

    fn source(&self) -> DistributionSource {
        match self.mode {
            SemiclassicalMode::PaperFormula => DistributionSource::SemiPaper,
            SemiclassicalMode::StrictIntegral => DistributionSource::SemiStrict,
        }
    }
}

impl Default for SemiclassicalParams {
    fn default() -> Self {
        Self::paper()
    }
}

/// `h(b, c) = 2^{l − popcount(b ⊕ c)}` by table lookup.
#[derive(Debug, Clone)]
struct HTable {
    mask: u64,
    by_distance: Vec<f64>,
}

impl HTable {
    fn new(width: u32) -> Self {
        Self {
            mask: low_mask(width),
            by_distance: (0..=width).map(|n| 2f64.powi((width - n) as i32)).collect(),
        }
    }

    #[inline]
    fn get(&self, b: u64, c: u64) -> f64 {
        self.by_distance[((b ^ c) & self.mask).count_ones() as usize]
    }
}

/// Shared tables for one `(q, L)`.
struct Kernel {
    width: u32,
    q: u64,
    period: u64,
    roots: RootsOfUnity,
    h: HTable,
    /// `1/(3^l q)`.
    scale: f64,
}

impl Kernel {
    fn new(q: u64, period: u64) -> Self {
        assert!(q.is_power_of_two(), "q = {q} is not a power of two");
        assert!(period >= 1, "period must be positive");
        let width = bits_for(q);
        Self {
            width,
            q,
            period,
            roots: RootsOfUnity::new(q),
            h: HTable::new(width),
            scale: 1.0 / (3f64.powi(width as i32) * q as f64),
        }
    }

    /// `G_k(b) = Σ_{f < M_k} e^{2πi f bL/q}` for every `b`.
    fn filter(&self, k: u64) -> Vec<Complex64> {
        let terms = class_size(k, self.q, self.period);
        (0..self.q)
            .map(|b| geometric_sum(&self.roots, b.wrapping_mul(self.period), terms))
            .collect()
    }

    /// `Σ_b h(b, ĉ) e^{−2πi b(ĉ + b − k)/q} G_k(b)`, the unrestricted amplitude sum.
    fn paper_sum(&self, c_hat: u64, k: u64, filter: &[Complex64]) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (b, g) in (0..self.q).zip(filter) {
            let e = b.wrapping_mul(c_hat.wrapping_add(b).wrapping_sub(k));
            sum += self.roots.pow_neg(e) * g * self.h.get(b, c_hat);
        }
        sum
    }

    /// `(1/(q² 9^l)) |Σ_b …|²`.
    fn paper_probability(&self, c_hat: u64, k: u64, filter: &[Complex64]) -> f64 {
        (self.paper_sum(c_hat, k, filter) * self.scale).norm_sqr()
    }

    /// `Σ_{a ≡ k} Σ_{valid b} h(b, ĉ) e^{2πi b d/q}`, unscaled.
    fn strict_sum(&self, c_hat: u64, k: u64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut a = k;
        while a < self.q {
            sum += self.strict_term(a, c_hat);
            a += self.period;
        }
        sum
    }

    fn strict_term(&self, a: u64, c_hat: u64) -> Complex64 {
        valid_pairs(a, c_hat, self.width)
            .map(|(b, d)| self.roots.pow(b * d) * self.h.get(b, c_hat))
            .sum()
    }

    fn probability(&self, c_hat: u64, k: u64, mode: SemiclassicalMode) -> f64 {
        match mode {
            SemiclassicalMode::PaperFormula => {
                self.paper_probability(c_hat, k, &self.filter(k))
            }
            SemiclassicalMode::StrictIntegral => (self.strict_sum(c_hat, k) * self.scale).norm_sqr(),
        }
    }
}

/// The modified state `|𝒮′⟩` in either mode, rows computed in parallel.
pub fn semistate(
    n: u64,
    x: u64,
    width: u32,
    params: SemiclassicalParams,
) -> Result<SemistateCoefficients> {
    let inst = Instance::new(n, x, width)?;
    Ok(semistate_for(&inst, params.mode))
}

pub(crate) fn semistate_for(inst: &Instance, mode: SemiclassicalMode) -> SemistateCoefficients {
    let kernel = Kernel::new(inst.q, inst.period);
    let (q, period) = (inst.q, inst.period);
    let mut amp = vec![Complex64::new(0.0, 0.0); (q * period) as usize];
    match mode {
        SemiclassicalMode::PaperFormula => {
            // Σ_{a ≡ k} e^{−2πi b a/q} = e^{−2πi bk/q} conj(G_k(b)).
            let class_phase: Vec<Vec<Complex64>> = (0..period)
                .map(|k| {
                    kernel
                        .filter(k)
                        .iter()
                        .enumerate()
                        .map(|(b, g)| kernel.roots.pow_neg(b as u64 * k) * g.conj())
                        .collect()
                })
                .collect();
            amp.par_chunks_mut(period as usize)
                .enumerate()
                .for_each(|(c, row)| {
                    let c = c as u64;
                    let base: Vec<Complex64> = (0..q)
                        .map(|b| kernel.roots.pow(b.wrapping_mul(b + c)) * kernel.h.get(b, c))
                        .collect();
                    for (slot, phases) in row.iter_mut().zip(&class_phase) {
                        let s: Complex64 = base.iter().zip(phases).map(|(x, y)| x * y).sum();
                        *slot = s * kernel.scale;
                    }
                });
        }
        SemiclassicalMode::StrictIntegral => {
            amp.par_chunks_mut(period as usize)
                .enumerate()
                .for_each(|(c, row)| {
                    let c = c as u64;
                    for a in 0..q {
                        row[(a % period) as usize] += kernel.strict_term(a, c);
                    }
                    for slot in row.iter_mut() {
                        *slot *= kernel.scale;
                    }
                });
        }
    }
    SemistateCoefficients::new(q, inst.residues.clone(), amp)
}

fn coarse_grain(p: &[f64]) -> Vec<f64> {
    let q = p.len();
    (0..q)
        .map(|c| p[(c + q - 1) % q] + p[c] + p[(c + 1) % q])
        .collect()
}

/// `𝒫(ĉ, x^k) = |⟨ĉ, x^k|𝒮′⟩|²`.
///
/// Paper-formula mode evaluates the `b`-sum with the `f`-sum in closed form;
/// strict mode sums the selection-rule terms over the residue class `k`.
pub fn semiclassical_probability(
    c_hat: u64,
    k: u64,
    q: u64,
    period: u64,
    params: SemiclassicalParams,
) -> f64 {
    assert!(c_hat < q && k < period, "need ĉ < q and k < L");
    let kernel = Kernel::new(q, period);
    if params.coarse_grain == 0 {
        return kernel.probability(c_hat, k, params.mode);
    }
    [q - 1, 0, 1]
        .iter()
        .map(|&shift| kernel.probability((c_hat + shift) % q, k, params.mode))
        .sum()
}

/// The semiclassical distribution over `ĉ`, rows computed in parallel.
pub fn semiclassical_distribution(
    inst: &Instance,
    k: KMode,
    params: SemiclassicalParams,
) -> Result<DistributionTable> {
    check_k(k, inst.period)?;
    let kernel = Kernel::new(inst.q, inst.period);
    let mut probabilities: Vec<f64> = match (k, params.mode) {
        (KMode::Fixed(k), SemiclassicalMode::PaperFormula) => {
            let filter = kernel.filter(k);
            (0..inst.q)
                .into_par_iter()
                .map(|c| kernel.paper_probability(c, k, &filter))
                .collect()
        }
        (KMode::Fixed(k), SemiclassicalMode::StrictIntegral) => (0..inst.q)
            .into_par_iter()
            .map(|c| (kernel.strict_sum(c, k) * kernel.scale).norm_sqr())
            .collect(),
        (KMode::Marginal, mode) => {
            let state = semistate_for(inst, mode);
            (0..inst.q).map(|c| state.marginal(c)).collect()
        }
    };
    if params.coarse_grain == 1 {
        probabilities = coarse_grain(&probabilities);
    }
    Ok(DistributionTable::from_probabilities(
        inst,
        k,
        params.source(),
        probabilities,
    ))
}

/// `h̃(ẑ, l)·P` as a distribution.
pub fn envelope_distribution(inst: &Instance, k: KMode, z_hat: f64) -> Result<DistributionTable> {
    check_k(k, inst.period)?;
    if !z_hat.is_finite() {
        return Err(invalid(format!("ẑ = {z_hat} is not finite")));
    }
    let (q, period) = (inst.q, inst.period);
    let probabilities = (0..q)
        .into_par_iter()
        .map(|c| match k {
            KMode::Fixed(k) => appendixb_envelope(c, k, q, period, z_hat),
            KMode::Marginal => (0..period)
                .map(|k| appendixb_envelope(c, k, q, period, z_hat))
                .sum(),
        })
        .collect();
    Ok(DistributionTable::from_probabilities(
        inst,
        k,
        DistributionSource::Envelope { zhat: z_hat },
        probabilities,
    ))
}

/// `(1/9^l) |Σ_f e^{2πi f{Lĉ}_q/q}|² = (q²/9^l) P`, the `b = ĉ` term of `𝒫`.
pub fn leading_term(c_hat: u64, k: u64, q: u64, period: u64) -> f64 {
    let width = bits_for(q);
    let q = q as f64;
    q * q * shor_probability(c_hat, k, q as u64, period) / 9f64.powi(width as i32)
}

/// `(1 + l/4 + l/2)` times [`leading_term`], the `Δĉ = 1` estimate.
pub fn coarse_grained_probability(c_hat: u64, k: u64, q: u64, period: u64) -> f64 {
    let l = bits_for(q) as f64;
    (1.0 + l / 4.0 + l / 2.0) * leading_term(c_hat, k, q, period)
}

/// `R₁(l) = (2/3)^{2l}`.
pub fn ratio_r1(width: u32) -> f64 {
    (2.0f64 / 3.0).powi(2 * width as i32)
}

/// `R₂`: largest probability on a good `ĉ` over the smallest nonzero row.
///
/// Rows below `10⁻¹²` of the maximum count as zero.
pub fn ratio_r2(dist: &DistributionTable) -> Result<f64> {
    let max = dist.max_probability();
    if !(max > 0.0) {
        return Err(Error::UndefinedRatio("distribution has no nonzero row".into()));
    }
    let floor = dist
        .rows
        .iter()
        .map(|r| r.probability)
        .filter(|&p| p > 1e-12 * max)
        .fold(f64::INFINITY, f64::min);
    let peak = dist.good_rows().map(|r| r.probability).fold(0.0, f64::max);
    Ok(peak / floor)
}
