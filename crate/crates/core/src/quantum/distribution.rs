use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_good_c, shor_probability, Instance};
use crate::error::{invalid, Result};

/// Which second-register outcome a distribution is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KMode {
    /// Probability of `(ĉ, x^k)` for one fixed residue class `k`.
    Fixed(u64),
    /// `Σ_k` over all residue classes: the physically measured `ĉ` distribution.
    Marginal,
}

impl fmt::Display for KMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fixed(k) => write!(f, "{k}"),
            Self::Marginal => f.write_str("marginal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionSource {
    Quantum,
    SemiPaper,
    SemiStrict,
    /// `h̃(ẑ, l)·P`.
    Envelope { zhat: f64 },
}

impl fmt::Display for DistributionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quantum => f.write_str("quantum"),
            Self::SemiPaper => f.write_str("semi-paper"),
            Self::SemiStrict => f.write_str("semi-strict"),
            Self::Envelope { zhat } => write!(f, "envelope(zhat={zhat})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub c_hat: u64,
    pub probability: f64,
    pub normalized_probability: f64,
    pub is_good_c: bool,
}

/// `ĉ ↦ probability` for one instance, plus its metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub x: u64,
    #[serde(rename = "L")]
    pub period: u64,
    pub k: KMode,
    pub mode: DistributionSource,
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    /// Assembles rows from raw probabilities indexed by `ĉ`.
    ///
    /// The normalized column divides by the total; an all-zero table keeps zeros.
    pub fn from_probabilities(
        inst: &Instance,
        k: KMode,
        mode: DistributionSource,
        probabilities: Vec<f64>,
    ) -> Self {
        assert_eq!(probabilities.len() as u64, inst.q);
        let total: f64 = probabilities.iter().sum();
        let rows = probabilities
            .into_iter()
            .enumerate()
            .map(|(c, p)| DistributionRow {
                c_hat: c as u64,
                probability: p,
                normalized_probability: if total > 0.0 { p / total } else { 0.0 },
                is_good_c: is_good_c(c as u64, inst.q, inst.period),
            })
            .collect();
        Self {
            q: inst.q,
            n: inst.n,
            x: inst.x,
            period: inst.period,
            k,
            mode,
            rows,
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.probability).collect()
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().map(|r| r.probability).sum()
    }

    pub fn good_rows(&self) -> impl Iterator<Item = &DistributionRow> {
        self.rows.iter().filter(|r| r.is_good_c)
    }

    /// The `count` most probable `ĉ`, ascending. Ties keep the smaller `ĉ`.
    pub fn top(&self, count: usize) -> Vec<u64> {
        let mut order: Vec<&DistributionRow> = self.rows.iter().collect();
        order.sort_by(|a, b| {
            b.probability
                .total_cmp(&a.probability)
                .then(a.c_hat.cmp(&b.c_hat))
        });
        let mut top: Vec<u64> = order.iter().take(count).map(|r| r.c_hat).collect();
        top.sort_unstable();
        top
    }

    pub fn max_probability(&self) -> f64 {
        self.rows.iter().map(|r| r.probability).fold(0.0, f64::max)
    }
}

pub(crate) fn check_k(k: KMode, period: u64) -> Result<()> {
    match k {
        KMode::Fixed(k) if k >= period => Err(invalid(format!(
            "residue class k = {k} must be below the period L = {period}"
        ))),
        _ => Ok(()),
    }
}

/// Shor's distribution over `ĉ`, rows computed in parallel.
pub fn quantum_distribution(inst: &Instance, k: KMode) -> Result<DistributionTable> {
    check_k(k, inst.period)?;
    let (q, period) = (inst.q, inst.period);
    let probabilities: Vec<f64> = (0..q)
        .into_par_iter()
        .map(|c| match k {
            KMode::Fixed(k) => shor_probability(c, k, q, period),
            KMode::Marginal => (0..period).map(|k| shor_probability(c, k, q, period)).sum(),
        })
        .collect();
    Ok(DistributionTable::from_probabilities(
        inst,
        k,
        DistributionSource::Quantum,
        probabilities,
    ))
}
