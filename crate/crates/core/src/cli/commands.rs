use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Mode, RunConfig};
use crate::error::{invalid, Error, Result};
use crate::numtheory::{bits_for, check_modulus, gcd, is_prime, prime_power, recover_period};
use crate::phasespace::{evolve, CoherentPoint, TrajectoryPoint};
use crate::quantum::{quantum_distribution, DistributionTable, Instance, KMode};
use crate::semiclassical::{envelope_distribution, semiclassical_distribution};

/// Widest register for the semiclassical modes on the command line.
pub const MAX_SEMI_WIDTH: u32 = 12;

/// Widest register for quantum mode on the command line.
pub const MAX_QUANTUM_WIDTH: u32 = 20;

/// Largest multiple of a convergent denominator tried as a period.
pub const MAX_PERIOD_MULTIPLE: u64 = 4;

fn default_width(n: u64) -> u32 {
    bits_for(n.saturating_mul(n))
}

fn resolve_width(config: &RunConfig) -> Result<u32> {
    let l = config.l.unwrap_or_else(|| default_width(config.n));
    let limit = match config.mode {
        Mode::Quantum => MAX_QUANTUM_WIDTH,
        Mode::SemiPaper | Mode::SemiStrict => MAX_SEMI_WIDTH,
    };
    if l > limit {
        return Err(Error::ResourceLimit(format!(
            "l = {l} exceeds {limit} for mode {}",
            config.mode
        )));
    }
    Ok(l)
}

/// Uniform over `x ∈ (1, N)` with `gcd(x, N) = 1`.
fn draw_coprime(rng: &mut ChaCha8Rng, n: u64) -> Result<u64> {
    if n < 3 {
        return Err(invalid(format!("N = {n} has no base x in (1, N)")));
    }
    loop {
        let x = rng.gen_range(2..n);
        if gcd(x, n) == 1 {
            return Ok(x);
        }
    }
}

/// The distribution `cmd_dist` writes: quantum, one of the semiclassical
/// modes, or the `ẑ`-envelope when `zhat` is set.
pub fn distribution_for(inst: &Instance, k: KMode, mode: Mode, zhat: Option<f64>) -> Result<DistributionTable> {
    if let Some(z) = zhat {
        return envelope_distribution(inst, k, z);
    }
    match mode.semiclassical() {
        None => quantum_distribution(inst, k),
        Some(params) => semiclassical_distribution(inst, k, params),
    }
}

pub fn cmd_dist(config: &RunConfig) -> Result<DistributionTable> {
    check_modulus(config.n)?;
    let l = resolve_width(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let x = match config.x {
        Some(x) => x,
        None => draw_coprime(&mut rng, config.n)?,
    };
    let inst = Instance::new(config.n, x, l)?;
    distribution_for(&inst, config.k, config.mode, config.zhat)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct FactorReport {
    pub N: u64,
    pub x: u64,
    pub l: u32,
    pub q: u64,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub measured_c: Vec<u64>,
    pub recovered_L: Option<u64>,
    /// Ascending.
    pub factors: Option<[u64; 2]>,
    /// `gcd(x, N) > 1` gave the factor without any measurement.
    pub lucky: bool,
    pub success: bool,
}

fn validate_factor_target(n: u64) -> Result<()> {
    check_modulus(n)?;
    if n < 9 || n % 2 == 0 {
        return Err(invalid(format!("N = {n} must be odd and composite")));
    }
    if is_prime(n) {
        return Err(invalid(format!("N = {n} is prime")));
    }
    if let Some((p, k)) = prime_power(n) {
        return Err(invalid(format!("N = {n} = {p}^{k} is a prime power")));
    }
    Ok(())
}

fn ordered(a: u64, b: u64) -> [u64; 2] {
    [a.min(b), a.max(b)]
}

/// Seeded sample → continued fractions → gcd loop.
///
/// Measurements are drawn from the marginal over `k`, renormalized to unit mass.
pub fn cmd_factor(config: &RunConfig) -> Result<FactorReport> {
    validate_factor_target(config.n)?;
    let n = config.n;
    let l = resolve_width(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    // Without --x the base is uniform over (1, N); a shared factor ends the run.
    let x = match config.x {
        Some(x) => x,
        None => rng.gen_range(2..n),
    };
    let mut report = FactorReport {
        N: n,
        x,
        l,
        q: 1u64 << l,
        mode: config.mode,
        seed: config.seed,
        trials: 0,
        measured_c: Vec::new(),
        recovered_L: None,
        factors: None,
        lucky: false,
        success: false,
    };
    let g = gcd(x % n, n);
    if g == n {
        return Err(invalid(format!("x = {x} is a multiple of N = {n}")));
    }
    if g > 1 {
        report.factors = Some(ordered(g, n / g));
        report.lucky = true;
        report.success = true;
        return Ok(report);
    }
    let inst = Instance::new(n, x, l)?;
    let table = distribution_for(&inst, KMode::Marginal, config.mode, None)?;
    let sampler = WeightedIndex::new(table.probabilities())
        .map_err(|e| invalid(format!("cannot sample from distribution: {e}")))?;
    for _ in 0..config.max_trials {
        let c_hat = table.rows[sampler.sample(&mut rng)].c_hat;
        report.trials += 1;
        report.measured_c.push(c_hat);
        let tried = recover_period(c_hat, inst.q, x, n, MAX_PERIOD_MULTIPLE)?;
        if let Some(found) = tried.iter().find(|t| t.factors.is_some()) {
            let (p, p2) = found.factors.expect("checked above");
            report.recovered_L = Some(found.candidate_period);
            report.factors = Some(ordered(p, p2));
            report.success = true;
            break;
        }
    }
    Ok(report)
}

/// `evolve` from `λ₀` over `steps` increments of `dphi`.
pub fn cmd_phase(lambda0: Complex64, dphi: f64, steps: usize) -> Result<Vec<TrajectoryPoint>> {
    let p0 = CoherentPoint::new(lambda0)?;
    if !dphi.is_finite() {
        return Err(invalid(format!("dphi = {dphi} is not finite")));
    }
    evolve(p0, dphi * steps as f64, steps)
}
