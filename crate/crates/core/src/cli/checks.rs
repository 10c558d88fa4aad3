//! Invariant suites behind `semishor verify` and `semishor oracle`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{OracleSuite, Suite};
use crate::matrix::DenseMatrix;
use crate::oracles::{
    brute_paper_semistate, brute_semistate, brute_shor_probability, quadrature_integral_i,
    quadrature_trace, radial_moment, IntegralSource, Quadrature,
};
use crate::phasespace::{
    evolve, interior_product, j0_field, j_functions, j_minus_field, j_plus_field,
    poisson_bracket, wirtinger, CoherentPoint,
};
use crate::quantum::gates::{apply_gate_string, qft_matrix, reverse_output_bits};
use crate::quantum::shor_probability;
use crate::semiclassical::{
    half_width_zeta, htilde, integral_i, phi_symbol, semistate, CoherentSymbol,
    SemiclassicalParams,
};

const SEED: u64 = 0x5eed;

/// One named check: measured error against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(suite: &str, name: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.into(),
            error,
            tolerance,
            passed: error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { checks, passed }
    }

    /// Replaces every tolerance with `tol` and re-evaluates.
    pub fn with_tolerance(checks: Vec<Check>, tol: f64) -> Self {
        Self::new(
            checks
                .into_iter()
                .map(|c| Check {
                    passed: c.error <= tol,
                    tolerance: tol,
                    ..c
                })
                .collect(),
        )
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}/{} error={:.3e} tol={:.1e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.error,
                    c.tolerance
                )
            })
            .collect()
    }
}

fn max(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

pub fn gates() -> Vec<Check> {
    let mut out = Vec::new();
    for l in 1..=8 {
        let u = apply_gate_string(l).expect("l ≤ 8");
        let qft = qft_matrix(l).expect("l ≤ 8");
        let err = reverse_output_bits(&u, l).max_abs_diff(&qft);
        out.push(Check::new("gates", format!("reversed product = QFT (l={l})"), err, 1e-12));
        out.push(Check::new("gates", format!("unitarity (l={l})"), u.unitarity_error(), 1e-12));
    }
    out
}

pub fn integrals() -> Vec<Check> {
    let quad = Quadrature::default();
    let mut out = Vec::new();
    for (m, exact) in [(0u32, 1.0 / 6.0), (1, 1.0 / 12.0), (2, 1.0 / 6.0)] {
        let err = (radial_moment(m, &quad).value - exact).abs();
        out.push(Check::new("integrals", format!("radial moment m={m}"), err, 1e-9));
    }
    let mut err1 = 0.0f64;
    let mut warnings = 0;
    for t in 0..16u64 {
        let (a, c, b, d) = (t & 1, (t >> 1) & 1, (t >> 2) & 1, (t >> 3) & 1);
        let est = quadrature_integral_i(a, c, b, d, 1, &quad).expect("l = 1");
        warnings += est.warning.is_some() as usize;
        err1 = err1.max((est.value - integral_i(a, c, b, d, 1)).abs());
    }
    out.push(Check::new("integrals", "closed form vs quadrature, all l=1 tuples", err1, 1e-8));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut err2 = 0.0f64;
    for _ in 0..10_000 {
        let (a, c, b, d) = (rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
        let est = quadrature_integral_i(a, c, b, d, 2, &quad).expect("l = 2");
        warnings += est.warning.is_some() as usize;
        err2 = err2.max((est.value - integral_i(a, c, b, d, 2)).abs());
    }
    out.push(Check::new("integrals", "closed form vs quadrature, 10^4 l=2 tuples", err2, 1e-8));
    out.push(Check::new("integrals", "quadrature accuracy warnings", warnings as f64, 0.0));
    out
}

fn random_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<CoherentPoint> {
    (0..count)
        .map(|_| {
            CoherentPoint::from_polar(rng.gen_range(0.0..3.0), rng.gen_range(0.0..2.0 * PI))
                .expect("finite")
        })
        .collect()
}

pub fn phasespace() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points = random_points(&mut rng, 100);
    let h = 1e-5;
    let (mut pm, mut zp, mut zm, mut cas, mut dh) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &p in &points {
        let s = j_functions(p);
        pm = pm.max((poisson_bracket(j_plus_field, j_minus_field, p, h).unwrap() - 2.0 * s.j0).norm());
        zp = zp.max((poisson_bracket(j0_field, j_plus_field, p, h).unwrap() - s.j_plus).norm());
        zm = zm.max((poisson_bracket(j0_field, j_minus_field, p, h).unwrap() + s.j_minus).norm());
        cas = cas.max((s.casimir() - 0.25).abs());
        let (d, dbar) = wirtinger(j0_field, p, h).unwrap();
        let (a, b) = interior_product(p, 1.0);
        dh = dh.max((a + d).norm().max((b + dbar).norm()));
    }
    let mut drift = 0.0f64;
    for &p in points.iter().take(20) {
        let t = evolve(p, 10.0, 1000).unwrap();
        let j0 = t[0].spin.j0;
        drift = drift.max(max(t.iter().map(|s| (s.spin.j0 - j0).abs())));
        cas = cas.max(max(t.iter().map(|s| (s.spin.casimir() - 0.25).abs())));
    }
    vec![
        Check::new("phasespace", "{J+, J-} = 2 J0", pm, 1e-6),
        Check::new("phasespace", "{J0, J+} = J+", zp, 1e-6),
        Check::new("phasespace", "{J0, J-} = -J-", zm, 1e-6),
        Check::new("phasespace", "casimir = 1/4", cas, 1e-14),
        Check::new("phasespace", "J0 conserved along flow", drift, 1e-14),
        Check::new("phasespace", "i_v omega = -dH (C = 1)", dh, 1e-6),
    ]
}

pub fn appendixa() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut round_trip = 0.0f64;
    let mut trace = 0.0f64;
    for l in 1..=3u32 {
        let dim = 1usize << l;
        for _ in 0..100 {
            let m = DenseMatrix::from_fn(dim, |_, _| Complex64::new(rng.gen(), rng.gen()));
            let s = CoherentSymbol::symbol_of(&m, l).unwrap();
            round_trip = round_trip.max(s.reconstruct().max_abs_diff(&m));
            trace = trace.max((s.trace_integral() - m.trace()).norm());
        }
    }
    let phi = apply_gate_string(2).unwrap();
    let sym = CoherentSymbol::symbol_of(&phi, 2).unwrap();
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    #[rustfmt::skip]
    let displayed = DenseMatrix::from_row_major(4, vec![
        one,  one,  one,  one,
        one, -one,  one, -one,
        one,  i,   -one, -i,
        one, -i,   -one,  i,
    ]);
    let phi_err = max((0..4).flat_map(|n| {
        let sym = &sym;
        let displayed = &displayed;
        (0..4).map(move |m| (sym.coeff(n, m) * 2.0 - displayed[(n, m)]).norm())
    }));
    let expected = (i - 1.0) / 2.0;
    let analytic = (sym.trace_integral() - expected).norm();
    let numeric = (quadrature_trace(&phi, 2).unwrap() - expected).norm();
    let mut symbol_err = 0.0f64;
    for l in 1..=4u32 {
        let s = CoherentSymbol::symbol_of(&apply_gate_string(l).unwrap(), l).unwrap();
        for _ in 0..100 {
            let lambdas: Vec<Complex64> = (0..l)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let err = (phi_symbol(&lambdas).unwrap() - s.evaluate(&lambdas).unwrap()).norm();
            symbol_err = symbol_err.max(err);
        }
    }
    vec![
        Check::new("appendixa", "reconstruct(symbol_of(M)) = M", round_trip, 0.0),
        Check::new("appendixa", "trace integral = matrix trace", trace, 1e-12),
        Check::new("appendixa", "Phi (l=2) coefficients", phi_err, 1e-15),
        Check::new("appendixa", "Tr Phi = (i-1)/2 analytic", analytic, 1e-12),
        Check::new("appendixa", "Tr Phi = (i-1)/2 quadrature", numeric, 1e-6),
        Check::new("appendixa", "Phi^lambda = <lambda|U|lambda> (l<=4)", symbol_err, 1e-10),
    ]
}

pub fn appendixb() -> Vec<Check> {
    let mut at_zero = 0.0f64;
    let mut at_pi = 0.0f64;
    let mut symmetry = 0.0f64;
    let mut bounds = 0.0f64;
    let mut monotone = 0.0f64;
    let mut half = 0.0f64;
    let mut prev = f64::INFINITY;
    for l in 1..=16u32 {
        let floor = 9f64.powi(-(l as i32));
        at_zero = at_zero.max((htilde(0.0, l) - 1.0).abs());
        at_pi = at_pi.max((htilde(PI, l) - floor).abs() / floor);
        for z in (0..64).map(|j| j as f64 * 0.1) {
            symmetry = symmetry.max((htilde(z, l) - htilde(-z, l)).abs());
            symmetry = symmetry.max((htilde(z, l) - htilde(z + 2.0 * PI, l)).abs());
            let v = htilde(z, l);
            bounds = bounds.max((v - 1.0).max(floor - v).max(0.0));
        }
        let zeta = half_width_zeta(l).unwrap();
        if zeta >= prev {
            monotone += 1.0;
        }
        half = half.max((htilde(zeta, l) - 0.5).abs());
        prev = zeta;
    }
    let zeta1 = (half_width_zeta(1).unwrap() - (-1.0f64 / 8.0).acos()).abs();
    vec![
        Check::new("appendixb", "htilde(0, l) = 1", at_zero, 1e-15),
        Check::new("appendixb", "htilde(pi, l) = 9^-l (relative)", at_pi, 1e-13),
        Check::new("appendixb", "htilde symmetric and 2pi-periodic", symmetry, 1e-13),
        Check::new("appendixb", "htilde in [9^-l, 1]", bounds, 0.0),
        Check::new("appendixb", "zeta(l) strictly decreasing (violations)", monotone, 0.0),
        Check::new("appendixb", "htilde(zeta(l), l) = 1/2", half, 1e-12),
        Check::new("appendixb", "zeta(1) = arccos(-1/8)", zeta1, 1e-12),
    ]
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Gates => gates(),
        Suite::Integrals => integrals(),
        Suite::Phasespace => phasespace(),
        Suite::Appendixa => appendixa(),
        Suite::Appendixb => appendixb(),
        Suite::All => [gates(), integrals(), phasespace(), appendixa(), appendixb()].concat(),
    }
}

pub fn oracle_shor() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut err = 0.0f64;
    for _ in 0..1000 {
        let q = 1u64 << rng.gen_range(2..=10);
        let period = rng.gen_range(1..=q.min(64));
        let (c, k) = (rng.gen_range(0..q), rng.gen_range(0..period));
        let brute = brute_shor_probability(c, k, q, period).unwrap();
        err = err.max((brute - shor_probability(c, k, q, period)).abs());
    }
    let fixed = (brute_shor_probability(26, 1, 256, 10).unwrap() - shor_probability(26, 1, 256, 10)).abs();
    vec![
        Check::new("shor", "closed form vs direct sum, 1000 inputs", err, 1e-12),
        Check::new("shor", "q=256 L=10 c=26 k=1", fixed, 1e-12),
    ]
}

pub fn oracle_integrals() -> Vec<Check> {
    integrals()
}

pub fn oracle_trace() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let phi = apply_gate_string(2).unwrap();
    let phi_err = (quadrature_trace(&phi, 2).unwrap() - (Complex64::i() - 1.0) / 2.0).norm();
    let id_err = (quadrature_trace(&DenseMatrix::identity(2), 1).unwrap() - 2.0).norm();
    let mut rand_err = 0.0f64;
    for l in 1..=2u32 {
        for _ in 0..5 {
            let m = DenseMatrix::from_fn(1 << l, |_, _| Complex64::new(rng.gen(), rng.gen()));
            rand_err = rand_err.max((quadrature_trace(&m, l).unwrap() - m.trace()).norm());
        }
    }
    vec![
        Check::new("trace", "Phi (l=2)", phi_err, 1e-6),
        Check::new("trace", "identity (l=1)", id_err, 1e-8),
        Check::new("trace", "random matrices (l<=2)", rand_err, 1e-6),
    ]
}

pub fn oracle_semistate() -> Vec<Check> {
    let mut out = Vec::new();
    for (n, x, l) in [(3u64, 2u64, 2u32), (15, 2, 4)] {
        let brute = brute_semistate(n, x, l, IntegralSource::ClosedForm).unwrap();
        let fast = semistate(n, x, l, SemiclassicalParams::strict()).unwrap();
        out.push(Check::new(
            "semistate",
            format!("strict vs triple sum (N={n}, x={x}, l={l})"),
            fast.max_abs_diff(&brute),
            1e-10,
        ));
    }
    let quad = Quadrature::default();
    let brute = brute_semistate(3, 2, 2, IntegralSource::Quadrature(&quad)).unwrap();
    let fast = semistate(3, 2, 2, SemiclassicalParams::strict()).unwrap();
    out.push(Check::new(
        "semistate",
        "strict vs quadrature triple sum (N=3, x=2, l=2)",
        fast.max_abs_diff(&brute),
        1e-8,
    ));
    for (n, x, l) in [(15u64, 2u64, 4u32), (33, 5, 6), (33, 5, 8)] {
        let brute = brute_paper_semistate(n, x, l).unwrap();
        let fast = semistate(n, x, l, SemiclassicalParams::paper()).unwrap();
        out.push(Check::new(
            "semistate",
            format!("paper formula vs direct sum (N={n}, x={x}, l={l})"),
            fast.max_abs_diff(&brute),
            1e-12,
        ));
    }
    out
}

pub fn run_oracle(suite: OracleSuite) -> Vec<Check> {
    match suite {
        OracleSuite::Shor => oracle_shor(),
        OracleSuite::Integrals => oracle_integrals(),
        OracleSuite::Trace => oracle_trace(),
        OracleSuite::Semistate => oracle_semistate(),
        OracleSuite::All => [oracle_shor(), oracle_integrals(), oracle_trace(), oracle_semistate()].concat(),
    }
}
