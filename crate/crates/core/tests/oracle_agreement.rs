//! Closed forms against the brute-force and quadrature oracles.

use semishor::matrix::DenseMatrix;
use semishor::oracles::quadrature::midpoint;
use semishor::oracles::{
    brute_paper_semistate, brute_semistate, brute_shor_probability, quadrature_integral_i,
    quadrature_trace, IntegralSource, Quadrature, RadialRule,
};
use semishor::quantum::{apply_gate_string, shor_probability, shor_state, Instance, KMode};
use semishor::semiclassical::{
    integral_i, semiclassical_distribution, semiclassical_probability, semistate, CoherentSymbol,
    SemiclassicalParams,
};
use semishor::Complex64;

#[test]
fn shor_state_matches_direct_sum() {
    for (n, x, l) in [(15u64, 2u64, 4u32), (21, 2, 6), (33, 5, 8)] {
        let state = shor_state(n, x, l).unwrap();
        let q = state.q();
        for c in (0..q).step_by(3) {
            for k in 0..state.period() {
                let brute = brute_shor_probability(c, k, q, state.period()).unwrap();
                assert!((state.probability(c, k) - brute).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn fixed_instance_shor_value() {
    let brute = brute_shor_probability(26, 1, 256, 10).unwrap();
    assert!((brute - shor_probability(26, 1, 256, 10)).abs() < 1e-12);
}

#[test]
fn strict_semistate_matches_triple_sum() {
    for (n, x, l) in [(3u64, 2u64, 2u32), (5, 2, 3), (15, 2, 4)] {
        let brute = brute_semistate(n, x, l, IntegralSource::ClosedForm).unwrap();
        let fast = semistate(n, x, l, SemiclassicalParams::strict()).unwrap();
        assert!(fast.max_abs_diff(&brute) < 1e-10, "({n}, {x}, {l})");
    }
}

#[test]
fn strict_semistate_matches_quadrature_triple_sum() {
    let quad = Quadrature::default();
    let brute = brute_semistate(3, 2, 2, IntegralSource::Quadrature(&quad)).unwrap();
    let fast = semistate(3, 2, 2, SemiclassicalParams::strict()).unwrap();
    assert!(fast.max_abs_diff(&brute) < 1e-8);
}

#[test]
fn brute_semistate_norm() {
    for (n, x, l) in [(3u64, 2u64, 2u32), (15, 2, 4)] {
        let s = brute_semistate(n, x, l, IntegralSource::ClosedForm).unwrap();
        assert!(s.amplitudes().iter().all(|a| a.re.is_finite() && a.im.is_finite()));
        let norm = s.norm_sqr();
        assert!(norm < 1.0);
        assert!(norm <= 1.0 / s.q() as f64, "norm {norm}");
    }
}

#[test]
fn paper_semistate_matches_direct_sum() {
    for (n, x, l) in [(15u64, 2u64, 4u32), (21, 2, 5), (33, 5, 6), (51, 2, 8)] {
        let brute = brute_paper_semistate(n, x, l).unwrap();
        let fast = semistate(n, x, l, SemiclassicalParams::paper()).unwrap();
        assert!(fast.max_abs_diff(&brute) < 1e-12, "({n}, {x}, {l})");
    }
}

#[test]
fn semiclassical_rows_match_brute_states() {
    for (n, x, l) in [(15u64, 2u64, 4u32), (33, 5, 6)] {
        let inst = Instance::new(n, x, l).unwrap();
        let paper = brute_paper_semistate(n, x, l).unwrap();
        for k in 0..inst.period {
            let table = semiclassical_distribution(&inst, KMode::Fixed(k), SemiclassicalParams::paper()).unwrap();
            for row in &table.rows {
                assert!((row.probability - paper.probability(row.c_hat, k)).abs() < 1e-12);
            }
        }
        let marginal = semiclassical_distribution(&inst, KMode::Marginal, SemiclassicalParams::paper()).unwrap();
        for row in &marginal.rows {
            assert!((row.probability - paper.marginal(row.c_hat)).abs() < 1e-12);
        }
    }
    let strict = brute_semistate(15, 2, 4, IntegralSource::ClosedForm).unwrap();
    for c in 0..16 {
        for k in 0..4 {
            let p = semiclassical_probability(c, k, 16, 4, SemiclassicalParams::strict());
            assert!((p - strict.probability(c, k)).abs() < 1e-12);
        }
    }
}

#[test]
fn integrals_match_quadrature_exhaustively() {
    let quad = Quadrature::default();
    for l in [1u32, 2] {
        let q = 1u64 << l;
        for a in 0..q {
            for c in 0..q {
                for b in 0..q {
                    for d in 0..q {
                        let est = quadrature_integral_i(a, c, b, d, l, &quad).unwrap();
                        assert!(est.warning.is_none());
                        assert!((est.value - integral_i(a, c, b, d, l)).abs() < 1e-8);
                    }
                }
            }
        }
    }
}

#[test]
fn midpoint_error_drops_at_second_order() {
    // ½ ∫ (1 − u)² du = 1/6 is the radial integrand for two equal bits.
    let f = |u: f64| 0.5 * (1.0 - u) * (1.0 - u);
    let err = |n| (midpoint(n).integrate(f) - 1.0 / 6.0).abs();
    for n in [8, 16, 32, 64] {
        assert!(err(n) / err(2 * n) >= 3.0);
    }
    let coarse = Quadrature::new(8, 8, RadialRule::Midpoint, 1e-9).unwrap();
    assert!(quadrature_integral_i(0, 0, 0, 0, 1, &coarse).unwrap().warning.is_some());
}

#[test]
fn traces_match_quadrature() {
    let phi = apply_gate_string(2).unwrap();
    let sym = CoherentSymbol::symbol_of(&phi, 2).unwrap();
    let numeric = quadrature_trace(&phi, 2).unwrap();
    assert!((numeric - sym.trace_integral()).norm() < 1e-6);
    assert!((numeric - (Complex64::i() - 1.0) / 2.0).norm() < 1e-6);
    let m = DenseMatrix::from_fn(2, |r, c| Complex64::new(r as f64 + 1.0, c as f64 - 0.5));
    assert!((quadrature_trace(&m, 1).unwrap() - m.trace()).norm() < 1e-6);
}
