//! Classical phase space of a spin-½ built from SU(2) coherent states.
//!
//! Points are stereographic coordinates `λ` in a single chart; the north pole
//! `λ = ∞` is not representable and `|λ| > 10⁸` is rejected.
//!
//! Bracket convention: `{f, g} = (1 + |λ|²)² (∂_λ f ∂_λ̄ g − ∂_λ̄ f ∂_λ g)`, i.e.
//! `(ω⁻¹)_{λ̄λ} = −(ω⁻¹)_{λλ̄}`. With this sign `{𝒥₊, 𝒥₋} = 2𝒥₀` and
//! `{𝒥₀, 𝒥±} = ±𝒥±`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Largest `|λ|` accepted in the stereographic chart.
pub const MAX_CHART_RADIUS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint {
    lambda: Complex64,
}

impl CoherentPoint {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(invalid(format!("λ = {lambda} is not finite")));
        }
        if lambda.norm() > MAX_CHART_RADIUS {
            return Err(invalid(format!(
                "|λ| = {} lies outside the chart (|λ| ≤ 1e8)",
                lambda.norm()
            )));
        }
        Ok(Self { lambda })
    }

    pub fn from_polar(r: f64, phi: f64) -> Result<Self> {
        if r < 0.0 {
            return Err(invalid(format!("radius {r} is negative")));
        }
        Self::new(Complex64::from_polar(r, phi))
    }

    pub fn lambda(self) -> Complex64 {
        self.lambda
    }

    pub fn r(self) -> f64 {
        self.lambda.norm()
    }

    /// `arg λ` in `[0, 2π)`.
    pub fn phi(self) -> f64 {
        self.lambda.arg().rem_euclid(TAU)
    }
}

/// `(𝒥₀, 𝒥₊, 𝒥₋)` at one phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTriple {
    pub j0: f64,
    pub j_plus: Complex64,
    pub j_minus: Complex64,
}

impl SpinTriple {
    /// `𝒥₊𝒥₋ + 𝒥₀²`, which is `j² = 1/4` for spin ½.
    pub fn casimir(&self) -> f64 {
        (self.j_plus * self.j_minus).re + self.j0 * self.j0
    }
}

pub fn j_functions(p: CoherentPoint) -> SpinTriple {
    let l = p.lambda;
    let s = l.norm_sqr();
    SpinTriple {
        j0: -0.5 * (1.0 - s) / (1.0 + s),
        j_plus: l.conj() / (1.0 + s),
        j_minus: l / (1.0 + s),
    }
}

/// `ω_{λλ̄} = (1 + |λ|²)^{−2}`.
pub fn symplectic_density(p: CoherentPoint) -> f64 {
    (1.0 + p.lambda.norm_sqr()).powi(-2)
}

/// `(ω⁻¹)_{λλ̄} = (1 + |λ|²)²`.
pub fn inverse_symplectic_density(p: CoherentPoint) -> f64 {
    (1.0 + p.lambda.norm_sqr()).powi(2)
}

/// `H = −½ (1 − λλ̄)/(1 + λλ̄)`.
pub fn hamiltonian(p: CoherentPoint) -> f64 {
    let s = p.lambda.norm_sqr();
    -0.5 * (1.0 - s) / (1.0 + s)
}

/// Step bounds accepted by the finite-difference routines.
pub const STEP_RANGE: (f64, f64) = (1e-7, 1e-3);

/// `(∂_λ f, ∂_λ̄ f)` by central differences along the real and imaginary axes.
pub fn wirtinger<F>(f: F, p: CoherentPoint, step: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(STEP_RANGE.0..=STEP_RANGE.1).contains(&step) {
        return Err(invalid(format!("finite-difference step {step} outside [1e-7, 1e-3]")));
    }
    let l = p.lambda;
    let eval = |z: Complex64| {
        let v = f(z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(invalid(format!("field is not finite at λ = {z}")))
        }
    };
    let dx = (eval(l + step)? - eval(l - step)?) / (2.0 * step);
    let i_step = Complex64::new(0.0, step);
    let dy = (eval(l + i_step)? - eval(l - i_step)?) / (2.0 * step);
    let i = Complex64::i();
    Ok(((dx - i * dy) * 0.5, (dx + i * dy) * 0.5))
}

/// `{f, g}` at `p`, with all derivatives by central differences.
pub fn poisson_bracket<F, G>(f: F, g: G, p: CoherentPoint, step: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    let (df, dbar_f) = wirtinger(f, p, step)?;
    let (dg, dbar_g) = wirtinger(g, p, step)?;
    Ok(inverse_symplectic_density(p) * (df * dbar_g - dbar_f * dg))
}

/// `𝒥₀`, `𝒥₊` and `𝒥₋` as complex fields of `λ`, for use with the bracket.
pub fn j0_field(l: Complex64) -> Complex64 {
    let s = l.norm_sqr();
    Complex64::new(-0.5 * (1.0 - s) / (1.0 + s), 0.0)
}

pub fn j_plus_field(l: Complex64) -> Complex64 {
    l.conj() / (1.0 + l.norm_sqr())
}

pub fn j_minus_field(l: Complex64) -> Complex64 {
    l / (1.0 + l.norm_sqr())
}

/// `(dλ, dλ̄)` components of `i_v ω = −v^λ ω_{λλ̄} dλ̄ + v^λ̄ ω_{λ̄λ} dλ` for the
/// `ω`-preserving field `v^λ = Cλ`, `v^λ̄ = Cλ̄`.
///
/// `C = 1` reproduces `−dH` for the Hamiltonian above; `C = ½` gives `−½ dH`.
pub fn interior_product(p: CoherentPoint, c: f64) -> (Complex64, Complex64) {
    let l = p.lambda;
    let w = symplectic_density(p);
    let d_lambda = c * l.conj() * (-w);
    let d_lambda_bar = -(c * l) * w;
    (d_lambda, d_lambda_bar)
}

/// One sample along a precession trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub phi: f64,
    pub point: CoherentPoint,
    pub spin: SpinTriple,
}

/// CSV row layout for trajectory export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct TrajectoryRow {
    pub step: usize,
    pub phi: f64,
    pub re_lambda: f64,
    pub im_lambda: f64,
    pub J0: f64,
    pub re_Jplus: f64,
    pub im_Jplus: f64,
    pub casimir: f64,
}

// Adding 0.0 turns -0.0 into 0.0 so exported rows never print a signed zero.
impl From<&TrajectoryPoint> for TrajectoryRow {
    fn from(t: &TrajectoryPoint) -> Self {
        Self {
            step: t.step,
            phi: t.phi + 0.0,
            re_lambda: t.point.lambda.re + 0.0,
            im_lambda: t.point.lambda.im + 0.0,
            J0: t.spin.j0 + 0.0,
            re_Jplus: t.spin.j_plus.re + 0.0,
            im_Jplus: t.spin.j_plus.im + 0.0,
            casimir: t.spin.casimir(),
        }
    }
}

/// The precession flow `λ(φ) = λ₀ e^{iφ}` sampled at `steps + 1` uniform
/// angles from `0` to `phi_total`.
///
/// The bracket flow of `H` is `λ ↦ λe^{−t}` with `t = −iφ`; rotating the phase
/// leaves `|λ|`, and therefore `𝒥₀`, exactly unchanged.
pub fn evolve(p0: CoherentPoint, phi_total: f64, steps: usize) -> Result<Vec<TrajectoryPoint>> {
    if steps == 0 {
        return Err(invalid("trajectory needs at least one step"));
    }
    if !phi_total.is_finite() {
        return Err(invalid(format!("total angle {phi_total} is not finite")));
    }
    let r = p0.r();
    let phi0 = p0.lambda.arg();
    (0..=steps)
        .map(|step| {
            let phi = phi_total * step as f64 / steps as f64;
            let point = CoherentPoint::new(Complex64::from_polar(r, phi0 + phi))?;
            Ok(TrajectoryPoint {
                step,
                phi,
                point,
                spin: j_functions(point),
            })
        })
        .collect()
}
