//! Numeric quadrature over the coherent-state measure.
//!
//! Per mode, `λ = r e^{iφ}` and the substitution `u = r²/(1 + r²)` maps
//! `[0, ∞)` onto `[0, 1)`. Under it
//!
//! - `r^{p+1} dr/(1 + r²)⁴ = ½ u^{p/2} (1 − u)^{2 − p/2} du`;
//! - the resolution-of-identity measure becomes `(1/π) dφ du`.
//!
//! The angular integral uses the trapezoid rule. The radial one uses either
//! Gauss–Legendre or the midpoint rule on `[0, 1]`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::matrix::DenseMatrix;

/// Widest register the quadrature oracles integrate over.
pub const MAX_QUADRATURE_WIDTH: u32 = 2;

/// Default angular and radial point counts.
pub const DEFAULT_GRID: usize = 2048;

/// Default bound on the estimated absolute error before a warning is attached.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialRule {
    GaussLegendre,
    Midpoint,
}

/// Nodes and weights of a rule on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `n`-point Gauss–Legendre rule mapped to `[0, 1]`, roots by Newton iteration.
pub fn gauss_legendre(n: usize) -> Rule1d {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let j = j as f64;
                (p0, p1) = (p1, ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j);
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [−1, 1] → [0, 1]
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    Rule1d { nodes, weights }
}

pub fn midpoint(n: usize) -> Rule1d {
    assert!(n >= 1);
    let h = 1.0 / n as f64;
    Rule1d {
        nodes: (0..n).map(|i| (i as f64 + 0.5) * h).collect(),
        weights: vec![h; n],
    }
}

fn radial_rule(rule: RadialRule, n: usize) -> Rule1d {
    match rule {
        RadialRule::GaussLegendre => gauss_legendre(n),
        RadialRule::Midpoint => midpoint(n),
    }
}

/// A tensor grid for one mode: `angular` trapezoid points on `[0, 2π)` and a
/// radial rule in `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub angles: Vec<f64>,
    pub radial: Rule1d,
}

impl QuadratureGrid {
    pub fn new(angular: usize, radial: usize, rule: RadialRule) -> Result<Self> {
        if angular == 0 || radial == 0 {
            return Err(invalid("quadrature grid needs at least one point per axis"));
        }
        Ok(Self {
            angles: (0..angular).map(|j| TAU * j as f64 / angular as f64).collect(),
            radial: radial_rule(rule, radial),
        })
    }

    /// `∫₀^{2π} e^{inφ} dφ` by the trapezoid rule.
    pub fn angular(&self, n: i64) -> Complex64 {
        let h = TAU / self.angles.len() as f64;
        self.angles
            .iter()
            .map(|&phi| Complex64::from_polar(h, n as f64 * phi))
            .sum()
    }

    /// `∫₀^∞ r^{p+1} dr/(1 + r²)⁴` via `u = r²/(1 + r²)`.
    pub fn radial(&self, p: u32) -> f64 {
        let a = p as f64 / 2.0;
        self.radial
            .integrate(|u| 0.5 * u.powf(a) * (1.0 - u).powf(2.0 - a))
    }
}

/// A full grid and its half-resolution companion for error estimation.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    full: QuadratureGrid,
    half: QuadratureGrid,
    tolerance: f64,
}

impl Quadrature {
    pub fn new(angular: usize, radial: usize, rule: RadialRule, tolerance: f64) -> Result<Self> {
        if angular < 2 || radial < 2 {
            return Err(invalid("quadrature grid needs at least two points per axis"));
        }
        Ok(Self {
            full: QuadratureGrid::new(angular, radial, rule)?,
            half: QuadratureGrid::new(angular / 2, radial / 2, rule)?,
            tolerance,
        })
    }

    pub fn full(&self) -> &QuadratureGrid {
        &self.full
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl Default for Quadrature {
    /// 2048 × 2048 Gauss–Legendre grid with tolerance `10⁻⁹`.
    fn default() -> Self {
        Self::new(DEFAULT_GRID, DEFAULT_GRID, RadialRule::GaussLegendre, DEFAULT_TOLERANCE)
            .expect("default grid is valid")
    }
}

/// A quadrature value with its estimated absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// Set when `error_estimate` exceeds the grid tolerance.
    pub warning: Option<String>,
}

fn check_width(width: u32) -> Result<()> {
    if width == 0 || width > MAX_QUADRATURE_WIDTH {
        return Err(Error::ResourceLimit(format!(
            "quadrature over l = {width} modes; supported 1..={MAX_QUADRATURE_WIDTH}"
        )));
    }
    Ok(())
}

fn integral_on(grid: &QuadratureGrid, a: u64, c: u64, b: u64, d: u64, width: u32) -> Complex64 {
    (0..width)
        .map(|i| {
            let bit = |v: u64| ((v >> i) & 1) as i64;
            let p = (bit(c) + bit(a) + bit(b) + bit(d)) as u32;
            let n = (bit(c) - bit(a)) + (bit(b) - bit(d));
            grid.angular(n) * grid.radial(p)
        })
        .product()
}

/// `𝓘_{acbd}` integrated numerically, mode by mode.
pub fn quadrature_integral_i(
    a: u64,
    c: u64,
    b: u64,
    d: u64,
    width: u32,
    quad: &Quadrature,
) -> Result<QuadratureEstimate> {
    check_width(width)?;
    let q = 1u64 << width;
    if a >= q || b >= q || c >= q || d >= q {
        return Err(invalid(format!("register values must lie below {q}")));
    }
    let full = integral_on(&quad.full, a, c, b, d, width);
    let half = integral_on(&quad.half, a, c, b, d, width);
    let error_estimate = (full - half).norm().max(full.im.abs());
    let warning = (error_estimate > quad.tolerance).then(|| {
        format!(
            "estimated error {error_estimate:.3e} exceeds tolerance {:.1e}",
            quad.tolerance
        )
    });
    Ok(QuadratureEstimate {
        value: full.re,
        error_estimate,
        warning,
    })
}

/// `∫₀^∞ r^{2m+1} dr/(1 + r²)⁴`: `1/6`, `1/12`, `1/6` for `m = 0, 1, 2`.
pub fn radial_moment(m: u32, quad: &Quadrature) -> QuadratureEstimate {
    let value = quad.full.radial(2 * m);
    let error_estimate = (value - quad.half.radial(2 * m)).abs();
    let warning = (error_estimate > quad.tolerance)
        .then(|| format!("estimated error {error_estimate:.3e} exceeds tolerance"));
    QuadratureEstimate {
        value,
        error_estimate,
        warning,
    }
}

/// Angular and radial point counts for [`quadrature_trace`].
pub const TRACE_GRID: (usize, usize) = (16, 64);

/// `∫dμ(λ) ⟨λ|M|λ⟩` on a tensor grid, with `⟨λ|M|λ⟩` evaluated from the
/// normalized coherent product vector.
pub fn quadrature_trace(m: &DenseMatrix, width: u32) -> Result<Complex64> {
    quadrature_trace_with(m, width, TRACE_GRID.0, TRACE_GRID.1)
}

pub fn quadrature_trace_with(
    m: &DenseMatrix,
    width: u32,
    angular: usize,
    radial: usize,
) -> Result<Complex64> {
    check_width(width)?;
    if m.dim() != 1usize << width {
        return Err(invalid(format!("matrix is {0}x{0}, expected 2^{width}", m.dim())));
    }
    let grid = QuadratureGrid::new(angular, radial, RadialRule::GaussLegendre)?;
    // Per-mode points: (λ, weight) under (1/π) dφ du.
    let h = TAU / angular as f64;
    let points: Vec<(Complex64, f64)> = grid
        .angles
        .iter()
        .flat_map(|&phi| {
            grid.radial.nodes.iter().zip(&grid.radial.weights).map(move |(&u, &w)| {
                let r = (u / (1.0 - u)).sqrt();
                (Complex64::from_polar(r, phi), h * w / PI)
            })
        })
        .collect();
    let dim = m.dim();
    let value_at = |lambdas: &[Complex64]| -> Complex64 {
        // v_m = Π_i λ_i^{m_i} / √(1 + |λ_i|²)
        let v: Vec<Complex64> = (0..dim)
            .map(|idx| {
                lambdas
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        let norm = 1.0 / (1.0 + l.norm_sqr()).sqrt();
                        if idx >> i & 1 == 1 {
                            l * norm
                        } else {
                            Complex64::new(norm, 0.0)
                        }
                    })
                    .product()
            })
            .collect();
        (0..dim)
            .map(|n| {
                let mv: Complex64 = m.row(n).iter().zip(&v).map(|(a, b)| a * b).sum();
                v[n].conj() * mv
            })
            .sum()
    };
    // Partial sums per outer point, reduced in index order.
    let partial: Vec<Complex64> = points
        .par_iter()
        .map(|&(l0, w0)| {
            if width == 1 {
                value_at(&[l0]) * w0
            } else {
                points
                    .iter()
                    .map(|&(l1, w1)| value_at(&[l0, l1]) * (w0 * w1))
                    .sum()
            }
        })
        .collect();
    Ok(partial.iter().sum())
}
