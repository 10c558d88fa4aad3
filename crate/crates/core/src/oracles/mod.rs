//! Independent ground truth: direct sums and numeric quadrature.

pub mod brute;
pub mod quadrature;

pub use brute::{
    brute_paper_semistate, brute_semistate, brute_shor_probability, IntegralSource,
};
pub use quadrature::{
    gauss_legendre, quadrature_integral_i, quadrature_trace, radial_moment, Quadrature,
    QuadratureEstimate, RadialRule,
};
