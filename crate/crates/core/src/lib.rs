//! Exact and semiclassical simulation of Shor's period-finding algorithm.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: modular arithmetic, order finding, continued fractions,
//!   factor extraction and the Hamming-weight coefficient `h(b, c)`.
//! - [`quantum`]: the exact QFT, its `R`/`S` gate decomposition, the post-QFT
//!   state `|s′⟩` and Shor's success probability.
//! - [`phasespace`]: the classical spin-½ phase space built from SU(2)
//!   coherent states (J-functions, Poisson bracket, precession flow).
//! - [`semiclassical`]: coherent-state symbols of gates, the diagonal
//!   approximation, the modified state `|𝒮′⟩` and its success probability.
//! - [`oracles`]: brute-force and quadrature ground truth for all of the above.
//! - [`cli`]: the `semishor` command-line pipeline.

pub mod cli;
pub mod error;
pub mod matrix;
pub mod numtheory;
pub mod oracles;
pub mod phase;
pub mod phasespace;
pub mod quantum;
pub mod semiclassical;

pub use error::{Error, Result};
pub use num_complex::Complex64;
