//! The `R`/`S` gate decomposition of the QFT.
//!
//! The string `Φ = R_0 S_{0,1} … S_{0,l−1} R_1 S_{1,2} … R_{l−1}` is an
//! operator product, so the rightmost gate acts first. The product equals the
//! QFT only after the output bits are reversed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::numtheory::bit_reverse;
use crate::phase::RootsOfUnity;

/// Widest register for which [`build_gate_string`] is defined.
pub const MAX_GATE_STRING_WIDTH: u32 = 12;

/// Widest register for which dense matrices are built.
pub const MAX_DENSE_WIDTH: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateDescriptor {
    /// Hadamard-like `R_i = (1/√2)[[1, 1], [1, −1]]` on bit `i`.
    R { target: u32 },
    /// Controlled phase `e^{iθ}` on `|1_j 1_i⟩`, with `θ = π / 2^{j−i}`.
    S { target: u32, control: u32, theta: f64 },
}

impl GateDescriptor {
    pub fn r(target: u32) -> Self {
        Self::R { target }
    }

    /// Panics unless `control > target`.
    pub fn s(target: u32, control: u32) -> Self {
        assert!(control > target, "S_{{{target},{control}}} needs j > i");
        Self::S {
            target,
            control,
            theta: PI / (1u64 << (control - target)) as f64,
        }
    }

    /// 2×2 matrix of an `R` gate, or the 4×4 diagonal of an `S` gate.
    pub fn local_matrix(&self) -> DenseMatrix {
        match *self {
            Self::R { .. } => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                DenseMatrix::from_row_major(2, vec![h, h, h, -h])
            }
            Self::S { theta, .. } => {
                let mut m = DenseMatrix::identity(4);
                m[(3, 3)] = Complex64::from_polar(1.0, theta);
                m
            }
        }
    }

    /// Applies the gate in place to a state vector over `2^l` basis states.
    pub fn apply(&self, state: &mut [Complex64]) {
        match *self {
            Self::R { target } => {
                let bit = 1usize << target;
                for idx in 0..state.len() {
                    if idx & bit == 0 {
                        let (a, b) = (state[idx], state[idx | bit]);
                        state[idx] = (a + b) * FRAC_1_SQRT_2;
                        state[idx | bit] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Self::S {
                target,
                control,
                theta,
            } => {
                let both = (1usize << target) | (1usize << control);
                let phase = Complex64::from_polar(1.0, theta);
                for (idx, amp) in state.iter_mut().enumerate() {
                    if idx & both == both {
                        *amp *= phase;
                    }
                }
            }
        }
    }
}

/// The `l(l+1)/2` gates of `Φ` in written (left-to-right) order.
pub fn build_gate_string(width: u32) -> Result<Vec<GateDescriptor>> {
    if width == 0 || width > MAX_GATE_STRING_WIDTH {
        return Err(Error::InvalidArgument(format!(
            "gate string width {width} outside 1..={MAX_GATE_STRING_WIDTH}"
        )));
    }
    let mut gates = Vec::with_capacity((width * (width + 1) / 2) as usize);
    for i in 0..width {
        gates.push(GateDescriptor::r(i));
        for j in i + 1..width {
            gates.push(GateDescriptor::s(i, j));
        }
    }
    Ok(gates)
}

fn check_dense(width: u32) -> Result<()> {
    if width > MAX_DENSE_WIDTH {
        return Err(Error::ResourceLimit(format!(
            "dense {0}x{0} matrix for l = {width} exceeds l ≤ {MAX_DENSE_WIDTH}",
            1u64 << width
        )));
    }
    if width == 0 {
        return Err(Error::InvalidArgument("register width must be ≥ 1".into()));
    }
    Ok(())
}

/// Dense matrix of the gate product `Φ`, built column by column.
pub fn apply_gate_string(width: u32) -> Result<DenseMatrix> {
    check_dense(width)?;
    let gates = build_gate_string(width)?;
    let q = 1usize << width;
    let mut u = DenseMatrix::zeros(q);
    let mut column = vec![Complex64::new(0.0, 0.0); q];
    for m in 0..q {
        column.fill(Complex64::new(0.0, 0.0));
        column[m] = Complex64::new(1.0, 0.0);
        for gate in gates.iter().rev() {
            gate.apply(&mut column);
        }
        for (n, amp) in column.iter().enumerate() {
            u[(n, m)] = *amp;
        }
    }
    Ok(u)
}

/// The QFT matrix `⟨c|F|a⟩ = q^{−1/2} exp(2πi a·c/q)`.
pub fn qft_matrix(width: u32) -> Result<DenseMatrix> {
    check_dense(width)?;
    let q = 1u64 << width;
    let roots = RootsOfUnity::new(q);
    let norm = 1.0 / (q as f64).sqrt();
    Ok(DenseMatrix::from_fn(q as usize, |c, a| {
        roots.pow(a as u64 * c as u64) * norm
    }))
}

/// Reverses the bits of every row index: `(P·M)[n][m] = M[rev(n)][m]`.
pub fn reverse_output_bits(m: &DenseMatrix, width: u32) -> DenseMatrix {
    m.permute_rows(|r| bit_reverse(r as u64, width) as usize)
}
