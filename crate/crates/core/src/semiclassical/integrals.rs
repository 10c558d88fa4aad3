//! Closed forms of the coherent-state integrals `𝓘_{acbd}`.

use std::f64::consts::PI;

use crate::numtheory::{h_coefficient, low_mask};

/// Whether `d_i = b_i + c_i − a_i ∈ {0, 1}` for every bit `i < width`.
pub fn selection_rule(a: u64, c: u64, b: u64, d: u64, width: u32) -> bool {
    (0..width).all(|i| {
        let bit = |v: u64| ((v >> i) & 1) as i64;
        bit(d) == bit(b) + bit(c) - bit(a)
    })
}

/// `𝓘_{acbd} = π^l h(b, c)/(q 3^l)` when the selection rule holds, else 0.
pub fn integral_i(a: u64, c: u64, b: u64, d: u64, width: u32) -> f64 {
    let mask = low_mask(width);
    debug_assert!(a | b | c | d <= mask);
    if !selection_rule(a & mask, c & mask, b & mask, d & mask, width) {
        return 0.0;
    }
    let q = (1u64 << width) as f64;
    PI.powi(width as i32) * h_coefficient(b, c, width) as f64 / (q * 3f64.powi(width as i32))
}

/// The `b` compatible with `(a, c)` under the selection rule.
///
/// Where `a_i ≠ c_i` the bit `b_i` must equal `a_i`; where they agree `b_i` is free.
/// Returns `(b, d = b + c − a)` pairs.
pub fn valid_pairs(a: u64, c: u64, width: u32) -> impl Iterator<Item = (u64, u64)> {
    let mask = low_mask(width);
    let differ = (a ^ c) & mask;
    let agree = !differ & mask;
    let fixed = a & differ;
    // Enumerate subsets of `agree` with the standard (s − agree) & agree walk.
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == agree {
            None
        } else {
            Some(s.wrapping_sub(agree) & agree)
        };
        let b = fixed | s;
        Some((b, b + c - a))
    })
}
