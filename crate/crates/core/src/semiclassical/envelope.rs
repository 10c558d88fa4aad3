//! The `ẑ`-envelope of Shor's probability.

use crate::error::{invalid, Result};
use crate::numtheory::bits_for;
use crate::quantum::shor_probability;

/// `h̃(ẑ, l) = 9^{−l} (5 + 4 cos ẑ)^l`.
pub fn htilde(z_hat: f64, width: u32) -> f64 {
    ((5.0 + 4.0 * z_hat.cos()) / 9.0).powi(width as i32)
}

/// `ζ(l) = arccos((9/2^{1/l} − 5)/4)`, the half width where `h̃ = 1/2`.
pub fn half_width_zeta(width: u32) -> Result<f64> {
    if width == 0 {
        return Err(invalid("ζ(l) needs l ≥ 1"));
    }
    let arg = (9.0 / 2f64.powf(1.0 / width as f64) - 5.0) / 4.0;
    Ok(arg.acos())
}

/// `h̃(ẑ, l)·P(ĉ, k)` with `l = log₂ q`.
pub fn appendixb_envelope(c_hat: u64, k: u64, q: u64, period: u64, z_hat: f64) -> f64 {
    htilde(z_hat, bits_for(q)) * shor_probability(c_hat, k, q, period)
}
