//! Integer and bit-level machinery for period finding.
//!
//! Everything here is a pure function on native integers. Moduli are
//! restricted to `N < 2^31` so that products of two residues fit in a `u64`.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest modulus accepted by the modular routines.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest register width handled anywhere in the crate.
pub const MAX_WIDTH: u32 = 32;

/// An `l`-bit integer `a = Σ a_i 2^i`, with bit `i` holding the coefficient `a_i`.
///
/// Kets are written most significant bit first, `|a_{l-1} … a_0⟩`, but bit
/// indices always count from the least significant end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRegister {
    value: u64,
    width: u32,
}

impl BitRegister {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(invalid(format!("register width {width} outside 1..={MAX_WIDTH}")));
        }
        if value >> width != 0 {
            return Err(invalid(format!("{value} does not fit in {width} bits")));
        }
        Ok(Self { value, width })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// Register dimension `q = 2^l`.
    pub fn dimension(self) -> u64 {
        1 << self.width
    }

    /// Coefficient `a_i`.
    pub fn bit(self, i: u32) -> u8 {
        ((self.value >> i) & 1) as u8
    }

    /// Bits `a_0, a_1, …, a_{l-1}`.
    pub fn bits(self) -> impl Iterator<Item = u8> {
        (0..self.width).map(move |i| self.bit(i))
    }

    pub fn reversed(self) -> Self {
        Self {
            value: bit_reverse(self.value, self.width),
            width: self.width,
        }
    }

    pub fn hamming_distance(self, other: Self) -> u32 {
        (self.value ^ other.value).count_ones()
    }
}

impl fmt::Display for BitRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width as usize)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("modulus {n} must be at least 2")));
    }
    if n >= MAX_MODULUS {
        return Err(invalid(format!("modulus {n} must be below 2^31")));
    }
    Ok(())
}

/// `x^a mod n` by square-and-multiply.
pub fn mod_exp(x: u64, mut a: u64, n: u64) -> Result<u64> {
    check_modulus(n)?;
    let mut base = x % n;
    let mut acc = 1 % n;
    while a > 0 {
        if a & 1 == 1 {
            acc = acc * base % n;
        }
        base = base * base % n;
        a >>= 1;
    }
    Ok(acc)
}

/// Smallest `L ≥ 1` with `x^L ≡ 1 (mod n)`, found by stepping through the powers.
///
/// This is an O(n) ground-truth oracle; the sampled pipelines never call it to
/// recover the period, only to lay out the second register.
pub fn multiplicative_order(x: u64, n: u64) -> Result<u64> {
    check_modulus(n)?;
    let g = gcd(x % n, n);
    if g != 1 {
        return Err(Error::NotCoprime { x, n, gcd: g });
    }
    let x = x % n;
    let mut power = x;
    let mut order = 1;
    while power != 1 {
        power = power * x % n;
        order += 1;
    }
    Ok(order)
}

/// The distinct residues `x^k mod n` for `k = 0..L`.
pub fn residues(x: u64, period: u64, n: u64) -> Result<Vec<u64>> {
    check_modulus(n)?;
    let mut out = Vec::with_capacity(period as usize);
    let mut power = 1 % n;
    for _ in 0..period {
        out.push(power);
        power = power * (x % n) % n;
    }
    Ok(out)
}

/// A convergent `d/L` of a continued-fraction expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convergent {
    pub d: u64,
    pub period: u64,
}

/// All convergents `d/L` of `ĉ/q` with `L < n`, in order of increasing `L`.
///
/// `ĉ = 0` yields the single convergent `0/1`.
pub fn continued_fraction_candidates(c_hat: u64, q: u64, n: u64) -> Result<Vec<Convergent>> {
    if q == 0 || c_hat >= q {
        return Err(invalid(format!("ĉ = {c_hat} must lie in [0, {q})")));
    }
    let mut out = vec![Convergent { d: 0, period: 1 }];
    if c_hat == 0 {
        return Ok(out);
    }
    // h_k = a_k h_{k-1} + h_{k-2}, k_k = a_k k_{k-1} + k_{k-2}, seeded at 0/1.
    let (mut h_prev, mut h) = (1u64, 0u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let (mut num, mut den) = (q, c_hat);
    // ĉ/q < 1 so the leading partial quotient is 0; iterate on q/ĉ.
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num % den);
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        if k_next >= n {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        out.push(Convergent { d: h, period: k });
    }
    Ok(out)
}

/// Why a period did not produce factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoFactorReason {
    OddPeriod,
    /// `x^{L/2} ≡ ±1 (mod n)`.
    TrivialRoot,
}

/// Outcome of the gcd step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOutcome {
    Found(u64, u64),
    Absent(NoFactorReason),
}

/// `(gcd(x^{L/2} − 1, n), gcd(x^{L/2} + 1, n))` when `L` is even and the half
/// power is a nontrivial square root of unity.
///
/// Odd periods are rejected before the period itself is checked.
pub fn extract_factors(x: u64, period: u64, n: u64) -> Result<FactorOutcome> {
    if period % 2 == 1 {
        check_modulus(n)?;
        return Ok(FactorOutcome::Absent(NoFactorReason::OddPeriod));
    }
    if period == 0 || mod_exp(x, period, n)? != 1 {
        return Err(invalid(format!("{x}^{period} is not 1 mod {n}")));
    }
    let half = mod_exp(x, period / 2, n)?;
    if half == 1 || half == n - 1 {
        return Ok(FactorOutcome::Absent(NoFactorReason::TrivialRoot));
    }
    let p = gcd(half - 1, n);
    let p2 = gcd(half + 1, n);
    Ok(FactorOutcome::Found(p, p2))
}

/// Result of testing one period candidate from a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodResult {
    pub candidate_period: u64,
    pub convergent_d: u64,
    pub accepted: bool,
    pub factors: Option<(u64, u64)>,
}

/// Tries every convergent of `ĉ/q` and its multiples `1..=max_multiple`,
/// returning the first candidate whose period yields a nontrivial factor pair.
///
/// The returned list records every candidate tried, in order.
pub fn recover_period(
    c_hat: u64,
    q: u64,
    x: u64,
    n: u64,
    max_multiple: u64,
) -> Result<Vec<PeriodResult>> {
    let mut tried = Vec::new();
    let mut seen = Vec::new();
    for conv in continued_fraction_candidates(c_hat, q, n)? {
        for m in 1..=max_multiple {
            let candidate = conv.period * m;
            if seen.contains(&candidate) {
                continue;
            }
            seen.push(candidate);
            let accepted = mod_exp(x, candidate, n)? == 1;
            let factors = if accepted {
                match extract_factors(x, candidate, n)? {
                    FactorOutcome::Found(p, p2) if p > 1 && p < n && p2 > 1 && p2 < n => {
                        Some((p, p2))
                    }
                    _ => None,
                }
            } else {
                None
            };
            tried.push(PeriodResult {
                candidate_period: candidate,
                convergent_d: conv.d * m,
                accepted,
                factors,
            });
            if factors.is_some() {
                return Ok(tried);
            }
        }
    }
    Ok(tried)
}

/// `h(b, c) = Π_i (1 + δ_{b_i c_i}) = 2^{l − popcount(b ⊕ c)}`.
pub fn h_coefficient(b: u64, c: u64, width: u32) -> u64 {
    let mask = low_mask(width);
    1 << (width - ((b ^ c) & mask).count_ones())
}

/// Reverses the low `width` bits of `a`.
pub fn bit_reverse(a: u64, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    a.reverse_bits() >> (64 - width)
}

pub(crate) fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1 << width) - 1
    }
}

/// Smallest `l` with `2^l ≥ m`.
pub fn bits_for(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// Trial-division primality test, for input validation only.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    for k in (1..=bits_for(n + 1)).rev() {
        let root = integer_root(n, k);
        if root >= 2 && root.checked_pow(k) == Some(n) && is_prime(root) {
            return Some((root, k));
        }
    }
    None
}

fn integer_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}
