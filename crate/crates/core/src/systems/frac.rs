use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const TWO_POW_128: f64 = 340282366920938463463374607431768211456.0;

/// A point of the circle `[0, 1)` stored as an exact 128-bit binary fraction
/// `bits / 2^128`.
///
/// Addition is addition mod 1 and is exact. Multiplying by an integer is also
/// exact mod 1, which lets phases such as `n * x + binom(n, 2) * alpha` be
/// reduced without any rounding before the final `e(t)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Frac128(pub u128);

impl Frac128 {
    pub const ZERO: Frac128 = Frac128(0);
    pub const HALF: Frac128 = Frac128(1 << 127);

    pub fn from_bits(bits: u128) -> Self {
        Frac128(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `floor(num * 2^128 / den) mod 2^128`; exact for any `den > 0`.
    pub fn from_ratio(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        let scaled: BigUint = (BigUint::from(num % den) << 128u32) / BigUint::from(den);
        Frac128(to_u128(&scaled))
    }

    /// The fractional part of `x`, truncated to 128 bits. Exact for every
    /// finite double (scaling by `2^128` is exact).
    pub fn from_f64(x: f64) -> Self {
        let t = x.rem_euclid(1.0);
        // `t < 1` so the product is below 2^128, except when rem_euclid rounds
        // up to 1.0 for tiny negative inputs.
        if t >= 1.0 {
            return Frac128::ZERO;
        }
        Frac128((t * TWO_POW_128) as u128)
    }

    /// `floor((sqrt(2) - 1) * 2^128)`, the fixed-point model of `sqrt(2) - 1`.
    pub fn sqrt2_minus_1() -> Self {
        let two_pow_257 = BigUint::from(1u8) << 257u32;
        let root = two_pow_257.sqrt();
        let one = BigUint::from(1u8) << 128u32;
        Frac128(to_u128(&(root - one)))
    }

    /// `floor(((sqrt(5) - 1) / 2) * 2^128)`, the golden-ratio conjugate.
    pub fn golden() -> Self {
        let five = BigUint::from(5u8) << 256u32;
        let root = five.sqrt();
        let one = BigUint::from(1u8) << 128u32;
        Frac128(to_u128(&((root - one) >> 1u32)))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / TWO_POW_128
    }

    /// Representative of the class in `[-1/2, 1/2)`, as a float.
    pub fn signed_turns(self) -> f64 {
        (self.0 as i128) as f64 / TWO_POW_128
    }

    pub fn add(self, other: Frac128) -> Frac128 {
        Frac128(self.0.wrapping_add(other.0))
    }

    pub fn sub(self, other: Frac128) -> Frac128 {
        Frac128(self.0.wrapping_sub(other.0))
    }

    pub fn neg(self) -> Frac128 {
        Frac128(self.0.wrapping_neg())
    }

    /// `k * self mod 1` for a signed integer `k`.
    pub fn mul_int(self, k: i128) -> Frac128 {
        let prod = self.0.wrapping_mul(k.unsigned_abs());
        if k < 0 {
            Frac128(prod.wrapping_neg())
        } else {
            Frac128(prod)
        }
    }

    /// `k * self mod 1` for an unsigned integer `k`.
    pub fn mul_uint(self, k: u128) -> Frac128 {
        Frac128(self.0.wrapping_mul(k))
    }

    /// Keep the leading `bits` binary digits.
    pub fn truncate(self, bits: u32) -> Frac128 {
        if bits >= 128 {
            self
        } else if bits == 0 {
            Frac128::ZERO
        } else {
            Frac128(self.0 & !(u128::MAX >> bits))
        }
    }

    /// `e(self) = exp(2 pi i self)`.
    pub fn cis(self) -> Complex64 {
        let (s, c) = (TAU * self.signed_turns()).sin_cos();
        Complex64::new(c, s)
    }
}

/// `e(x) = exp(2 pi i x)` for a float argument.
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * x).sin_cos();
    Complex64::new(c, s)
}

fn to_u128(x: &BigUint) -> u128 {
    let digits = x.to_u64_digits();
    debug_assert!(digits.len() <= 2, "value does not fit in 128 bits");
    let lo = digits.first().copied().unwrap_or(0) as u128;
    let hi = digits.get(1).copied().unwrap_or(0) as u128;
    lo | (hi << 64)
}

/// Denominators of the continued-fraction convergents of `alpha`, treating
/// `alpha` as the exact rational `bits / 2^128`. Returns at most `count`
/// values, stopping early when the expansion terminates or a denominator
/// exceeds `u64::MAX`.
pub fn convergent_denominators(alpha: Frac128, count: usize) -> Vec<u64> {
    let mut num = BigUint::from(alpha.0);
    let mut den = BigUint::from(1u8) << 128u32;
    let zero = BigUint::from(0u8);
    // q_{-1} = 0, q_0 = 1 for the expansion [0; a_1, a_2, ...].
    let (mut q_prev, mut q) = (BigUint::from(0u8), BigUint::from(1u8));
    let mut out = Vec::new();
    while out.len() < count && num != zero {
        // alpha = num/den; a = floor(den/num)
        let a = &den / &num;
        let r = &den % &num;
        den = num;
        num = r;
        let q_next = &a * &q + &q_prev;
        q_prev = q;
        q = q_next;
        match u64::try_from(&q) {
            Ok(v) => out.push(v),
            Err(_) => break,
        }
    }
    out
}
