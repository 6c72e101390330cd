//! Exact Cesàro averages for the dyadic step-function operators.
//!
//! With `f = 1_{[1/2,1)}`, `R^n f` carries mass `1/2` on `I_{a_n}`, and `g`
//! is the indicator of `I_{a_b}` over `b in B = U_{j>=1} [4^j, 2 * 4^j)`.
//! Since `(a_n)` is strictly increasing, `<R^n f, g> = 1/2` exactly when
//! `n in B`, for either operator.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operators::{dyadic_apply, dyadic_pairing, index_sequence, DyadicMass, DyadicVariant};

pub const MAX_TABLE_M: u32 = 12;

/// Largest `n` for which `T` iterates are materialised.
const T_DIRECT_CAP: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicRow {
    pub m: u32,
    /// `2^{2m+1}`.
    pub n_odd: u64,
    /// `(1/N) sum_{n<=N} <R^n f, g>` at `N = n_odd`.
    pub avg_odd: BigRational,
    /// `2^{2m+2}`.
    pub n_even: u64,
    /// Same average at `N = n_even`; the block starting at `4^{m+1}` already
    /// contributes its first element.
    pub avg_even: BigRational,
    /// `(1/N) sum_{j<=m} 2^{2j-1}` at `N = n_even`: completed blocks only.
    pub avg_even_blocks: BigRational,
}

/// `n in B`.
pub fn in_b(n: u64) -> bool {
    if n < 4 {
        return false;
    }
    let e = 63 - n.leading_zeros();
    e % 2 == 0
}

/// `|B ∩ [1, N]|`.
pub fn b_count(n: u64) -> u64 {
    let mut count = 0;
    let mut lo = 4u64;
    while lo <= n {
        let hi = (2 * lo - 1).min(n);
        count += hi - lo + 1;
        match lo.checked_mul(4) {
            Some(next) => lo = next,
            None => break,
        }
    }
    count
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact average `(1/(2N)) |B ∩ [1, N]|`.
pub fn dyadic_average(n: u64) -> BigRational {
    ratio(b_count(n), 2 * n)
}

/// One row per `m = 1..=m_max`.
///
/// `variant` only selects the index sequence; both operators give the same
/// pairings.
pub fn dyadic_mean_ergodicity(_variant: DyadicVariant, m_max: u32) -> Result<Vec<DyadicRow>> {
    if m_max == 0 || m_max > MAX_TABLE_M {
        return Err(Error::contract(format!("m_max must be in 1..={MAX_TABLE_M}")));
    }
    Ok((1..=m_max)
        .map(|m| {
            let n_odd = 1u64 << (2 * m + 1);
            let n_even = 1u64 << (2 * m + 2);
            let blocks: u64 = (1..=m).map(|j| 1u64 << (2 * j - 1)).sum();
            DyadicRow {
                m,
                n_odd,
                avg_odd: dyadic_average(n_odd),
                n_even,
                avg_even: dyadic_average(n_even),
                avg_even_blocks: ratio(blocks, n_even),
            }
        })
        .collect())
}

/// Pairings `<R^n f, g>` for `n = 1..=n_max` from materialised iterates,
/// as an independent check on [`dyadic_mean_ergodicity`].
pub fn dyadic_pairings_direct(variant: DyadicVariant, n_max: u64) -> Result<Vec<BigRational>> {
    if variant == DyadicVariant::T && n_max > T_DIRECT_CAP {
        return Err(Error::resource(format!("T iterates beyond n = {T_DIRECT_CAP}")));
    }
    // g selects I_{a_b} for b in B with a_b up to the largest index reached.
    let selected: Vec<BigUint> = (1..=n_max)
        .filter(|&b| in_b(b))
        .map(|b| index_sequence(variant, b, n_max.max(1)))
        .collect::<Result<_>>()?;
    let mut m = DyadicMass::upper_half_indicator();
    let mut out = Vec::with_capacity(n_max as usize);
    for _ in 0..n_max {
        m = dyadic_apply(variant, &m);
        out.push(dyadic_pairing(&m, |k| selected.binary_search(k).is_ok()));
    }
    Ok(out)
}

/// Running Cesàro averages of a pairing sequence.
pub fn cesaro_rationals(pairings: &[BigRational]) -> Vec<BigRational> {
    let mut acc = BigRational::zero();
    pairings
        .iter()
        .enumerate()
        .map(|(i, p)| {
            acc += p;
            &acc / BigRational::from_integer(BigInt::from(i + 1))
        })
        .collect()
}
