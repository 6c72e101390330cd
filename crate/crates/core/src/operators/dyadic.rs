//! Exact step-function calculus on the dyadic intervals
//! `I_k = [2^{-k-1}, 2^{-k})`.
//!
//! The two operators act on a function only through its integrals over the
//! `I_k`, so a step function is represented by its mass map
//! `k -> int_{I_k} h`. Applying an operator is an index relabelling with the
//! masses untouched:
//!
//! * `S` sends the mass on `I_n` to `I_{n+1}`;
//! * `T` sends the mass on `I_n` to `I_{(n+1)^2}`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Largest `n` for which the `T` index `a_n` is computed by default; `a_n`
/// roughly squares at each step.
pub const DEFAULT_T_INDEX_CAP: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DyadicVariant {
    T,
    S,
}

impl DyadicVariant {
    /// Image of interval index `k`.
    pub fn image(self, k: &BigUint) -> BigUint {
        match self {
            DyadicVariant::S => k + 1u32,
            DyadicVariant::T => {
                let k1 = k + 1u32;
                &k1 * &k1
            }
        }
    }
}

/// Sparse map `k -> int_{I_k} h` with exact rational masses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DyadicMass {
    masses: BTreeMap<BigUint, BigRational>,
}

impl DyadicMass {
    pub fn new() -> Self {
        DyadicMass::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (BigUint, BigRational)>) -> Self {
        let mut m = DyadicMass::new();
        for (k, v) in pairs {
            m.add(k, v);
        }
        m
    }

    /// `1_{[1/2, 1)}`, whose only mass is `1/2` on `I_0`.
    pub fn upper_half_indicator() -> Self {
        DyadicMass::from_pairs([(BigUint::zero(), BigRational::new(1.into(), 2.into()))])
    }

    pub fn add(&mut self, k: BigUint, v: BigRational) {
        let entry = self.masses.entry(k.clone()).or_insert_with(BigRational::zero);
        *entry += v;
        if entry.is_zero() {
            self.masses.remove(&k);
        }
    }

    pub fn get(&self, k: &BigUint) -> BigRational {
        self.masses.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.masses.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn total_mass(&self) -> BigRational {
        self.masses.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// `int |h| = sum_k |mass_k|` for step functions on the `I_k`.
    pub fn total_variation(&self) -> BigRational {
        self.masses.values().fold(BigRational::zero(), |a, b| a + b.abs())
    }

    /// Constant value of `h` on `I_k`, namely `2^{k+1} * mass_k`. Intended
    /// for display; `k` must fit in `u32`.
    pub fn density_on(&self, k: u32) -> BigRational {
        let scale = BigRational::from_integer(num_bigint::BigInt::one() << (k as usize + 1));
        self.get(&BigUint::from(k)) * scale
    }
}

pub fn dyadic_apply(variant: DyadicVariant, m: &DyadicMass) -> DyadicMass {
    DyadicMass::from_pairs(m.iter().map(|(k, v)| (variant.image(k), v.clone())))
}

/// `sum_{k : selected(k)} mass_k`.
pub fn dyadic_pairing(m: &DyadicMass, selected: impl Fn(&BigUint) -> bool) -> BigRational {
    m.iter()
        .filter(|(k, _)| selected(k))
        .fold(BigRational::zero(), |acc, (_, v)| acc + v)
}

/// The index sequence `a_1 = 1`, `a_n = (a_{n-1} + 1)^2` for `T` and
/// `a_n = a_{n-1} + 1` for `S`. `cap` bounds `n` for the `T` variant.
pub fn index_sequence(variant: DyadicVariant, n: u64, cap: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::contract("index sequence starts at n = 1"));
    }
    match variant {
        DyadicVariant::S => Ok(BigUint::from(n)),
        DyadicVariant::T => {
            if n > cap {
                return Err(Error::resource(format!(
                    "T-index a_{n} requested beyond cap {cap}"
                )));
            }
            let mut a = BigUint::one();
            for _ in 1..n {
                a = variant.image(&a);
            }
            Ok(a)
        }
    }
}
