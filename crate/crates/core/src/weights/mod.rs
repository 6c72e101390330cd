//! Adversarial weight classes and two-sided bounds for
//! `sup_c ||(1/N) sum_n c_n v_n||`.
//!
//! * `I(N, delta)`: `|c_n| <= 1` and `(1/N) sum_{n<N} |c_n - c_{n+1}| < delta`.
//! * `C(N, delta)`: `c_n = lambda^n c'_n` with `c'` in `I(N, delta)`; in
//!   inequality form, some unit `lambda` has
//!   `(1/N) sum |lambda c_n - c_{n+1}| < delta`.
//! * `R(lambda, N, delta, K)`: for each `w <= N` some shift `k` from row `w`
//!   of `K` satisfies `2k/N + (1/N) sum_{n <= N-k} |lambda c_n - c_{n+k}| < delta_w`.
//!
//! Upper bounds come from summation by parts ([`abel_upper_bound`]), lower
//! bounds from structured witnesses ([`witness_search`]) and, for tiny `N`,
//! exhaustive search over roots of unity ([`brute_force_small`]).

mod abel;
mod brute;
mod witness;

pub use abel::{abel_upper_bound, AbelBound};
pub use brute::{brute_force_small, BruteForce, BRUTE_FORCE_MAX_N, BRUTE_FORCE_NODE_BUDGET};
pub use witness::{max_blocks, witness_search, Witness, WitnessOptions};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::CVec;
use crate::sequence::OrbitSeq;

/// Allowed excess of `|c_n|` over 1.
pub const MODULUS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightClass {
    I,
    C,
}

impl std::str::FromStr for WeightClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(WeightClass::I),
            "C" | "c" => Ok(WeightClass::C),
            _ => Err(Error::contract(format!("unknown weight class {s:?}"))),
        }
    }
}

/// A finite weight sequence `c_1, ..., c_N` with `|c_n| <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSeq {
    c: Vec<Complex64>,
}

impl WeightSeq {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::contract("weight sequence must be non-empty"));
        }
        if let Some((i, z)) = c.iter().enumerate().find(|(_, z)| z.norm() > 1.0 + MODULUS_TOL) {
            return Err(Error::contract(format!("|c_{}| = {} exceeds 1", i + 1, z.norm())));
        }
        Ok(WeightSeq { c })
    }

    pub fn constant(n: usize) -> Self {
        WeightSeq {
            c: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// `c_n = lambda^n`, powers by repeated multiplication.
    pub fn geometric(lambda: Complex64, n: usize) -> Result<Self> {
        let mut p = Complex64::new(1.0, 0.0);
        WeightSeq::new(
            (0..n)
                .map(|_| {
                    p *= lambda;
                    p
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// `(1/N) sum_{n<N} |c_n - c_{n+1}|`.
    pub fn variation(&self) -> f64 {
        self.modulated_variation(Complex64::new(1.0, 0.0))
    }

    /// `(1/N) sum_{n<N} |lambda c_n - c_{n+1}|`.
    pub fn modulated_variation(&self, lambda: Complex64) -> f64 {
        shifted_variation(&self.c, lambda, 1)
    }

    /// `(1/N) sum_{n=1}^N c_n v_n`.
    pub fn apply(&self, v: &OrbitSeq) -> Result<CVec> {
        v.check_prefix(self.len())?;
        let mut acc = CVec::zeros(v.dim());
        for (c, x) in self.c.iter().zip(v.values()) {
            acc.add_scaled(*c, x)?;
        }
        Ok(acc.scale_real(1.0 / self.len() as f64))
    }
}

/// `(1/N) sum_{n=1}^{N-k} |lambda c_n - c_{n+k}|`.
fn shifted_variation(c: &[Complex64], lambda: Complex64, k: usize) -> f64 {
    let n = c.len();
    if k >= n {
        return 0.0;
    }
    c.iter()
        .zip(&c[k..])
        .map(|(a, b)| (lambda * a - b).norm())
        .sum::<f64>()
        / n as f64
}

/// Outcome of the `I`-class test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IMembership {
    pub member: bool,
    pub variation: f64,
    /// `delta - variation`; positive for members.
    pub slack: f64,
}

pub fn check_i(c: &WeightSeq, delta: f64) -> IMembership {
    let variation = c.variation();
    IMembership {
        member: variation < delta,
        variation,
        slack: delta - variation,
    }
}

/// Outcome of the `C`-class test on the grid `lambda_k = e(k/G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CMembership {
    /// Some grid `lambda` has modulated variation `< delta`.
    pub member: bool,
    pub best_index: usize,
    pub best_lambda: Complex64,
    /// Modulated variation at `best_lambda`.
    pub variation: f64,
    /// `(pi/G)(1/N) sum |c_n|`: the continuous minimum is at least
    /// `variation - discretization_slack`.
    pub discretization_slack: f64,
}

impl CMembership {
    /// A non-member verdict is conclusive for every `lambda` on the circle.
    pub fn excluded_off_grid(&self, delta: f64) -> bool {
        self.variation - self.discretization_slack >= delta
    }
}

pub fn check_c(c: &WeightSeq, delta: f64, lambda_grid: usize) -> Result<CMembership> {
    let n = c.len();
    if lambda_grid < 4 * n {
        return Err(Error::contract(format!(
            "lambda grid {lambda_grid} must be at least 4N = {}",
            4 * n
        )));
    }
    use rayon::prelude::*;
    let (best_index, variation) = (0..lambda_grid)
        .into_par_iter()
        .map(|k| (k, c.modulated_variation(grid_lambda(k, lambda_grid))))
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    let mass: f64 = c.coeffs().iter().map(|z| z.norm()).sum::<f64>() / n as f64;
    Ok(CMembership {
        member: variation < delta,
        best_index,
        best_lambda: grid_lambda(best_index, lambda_grid),
        variation,
        discretization_slack: std::f64::consts::PI / lambda_grid as f64 * mass,
    })
}

/// `e(k/G)` with exact phase reduction.
pub(crate) fn grid_lambda(k: usize, g: usize) -> Complex64 {
    crate::systems::Frac128::from_ratio(k as u128 % g as u128, g as u128).cis()
}

/// Parameters of the `R` class. Rows are indexed from `w = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RParams {
    pub lambda: Complex64,
    /// `delta_w`, `w = 1..`.
    pub delta: Vec<f64>,
    /// `b_w`, nondecreasing.
    pub b: Vec<usize>,
    /// `k_{w,i}`, `i = 1..=b_w`.
    pub k: Vec<Vec<usize>>,
}

impl RParams {
    /// `delta_w = w^-2`, `b_w = min(w, 8)` and rows taken from the start of
    /// `shifts` (for instance the elements of a finite-sums set).
    pub fn default_rates(lambda: Complex64, n: usize, shifts: &[usize]) -> Self {
        let b: Vec<usize> = (1..=n).map(|w| w.min(8).min(shifts.len())).collect();
        RParams {
            lambda,
            delta: (1..=n).map(|w| 1.0 / (w * w) as f64).collect(),
            k: b.iter().map(|&bw| shifts[..bw].to_vec()).collect(),
            b,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if (self.lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::contract("lambda must be unimodular"));
        }
        if self.delta.len() < n || self.b.len() < n || self.k.len() < n {
            return Err(Error::contract(format!("R parameters must cover w = 1..={n}")));
        }
        if self.delta.iter().any(|d| !d.is_finite() || *d < 0.0) || !self.delta.iter().sum::<f64>().is_finite() {
            return Err(Error::contract("delta_w must be nonnegative with finite sum"));
        }
        if self.b.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::contract("b_w must be nondecreasing"));
        }
        for (w, (row, &bw)) in self.k.iter().zip(&self.b).enumerate().take(n) {
            if row.len() < bw {
                return Err(Error::contract(format!("row {} of K has fewer than b_w entries", w + 1)));
            }
            if let Some(&k) = row[..bw].iter().find(|&&k| k >= n) {
                return Err(Error::contract(format!("shift k = {k} is not below N = {n}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RMembership {
    pub member: bool,
    /// Per `w`: the first admissible shift, if any.
    pub chosen: Vec<Option<usize>>,
    /// Per `w`: smallest value of the left-hand side over the row.
    pub best_value: Vec<f64>,
    pub first_failure: Option<usize>,
}

pub fn check_r(c: &WeightSeq, p: &RParams) -> Result<RMembership> {
    let n = c.len();
    p.validate(n)?;
    let mut chosen = Vec::with_capacity(n);
    let mut best_value = Vec::with_capacity(n);
    for w in 0..n {
        let mut pick = None;
        let mut best = f64::INFINITY;
        for &k in &p.k[w][..p.b[w]] {
            let lhs = 2.0 * k as f64 / n as f64 + shifted_variation(c.coeffs(), p.lambda, k);
            if lhs < p.delta[w] && pick.is_none() {
                pick = Some(k);
            }
            best = best.min(lhs);
        }
        chosen.push(pick);
        best_value.push(best);
    }
    let first_failure = chosen.iter().position(Option::is_none).map(|i| i + 1);
    Ok(RMembership {
        member: first_failure.is_none(),
        chosen,
        best_value,
        first_failure,
    })
}
