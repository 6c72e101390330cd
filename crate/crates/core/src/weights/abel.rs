use serde::{Deserialize, Serialize};

use super::WeightClass;
use crate::error::{Error, Result};
use crate::sequence::{partial_sums, OrbitSeq};
use crate::twisted::sup_over_circle;

/// Horizons at which the twisted partial-sum supremum is certified directly
/// in the `C` bound; the rest are bridged.
const C_SUBGRID_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelBound {
    pub upper: f64,
    /// Bound on `max_{n<=N} ||V_n||` (class `I`) or on
    /// `max_{n<=N} sup_lambda ||V_n(lambda)||` (class `C`).
    pub max_partial: f64,
}

/// Summation by parts:
///
/// ```text
/// (1/N) sum c_n v_n = (1/N) [ sum_{n<N} V_n (c_n - c_{n+1}) + V_N c_N ]
/// ```
///
/// so every `c` in `I(N, delta)` gives at most `(max ||V_n|| / N)(N delta + 1)`.
/// For `C` the partial sums are twisted, `V_n(lambda) = sum_{k<=n} lambda^k v_k`.
pub fn abel_upper_bound(v: &OrbitSeq, n: usize, delta: f64, class: WeightClass) -> Result<AbelBound> {
    v.check_prefix(n)?;
    if !(delta >= 0.0) {
        return Err(Error::contract("delta must be nonnegative"));
    }
    let max_partial = match class {
        WeightClass::I => partial_sums(v).maxnorm_upto(n),
        WeightClass::C => twisted_partial_sup(v, n)?,
    };
    Ok(AbelBound {
        upper: max_partial / n as f64 * (n as f64 * delta + 1.0),
        max_partial,
    })
}

/// Certified bound on `max_{n<=N} sup_lambda ||V_n(lambda)||`.
///
/// Direct certificates at multiples of a power-of-two step `s`; between
/// `n_1 < n <= n_2` the bridge `||V_n|| <= U(n_2) + sum_{n<k<=n_2} ||v_k||`.
fn twisted_partial_sup(v: &OrbitSeq, n: usize) -> Result<f64> {
    let step = (n / C_SUBGRID_POINTS).max(1).next_power_of_two();
    let mut anchors: Vec<usize> = (1..).map(|j| j * step).take_while(|&m| m < n).collect();
    anchors.push(n);
    let norms = v.norms();
    let mut best = 0.0_f64;
    let mut prev = 0usize;
    for &m in &anchors {
        let u = sup_over_circle(v, m, None)?.certified_upper * m as f64;
        // Tail sums sum_{n<k<=m} ||v_k|| for n in (prev, m): largest at n = prev + 1.
        let tail: f64 = norms[(prev + 1).min(m)..m].iter().sum();
        best = best.max(u + tail);
        prev = m;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_orbit_is_vacuous_but_sound() {
        let v = OrbitSeq::from_scalars(&[c(0.6, 0.8); 50]).unwrap();
        let b = abel_upper_bound(&v, 50, 0.1, WeightClass::I).unwrap();
        assert!((b.upper - (50.0 * 0.1 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn alternating_orbit() {
        let zs: Vec<Complex64> = (1..=8).map(|n| c(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
        let v = OrbitSeq::from_scalars(&zs).unwrap();
        let b = abel_upper_bound(&v, 8, 0.25, WeightClass::I).unwrap();
        assert_eq!(b.max_partial, 1.0);
        assert!((b.upper - 3.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn c_bound_dominates_i_bound() {
        let zs: Vec<Complex64> = (0..300).map(|k| c((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos())).collect();
        let v = OrbitSeq::from_scalars(&zs).unwrap();
        let i = abel_upper_bound(&v, 300, 0.05, WeightClass::I).unwrap();
        let cb = abel_upper_bound(&v, 300, 0.05, WeightClass::C).unwrap();
        assert!(cb.upper >= i.upper);
    }
}
