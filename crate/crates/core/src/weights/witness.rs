use std::collections::BinaryHeap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{grid_lambda, WeightClass, WeightSeq};
use crate::error::{Error, Result};
use crate::numeric::CVec;
use crate::sequence::OrbitSeq;

/// Exact block DP is used while `K * N^2` stays below this.
const DP_WORK_LIMIT: u128 = 1 << 28;

/// Phase/direction alternations for `d > 1`.
const DIRECTION_ROUNDS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessOptions {
    /// Number of constant blocks `K`; `2(K-1)/N < delta` is required.
    pub blocks: usize,
    /// Size of the outer `lambda` grid for class `C`; defaults to `4N`.
    pub lambda_grid: Option<usize>,
}

/// A feasible weight and the value it attains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub weights: WeightSeq,
    /// `||(1/N) sum c_n v_n||`, recomputed from `weights`.
    pub value: f64,
    /// Block boundaries as half-open 0-based ranges.
    pub blocks: Vec<(usize, usize)>,
    /// Modulating `lambda` for class `C`.
    pub lambda: Option<Complex64>,
}

/// Largest `K` with `2(K-1)/N < delta`, capped at `N`.
pub fn max_blocks(n: usize, delta: f64) -> usize {
    let mut k = ((delta * n as f64 / 2.0).ceil() as usize).max(1);
    // ceil gives the first K - 1 with 2(K-1)/N >= delta, so K - 1 = ceil - 1 is safe;
    // step back further if rounding put us on the boundary.
    while k > 1 && 2.0 * (k - 1) as f64 / n as f64 >= delta {
        k -= 1;
    }
    k.min(n)
}

/// Piecewise-constant unimodular weights with at most `K` blocks, each block
/// phase aligned with its block sum. Such weights have variation at most
/// `2(K-1)/N`.
pub fn witness_search(
    v: &OrbitSeq,
    n: usize,
    delta: f64,
    class: WeightClass,
    opts: WitnessOptions,
) -> Result<Witness> {
    v.check_prefix(n)?;
    if opts.blocks == 0 || 2.0 * (opts.blocks - 1) as f64 / n as f64 >= delta {
        return Err(Error::contract(format!(
            "{} blocks infeasible: need 2(K-1)/N < delta = {delta}",
            opts.blocks
        )));
    }
    let k = opts.blocks.min(n);
    let values = &v.values()[..n];
    match class {
        WeightClass::I => Ok(block_witness(values, k)),
        WeightClass::C => {
            let g = opts.lambda_grid.unwrap_or(4 * n);
            if g == 0 {
                return Err(Error::contract("lambda grid must be positive"));
            }
            (0..g)
                .into_par_iter()
                .map(|j| {
                    let lambda = grid_lambda(j, g);
                    let mut power = Complex64::new(1.0, 0.0);
                    let twisted: Vec<CVec> = values
                        .iter()
                        .map(|x| {
                            power *= lambda;
                            x.scale(power)
                        })
                        .collect();
                    (j, lambda, block_witness(&twisted, k))
                })
                .reduce_with(|a, b| {
                    if b.2.value > a.2.value || (b.2.value == a.2.value && b.0 < a.0) {
                        b
                    } else {
                        a
                    }
                })
                .map(|(_, lambda, w)| modulate(w, lambda, values))
                .expect("nonempty grid")
        }
    }
}

fn modulate(w: Witness, lambda: Complex64, values: &[CVec]) -> Result<Witness> {
    let mut power = Complex64::new(1.0, 0.0);
    let c: Vec<Complex64> = w
        .weights
        .coeffs()
        .iter()
        .map(|z| {
            power *= lambda;
            // Renormalise so rounding in lambda^n cannot push |c_n| above 1.
            let p = z * power;
            p / p.norm().max(1.0)
        })
        .collect();
    let weights = WeightSeq::new(c)?;
    let value = weighted_norm(weights.coeffs(), values);
    Ok(Witness {
        weights,
        value,
        blocks: w.blocks,
        lambda: Some(lambda),
    })
}

fn weighted_norm(c: &[Complex64], values: &[CVec]) -> f64 {
    let mut acc = CVec::zeros(values[0].dim());
    for (z, x) in c.iter().zip(values) {
        acc.add_scaled(*z, x).expect("uniform dimension");
    }
    acc.norm() / c.len() as f64
}

/// Best block witness for an unmodulated sequence.
fn block_witness(values: &[CVec], k: usize) -> Witness {
    if values[0].dim() == 1 {
        let w: Vec<Complex64> = values.iter().map(|x| x.coords()[0]).collect();
        return phases_for_blocks(values, &w, &scalar_partition(&w, k));
    }
    // Alternate: project on a direction, partition the projection, realign.
    let mut dir = initial_direction(values);
    let mut best: Option<Witness> = None;
    for _ in 0..DIRECTION_ROUNDS {
        let w: Vec<Complex64> = values
            .iter()
            .map(|x| x.inner(&dir).expect("uniform dimension"))
            .collect();
        let cand = phases_for_blocks(values, &w, &scalar_partition(&w, k));
        let sum = sum_weighted(cand.weights.coeffs(), values);
        let improved = best.as_ref().is_none_or(|b| cand.value > b.value);
        if improved {
            best = Some(cand);
        }
        let norm = sum.norm();
        if !improved || norm == 0.0 {
            break;
        }
        dir = sum.scale_real(1.0 / norm);
    }
    best.expect("at least one round")
}

fn initial_direction(values: &[CVec]) -> CVec {
    let total = sum_weighted(&vec![Complex64::new(1.0, 0.0); values.len()], values);
    let pick = if total.norm() > 0.0 {
        total
    } else {
        values
            .iter()
            .fold(None::<&CVec>, |a, x| match a {
                Some(b) if b.norm() >= x.norm() => Some(b),
                _ => Some(x),
            })
            .cloned()
            .expect("nonempty")
    };
    let norm = pick.norm();
    if norm == 0.0 {
        let mut e1 = CVec::zeros(values[0].dim());
        e1.coords_mut()[0] = Complex64::new(1.0, 0.0);
        e1
    } else {
        pick.scale_real(1.0 / norm)
    }
}

fn sum_weighted(c: &[Complex64], values: &[CVec]) -> CVec {
    let mut acc = CVec::zeros(values[0].dim());
    for (z, x) in c.iter().zip(values) {
        acc.add_scaled(*z, x).expect("uniform dimension");
    }
    acc
}

/// Unimodular phase per block making `c_b * (scalar block sum)` real and
/// nonnegative.
fn phases_for_blocks(values: &[CVec], w: &[Complex64], blocks: &[(usize, usize)]) -> Witness {
    let mut c = vec![Complex64::new(1.0, 0.0); w.len()];
    for &(a, b) in blocks {
        let s: Complex64 = w[a..b].iter().sum();
        let phase = if s.norm() > 0.0 {
            s.conj() / s.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        c[a..b].iter_mut().for_each(|z| *z = phase);
    }
    let value = weighted_norm(&c, values);
    Witness {
        weights: WeightSeq::new(c).expect("unimodular"),
        value,
        blocks: blocks.to_vec(),
        lambda: None,
    }
}

/// Partition of `0..N` into at most `k` intervals maximising
/// `sum_b |sum_{n in b} w_n|`.
fn scalar_partition(w: &[Complex64], k: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    if (k as u128) * (n as u128) * (n as u128) <= DP_WORK_LIMIT {
        dp_partition(w, k)
    } else {
        greedy_partition(w, k)
    }
}

fn prefix(w: &[Complex64]) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(w.len() + 1);
    p.push(Complex64::default());
    for z in w {
        let last = *p.last().expect("nonempty");
        p.push(last + z);
    }
    p
}

/// Exact optimum. Splitting never lowers the objective, so exactly
/// `min(k, N)` blocks suffice.
fn dp_partition(w: &[Complex64], k: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let k = k.min(n);
    let p = prefix(w);
    // best[b][j]: first j points in b blocks.
    let mut best = vec![vec![f64::NEG_INFINITY; n + 1]; k + 1];
    let mut arg = vec![vec![0usize; n + 1]; k + 1];
    best[0][0] = 0.0;
    for b in 1..=k {
        for j in b..=n {
            let mut top = f64::NEG_INFINITY;
            let mut at = 0;
            for i in (b - 1)..j {
                let cand = best[b - 1][i] + (p[j] - p[i]).norm();
                if cand > top {
                    top = cand;
                    at = i;
                }
            }
            best[b][j] = top;
            arg[b][j] = at;
        }
    }
    let mut out = Vec::with_capacity(k);
    let mut j = n;
    for b in (1..=k).rev() {
        let i = arg[b][j];
        out.push((i, j));
        j = i;
    }
    out.reverse();
    out
}

#[derive(PartialEq)]
struct Split {
    gain: f64,
    start: usize,
    end: usize,
    at: usize,
}

impl Eq for Split {}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.start.cmp(&self.start))
    }
}

fn best_split(p: &[Complex64], start: usize, end: usize) -> Option<Split> {
    let whole = (p[end] - p[start]).norm();
    let mut top: Option<Split> = None;
    for at in start + 1..end {
        let gain = (p[at] - p[start]).norm() + (p[end] - p[at]).norm() - whole;
        if top.as_ref().is_none_or(|t| gain > t.gain) {
            top = Some(Split { gain, start, end, at });
        }
    }
    top.filter(|t| t.gain > 0.0)
}

/// Repeatedly apply the single most profitable split.
fn greedy_partition(w: &[Complex64], k: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let p = prefix(w);
    let mut done: Vec<(usize, usize)> = Vec::new();
    let mut heap = BinaryHeap::new();
    match best_split(&p, 0, n) {
        Some(s) => heap.push(s),
        None => done.push((0, n)),
    }
    let mut count = 1;
    while let Some(s) = heap.pop() {
        if count >= k {
            done.push((s.start, s.end));
            continue;
        }
        count += 1;
        for (a, b) in [(s.start, s.at), (s.at, s.end)] {
            match best_split(&p, a, b) {
                Some(t) => heap.push(t),
                None => done.push((a, b)),
            }
        }
    }
    done.sort_unstable();
    done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::check_i;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn max_blocks_is_feasible_and_tight() {
        for n in [1usize, 2, 8, 100, 4096] {
            for delta in [0.01, 0.1, 0.5, 2.0, 3.0] {
                let k = max_blocks(n, delta);
                assert!(k >= 1 && k <= n);
                if k > 1 {
                    assert!(2.0 * ((k - 1) as f64) / (n as f64) < delta);
                }
                if k < n {
                    assert!(2.0 * k as f64 / n as f64 >= delta, "n={n} delta={delta} k={k}");
                }
            }
        }
    }

    #[test]
    fn single_block_is_aligned_mean() {
        let zs = [c(1.0, 2.0), c(-0.5, 0.1), c(0.3, 0.3)];
        let v = OrbitSeq::from_scalars(&zs).unwrap();
        let w = witness_search(&v, 3, 0.1, WeightClass::I, WitnessOptions { blocks: 1, lambda_grid: None }).unwrap();
        let mean: Complex64 = zs.iter().sum::<Complex64>() / 3.0;
        assert!((w.value - mean.norm()).abs() < 1e-15);
    }

    #[test]
    fn two_sign_blocks() {
        let xi = c(0.6, -0.8);
        let zs: Vec<Complex64> = (0..8).map(|i| if i < 4 { xi } else { -xi }).collect();
        let v = OrbitSeq::from_scalars(&zs).unwrap();
        let w = witness_search(&v, 8, 0.3, WeightClass::I, WitnessOptions { blocks: 2, lambda_grid: None }).unwrap();
        assert!((w.value - 1.0).abs() < 1e-15);
        assert_eq!(w.blocks, vec![(0, 4), (4, 8)]);
        assert!(check_i(&w.weights, 0.3).member);
    }

    #[test]
    fn infeasible_blocks_rejected() {
        let v = OrbitSeq::from_scalars(&[c(1.0, 0.0); 8]).unwrap();
        let r = witness_search(&v, 8, 0.25, WeightClass::I, WitnessOptions { blocks: 2, lambda_grid: None });
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn greedy_never_beats_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.random_range(2..40);
            let k = rng.random_range(1..=n);
            let w: Vec<Complex64> = (0..n).map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
            let p = prefix(&w);
            let score = |bs: &[(usize, usize)]| bs.iter().map(|&(a, b)| (p[b] - p[a]).norm()).sum::<f64>();
            let dp = dp_partition(&w, k);
            let gr = greedy_partition(&w, k);
            assert!(gr.len() <= k);
            assert_eq!(gr.iter().map(|(a, b)| b - a).sum::<usize>(), n);
            assert!(score(&gr) <= score(&dp) + 1e-12);
        }
    }

    #[test]
    fn class_c_recovers_modulated_constant() {
        let n = 16;
        let lambda = grid_lambda(5, 4 * n);
        let mut p = Complex64::new(1.0, 0.0);
        let zs: Vec<Complex64> = (0..n)
            .map(|_| {
                p *= lambda;
                p.conj()
            })
            .collect();
        let v = OrbitSeq::from_scalars(&zs).unwrap();
        let w = witness_search(&v, n, 0.01, WeightClass::C, WitnessOptions { blocks: 1, lambda_grid: None }).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        let m = crate::weights::check_c(&w.weights, 0.01, 4 * n).unwrap();
        assert!(m.member);
    }

    #[test]
    fn vector_witness_feasible() {
        let vals: Vec<CVec> = (0..12)
            .map(|i| {
                let t = i as f64;
                CVec::new(vec![c(t.sin(), 0.2), c(0.1, t.cos())]).unwrap()
            })
            .collect();
        let v = OrbitSeq::new(vals, crate::numeric::Exactness::Float64, crate::sequence::Provenance::new("t")).unwrap();
        let w = witness_search(&v, 12, 0.5, WeightClass::I, WitnessOptions { blocks: 3, lambda_grid: None }).unwrap();
        assert!(check_i(&w.weights, 0.5).member);
        assert!((w.weights.apply(&v).unwrap().norm() - w.value).abs() < 1e-15);
    }
}
