use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{WeightClass, WeightSeq};
use crate::error::{Error, Result};
use crate::numeric::CVec;
use crate::sequence::OrbitSeq;
use crate::systems::Frac128;

/// Largest supported horizon.
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// Search nodes visited before giving up.
pub const BRUTE_FORCE_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForce {
    /// Exact maximum of `||(1/N) sum c_n v_n||` over feasible `c_n` in the
    /// `q`-th roots of unity.
    pub value: f64,
    pub weights: WeightSeq,
    pub nodes: u64,
}

struct Search<'a> {
    v: &'a [CVec],
    roots: Vec<Complex64>,
    /// `sum_{k >= j} ||v_k||`.
    tail: Vec<f64>,
    budget_nd: f64,
    class: WeightClass,
    nodes: &'a AtomicU64,
}

/// Branch and bound over `c_n` in the `q`-th roots of unity. The objective
/// and both classes are invariant under a common phase, so `c_1 = 1`.
///
/// Membership is exact: for class `C` the modulated variation of a
/// unimodular sequence is a sum of functions concave in `arg lambda` between
/// their zeros, so its minimum over the circle sits at some `c_{n+1}/c_n`.
pub fn brute_force_small(v: &OrbitSeq, n: usize, delta: f64, class: WeightClass, q: usize) -> Result<BruteForce> {
    v.check_prefix(n)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::contract(format!("brute force needs N <= {BRUTE_FORCE_MAX_N}")));
    }
    if q == 0 {
        return Err(Error::contract("alphabet order must be positive"));
    }
    let values = &v.values()[..n];
    let mut tail = vec![0.0; n + 1];
    for j in (0..n).rev() {
        tail[j] = tail[j + 1] + values[j].norm();
    }
    let nodes = AtomicU64::new(0);
    let search = Search {
        v: values,
        roots: (0..q).map(|j| Frac128::from_ratio(j as u128, q as u128).cis()).collect(),
        tail,
        budget_nd: n as f64 * delta,
        class,
        nodes: &nodes,
    };

    let first = vec![0usize];
    let start = values[0].clone();
    let result = if n == 1 {
        search.leaf(&first, &start)
    } else {
        // Parallel over c_2; each branch keeps its own incumbent so the
        // visited-node count does not depend on scheduling.
        (0..q)
            .into_par_iter()
            .map(|j| {
                let mut idx = first.clone();
                idx.push(j);
                let mut partial = start.clone();
                partial.add_scaled(search.roots[j], &values[1])?;
                let mut best = None;
                search.descend(&mut idx, &partial, &mut best)?;
                Ok(best)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .reduce(|a: (f64, Vec<usize>), b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
    };
    let (norm, idx) = result.ok_or_else(|| Error::contract("no feasible sequence in the alphabet"))?;
    Ok(BruteForce {
        value: norm / n as f64,
        weights: WeightSeq::new(idx.iter().map(|&j| search.roots[j]).collect())?,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= BRUTE_FORCE_NODE_BUDGET {
            return Err(Error::resource(format!(
                "brute force exceeded {BRUTE_FORCE_NODE_BUDGET} nodes"
            )));
        }
        Ok(())
    }

    /// Lower bound on the final `N * variation` of any completion.
    fn partial_cost(&self, idx: &[usize]) -> f64 {
        let steps = |lambda: Complex64| -> f64 {
            idx.windows(2)
                .map(|w| (lambda * self.roots[w[0]] - self.roots[w[1]]).norm())
                .sum()
        };
        match self.class {
            WeightClass::I => steps(Complex64::new(1.0, 0.0)),
            WeightClass::C => {
                if idx.len() < 2 {
                    return 0.0;
                }
                idx.windows(2)
                    .map(|w| steps(self.roots[w[1]] / self.roots[w[0]]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    fn leaf(&self, idx: &[usize], sum: &CVec) -> Option<(f64, Vec<usize>)> {
        (self.partial_cost(idx) < self.budget_nd).then(|| (sum.norm(), idx.to_vec()))
    }

    fn descend(&self, idx: &mut Vec<usize>, sum: &CVec, best: &mut Option<(f64, Vec<usize>)>) -> Result<()> {
        self.tick()?;
        if self.partial_cost(idx) >= self.budget_nd {
            return Ok(());
        }
        let depth = idx.len();
        if depth == self.v.len() {
            if let Some(cand) = self.leaf(idx, sum) {
                if best.as_ref().is_none_or(|b| cand.0 > b.0 || (cand.0 == b.0 && cand.1 < b.1)) {
                    *best = Some(cand);
                }
            }
            return Ok(());
        }
        if let Some(b) = best {
            if sum.norm() + self.tail[depth] <= b.0 {
                return Ok(());
            }
        }
        // Best-first order finds strong incumbents early.
        let mut children = (0..self.roots.len())
            .map(|j| {
                let mut next = sum.clone();
                next.add_scaled(self.roots[j], &self.v[depth])?;
                Ok((j, next))
            })
            .collect::<Result<Vec<_>>>()?;
        children.sort_by(|a, b| b.1.norm().total_cmp(&a.1.norm()).then(a.0.cmp(&b.0)));
        for (j, next) in children {
            idx.push(j);
            self.descend(idx, &next, best)?;
            idx.pop();
        }
        Ok(())
    }
}
