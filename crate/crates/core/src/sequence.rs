//! Finite orbit prefixes and the Cesàro-type functionals evaluated on them.
//!
//! An [`OrbitSeq`] stores `(v_1, ..., v_N)`; index `n` in the mathematical
//! sense lives at slot `n - 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{CVec, Exactness};

/// Where a sequence came from, recorded for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(source: impl Into<String>) -> Self {
        Provenance {
            source: source.into(),
            seed: None,
        }
    }

    pub fn seeded(source: impl Into<String>, seed: u64) -> Self {
        Provenance {
            source: source.into(),
            seed: Some(seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSeq {
    values: Vec<CVec>,
    exactness: Exactness,
    provenance: Provenance,
}

impl OrbitSeq {
    pub fn new(values: Vec<CVec>, exactness: Exactness, provenance: Provenance) -> Result<Self> {
        let first = values
            .first()
            .ok_or_else(|| Error::contract("orbit sequence must have length at least 1"))?;
        let dim = first.dim();
        if let Some(bad) = values.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(OrbitSeq {
            values,
            exactness,
            provenance,
        })
    }

    /// Convenience constructor for scalar float sequences.
    pub fn from_scalars(zs: &[num_complex::Complex64]) -> Result<Self> {
        let values = zs.iter().map(|&z| CVec::scalar(z)).collect();
        OrbitSeq::new(values, Exactness::Float64, Provenance::new("literal"))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[CVec] {
        &self.values
    }

    /// `v_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<&CVec> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn norms(&self) -> Vec<f64> {
        self.values.iter().map(CVec::norm).collect()
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(CVec::norm).fold(0.0, f64::max)
    }

    pub(crate) fn check_prefix(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::contract("horizon N must be positive"));
        }
        if n > self.len() {
            return Err(Error::Range {
                requested: n,
                available: self.len(),
            });
        }
        Ok(())
    }

    /// The first `n` terms as a new sequence.
    pub fn prefix(&self, n: usize) -> Result<OrbitSeq> {
        self.check_prefix(n)?;
        Ok(OrbitSeq {
            values: self.values[..n].to_vec(),
            exactness: self.exactness,
            provenance: self.provenance.clone(),
        })
    }

    /// Left shift `(x_n) -> (x_{n+1})`. Fails on a length-one sequence.
    pub fn shift(&self) -> Result<OrbitSeq> {
        if self.len() < 2 {
            return Err(Error::contract("cannot shift a sequence of length 1"));
        }
        Ok(OrbitSeq {
            values: self.values[1..].to_vec(),
            exactness: self.exactness,
            provenance: self.provenance.clone(),
        })
    }

    /// Termwise `s * v_n`.
    pub fn scaled(&self, s: num_complex::Complex64) -> OrbitSeq {
        OrbitSeq {
            values: self.values.iter().map(|v| v.scale(s)).collect(),
            exactness: self.exactness.meet(Exactness::Float64),
            provenance: self.provenance.clone(),
        }
    }

    /// Termwise modulation `lambda^n v_n`.
    pub fn modulated(&self, lambda: num_complex::Complex64) -> OrbitSeq {
        let mut power = num_complex::Complex64::new(1.0, 0.0);
        let values = self
            .values
            .iter()
            .map(|v| {
                power *= lambda;
                v.scale(power)
            })
            .collect();
        OrbitSeq {
            values,
            exactness: Exactness::Float64,
            provenance: self.provenance.clone(),
        }
    }
}

/// Running partial sums `V_n = v_1 + ... + v_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumProfile {
    pub sums: Vec<CVec>,
    pub maxnorm: f64,
}

impl PartialSumProfile {
    /// `V_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<&CVec> {
        n.checked_sub(1).and_then(|i| self.sums.get(i))
    }

    pub fn norms(&self) -> Vec<f64> {
        self.sums.iter().map(CVec::norm).collect()
    }

    /// `max_{n <= upto} ||V_n||`.
    pub fn maxnorm_upto(&self, upto: usize) -> f64 {
        self.sums[..upto.min(self.sums.len())]
            .iter()
            .map(CVec::norm)
            .fold(0.0, f64::max)
    }
}

/// Finite-horizon Cesàro norm `max_{1<=M<=N} (1/M) sum_{n<=M} ||v_n||`.
///
/// A running maximum, hence nondecreasing in `N`.
pub fn cesaro_norm(seq: &OrbitSeq, n: usize) -> Result<f64> {
    seq.check_prefix(n)?;
    let mut acc = 0.0;
    let mut best = 0.0_f64;
    for (m, v) in seq.values[..n].iter().enumerate() {
        acc += v.norm();
        best = best.max(acc / (m + 1) as f64);
    }
    Ok(best)
}

/// Averaged distance to the radius-`m` ball, `(1/N) sum ||v_n - clip_m(v_n)||`.
///
/// For the radial clip this is `(1/N) sum max(||v_n|| - m, 0)`.
pub fn dist_to_bounded(seq: &OrbitSeq, m: f64, n: usize) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::contract(format!("clip radius must be nonnegative, got {m}")));
    }
    seq.check_prefix(n)?;
    let total: f64 = seq.values[..n]
        .iter()
        .map(|v| (v.norm() - m).max(0.0))
        .sum();
    Ok(total / n as f64)
}

pub fn partial_sums(seq: &OrbitSeq) -> PartialSumProfile {
    let mut running = CVec::zeros(seq.dim());
    let mut maxnorm = 0.0_f64;
    let sums = seq
        .values
        .iter()
        .map(|v| {
            running
                .add_scaled(num_complex::Complex64::new(1.0, 0.0), v)
                .expect("dimension checked at construction");
            maxnorm = maxnorm.max(running.norm());
            running.clone()
        })
        .collect();
    PartialSumProfile { sums, maxnorm }
}
