use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{orbit_values, OperatorSpec, PointState};
use crate::systems::Observable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacbReport {
    /// `max` over members and samples of `(1/N) sum ||T^n f(x)|| / int ||f||`.
    pub ratio: f64,
    /// Per family member, the maximum over samples.
    pub per_member: Vec<f64>,
    /// `(member, sample)` attaining `ratio`; first on ties.
    pub argmax: (usize, usize),
}

/// Empirical absolute-Cesàro constant over a family of observables.
pub fn pacb_ratio(op: &OperatorSpec, family: &[Observable], x_samples: &[PointState], n: usize) -> Result<PacbReport> {
    if family.is_empty() || x_samples.is_empty() {
        return Err(Error::contract("family and samples must be non-empty"));
    }
    let norms = family
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let l1 = f.l1_norm();
            if l1 > 0.0 {
                Ok(l1)
            } else {
                Err(Error::contract(format!("family member {i} has zero integral")))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let ratios: Vec<Vec<f64>> = family
        .par_iter()
        .zip(&norms)
        .map(|(f, &l1)| {
            x_samples
                .iter()
                .map(|x| {
                    let orbit = orbit_values(op, f, x, n)?;
                    Ok(orbit.norms().iter().sum::<f64>() / n as f64 / l1)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let mut argmax = (0, 0);
    let mut ratio = f64::NEG_INFINITY;
    let mut per_member = Vec::with_capacity(ratios.len());
    for (i, row) in ratios.iter().enumerate() {
        let mut m = f64::NEG_INFINITY;
        for (j, &r) in row.iter().enumerate() {
            m = m.max(r);
            if r > ratio {
                ratio = r;
                argmax = (i, j);
            }
        }
        per_member.push(m);
    }
    Ok(PacbReport {
        ratio,
        per_member,
        argmax,
    })
}
