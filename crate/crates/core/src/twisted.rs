//! Twisted averages `A_N(lambda) = (1/N) sum_{n=1}^N lambda^n v_n` and
//! certified bounds for `sup_{|lambda|=1} ||A_N(lambda)||`.
//!
//! With `lambda = e(theta)`, `A_N` is a trigonometric polynomial in `theta`
//! with frequencies `1..=N`. An inverse FFT of length `M` evaluates it on the
//! grid `theta_k = k/M`. For every unit vector `u`, `<A_N(.), u>` is a scalar
//! polynomial of degree `N`, so Bernstein's inequality and the grid spacing
//! give
//!
//! ```text
//! sup ||A_N|| <= grid_max / (1 - pi N / M),
//! ```
//!
//! which needs `M > pi N`.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::CVec;
use crate::sequence::OrbitSeq;
use crate::systems::Frac128;

/// Tolerance on `| |lambda| - 1 |`.
const UNIT_TOL: f64 = 1e-12;

/// Golden-section steps per refinement candidate.
const REFINE_STEPS: usize = 80;

/// `(1/N) sum_{n=1}^N lambda^n v_n`, powers formed by repeated multiplication.
pub fn twisted_average(v: &OrbitSeq, lambda: Complex64, n: usize) -> Result<CVec> {
    if (lambda.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::contract(format!("|lambda| = {} is not 1", lambda.norm())));
    }
    v.check_prefix(n)?;
    let mut acc = CVec::zeros(v.dim());
    let mut power = Complex64::new(1.0, 0.0);
    for x in &v.values()[..n] {
        power *= lambda;
        acc.add_scaled(power, x)?;
    }
    Ok(acc.scale_real(1.0 / n as f64))
}

/// `A_N(e(theta))` with each phase `n theta mod 1` formed exactly.
pub fn twisted_average_at(v: &OrbitSeq, theta: Frac128, n: usize) -> Result<CVec> {
    v.check_prefix(n)?;
    let mut acc = CVec::zeros(v.dim());
    let mut phase = Frac128::ZERO;
    for x in &v.values()[..n] {
        phase = phase.add(theta);
        acc.add_scaled(phase.cis(), x)?;
    }
    Ok(acc.scale_real(1.0 / n as f64))
}

/// Grid evaluation of `theta -> ||A_N(e(theta))||` with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedSup {
    pub n: usize,
    pub grid_size: usize,
    /// Largest norm on the grid; a lower bound for the supremum.
    pub grid_max: f64,
    /// `theta` in `[0, 1)` at which `grid_max` is attained (first on ties).
    pub grid_argmax: f64,
    /// `grid_max / (1 - pi N / M)`; an upper bound for the supremum.
    pub certified_upper: f64,
}

/// Smallest admissible grid for horizon `n`.
pub fn min_grid(n: usize) -> usize {
    (std::f64::consts::PI * n as f64).ceil() as usize + 2
}

pub fn default_grid(n: usize) -> usize {
    8 * n
}

/// Norms `||A_N(e(k/M))||` for `k = 0..M`.
pub fn grid_norms(v: &OrbitSeq, n: usize, grid: usize) -> Result<Vec<f64>> {
    v.check_prefix(n)?;
    if grid < min_grid(n) {
        return Err(Error::contract(format!(
            "grid size {grid} too small for N = {n}; need at least {}",
            min_grid(n)
        )));
    }
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(grid);
    let mut sq = vec![0.0f64; grid];
    let mut buf = vec![Complex64::default(); grid];
    for c in 0..v.dim() {
        buf.iter_mut().for_each(|z| *z = Complex64::default());
        for (i, x) in v.values()[..n].iter().enumerate() {
            buf[i + 1] = x.coords()[c];
        }
        fft.process(&mut buf);
        for (s, z) in sq.iter_mut().zip(&buf) {
            *s += z.norm_sqr();
        }
    }
    let inv = 1.0 / n as f64;
    Ok(sq.into_par_iter().map(|s| s.sqrt() * inv).collect())
}

fn argmax(norms: &[f64]) -> (usize, f64) {
    norms
        .par_iter()
        .enumerate()
        .map(|(i, &x)| (i, x))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Certified supremum over the unit circle; `grid` defaults to `8N`.
pub fn sup_over_circle(v: &OrbitSeq, n: usize, grid: Option<usize>) -> Result<CertifiedSup> {
    let m = grid.unwrap_or_else(|| default_grid(n));
    let norms = grid_norms(v, n, m)?;
    let (k, grid_max) = argmax(&norms);
    let factor = 1.0 - std::f64::consts::PI * n as f64 / m as f64;
    Ok(CertifiedSup {
        n,
        grid_size: m,
        grid_max,
        grid_argmax: k as f64 / m as f64,
        certified_upper: grid_max / factor,
    })
}

/// A point `theta` with its attained norm; a lower-bound witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinedSup {
    pub max: f64,
    pub argmax: f64,
}

/// Golden-section search around the best `candidates` local maxima of the
/// grid. The result is an attained value, so it never exceeds the supremum.
pub fn refine_sup(v: &OrbitSeq, n: usize, grid: Option<usize>, candidates: usize) -> Result<RefinedSup> {
    let m = grid.unwrap_or_else(|| default_grid(n));
    let norms = grid_norms(v, n, m)?;
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&k| norms[k] >= norms[(k + m - 1) % m] && norms[k] >= norms[(k + 1) % m])
        .collect();
    peaks.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));
    peaks.truncate(candidates.max(1));

    let step = Frac128::from_ratio(1, m as u128);
    let results: Vec<Result<RefinedSup>> = peaks
        .par_iter()
        .map(|&k| {
            let centre = step.mul_uint(k as u128);
            // Offsets in units of 2^-64 turns relative to `lo = centre - step`.
            let lo = centre.sub(step);
            let width = (2 * (step.0 >> 64)) as f64;
            let eval = |t: f64| -> Result<(f64, Frac128)> {
                let theta = lo.add(Frac128((t.max(0.0) as u128) << 64));
                Ok((twisted_average_at(v, theta, n)?.norm(), theta))
            };
            let g = (5f64.sqrt() - 1.0) / 2.0;
            let (mut a, mut b) = (0.0, width);
            let mut c = b - g * (b - a);
            let mut d = a + g * (b - a);
            let mut fc = eval(c)?;
            let mut fd = eval(d)?;
            for _ in 0..REFINE_STEPS {
                if fc.0 >= fd.0 {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - g * (b - a);
                    fc = eval(c)?;
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + g * (b - a);
                    fd = eval(d)?;
                }
            }
            let grid_val = (norms[k], centre);
            let best = [grid_val, fc, fd]
                .into_iter()
                .fold((f64::NEG_INFINITY, Frac128::ZERO), |x, y| if y.0 > x.0 { y } else { x });
            Ok(RefinedSup {
                max: best.0,
                argmax: best.1.to_f64(),
            })
        })
        .collect();
    let mut best = RefinedSup {
        max: f64::NEG_INFINITY,
        argmax: 0.0,
    };
    for r in results {
        let r = r?;
        if r.max > best.max {
            best = r;
        }
    }
    Ok(best)
}

/// Certified suprema at increasing horizons.
pub fn decay_profile(v: &OrbitSeq, checkpoints: &[usize]) -> Result<Vec<CertifiedSup>> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::contract("checkpoints must be strictly increasing"));
    }
    checkpoints.iter().map(|&n| sup_over_circle(v, n, None)).collect()
}
