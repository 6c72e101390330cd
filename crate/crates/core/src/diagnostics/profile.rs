use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pairings::{exact_pairing_at, pairing_sequence, McOptions};
use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use crate::systems::Observable;

/// Smallest accepted profile horizon.
pub const MIN_PROFILE_HORIZON: usize = 16;

/// Largest `h` reachable by the sampled fallback of [`mild_mixing_probe`].
pub const PROBE_SAMPLED_HORIZON: u64 = 1 << 12;

/// Largest finite-sums depth.
pub const MAX_FS_DEPTH: usize = 24;

/// Cesàro statistics of a correlation sequence on the dyadic horizon grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingProfile {
    pub horizons: Vec<usize>,
    /// `(1/H) sum_{h<=H} <T^h f, g>`.
    pub ergodic_avg: Vec<Complex64>,
    /// `(1/H) sum_{h<=H} |<T^h f, g>|`.
    pub abs_avg: Vec<f64>,
    /// `max_{H/2 < h <= H} |<T^h f, g>|`.
    pub tail_sup: Vec<f64>,
    pub pairings: Vec<Complex64>,
    pub exact: bool,
    pub std_error: f64,
}

/// One CSV row: `H, ergodic_avg_re, ergodic_avg_im, abs_avg, tail_sup`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    #[serde(rename = "H")]
    pub h: usize,
    pub ergodic_avg_re: f64,
    pub ergodic_avg_im: f64,
    pub abs_avg: f64,
    pub tail_sup: f64,
}

/// `1, 2, 4, ...` up to `h_max`, ending at `h_max`.
pub fn dyadic_horizons(h_max: usize) -> Vec<usize> {
    let mut hs: Vec<usize> = std::iter::successors(Some(1usize), |h| h.checked_mul(2))
        .take_while(|&h| h <= h_max)
        .collect();
    if hs.last() != Some(&h_max) {
        hs.push(h_max);
    }
    hs
}

impl MixingProfile {
    /// `pairings[h-1] = <T^h f, g>`.
    pub fn from_pairings(pairings: Vec<Complex64>, h_max: usize, exact: bool, std_error: f64) -> Result<Self> {
        if h_max < MIN_PROFILE_HORIZON {
            return Err(Error::contract(format!("profile horizon must be at least {MIN_PROFILE_HORIZON}")));
        }
        if pairings.len() < h_max {
            return Err(Error::Range {
                requested: h_max,
                available: pairings.len(),
            });
        }
        let horizons = dyadic_horizons(h_max);
        let mut ergodic_avg = Vec::with_capacity(horizons.len());
        let mut abs_avg = Vec::with_capacity(horizons.len());
        let mut tail_sup = Vec::with_capacity(horizons.len());
        let mut sum = Complex64::default();
        let mut abs_sum = 0.0;
        let mut done = 0;
        for &h in &horizons {
            for p in &pairings[done..h] {
                sum += p;
                abs_sum += p.norm();
            }
            done = h;
            ergodic_avg.push(sum / h as f64);
            abs_avg.push(abs_sum / h as f64);
            tail_sup.push(pairings[h / 2..h].iter().map(|p| p.norm()).fold(0.0, f64::max));
        }
        Ok(MixingProfile {
            horizons,
            ergodic_avg,
            abs_avg,
            tail_sup,
            pairings,
            exact,
            std_error,
        })
    }

    pub fn rows(&self) -> Vec<ProfileRow> {
        (0..self.horizons.len())
            .map(|i| ProfileRow {
                h: self.horizons[i],
                ergodic_avg_re: self.ergodic_avg[i].re,
                ergodic_avg_im: self.ergodic_avg[i].im,
                abs_avg: self.abs_avg[i],
                tail_sup: self.tail_sup[i],
            })
            .collect()
    }
}

pub fn mixing_profile(
    op: &OperatorSpec,
    f: &Observable,
    g: &Observable,
    h_max: usize,
    mc: McOptions,
) -> Result<MixingProfile> {
    if h_max < MIN_PROFILE_HORIZON {
        return Err(Error::contract(format!("profile horizon must be at least {MIN_PROFILE_HORIZON}")));
    }
    let p = pairing_sequence(op, f, g, h_max, mc)?;
    MixingProfile::from_pairings(p.values, h_max, p.exact, p.std_error)
}

/// Finite-sums set `{ sum_{k in A} n_k : A nonempty, A ⊆ {1..depth} }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSSet {
    pub generators: Vec<u64>,
    pub depth: usize,
    pub elements: Vec<u64>,
}

impl FSSet {
    pub fn new(generators: Vec<u64>, depth: usize) -> Result<Self> {
        if depth == 0 || depth > generators.len() {
            return Err(Error::contract("depth must be in 1..=number of generators"));
        }
        if depth > MAX_FS_DEPTH {
            return Err(Error::resource(format!("finite-sums depth {depth} exceeds {MAX_FS_DEPTH}")));
        }
        if generators[..depth].contains(&0) {
            return Err(Error::contract("generators must be positive"));
        }
        let mut elements = vec![0u64];
        for &g in &generators[..depth] {
            let shifted = elements
                .iter()
                .map(|e| e.checked_add(g).ok_or_else(|| Error::contract("finite sum overflows u64")))
                .collect::<Result<Vec<_>>>()?;
            elements.extend(shifted);
        }
        elements.remove(0);
        elements.sort_unstable();
        elements.dedup();
        Ok(FSSet {
            generators,
            depth,
            elements,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub max: f64,
    pub argmax: u64,
}

/// `max_{h in FS} |<T^h f, g>|`. Closed forms are used at any `h`; sampled
/// pairings only up to [`PROBE_SAMPLED_HORIZON`].
pub fn mild_mixing_probe(op: &OperatorSpec, f: &Observable, g: &Observable, fs: &FSSet, mc: McOptions) -> Result<ProbeResult> {
    let top = *fs.elements.last().expect("nonempty finite-sums set");
    let sampled = if exact_pairing_at(op, f, g, 1)?.is_some() {
        None
    } else {
        if top > PROBE_SAMPLED_HORIZON {
            return Err(Error::resource(format!(
                "sampled pairings needed up to h = {top}, beyond {PROBE_SAMPLED_HORIZON}"
            )));
        }
        Some(pairing_sequence(op, f, g, top as usize, mc)?.values)
    };
    let mut best = ProbeResult { max: -1.0, argmax: 0 };
    for &h in &fs.elements {
        let z = match &sampled {
            Some(vals) => vals[h as usize - 1],
            None => exact_pairing_at(op, f, g, h)?.expect("closed form"),
        };
        if z.norm() > best.max {
            best = ProbeResult { max: z.norm(), argmax: h };
        }
    }
    Ok(best)
}
