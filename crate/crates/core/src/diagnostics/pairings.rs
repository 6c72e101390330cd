//! Correlation sequences `h -> <T^h f, g> = int <T^h f(x), g(x)> dx`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{orbit_values, MapSpec, Multiplier, OperatorSpec, PointState};
use crate::systems::{BernoulliState, Frac128, Observable, TrigPoly};

/// Default sample count for the sampled fallback.
pub const MC_SAMPLES: usize = 1 << 16;

/// Independent random shifts of the midpoint lattice; the spread of their
/// means gives the standard error.
const MC_SHIFTS: usize = 16;

/// Point precision for sampled doubling-map orbits.
const MC_DOUBLING_PRECISION: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            samples: MC_SAMPLES,
            seed: 0,
        }
    }
}

/// `values[h-1] = <T^h f, g>` for `h = 1..=H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingSeq {
    pub values: Vec<Complex64>,
    pub exact: bool,
    /// Largest standard error over `h`; zero when exact.
    pub std_error: f64,
}

/// `T^h` applied to one trigonometric coordinate, as a frequency/coefficient
/// map. `None` for operators without a closed form.
fn evolve_terms(op: &OperatorSpec, h: u64, p: &TrigPoly) -> Option<Vec<(i128, Complex64)>> {
    let hh = h as u128;
    let binom = hh * hh.saturating_sub(1) / 2;
    let (k, map) = match op {
        OperatorSpec::Koopman(map) => (0i64, map),
        OperatorSpec::MultOp { multiplier, .. } => (multiplier_freq(multiplier)?, &MapSpec::Identity),
        OperatorSpec::MultKoopman { multiplier, map, .. } => (multiplier_freq(multiplier)?, map),
        OperatorSpec::TwistedU { alpha } => {
            return Some(rotation_terms(p, 1, *alpha, h, binom));
        }
        _ => return None,
    };
    Some(match map {
        MapSpec::Identity => p
            .terms()
            .iter()
            .map(|&(j, c)| (j as i128 + k as i128 * h as i128, c))
            .collect(),
        MapSpec::Rotation { alpha } => rotation_terms(p, k, *alpha, h, binom),
        MapSpec::Doubling { .. } => {
            // F(x) F(2x) ... F(2^{h-1} x) = e(k (2^h - 1) x), f(2^h x).
            let scale = 1i128.checked_shl(h as u32).filter(|_| h < 120);
            p.terms()
                .iter()
                .filter_map(|&(j, c)| match scale {
                    Some(s) => Some(((j as i128).checked_mul(s)?.checked_add(k as i128 * (s - 1))?, c)),
                    // Out of range of any coefficient of g unless j = k = 0.
                    None => (j == 0 && k == 0).then_some((0, c)),
                })
                .collect()
        }
    })
}

fn multiplier_freq(m: &Multiplier) -> Option<i64> {
    match m {
        Multiplier::Character { freq } => Some(*freq),
        _ => None,
    }
}

/// `F = e(k .)` over the rotation by `alpha`:
/// `T^h e(j .) = e(k binom(h,2) alpha + j h alpha) e((j + k h) .)`.
fn rotation_terms(p: &TrigPoly, k: i64, alpha: Frac128, h: u64, binom: u128) -> Vec<(i128, Complex64)> {
    let twist = alpha.mul_int(k as i128).mul_uint(binom);
    p.terms()
        .iter()
        .map(|&(j, c)| {
            let phase = twist.add(alpha.mul_int(j as i128).mul_uint(h as u128));
            (j as i128 + k as i128 * h as i128, c * phase.cis())
        })
        .collect()
}

/// `<T^h f, g>` from trigonometric coefficients, when a closed form exists.
pub fn exact_pairing_at(op: &OperatorSpec, f: &Observable, g: &Observable, h: u64) -> Result<Option<Complex64>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let (Some(fs), Some(gs)) = (f.as_trig(), g.as_trig()) else {
        return Ok(None);
    };
    let mut acc = Complex64::default();
    for (p, q) in fs.iter().zip(gs) {
        let Some(terms) = evolve_terms(op, h, p) else {
            return Ok(None);
        };
        for (freq, c) in terms {
            if let Ok(freq) = i64::try_from(freq) {
                acc += c * q.coeff(freq).conj();
            }
        }
    }
    Ok(Some(acc))
}

/// Pairings for `h = 1..=H`: exact when [`exact_pairing_at`] applies,
/// randomised quasi-Monte Carlo otherwise.
pub fn pairing_sequence(
    op: &OperatorSpec,
    f: &Observable,
    g: &Observable,
    h_max: usize,
    mc: McOptions,
) -> Result<PairingSeq> {
    if h_max == 0 {
        return Err(Error::contract("horizon must be positive"));
    }
    if exact_pairing_at(op, f, g, 1)?.is_some() {
        let values = (1..=h_max as u64)
            .into_par_iter()
            .map(|h| exact_pairing_at(op, f, g, h).map(|v| v.expect("closed form")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(PairingSeq {
            values,
            exact: true,
            std_error: 0.0,
        });
    }
    sampled_pairings(op, f, g, h_max, mc)
}

fn sampled_pairings(
    op: &OperatorSpec,
    f: &Observable,
    g: &Observable,
    h_max: usize,
    mc: McOptions,
) -> Result<PairingSeq> {
    if mc.samples < MC_SHIFTS {
        return Err(Error::contract(format!("need at least {MC_SHIFTS} samples")));
    }
    let per_shift = mc.samples / MC_SHIFTS;
    let doubling = matches!(
        op,
        OperatorSpec::Koopman(MapSpec::Doubling { .. })
            | OperatorSpec::MultKoopman {
                map: MapSpec::Doubling { .. },
                ..
            }
            | OperatorSpec::InnerProductKoopman {
                map: MapSpec::Doubling { .. },
                ..
            }
    );
    let means = (0..MC_SHIFTS)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
            rng.set_stream(s as u64);
            let shift = Frac128(rng.random());
            let mut acc = vec![Complex64::default(); h_max];
            for i in 0..per_shift {
                let (state, x) = if doubling {
                    let st = BernoulliState::seeded(rng.random());
                    let x = st.point(MC_DOUBLING_PRECISION);
                    (PointState::Bits(st), x)
                } else {
                    let x = Frac128::from_ratio(2 * i as u128 + 1, 2 * per_shift as u128).add(shift);
                    (PointState::Circle(x), x)
                };
                let gx = g.eval(x);
                let orbit = orbit_values(op, f, &state, h_max)?;
                for (a, v) in acc.iter_mut().zip(orbit.values()) {
                    *a += v.inner(&gx)?;
                }
            }
            Ok(acc.into_iter().map(|a| a / per_shift as f64).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;

    let k = MC_SHIFTS as f64;
    let mut values = Vec::with_capacity(h_max);
    let mut std_error = 0.0_f64;
    for h in 0..h_max {
        let mean: Complex64 = means.iter().map(|m| m[h]).sum::<Complex64>() / k;
        let var: f64 = means.iter().map(|m| (m[h] - mean).norm_sqr()).sum::<f64>() / (k - 1.0);
        std_error = std_error.max((var / k).sqrt());
        values.push(mean);
    }
    Ok(PairingSeq {
        values,
        exact: false,
        std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::CVec;
    use crate::systems::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha() -> Frac128 {
        Frac128::sqrt2_minus_1()
    }

    #[test]
    fn doubling_exp_is_orthogonal() {
        let op = OperatorSpec::Koopman(MapSpec::Doubling { precision_bits: 64 });
        let p = pairing_sequence(&op, &Observable::exp(), &Observable::exp(), 200, McOptions::default()).unwrap();
        assert!(p.exact);
        assert!(p.values.iter().all(|z| *z == Complex64::default()));
    }

    #[test]
    fn doubling_hits_matching_frequency() {
        let op = OperatorSpec::Koopman(MapSpec::Doubling { precision_bits: 64 });
        let g = Observable::character(8, c(1.0, 0.0));
        let p = pairing_sequence(&op, &Observable::exp(), &g, 5, McOptions::default()).unwrap();
        assert_eq!(p.values[2], c(1.0, 0.0));
        assert_eq!(p.values[1], c(0.0, 0.0));
    }

    #[test]
    fn rotation_exp_gives_characters() {
        let op = OperatorSpec::Koopman(MapSpec::Rotation { alpha: alpha() });
        let p = pairing_sequence(&op, &Observable::exp(), &Observable::exp(), 100, McOptions::default()).unwrap();
        for (i, z) in p.values.iter().enumerate() {
            let want = alpha().mul_uint(i as u128 + 1).cis();
            assert!((z - want).norm() < 1e-15);
        }
    }

    #[test]
    fn twisted_closed_form_matches_sampling() {
        let f = Observable::trig(vec![TrigPoly::new([(0, c(1.0, 0.0)), (-1, c(0.5, 0.5))])]).unwrap();
        let g = Observable::trig(vec![TrigPoly::new([(1, c(1.0, 0.0)), (2, c(0.0, 1.0)), (0, c(0.3, 0.0))])]).unwrap();
        let op = OperatorSpec::TwistedU { alpha: alpha() };
        let exact = pairing_sequence(&op, &f, &g, 4, McOptions::default()).unwrap();
        let sampled = sampled_pairings(&op, &f, &g, 4, McOptions { samples: 1 << 12, seed: 3 }).unwrap();
        for (a, b) in exact.values.iter().zip(&sampled.values) {
            // Trigonometric integrands are integrated exactly by the lattice.
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn mult_koopman_doubling_closed_form_matches_sampling() {
        let op = OperatorSpec::MultKoopman {
            multiplier: Multiplier::Character { freq: 1 },
            bound: 1.0,
            map: MapSpec::Doubling { precision_bits: 64 },
        };
        let f = Observable::exp();
        // T^2 e = e(3x) e(4x) = e(7x).
        let g = Observable::character(7, c(1.0, 0.0));
        let exact = exact_pairing_at(&op, &f, &g, 2).unwrap().unwrap();
        assert_eq!(exact, c(1.0, 0.0));
        let sampled = sampled_pairings(&op, &f, &g, 3, McOptions { samples: 1 << 14, seed: 1 }).unwrap();
        assert!((sampled.values[1] - exact).norm() < 6.0 * sampled.std_error.max(1e-3));
    }

    #[test]
    fn step_observables_fall_back_to_sampling() {
        let f = Observable::indicator(Arc::new(Frac128::ZERO, 1u128 << 127), CVec::real(&[1.0])).unwrap();
        let op = OperatorSpec::Koopman(MapSpec::Rotation { alpha: Frac128::from_ratio(1, 4) });
        let p = pairing_sequence(&op, &f, &f, 4, McOptions { samples: 1 << 12, seed: 0 }).unwrap();
        assert!(!p.exact);
        // overlaps of [0,1/2) with its translates by h/4
        let want = [0.25, 0.0, 0.25, 0.5];
        for (z, w) in p.values.iter().zip(want) {
            assert!((z.re - w).abs() < 5e-3, "{z} vs {w}");
        }
    }

    #[test]
    fn disjoint_frequencies_vanish() {
        let op = OperatorSpec::Koopman(MapSpec::Rotation { alpha: alpha() });
        let f = Observable::character(2, c(1.0, 0.0));
        let g = Observable::character(3, c(1.0, 0.0));
        let p = pairing_sequence(&op, &f, &g, 50, McOptions::default()).unwrap();
        assert!(p.values.iter().all(|z| z.norm() == 0.0));
    }
}
