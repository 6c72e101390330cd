//! Point-orbit generators for circle rotations and the doubling map.

mod bernoulli;
mod frac;
mod observable;

pub use bernoulli::{BernoulliState, BitSource, DoublingPoints};
pub use frac::{convergent_denominators, e, Frac128};
pub use observable::{Arc, Observable, TrigPoly};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::Exactness;
use crate::sequence::{OrbitSeq, Provenance};

/// Smallest precision accepted for doubling-map points.
pub const MIN_DOUBLING_PRECISION: u32 = 53;

/// `values[n] = f(x0 + n alpha mod 1)` for `n = 1..=N`.
pub fn rotation_orbit(x0: Frac128, alpha: Frac128, f: &Observable, n: usize) -> Result<OrbitSeq> {
    if n == 0 {
        return Err(Error::contract("orbit length must be positive"));
    }
    let mut x = x0;
    let values = (0..n)
        .map(|_| {
            x = x.add(alpha);
            f.eval(x)
        })
        .collect();
    OrbitSeq::new(values, Exactness::FixedPoint128, Provenance::new("rotation"))
}

/// `values[n] = f(0.b_{n+1} b_{n+2} ...)` with each point truncated to
/// `precision_bits` digits, for `n = 1..=N`.
pub fn doubling_orbit(
    state: &BernoulliState,
    f: &Observable,
    n: usize,
    precision_bits: u32,
) -> Result<OrbitSeq> {
    if n == 0 {
        return Err(Error::contract("orbit length must be positive"));
    }
    if !(MIN_DOUBLING_PRECISION..=128).contains(&precision_bits) {
        return Err(Error::contract(format!(
            "precision_bits must be in {MIN_DOUBLING_PRECISION}..=128, got {precision_bits}"
        )));
    }
    let values = state.points(precision_bits).skip(1).take(n).map(|x| f.eval(x)).collect();
    let provenance = match state.source {
        BitSource::Seeded(seed) => Provenance::seeded("doubling", seed),
        BitSource::Periodic(_) => Provenance::new("doubling/periodic"),
    };
    OrbitSeq::new(values, Exactness::FixedPoint128, provenance)
}

/// `int_0^1 <f(x), g(x)> dx` from the representations alone, when both
/// operands are trigonometric or both are step functions.
pub fn exact_pairing(f: &Observable, g: &Observable) -> Result<Option<Complex64>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let value = match (f, g) {
        (Observable::Trig(a), Observable::Trig(b)) => {
            Some(a.iter().zip(b).map(|(p, q)| p.pairing(q)).sum())
        }
        (Observable::Step { pieces: a, .. }, Observable::Step { pieces: b, .. }) => {
            let mut acc = Complex64::default();
            for (arc_a, va) in a {
                for (arc_b, vb) in b {
                    let overlap = arc_a.overlap(arc_b);
                    if overlap > 0.0 {
                        acc += va.inner(vb)? * overlap;
                    }
                }
            }
            Some(acc)
        }
        _ => None,
    };
    Ok(value)
}

/// Plain Monte Carlo estimate of `int_0^1 <f(x), g(x)> dx` from `samples`
/// uniform points.
pub fn mc_estimate(f: &Observable, g: &Observable, samples: usize, seed: u64) -> Result<Complex64> {
    if samples == 0 {
        return Err(Error::contract("samples must be positive"));
    }
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Complex64::default();
    for _ in 0..samples {
        let x = Frac128(rng.random());
        acc += f.eval(x).inner(&g.eval(x))?;
    }
    Ok(acc / samples as f64)
}

/// `int_0^1 <f(x), g(x)> dx`: exact when the representations allow it,
/// Monte Carlo otherwise.
pub fn mc_pairing(f: &Observable, g: &Observable, samples: usize, seed: u64) -> Result<Complex64> {
    if samples == 0 {
        return Err(Error::contract("samples must be positive"));
    }
    match exact_pairing(f, g)? {
        Some(v) => Ok(v),
        None => mc_estimate(f, g, samples, seed),
    }
}
