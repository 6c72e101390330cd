//! Concrete operators on `L^1([0,1]; C^d)` and their pointwise orbits.
//!
//! Every pointwise variant has the weighted-composition form
//! `(T g)(x) = F(x) g(phi x)`, so
//!
//! ```text
//! T^n f(x) = F(x) F(phi x) ... F(phi^{n-1} x) f(phi^n x)
//! ```
//!
//! and orbits are produced with one running product, `O(N)` in total.

pub mod dyadic;

pub use dyadic::{
    dyadic_apply, dyadic_pairing, index_sequence, DyadicMass, DyadicVariant, DEFAULT_T_INDEX_CAP,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{CMat, CVec, Exactness};
use crate::sequence::{OrbitSeq, Provenance};
use crate::systems::{Arc, BernoulliState, Frac128, Observable, TrigPoly, MIN_DOUBLING_PRECISION};

/// Longest orbit computed for the quadratic-cost inner-product operator.
pub const INNER_PRODUCT_ORBIT_CAP: usize = 1 << 13;

/// Slack allowed when checking multiplier norms against their declared bound.
const NORM_CHECK_SLACK: f64 = 1e-12;

/// A measure-preserving map of the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MapSpec {
    Identity,
    Rotation { alpha: Frac128 },
    /// `x -> 2x mod 1`, realised on Bernoulli bitstreams; points are
    /// truncated to `precision_bits` digits.
    Doubling { precision_bits: u32 },
}

/// Starting point of an orbit.
#[derive(Debug, Clone, PartialEq)]
pub enum PointState {
    Circle(Frac128),
    Bits(BernoulliState),
}

impl MapSpec {
    /// `x, phi x, phi^2 x, ...`.
    pub fn points<'a>(&self, x: &'a PointState) -> Result<Box<dyn Iterator<Item = Frac128> + 'a>> {
        match (self, x) {
            (MapSpec::Identity, PointState::Circle(p)) => Ok(Box::new(std::iter::repeat(*p))),
            (MapSpec::Rotation { alpha }, PointState::Circle(p)) => {
                let alpha = *alpha;
                Ok(Box::new(std::iter::successors(Some(*p), move |y| Some(y.add(alpha)))))
            }
            (MapSpec::Doubling { precision_bits }, PointState::Bits(s)) => {
                if !(MIN_DOUBLING_PRECISION..=128).contains(precision_bits) {
                    return Err(Error::contract(format!(
                        "doubling precision must be in {MIN_DOUBLING_PRECISION}..=128"
                    )));
                }
                Ok(Box::new(s.points(*precision_bits)))
            }
            (MapSpec::Doubling { .. }, PointState::Circle(_)) => Err(Error::contract(
                "the doubling map needs a bitstream starting state",
            )),
            (_, PointState::Bits(_)) => Err(Error::contract(
                "bitstream states are only valid for the doubling map",
            )),
        }
    }

    fn exactness(&self) -> Exactness {
        Exactness::FixedPoint128
    }
}

/// The multiplier `F : [0,1) -> L(C^d)` of a weighted composition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Multiplier {
    /// `F(x) = e(freq * x) Id`.
    Character { freq: i64 },
    /// `F(x) = p(x) Id` for a trigonometric polynomial `p`.
    Scalar(TrigPoly),
    /// Piecewise-constant scalar: `value` on each arc, `default` elsewhere.
    Steps {
        pieces: Vec<(Arc, Complex64)>,
        default: Complex64,
    },
    /// `radius * R(2 pi freq x)` on `C^2`, with `R` the real plane rotation.
    Rotation2 { radius: f64, freq: i64 },
}

impl Multiplier {
    /// The scalar value when `F(x)` is a multiple of the identity.
    pub fn scalar_at(&self, x: Frac128) -> Option<Complex64> {
        match self {
            Multiplier::Character { freq } => Some(x.mul_int(*freq as i128).cis()),
            Multiplier::Scalar(p) => Some(p.eval(x)),
            Multiplier::Steps { pieces, default } => Some(
                pieces
                    .iter()
                    .find(|(arc, _)| arc.contains(x))
                    .map_or(*default, |(_, v)| *v),
            ),
            Multiplier::Rotation2 { .. } => None,
        }
    }

    pub fn matrix_at(&self, x: Frac128, dim: usize) -> Result<CMat> {
        match self {
            Multiplier::Rotation2 { radius, freq } => {
                if dim != 2 {
                    return Err(Error::DimensionMismatch { expected: 2, found: dim });
                }
                let z = x.mul_int(*freq as i128).cis() * *radius;
                let (c, s) = (Complex64::new(z.re, 0.0), Complex64::new(z.im, 0.0));
                CMat::from_rows(2, &[c, -s, s, c])
            }
            _ => Ok(CMat::scalar(dim, self.scalar_at(x).expect("scalar multiplier"))),
        }
    }

    fn required_dim(&self) -> Option<usize> {
        match self {
            Multiplier::Rotation2 { .. } => Some(2),
            _ => None,
        }
    }

    /// Values of `F` are unimodular scalars obtained by exact phase
    /// accumulation.
    fn is_character(&self) -> Option<i64> {
        match self {
            Multiplier::Character { freq } => Some(*freq),
            _ => None,
        }
    }
}

/// `F = 2i on [0, alpha)`, `1/(2i) on [alpha, 2 alpha)`, `1` elsewhere.
pub fn noncontractive_multiplier(alpha: Frac128) -> Result<Multiplier> {
    if alpha == Frac128::ZERO || alpha >= Frac128::HALF {
        return Err(Error::contract("alpha must lie in (0, 1/2)"));
    }
    Ok(Multiplier::Steps {
        pieces: vec![
            (Arc::new(Frac128::ZERO, alpha.0), Complex64::new(0.0, 2.0)),
            (Arc::new(alpha, alpha.0), Complex64::new(0.0, -0.5)),
        ],
        default: Complex64::new(1.0, 0.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OperatorSpec {
    /// `g -> g o phi`.
    Koopman(MapSpec),
    /// `g -> F g` with `sup_x ||F(x)|| <= bound`.
    MultOp { multiplier: Multiplier, bound: f64 },
    /// `g -> F (g o phi)`.
    MultKoopman {
        multiplier: Multiplier,
        bound: f64,
        map: MapSpec,
    },
    /// `(U g)(x) = e(x) g(x + alpha)`.
    TwistedU { alpha: Frac128 },
    /// `M_F T_phi` for the rotation by `alpha` and the multiplier of
    /// [`noncontractive_multiplier`].
    NonContractiveS { alpha: Frac128 },
    /// `(T g)(x) = <g(phi x), u(x)> g(phi x)` with the bilinear pairing
    /// `<v, u> = sum_i v_i u_i`. This expression is not linear in `g`; it is
    /// implemented exactly as written.
    InnerProductKoopman { functional: Observable, map: MapSpec },
    DyadicT,
    DyadicS,
}

impl OperatorSpec {
    /// `M_e`: multiplication by `e(x)`.
    pub fn m_e() -> Self {
        OperatorSpec::MultOp {
            multiplier: Multiplier::Character { freq: 1 },
            bound: 1.0,
        }
    }

    pub fn non_contractive_s(alpha: Frac128) -> Result<Self> {
        noncontractive_multiplier(alpha)?;
        Ok(OperatorSpec::NonContractiveS { alpha })
    }

    pub fn name(&self) -> &'static str {
        match self {
            OperatorSpec::Koopman(_) => "koopman",
            OperatorSpec::MultOp { .. } => "mult",
            OperatorSpec::MultKoopman { .. } => "mult-koopman",
            OperatorSpec::TwistedU { .. } => "twisted-u",
            OperatorSpec::NonContractiveS { .. } => "noncontractive-s",
            OperatorSpec::InnerProductKoopman { .. } => "inner-product-koopman",
            OperatorSpec::DyadicT => "dyadic-t",
            OperatorSpec::DyadicS => "dyadic-s",
        }
    }

    /// Reduce to the weighted-composition form `(F, phi)` where possible.
    pub fn weighted_composition(&self) -> Option<(Multiplier, MapSpec)> {
        match self {
            OperatorSpec::Koopman(map) => Some((
                Multiplier::Steps {
                    pieces: vec![],
                    default: Complex64::new(1.0, 0.0),
                },
                map.clone(),
            )),
            OperatorSpec::MultOp { multiplier, .. } => Some((multiplier.clone(), MapSpec::Identity)),
            OperatorSpec::MultKoopman { multiplier, map, .. } => Some((multiplier.clone(), map.clone())),
            OperatorSpec::TwistedU { alpha } => Some((
                Multiplier::Character { freq: 1 },
                MapSpec::Rotation { alpha: *alpha },
            )),
            OperatorSpec::NonContractiveS { alpha } => Some((
                noncontractive_multiplier(*alpha).ok()?,
                MapSpec::Rotation { alpha: *alpha },
            )),
            _ => None,
        }
    }

    /// Check declared multiplier norm bounds at the given sample points.
    /// Returns the largest observed `||F(x)||`.
    pub fn validate(&self, dim: usize, samples: &[Frac128]) -> Result<f64> {
        let (multiplier, bound) = match self {
            OperatorSpec::MultOp { multiplier, bound } => (multiplier, *bound),
            OperatorSpec::MultKoopman { multiplier, bound, .. } => (multiplier, *bound),
            _ => return Ok(0.0),
        };
        if let Some(d) = multiplier.required_dim() {
            if d != dim {
                return Err(Error::DimensionMismatch { expected: d, found: dim });
            }
        }
        let mut worst = 0.0_f64;
        for &x in samples {
            let norm = multiplier.matrix_at(x, dim)?.op_norm();
            worst = worst.max(norm);
            if norm > bound + NORM_CHECK_SLACK {
                return Err(Error::contract(format!(
                    "multiplier norm {norm} exceeds declared bound {bound} at x = {}",
                    x.to_f64()
                )));
            }
        }
        Ok(worst)
    }
}

/// `values[n] = T^n f(x)` for `n = 1..=N`.
pub fn orbit_values(op: &OperatorSpec, f: &Observable, x: &PointState, n: usize) -> Result<OrbitSeq> {
    if n == 0 {
        return Err(Error::contract("orbit length must be positive"));
    }
    match op {
        OperatorSpec::DyadicT | OperatorSpec::DyadicS => Err(Error::contract(
            "dyadic operators have no pointwise orbits; use dyadic_apply",
        )),
        OperatorSpec::TwistedU { alpha } => {
            let PointState::Circle(x) = x else {
                return Err(Error::contract("twisted U acts on circle points"));
            };
            twisted_u_closed_form(*alpha, f, *x, n)
        }
        OperatorSpec::InnerProductKoopman { functional, map } => {
            inner_product_orbit(functional, map, f, x, n)
        }
        OperatorSpec::Koopman(map) => {
            let values = map.points(x)?.skip(1).take(n).map(|p| f.eval(p)).collect();
            OrbitSeq::new(values, map.exactness(), Provenance::new(op.name()))
        }
        _ => {
            let (multiplier, map) = op.weighted_composition().expect("pointwise variant");
            weighted_composition_orbit(&multiplier, &map, f, x, n, op.name())
        }
    }
}

/// Running-product evaluation of `F(x) ... F(phi^{n-1} x) f(phi^n x)`.
pub fn weighted_composition_orbit(
    multiplier: &Multiplier,
    map: &MapSpec,
    f: &Observable,
    x: &PointState,
    n: usize,
    label: &str,
) -> Result<OrbitSeq> {
    let dim = f.dim();
    if let Some(d) = multiplier.required_dim() {
        if d != dim {
            return Err(Error::DimensionMismatch { expected: d, found: dim });
        }
    }
    let mut points = map.points(x)?;
    let mut prev = points.next().expect("infinite orbit");
    let mut values = Vec::with_capacity(n);
    // Identity-map orbits revisit one point; evaluate f there once.
    let mut cache: Option<(Frac128, CVec)> = None;
    let mut f_at = |p: Frac128| -> CVec {
        match &cache {
            Some((q, v)) if *q == p => v.clone(),
            _ => {
                let v = f.eval(p);
                cache = Some((p, v.clone()));
                v
            }
        }
    };

    let exactness = if let Some(freq) = multiplier.is_character() {
        // Unimodular character: accumulate the phase exactly.
        let mut phase = Frac128::ZERO;
        for p in points.take(n) {
            phase = phase.add(prev.mul_int(freq as i128));
            values.push(f_at(p).scale(phase.cis()));
            prev = p;
        }
        map.exactness()
    } else if multiplier.required_dim().is_none() {
        let mut acc = Complex64::new(1.0, 0.0);
        for p in points.take(n) {
            acc *= multiplier.scalar_at(prev).expect("scalar multiplier");
            values.push(f_at(p).scale(acc));
            prev = p;
        }
        Exactness::Float64
    } else {
        let mut acc = CMat::identity(dim);
        for p in points.take(n) {
            acc = acc.mul(&multiplier.matrix_at(prev, dim)?);
            values.push(acc.apply(&f_at(p))?);
            prev = p;
        }
        Exactness::Float64
    };
    OrbitSeq::new(values, exactness, Provenance::new(label))
}

/// `U^n f(x) = e(n x + binom(n, 2) alpha) f(x + n alpha)`, with the phase
/// reduced exactly in 128-bit arithmetic.
pub fn twisted_u_closed_form(alpha: Frac128, f: &Observable, x: Frac128, n: usize) -> Result<OrbitSeq> {
    let values = (1..=n as u128)
        .map(|k| {
            let binom = k * (k - 1) / 2;
            let phase = x.mul_uint(k).add(alpha.mul_uint(binom));
            f.eval(x.add(alpha.mul_uint(k))).scale(phase.cis())
        })
        .collect();
    OrbitSeq::new(values, Exactness::FixedPoint128, Provenance::new("twisted-u"))
}

/// Orbit of the inner-product operator. Writing `T^n g(x) = c_n(x) g(phi^n x)`,
/// the recursion `c_k(x) = c_{k-1}(phi x)^2 <g(phi^k x), u(x)>` unrolls to
/// `c_n(x) = prod_j <g(phi^n x), u(phi^j x)>^(2^j)`, evaluated by a Horner
/// scheme in `O(n)` per term.
fn inner_product_orbit(
    functional: &Observable,
    map: &MapSpec,
    g: &Observable,
    x: &PointState,
    n: usize,
) -> Result<OrbitSeq> {
    if n > INNER_PRODUCT_ORBIT_CAP {
        return Err(Error::resource(format!(
            "inner-product orbit length {n} exceeds cap {INNER_PRODUCT_ORBIT_CAP}"
        )));
    }
    if functional.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: functional.dim(),
        });
    }
    let points: Vec<Frac128> = map.points(x)?.take(n + 1).collect();
    let duals: Vec<CVec> = points[..n].iter().map(|&p| functional.eval(p)).collect();
    let mut values = Vec::with_capacity(n);
    for k in 1..=n {
        let gk = g.eval(points[k]);
        let mut acc = Complex64::new(1.0, 0.0);
        for u in duals[..k].iter().rev() {
            let pairing: Complex64 = gk.coords().iter().zip(u.coords()).map(|(a, b)| a * b).sum();
            acc = acc * acc * pairing;
        }
        values.push(gk.scale(acc));
    }
    OrbitSeq::new(values, Exactness::Float64, Provenance::new("inner-product-koopman"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::e;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha() -> Frac128 {
        Frac128::sqrt2_minus_1()
    }

    #[test]
    fn koopman_rotation_of_exp() {
        let op = OperatorSpec::Koopman(MapSpec::Rotation { alpha: alpha() });
        let orbit = orbit_values(&op, &Observable::exp(), &PointState::Circle(Frac128::ZERO), 500).unwrap();
        for (i, v) in orbit.values().iter().enumerate() {
            let want = alpha().mul_uint(i as u128 + 1).cis();
            assert!((v.coords()[0] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn twisted_u_matches_binomial_formula_for_exp() {
        let x = Frac128::from_f64(0.3141);
        let op = OperatorSpec::TwistedU { alpha: alpha() };
        let orbit = orbit_values(&op, &Observable::exp(), &PointState::Circle(x), 300).unwrap();
        for (i, v) in orbit.values().iter().enumerate() {
            let n = (i + 1) as u128;
            let phase = alpha().mul_uint((n + 1) * n / 2).add(x.mul_uint(n + 1));
            assert!((v.coords()[0] - phase.cis()).norm() < 1e-14);
        }
    }

    #[test]
    fn twisted_u_closed_form_agrees_with_float_recursion() {
        let x = Frac128::from_f64(0.77);
        let f = Observable::trig(vec![TrigPoly::new([(1, c(1.0, 0.0)), (-2, c(0.3, -0.4)), (0, c(0.5, 0.0))])])
            .unwrap();
        let closed = orbit_values(&OperatorSpec::TwistedU { alpha: alpha() }, &f, &PointState::Circle(x), 2000)
            .unwrap();
        // Same operator as a float running product with F = e(.) given as a
        // trigonometric polynomial.
        let rec = weighted_composition_orbit(
            &Multiplier::Scalar(TrigPoly::monomial(1, c(1.0, 0.0))),
            &MapSpec::Rotation { alpha: alpha() },
            &f,
            &PointState::Circle(x),
            2000,
            "recursion",
        )
        .unwrap();
        for (a, b) in closed.values().iter().zip(rec.values()) {
            assert!(a.sub(b).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn m_e_orbit_is_modulation() {
        let x = Frac128::from_f64(0.1234);
        let f = Observable::trig(vec![
            TrigPoly::new([(0, c(1.0, 0.0)), (2, c(0.0, 1.0))]),
            TrigPoly::monomial(-1, c(0.5, 0.5)),
        ])
        .unwrap();
        let orbit = orbit_values(&OperatorSpec::m_e(), &f, &PointState::Circle(x), 100).unwrap();
        let fx = f.eval(x);
        for (i, v) in orbit.values().iter().enumerate() {
            let want = fx.scale(e((i + 1) as f64 * x.to_f64()));
            assert!(v.sub(&want).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn contractive_mult_koopman_contracts_along_orbit() {
        let f = Observable::trig(vec![
            TrigPoly::new([(0, c(1.0, 0.0)), (1, c(0.5, 0.0))]),
            TrigPoly::monomial(3, c(0.0, 1.0)),
        ])
        .unwrap();
        let op = OperatorSpec::MultKoopman {
            multiplier: Multiplier::Rotation2 { radius: 0.9, freq: 2 },
            bound: 1.0,
            map: MapSpec::Rotation { alpha: alpha() },
        };
        let samples: Vec<Frac128> = (0..64).map(|i| Frac128::from_ratio(i, 64)).collect();
        assert!(op.validate(2, &samples).unwrap() <= 0.9 + 1e-12);
        for s in [0.0, 0.25, 0.61] {
            let x0 = Frac128::from_f64(s);
            let orbit = orbit_values(&op, &f, &PointState::Circle(x0), 200).unwrap();
            for (i, v) in orbit.values().iter().enumerate() {
                let y = x0.add(alpha().mul_uint(i as u128 + 1));
                assert!(v.norm() <= f.eval(y).norm() + 1e-12);
            }
        }
    }

    #[test]
    fn declared_bound_is_enforced() {
        let op = OperatorSpec::MultOp {
            multiplier: Multiplier::Scalar(TrigPoly::new([(0, c(1.0, 0.0)), (1, c(1.0, 0.0))])),
            bound: 1.0,
        };
        let samples = [Frac128::ZERO];
        assert!(op.validate(1, &samples).is_err());
    }

    #[test]
    fn noncontractive_cumulative_modulus() {
        let op = OperatorSpec::non_contractive_s(alpha()).unwrap();
        let one = Observable::constant(&CVec::real(&[1.0]));
        let mut saw_two = false;
        for k in 0..32 {
            let x0 = Frac128::from_ratio(2 * k + 1, 64);
            let orbit = orbit_values(&op, &one, &PointState::Circle(x0), 400).unwrap();
            for v in orbit.values() {
                let m = v.norm();
                assert!(
                    [0.5, 1.0, 2.0].iter().any(|t| (m - t).abs() < 1e-12),
                    "modulus {m}"
                );
                saw_two |= (m - 2.0).abs() < 1e-12;
            }
        }
        assert!(saw_two, "the factor 2 should be attained");
    }

    #[test]
    fn noncontractive_needs_small_alpha() {
        assert!(OperatorSpec::non_contractive_s(Frac128::from_f64(0.6)).is_err());
        assert!(OperatorSpec::non_contractive_s(Frac128::ZERO).is_err());
    }

    #[test]
    fn dyadic_variants_have_no_pointwise_orbit() {
        let r = orbit_values(&OperatorSpec::DyadicS, &Observable::exp(), &PointState::Circle(Frac128::ZERO), 4);
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn doubling_koopman_matches_systems_generator() {
        let s = BernoulliState::seeded(99);
        let op = OperatorSpec::Koopman(MapSpec::Doubling { precision_bits: 64 });
        let a = orbit_values(&op, &Observable::exp(), &PointState::Bits(s.clone()), 100).unwrap();
        let b = crate::systems::doubling_orbit(&s, &Observable::exp(), 100, 64).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn inner_product_operator_matches_direct_recursion() {
        // c_k(y) = c_{k-1}(phi y)^2 <g(phi^k y), u(y)>, evaluated recursively.
        fn coeff(k: usize, y: Frac128, a: Frac128, g: &Observable, u: &Observable) -> Complex64 {
            if k == 0 {
                return c(1.0, 0.0);
            }
            let prev = coeff(k - 1, y.add(a), a, g, u);
            let gk = g.eval(y.add(a.mul_uint(k as u128)));
            let uy = u.eval(y);
            let pairing: Complex64 = gk.coords().iter().zip(uy.coords()).map(|(p, q)| p * q).sum();
            prev * prev * pairing
        }
        let a = alpha();
        let g = Observable::trig(vec![TrigPoly::new([(0, c(0.6, 0.0)), (1, c(0.3, 0.0))])]).unwrap();
        let u = Observable::trig(vec![TrigPoly::new([(0, c(0.9, 0.0)), (-1, c(0.0, 0.1))])]).unwrap();
        let op = OperatorSpec::InnerProductKoopman {
            functional: u.clone(),
            map: MapSpec::Rotation { alpha: a },
        };
        let x0 = Frac128::from_f64(0.2);
        let orbit = orbit_values(&op, &g, &PointState::Circle(x0), 12).unwrap();
        for (i, v) in orbit.values().iter().enumerate() {
            let k = i + 1;
            let want = g.eval(x0.add(a.mul_uint(k as u128))).scale(coeff(k, x0, a, &g, &u));
            assert!(v.sub(&want).unwrap().norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }
}
