use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::frac::Frac128;
use crate::error::{Error, Result};
use crate::numeric::CVec;

/// Quadrature resolution used for `L^1` norms that have no closed form.
const NORM_QUADRATURE_POINTS: u32 = 1 << 16;

/// A scalar trigonometric polynomial `sum_j c_j e(j x)`.
///
/// Terms are kept sorted by frequency with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigPoly {
    terms: Vec<(i64, Complex64)>,
}

impl TrigPoly {
    pub fn new(terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut merged: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (j, c) in terms {
            *merged.entry(j).or_default() += c;
        }
        TrigPoly {
            terms: merged.into_iter().filter(|(_, c)| *c != Complex64::default()).collect(),
        }
    }

    pub fn monomial(freq: i64, coeff: Complex64) -> Self {
        TrigPoly::new([(freq, coeff)])
    }

    pub fn constant(c: Complex64) -> Self {
        TrigPoly::monomial(0, c)
    }

    pub fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    pub fn coeff(&self, freq: i64) -> Complex64 {
        self.terms
            .binary_search_by_key(&freq, |(j, _)| *j)
            .map(|i| self.terms[i].1)
            .unwrap_or_default()
    }

    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(j, _)| j.unsigned_abs()).max().unwrap_or(0)
    }

    /// Evaluation with exact phase reduction: `j * x mod 1` is formed in
    /// 128-bit integer arithmetic before the single rounding in `e(.)`.
    pub fn eval(&self, x: Frac128) -> Complex64 {
        self.terms
            .iter()
            .map(|&(j, c)| c * x.mul_int(j as i128).cis())
            .sum()
    }

    /// Multiply by `e(k x)`: every frequency moves by `k`.
    pub fn shift_frequencies(&self, k: i64) -> TrigPoly {
        TrigPoly {
            terms: self.terms.iter().map(|&(j, c)| (j + k, c)).collect(),
        }
    }

    /// Coefficientwise map `c_j -> g(j, c_j)`.
    pub fn map_coeffs(&self, g: impl Fn(i64, Complex64) -> Complex64) -> TrigPoly {
        TrigPoly::new(self.terms.iter().map(|&(j, c)| (j, g(j, c))))
    }

    /// `int_0^1 p(x) conj(q(x)) dx = sum_j p_j conj(q_j)`.
    pub fn pairing(&self, other: &TrigPoly) -> Complex64 {
        // Both term lists are sorted; merge.
        let (mut i, mut k) = (0, 0);
        let mut acc = Complex64::default();
        while i < self.terms.len() && k < other.terms.len() {
            let (a, b) = (self.terms[i].0, other.terms[k].0);
            if a == b {
                acc += self.terms[i].1 * other.terms[k].1.conj();
                i += 1;
                k += 1;
            } else if a < b {
                i += 1;
            } else {
                k += 1;
            }
        }
        acc
    }
}

/// The arc `[start, start + len)` of the circle, taken mod 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub start: Frac128,
    pub len: u128,
}

impl Arc {
    pub fn new(start: Frac128, len: u128) -> Self {
        Arc { start, len }
    }

    /// `[0, 2^-k)` for `1 <= k <= 128`.
    pub fn dyadic_initial(k: u32) -> Result<Self> {
        if k == 0 || k > 128 {
            return Err(Error::contract(format!("dyadic arc exponent must be in 1..=128, got {k}")));
        }
        Ok(Arc::new(Frac128::ZERO, 1u128 << (128 - k)))
    }

    pub fn contains(&self, x: Frac128) -> bool {
        x.sub(self.start).0 < self.len
    }

    pub fn measure(&self) -> f64 {
        Frac128(self.len).to_f64()
    }

    /// Length of the intersection of two arcs, as a fraction of the circle.
    pub fn overlap(&self, other: &Arc) -> f64 {
        // Work on the unrolled line: self = [0, a), other = [s, s + b) with
        // s = other.start - self.start mod 1, plus its translate by -1.
        let a = self.len as f64;
        let b = other.len as f64;
        let s = other.start.sub(self.start).0 as f64;
        let one = 2f64.powi(128);
        let seg = |lo: f64, hi: f64| (hi.min(a) - lo.max(0.0)).max(0.0);
        (seg(s, s + b) + seg(s - one, s - one + b)) / one
    }
}

/// A `C^d`-valued observable on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Observable {
    /// One trigonometric polynomial per coordinate.
    Trig(Vec<TrigPoly>),
    /// Finitely many disjoint arcs carrying constant vector values; zero
    /// elsewhere.
    Step { dim: usize, pieces: Vec<(Arc, CVec)> },
}

impl Observable {
    pub fn trig(coords: Vec<TrigPoly>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::contract("observable needs at least one coordinate"));
        }
        Ok(Observable::Trig(coords))
    }

    /// `f(x) = e(x)`, scalar.
    pub fn exp() -> Self {
        Observable::Trig(vec![TrigPoly::monomial(1, Complex64::new(1.0, 0.0))])
    }

    /// `f(x) = c e(j x)`, scalar.
    pub fn character(freq: i64, coeff: Complex64) -> Self {
        Observable::Trig(vec![TrigPoly::monomial(freq, coeff)])
    }

    pub fn constant(value: &CVec) -> Self {
        Observable::Trig(value.coords().iter().map(|&c| TrigPoly::constant(c)).collect())
    }

    pub fn step(dim: usize, pieces: Vec<(Arc, CVec)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("observable needs at least one coordinate"));
        }
        for (arc, v) in &pieces {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if arc.len == 0 {
                return Err(Error::contract("step observable has an empty arc"));
            }
        }
        for (i, (a, _)) in pieces.iter().enumerate() {
            for (b, _) in &pieces[i + 1..] {
                if a.overlap(b) > 0.0 || a.contains(b.start) || b.contains(a.start) {
                    return Err(Error::contract("step observable arcs must be disjoint"));
                }
            }
        }
        Ok(Observable::Step { dim, pieces })
    }

    /// `value * 1_arc`.
    pub fn indicator(arc: Arc, value: CVec) -> Result<Self> {
        Observable::step(value.dim(), vec![(arc, value)])
    }

    pub fn dim(&self) -> usize {
        match self {
            Observable::Trig(c) => c.len(),
            Observable::Step { dim, .. } => *dim,
        }
    }

    pub fn as_trig(&self) -> Option<&[TrigPoly]> {
        match self {
            Observable::Trig(c) => Some(c),
            Observable::Step { .. } => None,
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Observable::Trig(c) => c.iter().map(TrigPoly::degree).max().unwrap_or(0),
            Observable::Step { .. } => u64::MAX,
        }
    }

    pub fn eval(&self, x: Frac128) -> CVec {
        match self {
            Observable::Trig(c) => {
                CVec::new(c.iter().map(|p| p.eval(x)).collect()).expect("nonempty")
            }
            Observable::Step { dim, pieces } => pieces
                .iter()
                .find(|(arc, _)| arc.contains(x))
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| CVec::zeros(*dim)),
        }
    }

    pub fn eval_f64(&self, x: f64) -> CVec {
        self.eval(Frac128::from_f64(x))
    }

    /// `int_0^1 f(x) dx`.
    pub fn integral(&self) -> CVec {
        match self {
            Observable::Trig(c) => {
                CVec::new(c.iter().map(|p| p.coeff(0)).collect()).expect("nonempty")
            }
            Observable::Step { dim, pieces } => {
                let mut acc = CVec::zeros(*dim);
                for (arc, v) in pieces {
                    acc.add_scaled(Complex64::new(arc.measure(), 0.0), v).expect("dims checked");
                }
                acc
            }
        }
    }

    /// Every coordinate has zero mean.
    pub fn is_mean_zero(&self) -> bool {
        match self {
            Observable::Trig(c) => c.iter().all(|p| p.coeff(0) == Complex64::default()),
            Observable::Step { .. } => self.integral().norm() == 0.0,
        }
    }

    /// `int_0^1 ||f(x)|| dx`.
    ///
    /// Exact for step observables and for trigonometric observables whose
    /// coordinates are single monomials (then `||f||` is constant). Other
    /// trigonometric observables use a periodic midpoint rule on
    /// `2^16` nodes.
    pub fn l1_norm(&self) -> f64 {
        match self {
            Observable::Step { pieces, .. } => {
                pieces.iter().map(|(arc, v)| arc.measure() * v.norm()).sum()
            }
            Observable::Trig(c) => {
                if c.iter().all(|p| p.terms().len() <= 1) {
                    return c
                        .iter()
                        .map(|p| p.terms().first().map_or(0.0, |t| t.1.norm_sqr()))
                        .sum::<f64>()
                        .sqrt();
                }
                let n = NORM_QUADRATURE_POINTS;
                let step = Frac128::from_ratio(1, n as u128);
                let start = Frac128::from_ratio(1, 2 * n as u128);
                (0..n)
                    .map(|i| self.eval(start.add(step.mul_uint(i as u128))).norm())
                    .sum::<f64>()
                    / n as f64
            }
        }
    }

    /// `sup_x ||f(x)||`, or an upper bound via `sum |c_j|` per coordinate for
    /// trigonometric observables.
    pub fn sup_norm_bound(&self) -> f64 {
        match self {
            Observable::Step { pieces, .. } => {
                pieces.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max)
            }
            Observable::Trig(c) => c
                .iter()
                .map(|p| p.terms().iter().map(|t| t.1.norm()).sum::<f64>().powi(2))
                .sum::<f64>()
                .sqrt(),
        }
    }
}
