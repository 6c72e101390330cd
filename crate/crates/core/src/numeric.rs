//! Complex coordinate vectors and small dense matrices.
//!
//! The vector space is `C^d` with the Euclidean norm. Dimensions are fixed
//! per experiment, so every binary operation checks that both operands agree.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Arithmetic model used to produce a sequence of values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// Big-integer rationals; no rounding anywhere.
    ExactRational,
    /// Points and phases are exact 128-bit binary fractions; only the final
    /// `e(t)` evaluation rounds.
    FixedPoint128,
    /// IEEE double precision throughout.
    Float64,
}

impl Exactness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Exactness::ExactRational => "exact-rational",
            Exactness::FixedPoint128 => "fixed-point-128",
            Exactness::Float64 => "float64",
        }
    }

    /// The weaker of two models (an exact operand combined with a float
    /// operand yields a float result).
    pub fn meet(self, other: Exactness) -> Exactness {
        use Exactness::*;
        match (self, other) {
            (Float64, _) | (_, Float64) => Float64,
            (FixedPoint128, _) | (_, FixedPoint128) => FixedPoint128,
            _ => ExactRational,
        }
    }
}

impl std::str::FromStr for Exactness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-rational" => Ok(Exactness::ExactRational),
            "fixed-point-128" => Ok(Exactness::FixedPoint128),
            "float64" => Ok(Exactness::Float64),
            other => Err(Error::contract(format!("unknown arithmetic model `{other}`"))),
        }
    }
}

/// An element of `C^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CVec(Vec<Complex64>);

impl CVec {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::contract("CVec must have dimension at least 1"));
        }
        Ok(CVec(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "CVec dimension must be at least 1");
        CVec(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn scalar(z: Complex64) -> Self {
        CVec(vec![z])
    }

    pub fn real(xs: &[f64]) -> Self {
        assert!(!xs.is_empty(), "CVec dimension must be at least 1");
        CVec(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_dim(&self, other: &CVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CVec) -> Result<CVec> {
        self.check_dim(other)?;
        Ok(CVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &CVec) -> Result<CVec> {
        self.check_dim(other)?;
        Ok(CVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Complex64, other: &CVec) -> Result<()> {
        self.check_dim(other)?;
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> CVec {
        CVec(self.0.iter().map(|z| z * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> CVec {
        CVec(self.0.iter().map(|z| z * s).collect())
    }

    /// Hermitian pairing `<self, other> = sum_i self_i * conj(other_i)`.
    pub fn inner(&self, other: &CVec) -> Result<Complex64> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum())
    }

    /// Radial clip onto the closed ball of radius `m`.
    pub fn clip(&self, m: f64) -> CVec {
        let n = self.norm();
        if n <= m {
            self.clone()
        } else {
            self.scale_real(m / n)
        }
    }
}

impl fmt::Display for CVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{:+}i", z.re, z.im)?;
        }
        write!(f, ")")
    }
}

/// A `d x d` complex matrix, used for operator-valued multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat(DMatrix<Complex64>);

impl CMat {
    pub fn identity(dim: usize) -> Self {
        CMat(DMatrix::identity(dim, dim))
    }

    pub fn scalar(dim: usize, z: Complex64) -> Self {
        CMat(DMatrix::from_diagonal_element(dim, dim, z))
    }

    /// Row-major construction.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(CMat(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        CMat(&self.0 * &other.0)
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        let out = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)] * v.0[j]).sum())
            .collect();
        Ok(CVec(out))
    }

    /// Operator norm induced by the Euclidean norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        self.0
            .singular_values()
            .iter()
            .cloned()
            .fold(0.0_f64, f64::max)
    }
}
