//! Numerical laboratory for uniform Wiener-Wintner-type averages.
//!
//! The crate generates pointwise orbits `(T^n f(x))_n` for concrete
//! operators on `L^1([0,1]; C^d)`, evaluates twisted averages
//! `(1/N) sum T^n f(x) lambda^n` with certified suprema over the circle,
//! bounds adversarially weighted averages over bounded-variation weight
//! classes from both sides, and runs finite-horizon mixing diagnostics.
//!
//! Module map:
//!
//! * [`numeric`], [`sequence`]: vectors in `C^d`, orbit prefixes, Cesàro
//!   functionals and partial sums.
//! * [`systems`]: exact fixed-point rotations, Bernoulli-shift orbits,
//!   trigonometric and step observables.
//! * [`operators`]: Koopman, multiplication and weighted-composition
//!   operators, plus the exact dyadic step-function operators.
//! * [`twisted`]: twisted averages and the grid certificate for the
//!   supremum over `lambda`.
//! * [`weights`]: membership tests, witnesses, brute force and
//!   summation-by-parts bounds for the weight classes.
//! * [`diagnostics`]: mixing profiles, IP-set probes, Cesàro-boundedness
//!   ratios and the exact dyadic Cesàro table.

pub mod diagnostics;
pub mod error;
pub mod numeric;
pub mod operators;
pub mod sequence;
pub mod systems;
pub mod twisted;
pub mod weights;

pub use error::{Error, Result};
pub use numeric::{CMat, CVec, Exactness};
pub use sequence::{cesaro_norm, dist_to_bounded, partial_sums, OrbitSeq, PartialSumProfile, Provenance};
