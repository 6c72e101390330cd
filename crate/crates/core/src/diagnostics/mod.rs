//! Finite-horizon mixing diagnostics.
//!
//! Correlations `<T^h f, g>` are exact for trigonometric observables under
//! rotations, the doubling map and character multipliers, and sampled
//! otherwise. Mild mixing is only probed along user-supplied finite-sums
//! sets; it is not decidable from finitely many pairings.

mod dyadic_table;
mod pacb;
mod pairings;
mod profile;

pub use dyadic_table::{
    b_count, cesaro_rationals, dyadic_average, dyadic_mean_ergodicity, dyadic_pairings_direct, in_b, DyadicRow,
    MAX_TABLE_M,
};
pub use pacb::{pacb_ratio, PacbReport};
pub use pairings::{exact_pairing_at, pairing_sequence, McOptions, PairingSeq, MC_SAMPLES};
pub use profile::{
    dyadic_horizons, mild_mixing_probe, mixing_profile, FSSet, MixingProfile, ProbeResult, ProfileRow,
    MIN_PROFILE_HORIZON, PROBE_SAMPLED_HORIZON,
};
