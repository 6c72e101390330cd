//! Scenario configuration and name resolution.
//!
//! A config names a registered scenario and optionally overrides its
//! defaults. Every name is resolved before any computation starts; options
//! the scenario does not read are rejected rather than ignored.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use wwlab_core::operators::{DyadicVariant, MapSpec, Multiplier, OperatorSpec, PointState};
use wwlab_core::systems::{Arc, BernoulliState, Frac128, Observable, TrigPoly};
use wwlab_core::weights::WeightClass;
use wwlab_core::CVec;

use crate::error::CliError;

/// Bits of the doubling-map state materialised per point.
pub const DOUBLING_PRECISION: u32 = 64;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arithmetic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
}

/// Scenario-specific knobs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assert_upper: Option<f64>,
}

impl Params {
    /// Names of the keys that are set.
    pub fn keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut push = |set: bool, k: &'static str| {
            if set {
                keys.push(k)
            }
        };
        push(self.instances.is_some(), "instances");
        push(self.max_n.is_some(), "max_n");
        push(self.deltas.is_some(), "deltas");
        push(self.delta_exponent.is_some(), "delta_exponent");
        push(self.alphabet.is_some(), "alphabet");
        push(self.lambda_grid.is_some(), "lambda_grid");
        push(self.m_max.is_some(), "m_max");
        push(self.h_max.is_some(), "h_max");
        push(self.mc_samples.is_some(), "mc_samples");
        push(self.generators.is_some(), "generators");
        push(self.depth.is_some(), "depth");
        push(self.assert_upper.is_some(), "assert_upper");
        keys
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn named(name: &str) -> Self {
        Config {
            name: name.to_string(),
            ..Config::default()
        }
    }

    /// Canonical TOML text; hashed into the manifest.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn params(&self) -> Params {
        self.params.clone().unwrap_or_default()
    }
}

pub const OPERATORS: &[&str] = &[
    "koopman-identity",
    "koopman-rotation",
    "koopman-doubling",
    "m-e",
    "twisted-u",
    "noncontractive-s",
    "mult-koopman-rotation",
    "dyadic-t",
    "dyadic-s",
];

pub const OBSERVABLES: &[&str] = &["exp", "trig-random", "upper-half"];

pub const ARITHMETIC: &[&str] = &["fixed128", "float64", "exact-rational"];

pub fn parse_alpha(s: &str) -> Result<Frac128, CliError> {
    match s {
        "sqrt2-1" => Ok(Frac128::sqrt2_minus_1()),
        "golden" => Ok(Frac128::golden()),
        _ => match s.parse::<f64>() {
            Ok(x) if (0.0..1.0).contains(&x) => Ok(Frac128::from_f64(x)),
            _ => Err(CliError::Config(format!(
                "alpha must be sqrt2-1, golden or a number in [0, 1), got {s:?}"
            ))),
        },
    }
}

/// Operator by registered name.
pub fn operator(name: &str, alpha: Frac128) -> Result<OperatorSpec, CliError> {
    Ok(match name {
        "koopman-identity" => OperatorSpec::Koopman(MapSpec::Identity),
        "koopman-rotation" => OperatorSpec::Koopman(MapSpec::Rotation { alpha }),
        "koopman-doubling" => OperatorSpec::Koopman(MapSpec::Doubling {
            precision_bits: DOUBLING_PRECISION,
        }),
        "m-e" => OperatorSpec::m_e(),
        "twisted-u" => OperatorSpec::TwistedU { alpha },
        "noncontractive-s" => OperatorSpec::non_contractive_s(alpha).map_err(|e| CliError::Config(e.to_string()))?,
        "mult-koopman-rotation" => OperatorSpec::MultKoopman {
            multiplier: Multiplier::Rotation2 { radius: 1.0, freq: 1 },
            bound: 1.0,
            map: MapSpec::Rotation { alpha },
        },
        "dyadic-t" => OperatorSpec::DyadicT,
        "dyadic-s" => OperatorSpec::DyadicS,
        _ => return Err(CliError::Config(format!("unknown operator {name:?}; known: {}", OPERATORS.join(", ")))),
    })
}

pub fn dyadic_variant(name: &str) -> Option<DyadicVariant> {
    match name {
        "dyadic-t" => Some(DyadicVariant::T),
        "dyadic-s" => Some(DyadicVariant::S),
        _ => None,
    }
}

/// Starting point for seed `s`: a Bernoulli state for the doubling map,
/// otherwise a circle point drawn from the same seed.
pub fn start_point(op_name: &str, seed: u64) -> PointState {
    let state = BernoulliState::seeded(seed);
    if op_name == "koopman-doubling" {
        PointState::Bits(state)
    } else {
        PointState::Circle(state.point(128))
    }
}

/// Observable by registered name. `trig-random` draws a two-dimensional
/// trigonometric polynomial of degree 4 from `seed`.
pub fn observable(name: &str, seed: u64) -> Result<Observable, CliError> {
    use rand::{Rng, SeedableRng};
    Ok(match name {
        "exp" => Observable::exp(),
        "upper-half" => Observable::indicator(Arc::new(Frac128::HALF, 1u128 << 127), CVec::real(&[1.0]))
            .map_err(|e| CliError::Config(e.to_string()))?,
        "trig-random" => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let coords = (0..2)
                .map(|_| {
                    TrigPoly::new((-4i64..=4).map(|j| {
                        let re = rng.random::<f64>() * 2.0 - 1.0;
                        let im = rng.random::<f64>() * 2.0 - 1.0;
                        (j, Complex64::new(re, im))
                    }))
                })
                .collect();
            Observable::trig(coords).map_err(|e| CliError::Config(e.to_string()))?
        }
        _ => {
            return Err(CliError::Config(format!(
                "unknown observable {name:?}; known: {}",
                OBSERVABLES.join(", ")
            )))
        }
    })
}

pub fn weight_class(name: &str) -> Result<WeightClass, CliError> {
    name.parse::<WeightClass>()
        .map_err(|_| CliError::Config(format!("unknown weight class {name:?}; known: I, C")))
}
