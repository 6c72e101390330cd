//! Registered scenarios.
//!
//! Each scenario reads a resolved [`Plan`] and returns tables, optional
//! bounds and an optional pass/fail check. Work across seeds runs in
//! parallel and is merged in seed order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use wwlab_core::diagnostics::{
    cesaro_rationals, dyadic_average, dyadic_mean_ergodicity, dyadic_pairings_direct, mild_mixing_probe,
    mixing_profile, pacb_ratio, FSSet, McOptions, MAX_TABLE_M,
};
use wwlab_core::operators::{orbit_values, OperatorSpec, PointState};
use wwlab_core::systems::{convergent_denominators, Arc, Frac128, Observable, TrigPoly};
use wwlab_core::twisted::{decay_profile, refine_sup, sup_over_circle, twisted_average};
use wwlab_core::weights::{
    abel_upper_bound, brute_force_small, check_r, max_blocks, witness_search, RParams, WeightClass, WeightSeq,
    WitnessOptions, BRUTE_FORCE_MAX_N,
};
use wwlab_core::{CVec, Exactness, OrbitSeq, Provenance};

use crate::config::{self, Config, Params};
use crate::error::CliError;
use crate::output::{num, Bound, Table};

/// Longest orbit any scenario will materialise.
pub const MAX_HORIZON: usize = 1 << 22;

pub struct ScenarioInfo {
    pub name: &'static str,
    /// The statement the scenario exercises.
    pub claim: &'static str,
    pub summary: &'static str,
    /// Accepted operator names; empty when the operators are fixed.
    pub operators: &'static [&'static str],
    pub default_ops: &'static [&'static str],
    pub uses_alpha: bool,
    pub observables: &'static [&'static str],
    pub classes: &'static [&'static str],
    /// First entry is the default.
    pub arithmetic: &'static [&'static str],
    pub checkpoints: Option<&'static [usize]>,
    /// Default seeds are `0..seeds`; zero means unseeded.
    pub seeds: u64,
    pub params: &'static [&'static str],
    run: fn(&Plan) -> Result<Report, CliError>,
}

pub struct Plan {
    pub info: &'static ScenarioInfo,
    pub operators: Vec<String>,
    pub alpha: Frac128,
    pub observable: String,
    pub class: Option<WeightClass>,
    pub checkpoints: Vec<usize>,
    pub seeds: Vec<u64>,
    pub arithmetic: String,
    pub params: Params,
}

pub struct Check {
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
pub struct Report {
    pub tables: Vec<Table>,
    pub bounds: Option<Vec<Bound>>,
    pub check: Option<Check>,
    pub summary: Vec<String>,
}

const DYADIC_CHECKPOINTS: &[usize] = &[1 << 8, 1 << 10, 1 << 12, 1 << 14, 1 << 16];

pub static SCENARIOS: &[ScenarioInfo] = &[
    ScenarioInfo {
        name: "ww-me-counterexample",
        claim: "Introduction: M_e f(x) = e(x) f(x) is a contraction on every L^p for which the twisted averages at lambda_x = e(-x) equal f(x), so the uniform Wiener-Wintner conclusion fails without the paCb hypothesis",
        summary: "A_N(e(-x)) = f(x) for M_e on random trigonometric polynomials; column err must stay below 1e-9",
        operators: &["m-e"],
        default_ops: &["m-e"],
        uses_alpha: false,
        observables: &["trig-random", "exp"],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(&[10, 100, 10_000]),
        seeds: 8,
        params: &[],
        run: me_counterexample,
    },
    ScenarioInfo {
        name: "ualpha-polynomial",
        claim: "Section 2.6: U_alpha f(x) = e(x) f(x + alpha) is spaCb and strongly mixing, yet (1/N) sum U_alpha^n f(x) e(p_x(n)) = 1 for a polynomial p_x, so spaCb does not give polynomial Wiener-Wintner theorems",
        summary: "polynomially twisted averages of U_alpha on e(x) stay at 1 within 1e-6",
        operators: &["twisted-u"],
        default_ops: &["twisted-u"],
        uses_alpha: true,
        observables: &["exp"],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(&[10, 100, 1000, 10_000, 100_000]),
        seeds: 16,
        params: &[],
        run: ualpha_polynomial,
    },
    ScenarioInfo {
        name: "dyadic-not-mean-ergodic",
        claim: "Example 2.4(vii): the paCb contractions T and S on L^1[0,1] are not mean ergodic; their Cesaro averages of <R^n f, g> oscillate between 1/3 and 1/6",
        summary: "exact rational table of Cesaro averages at N = 2^{2m+1} and 2^{2m+2}, cross-checked against materialised iterates",
        operators: &["dyadic-s", "dyadic-t"],
        default_ops: &["dyadic-s"],
        uses_alpha: false,
        observables: &[],
        classes: &[],
        arithmetic: &["exact-rational"],
        checkpoints: None,
        seeds: 0,
        params: &["m_max"],
        run: dyadic_table,
    },
    ScenarioInfo {
        name: "ww-doubling",
        claim: "Theorem 1.6: for a spaCb operator and weakly mixing f, sup over lambda of the twisted averages tends to 0 for a.e. x",
        summary: "certified sup over the circle of the twisted averages of e(x) along doubling-map orbits; medians over seeds must decrease",
        operators: &["koopman-doubling", "koopman-rotation"],
        default_ops: &["koopman-doubling"],
        uses_alpha: true,
        observables: &["exp", "trig-random"],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(DYADIC_CHECKPOINTS),
        seeds: 32,
        params: &[],
        run: ww_doubling,
    },
    ScenarioInfo {
        name: "ww-rotation-control",
        claim: "Theorem 1.6 (necessity of weak mixing): for an irrational rotation e(x) is an eigenfunction and the supremum over lambda stays at 1",
        summary: "refined lower witness of the sup over the circle stays at 1 - 1e-9 or above along a rotation orbit",
        operators: &["koopman-rotation"],
        default_ops: &["koopman-rotation"],
        uses_alpha: true,
        observables: &["exp"],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(DYADIC_CHECKPOINTS),
        seeds: 1,
        params: &[],
        run: rotation_control,
    },
    ScenarioInfo {
        name: "certificate-soundness",
        claim: "Theorem 1.6 machinery: the grid certificate brackets sup over the circle of ||(1/N) sum v_n lambda^n|| between the grid maximum and grid_max / (1 - pi N / M)",
        summary: "random sequences; a dense 64N-point oracle must land inside [grid_max, certified_upper] with M = 8N",
        operators: &[],
        default_ops: &[],
        uses_alpha: false,
        observables: &[],
        classes: &[],
        arithmetic: &["float64"],
        checkpoints: None,
        seeds: 1,
        params: &["instances", "max_n"],
        run: certificate_soundness,
    },
    ScenarioInfo {
        name: "iclass-sandwich",
        claim: "Theorem 1.7 / Theorem 3.3 machinery: witness value <= exact alphabet optimum + rounding slack <= summation-by-parts bound over I(N, delta)",
        summary: "block witness, brute force over q-th roots of unity and the Abel bound on random small instances",
        operators: &[],
        default_ops: &[],
        uses_alpha: false,
        observables: &[],
        classes: &["I", "C"],
        arithmetic: &["float64"],
        checkpoints: None,
        seeds: 1,
        params: &["instances", "max_n", "deltas", "alphabet"],
        run: sandwich,
    },
    ScenarioInfo {
        name: "iclass-decay",
        claim: "Theorem 1.7 / Theorem 3.3: for ergodic f and delta_N -> 0, the sup of ||(1/N) sum T^n f(x) c_n|| over I(N, delta_N) tends to 0",
        summary: "feasible witness (lower) and Abel bound (upper) on the class supremum along a Bernoulli orbit with delta_N = N^-p",
        operators: &["koopman-doubling", "koopman-rotation"],
        default_ops: &["koopman-doubling"],
        uses_alpha: true,
        observables: &["exp"],
        classes: &["I", "C"],
        arithmetic: &["fixed128"],
        checkpoints: Some(DYADIC_CHECKPOINTS),
        seeds: 1,
        params: &["delta_exponent", "lambda_grid", "assert_upper"],
        run: iclass_decay,
    },
    ScenarioInfo {
        name: "cclass-witness",
        claim: "Theorem 3.4: for almost weakly mixing sequences the sup over C(N, delta_N) = { lambda^n c_n : c in I(N, delta_N) } tends to 0; a rotation orbit is a non-example",
        summary: "class-C witness search over a lambda grid with the certified-sup Abel bound, for doubling and rotation orbits",
        operators: &["koopman-doubling", "koopman-rotation"],
        default_ops: &["koopman-doubling", "koopman-rotation"],
        uses_alpha: true,
        observables: &["exp"],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(&[64, 128, 256, 512]),
        seeds: 1,
        params: &["delta_exponent", "lambda_grid"],
        run: cclass_witness,
    },
    ScenarioInfo {
        name: "rclass-membership",
        claim: "Theorem 3.6: membership in R(lambda, N, delta, K) for summable delta_w and shift rows K drawn from a finite-sums set",
        summary: "exact R-class membership of constant, geometric and iid-phase weights, with the first failing row",
        operators: &[],
        default_ops: &[],
        uses_alpha: true,
        observables: &[],
        classes: &[],
        arithmetic: &["float64"],
        checkpoints: Some(&[16, 64, 256, 1024]),
        seeds: 1,
        params: &["delta_exponent", "generators", "depth"],
        run: rclass_membership,
    },
    ScenarioInfo {
        name: "pacb-ratios",
        claim: "Example 2.4(ii), (iv), (ix): M_e is not paCb (ratios grow like 2^k on indicators of [0, 2^-k)), while contractive M_F T_phi over a rotation and the noncontractive S are",
        summary: "empirical absolute-Cesaro ratios (1/N) sum ||T^n f(x)|| / ||f||_1 over observable families",
        operators: &[],
        default_ops: &[],
        uses_alpha: true,
        observables: &[],
        classes: &[],
        arithmetic: &["fixed128"],
        checkpoints: Some(&[1 << 14]),
        seeds: 32,
        params: &[],
        run: pacb,
    },
    ScenarioInfo {
        name: "mixing-profiles",
        claim: "Theorem 3.2 hypotheses: ergodic, weakly mixing and strongly mixing f are detected by the Cesaro behaviour of <T^h f, f>",
        summary: "profiles H, ergodic_avg_re, ergodic_avg_im, abs_avg, tail_sup on dyadic horizons, exact where closed forms exist",
        operators: &["koopman-doubling", "koopman-rotation", "twisted-u", "m-e", "mult-koopman-rotation", "noncontractive-s"],
        default_ops: &["koopman-doubling", "koopman-rotation"],
        uses_alpha: true,
        observables: &["exp", "trig-random"],
        classes: &[],
        arithmetic: &["float64"],
        checkpoints: None,
        seeds: 1,
        params: &["h_max", "mc_samples"],
        run: mixing_profiles,
    },
    ScenarioInfo {
        name: "mild-mixing-probe",
        claim: "Theorem 3.2(iii) and Theorem 3.6 hypothesis: mild mixing forbids rigidity along IP-sets; probed as max |<T^h f, f>| over a finite-sums set",
        summary: "max over FS(generators) of |<T^h f, f>|; defaults use the continued-fraction denominators of alpha",
        operators: &["koopman-doubling", "koopman-rotation", "twisted-u", "m-e"],
        default_ops: &["koopman-doubling", "koopman-rotation"],
        uses_alpha: true,
        observables: &["exp", "trig-random"],
        classes: &[],
        arithmetic: &["float64"],
        checkpoints: None,
        seeds: 1,
        params: &["generators", "depth", "mc_samples"],
        run: mild_mixing,
    },
];

pub fn find(name: &str) -> Option<&'static ScenarioInfo> {
    SCENARIOS.iter().find(|s| s.name == name)
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Checks every name and option against the registry. No computation
/// happens before this returns.
pub fn resolve(cfg: &Config) -> Result<Plan, CliError> {
    let info = find(&cfg.name).ok_or_else(|| {
        let names: Vec<&str> = SCENARIOS.iter().map(|s| s.name).collect();
        config_err(format!("unknown scenario {:?}; known: {}", cfg.name, names.join(", ")))
    })?;

    let operators: Vec<String> = match &cfg.operator {
        Some(op) if info.operators.contains(&op.as_str()) => vec![op.clone()],
        Some(op) if info.operators.is_empty() => {
            return Err(config_err(format!("{} does not take an operator (got {op:?})", info.name)))
        }
        Some(op) if !config::OPERATORS.contains(&op.as_str()) => {
            return Err(config_err(format!(
                "unknown operator {op:?}; known: {}",
                config::OPERATORS.join(", ")
            )))
        }
        Some(op) => {
            return Err(config_err(format!(
                "operator {op:?} not accepted by {}; accepted: {}",
                info.name,
                info.operators.join(", ")
            )));
        }
        None => info.default_ops.iter().map(|s| s.to_string()).collect(),
    };

    let alpha = match (&cfg.alpha, info.uses_alpha) {
        (Some(a), true) => config::parse_alpha(a)?,
        (Some(_), false) => return Err(config_err(format!("{} does not take alpha", info.name))),
        (None, _) => Frac128::sqrt2_minus_1(),
    };

    let observable = match &cfg.observable {
        Some(o) if info.observables.contains(&o.as_str()) => o.clone(),
        Some(o) => {
            return Err(config_err(format!(
                "observable {o:?} not accepted by {}; accepted: {}",
                info.name,
                if info.observables.is_empty() { "none".to_string() } else { info.observables.join(", ") }
            )))
        }
        None => info.observables.first().map(|s| s.to_string()).unwrap_or_default(),
    };

    let class = match &cfg.weight_class {
        Some(c) if info.classes.iter().any(|k| k.eq_ignore_ascii_case(c)) => Some(config::weight_class(c)?),
        Some(c) => return Err(config_err(format!("weight class {c:?} not accepted by {}", info.name))),
        None => info.classes.first().map(|c| config::weight_class(c)).transpose()?,
    };

    let arithmetic = match &cfg.arithmetic {
        Some(a) if info.arithmetic.contains(&a.as_str()) => a.clone(),
        Some(a) => {
            return Err(config_err(format!(
                "arithmetic {a:?} not accepted by {}; accepted: {} (known models: {})",
                info.name,
                info.arithmetic.join(", "),
                config::ARITHMETIC.join(", ")
            )))
        }
        None => info.arithmetic[0].to_string(),
    };

    let checkpoints = match (&cfg.checkpoints, info.checkpoints) {
        (Some(_), None) => return Err(config_err(format!("{} does not take checkpoints", info.name))),
        (Some(c), Some(_)) => c.clone(),
        (None, Some(d)) => d.to_vec(),
        (None, None) => Vec::new(),
    };
    if info.checkpoints.is_some() {
        if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(config_err("checkpoints must be positive and strictly increasing"));
        }
        if *checkpoints.last().unwrap() > MAX_HORIZON {
            return Err(CliError::Resource(format!("checkpoint beyond the horizon cap {MAX_HORIZON}")));
        }
    }

    let seeds = match (&cfg.seeds, info.seeds) {
        (Some(_), 0) => return Err(config_err(format!("{} is not seeded", info.name))),
        (Some(s), _) if s.is_empty() => return Err(config_err("seeds must be non-empty")),
        (Some(s), _) => s.clone(),
        (None, k) => (0..k).collect(),
    };

    let params = cfg.params();
    if let Some(k) = params.keys().into_iter().find(|k| !info.params.contains(k)) {
        return Err(config_err(format!(
            "parameter {k:?} not accepted by {}; accepted: {}",
            info.name,
            if info.params.is_empty() { "none".to_string() } else { info.params.join(", ") }
        )));
    }
    check_params(info, &params)?;

    // Operator and observable must fit together.
    for op_name in &operators {
        let op = config::operator(op_name, alpha)?;
        if !observable.is_empty() {
            let f = config::observable(&observable, 0)?;
            op.validate(f.dim(), &[Frac128::ZERO, Frac128::HALF])
                .map_err(|e| config_err(format!("{op_name} with {observable}: {e}")))?;
        }
    }

    Ok(Plan {
        info,
        operators,
        alpha,
        observable,
        class,
        checkpoints,
        seeds,
        arithmetic,
        params,
    })
}

fn check_params(info: &ScenarioInfo, p: &Params) -> Result<(), CliError> {
    if let Some(m) = p.m_max {
        if m == 0 || m > MAX_TABLE_M {
            return Err(CliError::Resource(format!("m_max must be in 1..={MAX_TABLE_M}")));
        }
    }
    if let Some(n) = p.max_n {
        if n == 0 {
            return Err(config_err("max_n must be positive"));
        }
        if info.name == "iclass-sandwich" && n > BRUTE_FORCE_MAX_N {
            return Err(CliError::Resource(format!("brute force is capped at N = {BRUTE_FORCE_MAX_N}")));
        }
        if n > MAX_HORIZON {
            return Err(CliError::Resource(format!("max_n beyond the horizon cap {MAX_HORIZON}")));
        }
    }
    if p.instances == Some(0) {
        return Err(config_err("instances must be positive"));
    }
    if let Some(d) = &p.deltas {
        if d.is_empty() || d.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(config_err("deltas must be positive"));
        }
    }
    if let Some(e) = p.delta_exponent {
        if !(e > 0.0 && e.is_finite()) {
            return Err(config_err("delta_exponent must be positive"));
        }
    }
    if p.alphabet == Some(0) || p.lambda_grid == Some(0) {
        return Err(config_err("alphabet and lambda_grid must be positive"));
    }
    if let Some(h) = p.h_max {
        if !(wwlab_core::diagnostics::MIN_PROFILE_HORIZON..=MAX_HORIZON).contains(&h) {
            return Err(config_err(format!(
                "h_max must be in {}..={MAX_HORIZON}",
                wwlab_core::diagnostics::MIN_PROFILE_HORIZON
            )));
        }
    }
    if let Some(g) = &p.generators {
        if g.is_empty() || g.contains(&0) {
            return Err(config_err("generators must be positive"));
        }
    }
    if p.depth == Some(0) {
        return Err(config_err("depth must be positive"));
    }
    Ok(())
}

impl Plan {
    pub fn run(&self) -> Result<Report, CliError> {
        (self.info.run)(self)
    }

    fn op(&self, name: &str) -> Result<OperatorSpec, CliError> {
        config::operator(name, self.alpha)
    }

    fn n_max(&self) -> usize {
        *self.checkpoints.last().expect("checkpoints resolved")
    }

    fn orbit(&self, op_name: &str, seed: u64, n: usize) -> Result<(PointState, Observable, OrbitSeq), CliError> {
        let op = self.op(op_name)?;
        let f = config::observable(&self.observable, seed)?;
        let x = config::start_point(op_name, seed);
        let orbit = orbit_values(&op, &f, &x, n)?;
        Ok((x, f, orbit))
    }

    /// Runs `f` for every seed in parallel, keeping seed order.
    fn per_seed<T: Send>(&self, f: impl Fn(u64) -> Result<T, CliError> + Sync) -> Result<Vec<T>, CliError> {
        self.seeds.par_iter().map(|&s| f(s)).collect()
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

fn complex_json(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

fn random_vectors(rng: &mut ChaCha8Rng, n: usize, d: usize) -> OrbitSeq {
    let values = (0..n)
        .map(|_| {
            CVec::new(
                (0..d)
                    .map(|_| Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
                    .collect(),
            )
            .expect("positive dimension")
        })
        .collect();
    OrbitSeq::new(values, Exactness::Float64, Provenance::new("random")).expect("non-empty")
}

fn me_counterexample(plan: &Plan) -> Result<Report, CliError> {
    const TOL: f64 = 1e-9;
    let rows = plan.per_seed(|seed| {
        let (x, f, orbit) = plan.orbit(&plan.operators[0], seed, plan.n_max())?;
        let PointState::Circle(xc) = x else { unreachable!("M_e starts on the circle") };
        let lambda = xc.neg().cis();
        let fx = f.eval(xc);
        plan.checkpoints
            .iter()
            .map(|&n| {
                let avg = twisted_average(&orbit, lambda, n)?;
                let err = avg.sub(&fx)?.norm();
                Ok((seed, xc.to_f64(), n, avg.norm(), fx.norm(), err))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let mut t = Table::new("twisted.csv", &["seed", "x", "N", "avg_norm", "fx_norm", "err"]);
    let mut worst = 0.0_f64;
    for (seed, x, n, a, fx, err) in rows.into_iter().flatten() {
        worst = worst.max(err);
        t.push(vec![seed.to_string(), num(x), n.to_string(), num(a), num(fx), num(err)]);
    }
    Ok(Report {
        tables: vec![t],
        summary: vec![format!("max |A_N(e(-x)) - f(x)| = {worst:.3e}")],
        check: Some(Check {
            passed: worst <= TOL,
            detail: format!("max err {worst:.3e} against tolerance {TOL:e}"),
        }),
        ..Report::default()
    })
}

fn ualpha_polynomial(plan: &Plan) -> Result<Report, CliError> {
    const TOL: f64 = 1e-6;
    let alpha = plan.alpha;
    let rows = plan.per_seed(|seed| {
        let (x, _, orbit) = plan.orbit(&plan.operators[0], seed, plan.n_max())?;
        let PointState::Circle(x) = x else { unreachable!("U_alpha starts on the circle") };
        // e(p_x(k)) with p_x(y) = -binom(y+1, 2) alpha - (y+1) x.
        let weight = |k: u128| alpha.mul_uint((k + 1) * k / 2).add(x.mul_uint(k + 1)).neg().cis();
        let mut sum = Complex64::default();
        let mut out = Vec::new();
        let mut next = 0;
        for (i, v) in orbit.values().iter().enumerate() {
            sum += v.coords()[0] * weight(i as u128 + 1);
            if i + 1 == plan.checkpoints[next] {
                let avg = sum / (i + 1) as f64;
                out.push((seed, x.to_f64(), i + 1, avg, (avg - 1.0).norm()));
                next += 1;
            }
        }
        Ok(out)
    })?;
    let mut t = Table::new("polynomial.csv", &["seed", "x", "N", "avg_re", "avg_im", "err"]);
    let mut worst = 0.0_f64;
    for (seed, x, n, avg, err) in rows.into_iter().flatten() {
        worst = worst.max(err);
        t.push(vec![seed.to_string(), num(x), n.to_string(), num(avg.re), num(avg.im), num(err)]);
    }
    Ok(Report {
        tables: vec![t],
        summary: vec![format!("max |average - 1| = {worst:.3e}")],
        check: Some(Check {
            passed: worst <= TOL,
            detail: format!("max err {worst:.3e} against tolerance {TOL:e}"),
        }),
        ..Report::default()
    })
}

fn dyadic_table(plan: &Plan) -> Result<Report, CliError> {
    use num_rational::BigRational;
    use num_traits::{Signed, ToPrimitive};

    let variant = config::dyadic_variant(&plan.operators[0]).expect("dyadic operator");
    let m_max = plan.params.m_max.unwrap_or(10);
    let rows = dyadic_mean_ergodicity(variant, m_max)?;
    let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
    let mut t = Table::new(
        "dyadic.csv",
        &[
            "m",
            "N_odd",
            "avg_odd",
            "avg_odd_f64",
            "N_even",
            "avg_even",
            "avg_even_f64",
            "avg_even_blocks",
        ],
    );
    let third = BigRational::new(1.into(), 3.into());
    let sixth = BigRational::new(1.into(), 6.into());
    let mut ok = true;
    for (i, r) in rows.iter().enumerate() {
        let tol = BigRational::new(1.into(), num_bigint::BigInt::from(4).pow(r.m));
        ok &= (&r.avg_odd - &third).abs() <= tol && (&r.avg_even - &sixth).abs() <= tol;
        if i > 0 {
            ok &= r.avg_odd > rows[i - 1].avg_odd && r.avg_even > rows[i - 1].avg_even;
        }
        t.push(vec![
            r.m.to_string(),
            r.n_odd.to_string(),
            r.avg_odd.to_string(),
            num(f(&r.avg_odd)),
            r.n_even.to_string(),
            r.avg_even.to_string(),
            num(f(&r.avg_even)),
            r.avg_even_blocks.to_string(),
        ]);
    }
    // Materialised iterates, as far as they are affordable.
    let direct_max: u64 = match variant {
        wwlab_core::operators::DyadicVariant::S => rows.last().map_or(1, |r| r.n_odd.min(1 << 11)),
        wwlab_core::operators::DyadicVariant::T => 12,
    };
    let direct = cesaro_rationals(&dyadic_pairings_direct(variant, direct_max)?);
    let agree = (1..=direct_max).all(|n| direct[n as usize - 1] == dyadic_average(n));
    Ok(Report {
        tables: vec![t],
        summary: vec![
            format!(
                "m = {}: avg(2^{}) = {}, avg(2^{}) = {}",
                m_max,
                2 * m_max + 1,
                rows.last().unwrap().avg_odd,
                2 * m_max + 2,
                rows.last().unwrap().avg_even
            ),
            format!("materialised iterates agree up to n = {direct_max}: {agree}"),
        ],
        check: Some(Check {
            passed: ok && agree,
            detail: format!("monotone within 4^-m of 1/3 and 1/6: {ok}; iterates agree: {agree}"),
        }),
        ..Report::default()
    })
}

fn ww_doubling(plan: &Plan) -> Result<Report, CliError> {
    let op_name = &plan.operators[0];
    let per_seed = plan.per_seed(|seed| {
        let (_, _, orbit) = plan.orbit(op_name, seed, plan.n_max())?;
        Ok(decay_profile(&orbit, &plan.checkpoints)?)
    })?;
    let mut t = Table::new("sup.csv", &["seed", "N", "grid_max", "grid_argmax", "certified_upper"]);
    let mut bounds = Vec::new();
    for (seed, certs) in plan.seeds.iter().zip(&per_seed) {
        for c in certs {
            t.push(vec![
                seed.to_string(),
                c.n.to_string(),
                num(c.grid_max),
                num(c.grid_argmax),
                num(c.certified_upper),
            ]);
            bounds.push(Bound {
                label: format!("seed={seed},N={}", c.n),
                lower: c.grid_max,
                upper: c.certified_upper,
                witness: json!({ "theta": c.grid_argmax }),
            });
        }
    }
    let mut s = Table::new("median.csv", &["N", "median_grid_max", "median_certified_upper"]);
    let mut medians = Vec::new();
    for (i, &n) in plan.checkpoints.iter().enumerate() {
        let lo = median(per_seed.iter().map(|r| r[i].grid_max).collect());
        let hi = median(per_seed.iter().map(|r| r[i].certified_upper).collect());
        medians.push(hi);
        s.push(vec![n.to_string(), num(lo), num(hi)]);
    }
    let decreasing = medians.windows(2).all(|w| w[1] < w[0]);
    Ok(Report {
        tables: vec![t, s],
        bounds: Some(bounds),
        summary: vec![format!(
            "{op_name}: median certified sup {}",
            medians.iter().map(|m| format!("{m:.4}")).collect::<Vec<_>>().join(", ")
        )],
        check: Some(Check {
            passed: decreasing,
            detail: format!("medians strictly decreasing along the checkpoints: {decreasing}"),
        }),
    })
}

fn rotation_control(plan: &Plan) -> Result<Report, CliError> {
    const TOL: f64 = 1e-9;
    let rows = plan.per_seed(|seed| {
        let (_, _, orbit) = plan.orbit(&plan.operators[0], seed, plan.n_max())?;
        plan.checkpoints
            .iter()
            .map(|&n| Ok((seed, sup_over_circle(&orbit, n, None)?, refine_sup(&orbit, n, None, 2)?)))
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let mut t = Table::new(
        "sup.csv",
        &["seed", "N", "grid_max", "refined_max", "refined_argmax", "certified_upper"],
    );
    let mut bounds = Vec::new();
    let mut worst = f64::INFINITY;
    for (seed, c, r) in rows.into_iter().flatten() {
        worst = worst.min(r.max);
        t.push(vec![
            seed.to_string(),
            c.n.to_string(),
            num(c.grid_max),
            num(r.max),
            num(r.argmax),
            num(c.certified_upper),
        ]);
        bounds.push(Bound {
            label: format!("seed={seed},N={}", c.n),
            lower: r.max,
            upper: c.certified_upper,
            witness: json!({ "theta": r.argmax }),
        });
    }
    Ok(Report {
        tables: vec![t],
        bounds: Some(bounds),
        summary: vec![format!("min refined sup = {worst:.12}")],
        check: Some(Check {
            passed: worst >= 1.0 - TOL,
            detail: format!("min refined sup {worst:.12} against 1 - {TOL:e}"),
        }),
    })
}

fn certificate_soundness(plan: &Plan) -> Result<Report, CliError> {
    let instances = plan.params.instances.unwrap_or(500);
    let max_n = plan.params.max_n.unwrap_or(256);
    let per_seed = plan.per_seed(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seqs: Vec<OrbitSeq> = (0..instances)
            .map(|_| {
                let n = rng.random_range(1..=max_n);
                let d = rng.random_range(1..=3usize);
                random_vectors(&mut rng, n, d)
            })
            .collect();
        seqs.iter()
            .map(|v| {
                let n = v.len();
                let cert = sup_over_circle(v, n, Some(8 * n))?;
                let dense = sup_over_circle(v, n, Some(64 * n))?.grid_max;
                Ok((n, v.dim(), cert, dense))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let mut t = Table::new(
        "soundness.csv",
        &["seed", "instance", "N", "d", "grid_max", "dense_max", "certified_upper", "ok"],
    );
    let mut bad = 0usize;
    for (seed, rows) in plan.seeds.iter().zip(per_seed) {
        for (i, (n, d, c, dense)) in rows.into_iter().enumerate() {
            let rel = 1e-10 * c.grid_max.max(1e-300);
            let ok = dense >= c.grid_max - rel && dense <= c.certified_upper + rel;
            bad += usize::from(!ok);
            t.push(vec![
                seed.to_string(),
                i.to_string(),
                n.to_string(),
                d.to_string(),
                num(c.grid_max),
                num(dense),
                num(c.certified_upper),
                ok.to_string(),
            ]);
        }
    }
    Ok(Report {
        summary: vec![format!("{bad} of {} instances outside the certificate", t.rows.len())],
        tables: vec![t],
        check: Some(Check {
            passed: bad == 0,
            detail: format!("{bad} violations"),
        }),
        ..Report::default()
    })
}

fn sandwich(plan: &Plan) -> Result<Report, CliError> {
    let class = plan.class.unwrap_or(WeightClass::I);
    let instances = plan.params.instances.unwrap_or(200);
    let max_n = plan.params.max_n.unwrap_or(BRUTE_FORCE_MAX_N);
    let deltas = plan.params.deltas.clone().unwrap_or_else(|| vec![0.1, 0.5, 2.0]);
    let q = plan.params.alphabet.unwrap_or(16);
    let per_seed = plan.per_seed(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inputs: Vec<(usize, OrbitSeq, f64)> = (0..instances)
            .map(|i| {
                let n = rng.random_range(1..=max_n);
                let d = if i % 2 == 0 { 1 } else { rng.random_range(1..=3usize) };
                (i, random_vectors(&mut rng, n, d), deltas[i % deltas.len()])
            })
            .collect();
        inputs
            .into_iter()
            .map(|(i, v, delta)| {
                let n = v.len();
                let k = max_blocks(n, delta);
                let w = witness_search(&v, n, delta, class, WitnessOptions { blocks: k, lambda_grid: None })?;
                let bf = brute_force_small(&v, n, delta, class, q)?;
                let ub = abel_upper_bound(&v, n, delta, class)?.upper;
                let mass = v.norms().iter().sum::<f64>() / n as f64;
                Ok((i, v.dim(), n, delta, w, bf, ub, mass))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let slack_of = |mass: f64| 2.0 * std::f64::consts::PI / q as f64 * mass;
    let mut t = Table::new(
        "sandwich.csv",
        &["seed", "instance", "N", "d", "delta", "witness", "brute_force", "slack", "abel_upper", "ok"],
    );
    let mut bounds = Vec::new();
    let mut bad = 0usize;
    for (seed, rows) in plan.seeds.iter().zip(per_seed) {
        for (i, d, n, delta, w, bf, ub, mass) in rows {
            let slack = slack_of(mass);
            let mut ok = w.value <= bf.value + slack && bf.value <= ub * (1.0 + 1e-12) && w.value <= ub * (1.0 + 1e-12);
            if class == WeightClass::I && delta >= 2.0 && d == 1 {
                ok &= (bf.value - mass).abs() <= slack && (w.value - mass).abs() <= slack;
            }
            bad += usize::from(!ok);
            t.push(vec![
                seed.to_string(),
                i.to_string(),
                n.to_string(),
                d.to_string(),
                num(delta),
                num(w.value),
                num(bf.value),
                num(slack),
                num(ub),
                ok.to_string(),
            ]);
            bounds.push(Bound {
                label: format!("seed={seed},instance={i}"),
                lower: bf.value,
                upper: ub,
                witness: json!({ "weights": bf.weights.coeffs().iter().map(|&z| complex_json(z)).collect::<Vec<_>>() }),
            });
        }
    }
    Ok(Report {
        summary: vec![format!("class {class:?}: {bad} of {} instances break the sandwich", t.rows.len())],
        tables: vec![t],
        bounds: Some(bounds),
        check: Some(Check {
            passed: bad == 0,
            detail: format!("{bad} violations"),
        }),
    })
}

struct DecayRow {
    op: String,
    seed: u64,
    n: usize,
    delta: f64,
    lower: f64,
    upper: f64,
    blocks: usize,
    lambda: Option<Complex64>,
}

fn class_decay(plan: &Plan, class: WeightClass, lambda_grid: Option<usize>) -> Result<Vec<DecayRow>, CliError> {
    let p = plan.params.delta_exponent.unwrap_or(0.25);
    let mut out = Vec::new();
    for op_name in &plan.operators {
        let rows = plan.per_seed(|seed| {
            let (_, _, orbit) = plan.orbit(op_name, seed, plan.n_max())?;
            plan.checkpoints
                .iter()
                .map(|&n| {
                    let delta = (n as f64).powf(-p);
                    let upper = abel_upper_bound(&orbit, n, delta, class)?.upper;
                    let k = max_blocks(n, delta);
                    let w = witness_search(&orbit, n, delta, class, WitnessOptions { blocks: k, lambda_grid })?;
                    Ok(DecayRow {
                        op: op_name.clone(),
                        seed,
                        n,
                        delta,
                        lower: w.value,
                        upper,
                        blocks: w.blocks.len(),
                        lambda: w.lambda,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()
        })?;
        out.extend(rows.into_iter().flatten());
    }
    Ok(out)
}

fn decay_tables(rows: &[DecayRow]) -> (Table, Vec<Bound>) {
    let mut t = Table::new(
        "bounds.csv",
        &["operator", "seed", "N", "delta", "witness_lower", "abel_upper", "blocks", "lambda_re", "lambda_im"],
    );
    let mut bounds = Vec::new();
    for r in rows {
        let (lre, lim) = r.lambda.map_or((String::new(), String::new()), |z| (num(z.re), num(z.im)));
        t.push(vec![
            r.op.clone(),
            r.seed.to_string(),
            r.n.to_string(),
            num(r.delta),
            num(r.lower),
            num(r.upper),
            r.blocks.to_string(),
            lre,
            lim,
        ]);
        bounds.push(Bound {
            label: format!("{},seed={},N={}", r.op, r.seed, r.n),
            lower: r.lower,
            upper: r.upper,
            witness: json!({
                "blocks": r.blocks,
                "lambda": r.lambda.map(complex_json),
            }),
        });
    }
    (t, bounds)
}

fn iclass_decay(plan: &Plan) -> Result<Report, CliError> {
    let class = plan.class.unwrap_or(WeightClass::I);
    let lambda_grid = match class {
        WeightClass::C => Some(plan.params.lambda_grid.unwrap_or(64)),
        WeightClass::I => plan.params.lambda_grid,
    };
    let rows = class_decay(plan, class, lambda_grid)?;
    let (t, bounds) = decay_tables(&rows);
    let uppers: Vec<f64> = plan
        .checkpoints
        .iter()
        .map(|&n| median(rows.iter().filter(|r| r.n == n).map(|r| r.upper).collect()))
        .collect();
    let summary = vec![format!(
        "median Abel bound along the checkpoints: {}",
        uppers.iter().map(|u| format!("{u:.4}")).collect::<Vec<_>>().join(", ")
    )];
    let check = plan.params.assert_upper.map(|limit| {
        let last = *uppers.last().unwrap();
        let decreasing = uppers.windows(2).all(|w| w[1] < w[0]);
        Check {
            passed: last <= limit && decreasing,
            detail: format!("final median bound {last:.4} against {limit}; decreasing: {decreasing}"),
        }
    });
    Ok(Report {
        tables: vec![t],
        bounds: Some(bounds),
        check,
        summary,
    })
}

fn cclass_witness(plan: &Plan) -> Result<Report, CliError> {
    let grid = plan.params.lambda_grid.unwrap_or(64);
    let rows = class_decay(plan, WeightClass::C, Some(grid))?;
    let (t, bounds) = decay_tables(&rows);
    let summary = plan
        .operators
        .iter()
        .map(|op| {
            let last: Vec<&DecayRow> = rows.iter().filter(|r| &r.op == op && r.n == plan.n_max()).collect();
            let lo = median(last.iter().map(|r| r.lower).collect());
            let hi = median(last.iter().map(|r| r.upper).collect());
            format!("{op}: class-C sup at N = {} in [{lo:.4}, {hi:.4}]", plan.n_max())
        })
        .collect();
    Ok(Report {
        tables: vec![t],
        bounds: Some(bounds),
        check: None,
        summary,
    })
}

fn rclass_membership(plan: &Plan) -> Result<Report, CliError> {
    let p = plan.params.delta_exponent.unwrap_or(2.0);
    let depth = plan.params.depth.unwrap_or(6);
    let generators = plan
        .params
        .generators
        .clone()
        .unwrap_or_else(|| convergent_denominators(plan.alpha, depth));
    let fs = FSSet::new(generators, depth.min(plan.params.generators.as_ref().map_or(depth, Vec::len)))?;
    let mu = plan.alpha.cis();
    let per_seed = plan.per_seed(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for &n in &plan.checkpoints {
            let iid: Vec<Complex64> = (0..n).map(|_| Frac128(rng.random()).cis()).collect();
            let seqs = [
                ("constant", WeightSeq::constant(n)),
                ("geometric", WeightSeq::geometric(mu, n)?),
                ("iid-phases", WeightSeq::new(iid)?),
            ];
            let shifts: Vec<usize> = fs.elements.iter().map(|&k| k as usize).filter(|&k| k < n).collect();
            let b: Vec<usize> = (1..=n).map(|w| w.min(8).min(shifts.len())).collect();
            for (label, c) in seqs {
                for lambda_label in ["one", "alpha"] {
                    let lambda = if lambda_label == "one" { Complex64::new(1.0, 0.0) } else { mu };
                    let params = RParams {
                        lambda,
                        delta: (1..=n).map(|w| (w as f64).powf(-p)).collect(),
                        k: b.iter().map(|&bw| shifts[..bw].to_vec()).collect(),
                        b: b.clone(),
                    };
                    let r = check_r(&c, &params)?;
                    let slack = r
                        .best_value
                        .iter()
                        .zip(&params.delta)
                        .map(|(v, d)| d - v)
                        .fold(f64::INFINITY, f64::min);
                    out.push((seed, n, label, lambda_label, r.member, r.first_failure, slack));
                }
            }
        }
        Ok(out)
    })?;
    let mut t = Table::new(
        "membership.csv",
        &["seed", "N", "sequence", "lambda", "member", "first_failure", "min_margin"],
    );
    let mut members = 0usize;
    for (seed, n, label, lambda, member, first, slack) in per_seed.into_iter().flatten() {
        members += usize::from(member);
        t.push(vec![
            seed.to_string(),
            n.to_string(),
            label.to_string(),
            lambda.to_string(),
            member.to_string(),
            first.map_or(String::new(), |w| w.to_string()),
            num(slack),
        ]);
    }
    Ok(Report {
        summary: vec![
            format!("shifts from FS({:?}), {} elements", &fs.generators[..fs.depth], fs.elements.len()),
            format!("{members} of {} sequences are members", t.rows.len()),
        ],
        tables: vec![t],
        ..Report::default()
    })
}

fn pacb(plan: &Plan) -> Result<Report, CliError> {
    let n = plan.n_max();
    let mut t = Table::new("ratios.csv", &["operator", "member", "ratio"]);

    // M_e on indicators of [0, 2^-k), sampled inside every support.
    let family: Vec<Observable> = (1..=16)
        .map(|k| Observable::indicator(Arc::dyadic_initial(k)?, CVec::real(&[1.0])))
        .collect::<Result<_, _>>()?;
    let inside: Vec<PointState> = (0..8u128)
        .map(|j| PointState::Circle(Frac128::from_ratio(2 * j + 1, 1 << 20)))
        .collect();
    let me = pacb_ratio(&OperatorSpec::m_e(), &family, &inside, n.min(1000))?;
    for (k, r) in me.per_member.iter().enumerate() {
        t.push(vec!["m-e".into(), format!("indicator-2^-{}", k + 1), num(*r)]);
    }
    let grows = me
        .per_member
        .iter()
        .enumerate()
        .all(|(i, r)| (r / 2f64.powi(i as i32 + 1) - 1.0).abs() < 1e-9);

    let samples: Vec<PointState> = plan.seeds.iter().map(|&s| config::start_point("koopman-rotation", s)).collect();
    let mut vec_family: Vec<Observable> = (1..=4)
        .map(|k| Observable::indicator(Arc::dyadic_initial(k)?, CVec::real(&[0.6, 0.8])))
        .collect::<Result<_, _>>()?;
    vec_family.push(Observable::trig(vec![
        TrigPoly::new([(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(0.5, 0.0))]),
        TrigPoly::monomial(-2, Complex64::new(0.0, 0.7)),
    ])?);
    let mk = pacb_ratio(&plan.op("mult-koopman-rotation")?, &vec_family, &samples, n)?;
    for (k, r) in mk.per_member.iter().enumerate() {
        t.push(vec!["mult-koopman-rotation".into(), format!("member-{k}"), num(*r)]);
    }

    let mut scalar_family: Vec<Observable> = (1..=4)
        .map(|k| Observable::indicator(Arc::dyadic_initial(k)?, CVec::real(&[1.0])))
        .collect::<Result<_, _>>()?;
    scalar_family.push(Observable::trig(vec![TrigPoly::new([
        (0, Complex64::new(1.0, 0.0)),
        (1, Complex64::new(0.4, 0.0)),
    ])])?);
    let s = pacb_ratio(&plan.op("noncontractive-s")?, &scalar_family, &samples, n)?;
    for (k, r) in s.per_member.iter().enumerate() {
        t.push(vec!["noncontractive-s".into(), format!("member-{k}"), num(*r)]);
    }

    let passed = grows && me.per_member[9..].iter().all(|&r| r > 1e3) && mk.ratio <= 1.1 && s.ratio <= 2.1;
    Ok(Report {
        tables: vec![t],
        summary: vec![format!(
            "M_e ratio at k = 16: {:.0}; mult-koopman-rotation max {:.4}; noncontractive-s max {:.4}",
            me.per_member[15], mk.ratio, s.ratio
        )],
        check: Some(Check {
            passed,
            detail: format!(
                "M_e ratios equal 2^k: {grows}; contractive max {:.4} (<= 1.1); noncontractive max {:.4} (<= 2.1)",
                mk.ratio, s.ratio
            ),
        }),
        ..Report::default()
    })
}

fn mixing_profiles(plan: &Plan) -> Result<Report, CliError> {
    let h_max = plan.params.h_max.unwrap_or(4096);
    let samples = plan.params.mc_samples.unwrap_or(McOptions::default().samples);
    let mut tables = Vec::new();
    let mut summary = Vec::new();
    for op_name in &plan.operators {
        let op = plan.op(op_name)?;
        let profiles = plan.per_seed(|seed| {
            let f = config::observable(&plan.observable, seed)?;
            Ok(mixing_profile(&op, &f, &f, h_max, McOptions { samples, seed })?)
        })?;
        for (seed, prof) in plan.seeds.iter().zip(profiles) {
            let mut t = Table::new(
                &format!("profile-{op_name}-seed{seed}.csv"),
                &["H", "ergodic_avg_re", "ergodic_avg_im", "abs_avg", "tail_sup"],
            );
            for r in prof.rows() {
                t.push(vec![
                    r.h.to_string(),
                    num(r.ergodic_avg_re),
                    num(r.ergodic_avg_im),
                    num(r.abs_avg),
                    num(r.tail_sup),
                ]);
            }
            let last = prof.horizons.len() - 1;
            summary.push(format!(
                "{op_name} seed {seed}: |ergodic avg| {:.3e}, abs avg {:.3e}, tail sup {:.3e} at H = {h_max} ({})",
                prof.ergodic_avg[last].norm(),
                prof.abs_avg[last],
                prof.tail_sup[last],
                if prof.exact { "exact".to_string() } else { format!("sampled, std error {:.1e}", prof.std_error) }
            ));
            tables.push(t);
        }
    }
    Ok(Report {
        tables,
        summary,
        ..Report::default()
    })
}

fn mild_mixing(plan: &Plan) -> Result<Report, CliError> {
    let depth = plan.params.depth.unwrap_or(8);
    let generators = plan
        .params
        .generators
        .clone()
        .unwrap_or_else(|| convergent_denominators(plan.alpha, depth));
    let fs = FSSet::new(generators, depth)?;
    let samples = plan.params.mc_samples.unwrap_or(McOptions::default().samples);
    let mut t = Table::new("probe.csv", &["operator", "seed", "fs_size", "max_abs_pairing", "argmax_h"]);
    let mut summary = Vec::new();
    for op_name in &plan.operators {
        let op = plan.op(op_name)?;
        let results = plan.per_seed(|seed| {
            let f = config::observable(&plan.observable, seed)?;
            Ok(mild_mixing_probe(&op, &f, &f, &fs, McOptions { samples, seed })?)
        })?;
        for (seed, r) in plan.seeds.iter().zip(results) {
            t.push(vec![
                op_name.clone(),
                seed.to_string(),
                fs.elements.len().to_string(),
                num(r.max),
                r.argmax.to_string(),
            ]);
            summary.push(format!("{op_name} seed {seed}: max |<T^h f, f>| = {:.4e} at h = {}", r.max, r.argmax));
        }
    }
    summary.insert(0, format!("FS({:?}), {} elements", &fs.generators[..fs.depth], fs.elements.len()));
    Ok(Report {
        tables: vec![t],
        summary,
        ..Report::default()
    })
}

/// Human-readable description for `describe`.
pub fn describe(info: &ScenarioInfo) -> String {
    let mut s = format!("{}\n\n  verifies: {}\n  computes: {}\n", info.name, info.claim, info.summary);
    let list = |xs: &[&str]| if xs.is_empty() { "fixed".to_string() } else { xs.join(", ") };
    s += &format!("\n  operator:     {} (default {})\n", list(info.operators), list(info.default_ops));
    if info.uses_alpha {
        s += "  alpha:        sqrt2-1 (default), golden, or a number in [0, 1)\n";
    }
    if !info.observables.is_empty() {
        s += &format!("  observable:   {} (default {})\n", info.observables.join(", "), info.observables[0]);
    }
    if !info.classes.is_empty() {
        s += &format!("  weight_class: {} (default {})\n", info.classes.join(", "), info.classes[0]);
    }
    s += &format!("  arithmetic:   {}\n", info.arithmetic.join(", "));
    if let Some(c) = info.checkpoints {
        s += &format!("  checkpoints:  {c:?}\n");
    }
    if info.seeds > 0 {
        s += &format!("  seeds:        0..{}\n", info.seeds);
    }
    if !info.params.is_empty() {
        s += &format!("  params:       {}\n", info.params.join(", "));
    }
    s
}
