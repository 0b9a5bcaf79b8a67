//! Implementations of the CLI subcommands.

use crate::jsonfmt::format_float;
use crate::statefile::{StateFile, TransformFile};
use crate::CliError;
use fermi_loss::entropy::EntropyFunctional;
use fermi_loss::measurement::basis_reports;
use fermi_loss::optimizer::{minimize, stationarity_residual, OptimizerConfig, Scope};
use fermi_loss::state::StateMatrix;
use fermi_loss::suites::{run_suite, Suite, SuiteReport};
use fermi_loss::{analytic, OddParityFourModeState};
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;

/// Seed fallback order: explicit flag, then the environment, then zero.
pub fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("FERMI_LOSS_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeReport {
    pub mode: usize,
    pub p_occupied: f64,
    pub p_empty: f64,
    pub entropy_mode: f64,
    pub entropy_conditional: f64,
    pub entropy_post: f64,
    pub loss: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LossReport {
    pub command: &'static str,
    pub entropy: String,
    pub scope: Scope,
    pub seed: u64,
    pub restarts: usize,
    pub optimized: bool,
    pub value: f64,
    pub entropy_prior: f64,
    pub converged: bool,
    pub iterations: usize,
    pub residual_sp: f64,
    pub residual_pair: f64,
    pub transform: TransformFile,
    pub modes: Vec<ModeReport>,
}

pub struct LossOptions {
    pub entropy: EntropyFunctional,
    pub scope: Scope,
    pub restarts: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Evaluate the loss at this transform instead of optimizing.
    pub eval_transform: Option<TransformFile>,
}

impl LossOptions {
    pub fn new(entropy: EntropyFunctional, scope: Scope) -> Self {
        let defaults = OptimizerConfig::new(scope);
        LossOptions {
            entropy,
            scope,
            restarts: defaults.restarts,
            tolerance: defaults.gradient_tolerance,
            max_iterations: defaults.max_iterations,
            seed: 0,
            eval_transform: None,
        }
    }
}

/// Minimize (or evaluate) the basis-summed information loss of a state.
pub fn run_loss(state: &StateFile, opts: &LossOptions) -> Result<LossReport, CliError> {
    let rho = state.build()?;
    run_loss_on_state(&rho, opts)
}

pub fn run_loss_on_state(
    rho: &StateMatrix,
    opts: &LossOptions,
) -> Result<LossReport, CliError> {
    let (value, transform, residual_sp, residual_pair, iterations, converged, optimized) =
        match &opts.eval_transform {
            Some(tf) => {
                let w = tf.to_transform()?;
                if w.n() != rho.space().n() {
                    return Err(CliError::Validation(format!(
                        "transform acts on {} modes, state has {}",
                        w.n(),
                        rho.space().n()
                    )));
                }
                let value = fermi_loss::measurement::basis_info_loss(rho, &w, &opts.entropy)?;
                let (r1, r2) = stationarity_residual(rho, &w, &opts.entropy)?;
                (value, w, r1, r2, 0, true, false)
            }
            None => {
                let cfg = OptimizerConfig::new(opts.scope)
                    .with_restarts(opts.restarts)
                    .with_seed(opts.seed)
                    .with_tolerance(opts.tolerance)
                    .with_max_iterations(opts.max_iterations);
                let result = minimize(rho, &opts.entropy, &cfg)?;
                (
                    result.value,
                    result.transform,
                    result.residual_sp,
                    result.residual_pair,
                    result.iterations,
                    result.converged,
                    true,
                )
            }
        };

    let reports = basis_reports(rho, &transform, &opts.entropy)?;
    let entropy_prior = reports.first().map_or(0.0, |r| r.entropy_prior);
    let modes = reports
        .iter()
        .map(|r| ModeReport {
            mode: r.mode,
            p_occupied: r.p_occupied,
            p_empty: r.p_empty,
            entropy_mode: r.entropy_mode,
            entropy_conditional: r.entropy_conditional,
            entropy_post: r.entropy_post,
            loss: r.loss,
        })
        .collect();

    Ok(LossReport {
        command: "loss",
        entropy: opts.entropy.to_string(),
        scope: opts.scope,
        seed: opts.seed,
        restarts: opts.restarts,
        optimized,
        value,
        entropy_prior,
        converged,
        iterations,
        residual_sp,
        residual_pair,
        transform: TransformFile::from_transform(&transform),
        modes,
    })
}

/// One row of the benchmark-curve table.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRow {
    pub w: f64,
    pub i_vn: f64,
    pub i_quad: f64,
    pub e_vn: f64,
    pub e_quad: f64,
    pub i_vn_norm: f64,
    pub i_quad_norm: f64,
    pub e_vn_norm: f64,
    pub e_quad_norm: f64,
    /// Optimizer deviations, present with --verify.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dev_i_vn: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dev_i_quad: Option<f64>,
}

/// The four-mode benchmark curves on a uniform w grid; with `verify`, the
/// quasiparticle loss is recomputed by the optimizer on the 8-dimensional
/// odd sector and the deviations are appended.
pub fn run_curves(steps: usize, verify: bool, seed: u64) -> Result<Vec<CurveRow>, CliError> {
    if steps < 2 {
        return Err(CliError::Validation(format!(
            "need at least 2 grid steps, got {steps}"
        )));
    }
    let vn = EntropyFunctional::VonNeumann;
    let quad = EntropyFunctional::Quadratic;
    let max_value = 4.0; // every curve peaks at w = 1

    let psi = verify.then(|| OddParityFourModeState::maximally_entangled().to_state());

    let rows: Result<Vec<CurveRow>, CliError> = (0..steps)
        .into_par_iter()
        .map(|i| {
            let w = i as f64 / (steps - 1) as f64;
            let i_vn = analytic::n4_mixture_info_loss(w, &vn)?;
            let i_quad = analytic::n4_mixture_info_loss(w, &quad)?;
            let e_vn = analytic::n4_entanglement_of_formation(w, &vn)?;
            let e_quad = analytic::n4_entanglement_of_formation(w, &quad)?;
            let (dev_i_vn, dev_i_quad) = match &psi {
                None => (None, None),
                Some(psi) => {
                    let rho = StateMatrix::mixture(psi, w)?;
                    let cfg = OptimizerConfig::new(Scope::Qsp)
                        .with_restarts(1)
                        .with_seed(seed);
                    let opt_vn = minimize(&rho, &vn, &cfg)?.value;
                    let opt_quad = minimize(&rho, &quad, &cfg)?.value;
                    (Some((opt_vn - i_vn).abs()), Some((opt_quad - i_quad).abs()))
                }
            };
            Ok(CurveRow {
                w,
                i_vn,
                i_quad,
                e_vn,
                e_quad,
                i_vn_norm: i_vn / max_value,
                i_quad_norm: i_quad / max_value,
                e_vn_norm: e_vn / max_value,
                e_quad_norm: e_quad / max_value,
                dev_i_vn,
                dev_i_quad,
            })
        })
        .collect();
    rows
}

/// Render curve rows as CSV: comma separator, header row, LF endings.
pub fn curves_to_csv(rows: &[CurveRow]) -> String {
    let verify = rows.iter().any(|r| r.dev_i_vn.is_some());
    let mut out = String::new();
    out.push_str("w,i_vn,i_quad,e_vn,e_quad,i_vn_norm,i_quad_norm,e_vn_norm,e_quad_norm");
    if verify {
        out.push_str(",dev_i_vn,dev_i_quad");
    }
    out.push('\n');
    for row in rows {
        let mut cells = vec![
            format_float(row.w),
            format_float(row.i_vn),
            format_float(row.i_quad),
            format_float(row.e_vn),
            format_float(row.e_quad),
            format_float(row.i_vn_norm),
            format_float(row.i_quad_norm),
            format_float(row.e_vn_norm),
            format_float(row.e_quad_norm),
        ];
        if verify {
            cells.push(format_float(row.dev_i_vn.unwrap_or(f64::NAN)));
            cells.push(format_float(row.dev_i_quad.unwrap_or(f64::NAN)));
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Run a verification suite with per-suite defaults for size and trials.
pub fn run_verify(
    suite: Suite,
    n: Option<usize>,
    trials: Option<usize>,
    seed: u64,
) -> Result<SuiteReport, CliError> {
    let n = n.unwrap_or_else(|| suite.default_modes());
    let trials = trials.unwrap_or_else(|| suite.default_trials());
    Ok(run_suite(suite, n, trials, seed)?)
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum AnalyticReport {
    Mixture {
        w: f64,
        d: usize,
        entropy: String,
        spectrum: Vec<f64>,
        value: f64,
        quadratic_approximation: f64,
    },
    N4 {
        w: f64,
        concurrence: f64,
        e_vn: f64,
        e_quad: f64,
        i_vn: f64,
        i_quad: f64,
    },
    TwoFermion {
        w: f64,
        d: usize,
        entropy: String,
        lambdas: Vec<f64>,
        value: f64,
    },
}

pub fn run_analytic_mixture(
    w: f64,
    d: usize,
    spectrum: Vec<f64>,
    entropy: &EntropyFunctional,
) -> Result<AnalyticReport, CliError> {
    let spec = analytic::MixtureSpec::new(w, d, spectrum.clone())?;
    let value = analytic::mixture_info_loss(&spec, entropy)?;
    let quadratic_approximation =
        analytic::quadratic_increase(&spec, &entropy.optimization_surrogate())?;
    Ok(AnalyticReport::Mixture {
        w,
        d,
        entropy: entropy.to_string(),
        spectrum,
        value,
        quadratic_approximation,
    })
}

pub fn run_analytic_n4(w: f64) -> Result<AnalyticReport, CliError> {
    let vn = EntropyFunctional::VonNeumann;
    let quad = EntropyFunctional::Quadratic;
    Ok(AnalyticReport::N4 {
        w,
        concurrence: analytic::n4_concurrence_mixture(w)?,
        e_vn: analytic::n4_entanglement_of_formation(w, &vn)?,
        e_quad: analytic::n4_entanglement_of_formation(w, &quad)?,
        i_vn: analytic::n4_mixture_info_loss(w, &vn)?,
        i_quad: analytic::n4_mixture_info_loss(w, &quad)?,
    })
}

pub fn run_analytic_two_fermion(
    lambdas: Vec<f64>,
    w: f64,
    d: usize,
    entropy: &EntropyFunctional,
) -> Result<AnalyticReport, CliError> {
    let value = analytic::two_fermion_mixture_info_loss(&lambdas, w, d, entropy)?;
    Ok(AnalyticReport::TwoFermion {
        w,
        d,
        entropy: entropy.to_string(),
        lambdas,
        value,
    })
}

/// Write text to a file or stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
    }
}
