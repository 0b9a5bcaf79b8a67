//! Seeded randomized verification suites, shared by the CLI `verify`
//! command and the acceptance tests. Each suite runs `trials` independent
//! instances (ChaCha streams derived from the seed), tracks the extremal
//! deviation of its defining inequality or identity, and passes when the
//! deviation stays inside the suite's tolerance.

use crate::bogoliubov::BogoliubovTransform;
use crate::entropy::{majorizes, EntropyFunctional};
use crate::fock::{FockSpace, Sector};
use crate::linalg::{anticommutator, CMat};
use crate::measurement::{
    ancilla_extension, discord_identity_check, matrix_entropy, measure_unread, ModeProjectors,
};
use crate::onebody::TwoFermionState;
use crate::optimizer::{
    brute_force_min, directional_derivative, minimize, OptimizerConfig, Scope,
};
use crate::random::{
    random_bogoliubov, random_generator, random_parity_commuting, random_two_fermion_m, trial_rng,
};
use crate::state::StateMatrix;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;

/// Which randomized suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Anticommutators,
    Majorization,
    Discord,
    Ancilla,
    Theorems,
    Gradient,
    Oracle,
    Invariance,
    TwoFermion,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Anticommutators,
        Suite::Majorization,
        Suite::Discord,
        Suite::Ancilla,
        Suite::Theorems,
        Suite::Gradient,
        Suite::Oracle,
        Suite::Invariance,
        Suite::TwoFermion,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Anticommutators => "anticommutators",
            Suite::Majorization => "majorization",
            Suite::Discord => "discord",
            Suite::Ancilla => "ancilla",
            Suite::Theorems => "theorems",
            Suite::Gradient => "gradient",
            Suite::Oracle => "oracle",
            Suite::Invariance => "invariance",
            Suite::TwoFermion => "twofermion",
        }
    }

    /// Default mode count when the CLI does not override it.
    pub fn default_modes(&self) -> usize {
        match self {
            Suite::Oracle => 2,
            Suite::TwoFermion => 6,
            Suite::Invariance => 4,
            _ => 3,
        }
    }

    /// Default trial count when the CLI does not override it.
    pub fn default_trials(&self) -> usize {
        match self {
            Suite::Anticommutators => 10,
            Suite::Majorization => 10_000,
            Suite::Discord | Suite::Ancilla => 1_000,
            Suite::Theorems => 200,
            Suite::Gradient => 100,
            Suite::Oracle => 50,
            Suite::Invariance => 20,
            Suite::TwoFermion => 50,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One named inequality or identity checked by a suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub passed: bool,
}

impl SuiteCheck {
    fn new(name: &str, tolerance: f64, deviations: impl IntoIterator<Item = f64>) -> SuiteCheck {
        let max_deviation = deviations.into_iter().fold(0.0f64, f64::max);
        SuiteCheck {
            name: name.to_string(),
            tolerance,
            max_deviation,
            passed: max_deviation <= tolerance,
        }
    }
}

/// Outcome of one suite run; serialized by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<SuiteCheck>,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(
        suite: Suite,
        n: usize,
        trials: usize,
        seed: u64,
        checks: Vec<SuiteCheck>,
        notes: Vec<String>,
    ) -> SuiteReport {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.to_string(),
            n,
            trials,
            seed,
            checks,
            passed,
            notes,
        }
    }
}

fn families() -> Vec<EntropyFunctional> {
    vec![
        EntropyFunctional::VonNeumann,
        EntropyFunctional::Quadratic,
        EntropyFunctional::Tsallis { q: 1.7 },
        EntropyFunctional::Renyi { q: 2.0 },
    ]
}

/// Run a verification suite at the requested size.
pub fn run_suite(suite: Suite, n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Anticommutators => anticommutator_suite(n, trials, seed),
        Suite::Majorization => majorization_suite(n, trials, seed),
        Suite::Discord => discord_suite(n, trials, seed),
        Suite::Ancilla => ancilla_suite(n, trials, seed),
        Suite::Theorems => theorem_suite(n, trials, seed),
        Suite::Gradient => gradient_suite(n, trials, seed),
        Suite::Oracle => oracle_suite(n, trials, seed, 100_000),
        Suite::Invariance => invariance_suite(n, trials, seed),
        Suite::TwoFermion => two_fermion_suite(n, trials, seed),
    }
}

/// Canonical anticommutation relations, for bare modes and for the modes of
/// random Bogoliubov transforms.
fn anticommutator_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let space = FockSpace::new(n, Sector::Full)?;
    let cs = space.annihilation_all();
    let d = space.full_dim();
    let id = CMat::identity(d, d);

    let car_deviation = |modes: &[CMat]| -> f64 {
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max(anticommutator(&modes[i], &modes[j]).norm());
                let mut acc = anticommutator(&modes[i], &modes[j].adjoint());
                if i == j {
                    acc -= &id;
                }
                dev = dev.max(acc.norm());
            }
        }
        dev
    };

    let deviations: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            if trial == 0 {
                car_deviation(&cs)
            } else {
                let w = random_bogoliubov(&mut rng, n);
                car_deviation(&w.modes_from_cached(&cs))
            }
        })
        .collect();

    let checks = vec![SuiteCheck::new("car-relations", 1e-10, deviations)];
    Ok(SuiteReport::new(Suite::Anticommutators, n, trials, seed, checks, vec![]))
}

/// S_f(ρ'(k)) ≥ S_f(ρ) for random (state, mode, functional) triples, plus
/// the spectral majorization behind it.
fn majorization_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let fams = families();
    let pairs: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let space = rho.space().clone();
            let w = random_bogoliubov(&mut rng, n);
            let mode = trial % n;
            let f = &fams[trial % fams.len()];
            let proj =
                ModeProjectors::quasiparticle(&space, &w, mode).expect("mode index in range");
            let report = measure_unread(&rho, &proj, f).expect("valid measurement");
            let negativity = (-report.loss).max(0.0);
            let majorized = majorizes(&rho.spectrum(), &report.rho_post.spectrum())
                .expect("normalized spectra");
            (negativity, if majorized { 0.0 } else { 1.0 })
        })
        .collect();

    let checks = vec![
        SuiteCheck::new(
            "loss-nonnegative",
            1e-12,
            pairs.iter().map(|&(neg, _)| neg),
        ),
        SuiteCheck::new(
            "post-state-majorized",
            0.5,
            pairs.iter().map(|&(_, maj)| maj),
        ),
    ];
    Ok(SuiteReport::new(Suite::Majorization, n, trials, seed, checks, vec![]))
}

/// |lhs - rhs| of the discord identity under the von Neumann entropy.
fn discord_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let deviations: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let proj =
                ModeProjectors::particle(rho.space(), trial % n).expect("mode index in range");
            let (lhs, rhs) = discord_identity_check(&rho, &proj).expect("valid measurement");
            (lhs - rhs).abs()
        })
        .collect();

    let checks = vec![SuiteCheck::new("discord-identity", 1e-10, deviations)];
    Ok(SuiteReport::new(Suite::Discord, n, trials, seed, checks, vec![]))
}

/// Partial trace of the ancilla extension reproduces ρ'(k), and the entropy
/// difference of the extension reproduces the loss.
fn ancilla_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let vn = EntropyFunctional::VonNeumann;
    let pairs: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let proj =
                ModeProjectors::particle(rho.space(), trial % n).expect("mode index in range");
            let ext = ancilla_extension(&rho, &proj).expect("valid extension");
            let report = measure_unread(&rho, &proj, &vn).expect("valid measurement");
            let trace_dev = (&ext.rho_f - rho.space().embed(report.rho_post.matrix())).norm();
            let s_fc = matrix_entropy(&ext.rho_fc, &vn).expect("valid state");
            let s_f = matrix_entropy(&ext.rho_f, &vn).expect("valid state");
            let entropy_dev = ((s_f - s_fc) - report.loss).abs();
            (trace_dev, entropy_dev)
        })
        .collect();

    let checks = vec![
        SuiteCheck::new("partial-trace", 1e-12, pairs.iter().map(|&(t, _)| t)),
        SuiteCheck::new("entropy-identity", 1e-10, pairs.iter().map(|&(_, e)| e)),
    ];
    Ok(SuiteReport::new(Suite::Ancilla, n, trials, seed, checks, vec![]))
}

/// Zero-loss theorems at two and three modes through the analytic harness.
fn theorem_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let report = crate::analytic::theorem_harness(n, trials, seed)?;
    let mut checks = vec![
        SuiteCheck::new("qsp-loss-zero", 1e-6, [report.max_qsp_loss.max(0.0)]),
        SuiteCheck::new("recovered-basis-commutes", 1e-8, [report.max_commutator]),
    ];
    let mut notes = vec![format!(
        "thermal factorization satisfied in {}/{} instances",
        report.factorization_satisfied, report.trials
    )];
    if n == 2 {
        if let Some(min_sp) = report.min_sp_loss_number_violating {
            // sp loss must stay positive when the state violates number
            // conservation: at least 10× the zero tolerance
            checks.push(SuiteCheck::new(
                "sp-loss-positive",
                1.0,
                [if min_sp > 1e-5 { 0.0 } else { 1.0 + min_sp.abs() }],
            ));
            notes.push(format!(
                "min sp loss over number-violating instances: {min_sp:.6e}"
            ));
        }
    }
    Ok(SuiteReport::new(Suite::Theorems, n, trials, seed, checks, notes))
}

/// Relative error of central finite differences against the variational
/// directional derivative.
fn gradient_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let vn = EntropyFunctional::VonNeumann;
    let eps = 1e-5;
    let deviations: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let w = random_bogoliubov(&mut rng, n);
            let gen = random_generator(&mut rng, n, true);
            let analytic =
                directional_derivative(&rho, &w, &vn, &gen).expect("valid evaluation");
            let forward = w
                .compose(&BogoliubovTransform::from_generator(&gen, -eps))
                .expect("same size");
            let backward = w
                .compose(&BogoliubovTransform::from_generator(&gen, eps))
                .expect("same size");
            let v_f =
                crate::measurement::basis_info_loss(&rho, &forward, &vn).expect("valid basis");
            let v_b =
                crate::measurement::basis_info_loss(&rho, &backward, &vn).expect("valid basis");
            let fd = (v_f - v_b) / (2.0 * eps);
            (fd - analytic).abs() / analytic.abs().max(1e-3)
        })
        .collect();

    let checks = vec![SuiteCheck::new("finite-difference-match", 1e-5, deviations)];
    Ok(SuiteReport::new(Suite::Gradient, n, trials, seed, checks, vec![]))
}

/// Brute-force sampling never undercuts the optimizer beyond tolerance.
fn oracle_suite(n: usize, trials: usize, seed: u64, samples: usize) -> Result<SuiteReport> {
    let vn = EntropyFunctional::VonNeumann;
    let deviations: Vec<f64> = (0..trials)
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let cfg = OptimizerConfig::new(Scope::Qsp)
                .with_restarts(3)
                .with_seed(seed ^ trial as u64);
            let opt = minimize(&rho, &vn, &cfg).expect("valid instance");
            let brute =
                brute_force_min(&rho, &vn, Scope::Qsp, samples, seed ^ ((trial as u64) << 8))
                    .expect("valid instance");
            (opt.value - brute).max(0.0)
        })
        .collect();

    let checks = vec![SuiteCheck::new("optimizer-not-undercut", 1e-6, deviations)];
    Ok(SuiteReport::new(
        Suite::Oracle,
        n,
        trials,
        seed,
        checks,
        vec![format!("{samples} samples per instance")],
    ))
}

/// Optimizer values are invariant under one-body unitaries (sp scope) and
/// Bogoliubov rotations (qsp scope). A single canonical restart is used so
/// the whole descent trajectory is covariant.
fn invariance_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let vn = EntropyFunctional::VonNeumann;
    let transforms_per_instance = 20;
    let pairs: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let rho = random_parity_commuting(&mut rng, n);
            let space = rho.space().clone();
            let mut worst_sp = 0.0f64;
            let mut worst_qsp = 0.0f64;
            for scope in [Scope::Sp, Scope::Qsp] {
                let cfg = OptimizerConfig::new(scope).with_restarts(1);
                let base = minimize(&rho, &vn, &cfg).expect("valid instance").value;
                for _ in 0..transforms_per_instance {
                    let gen = random_generator(&mut rng, n, matches!(scope, Scope::Qsp));
                    let h_fock = space
                        .one_body_hamiltonian(&gen.h, &gen.delta)
                        .expect("valid generator");
                    let u = crate::linalg::expm_i_hermitian(&h_fock, -1.0);
                    let rotated = rho.conjugated_full(&u).expect("unitary conjugation");
                    let value = minimize(&rotated, &vn, &cfg).expect("valid instance").value;
                    let dev = (value - base).abs();
                    match scope {
                        Scope::Sp => worst_sp = worst_sp.max(dev),
                        Scope::Qsp => worst_qsp = worst_qsp.max(dev),
                    }
                }
            }
            (worst_sp, worst_qsp)
        })
        .collect();

    let checks = vec![
        SuiteCheck::new("sp-invariance", 1e-6, pairs.iter().map(|&(s, _)| s)),
        SuiteCheck::new("qsp-invariance", 1e-6, pairs.iter().map(|&(_, q)| q)),
    ];
    Ok(SuiteReport::new(
        Suite::Invariance,
        n,
        trials,
        seed,
        checks,
        vec![format!("{transforms_per_instance} transforms per scope per instance")],
    ))
}

/// Zumino reconstruction and the two-fermion mixture closed form against
/// the optimizer.
fn two_fermion_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let vn = EntropyFunctional::VonNeumann;
    let triples: Vec<(f64, f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let m = random_two_fermion_m(&mut rng, n);
            let state = TwoFermionState::new(m.clone()).expect("normalized antisymmetric");
            let dec = state.slater_decompose();

            // reconstruction error of the canonical form
            let d = crate::onebody::slater_normal_form(n, &dec.lambdas);
            let rebuilt = &dec.unitary * &d * dec.unitary.transpose();
            let reconstruction = (rebuilt - &m).norm();

            // λ match the doubled spectrum of M M†
            let mut eigs = crate::linalg::eigvalsh(&(&m * m.adjoint()));
            eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut lambda_dev = 0.0f64;
            for (k, &l) in dec.lambdas.iter().enumerate() {
                lambda_dev = lambda_dev.max((eigs[2 * k] - l).abs());
                lambda_dev = lambda_dev.max((eigs[2 * k + 1] - l).abs());
            }

            // mixture closed form against the optimizer on the even sector
            let w: f64 = 0.2 + 0.7 * (trial as f64 / trials.max(1) as f64);
            let psi = state.to_state(Sector::Even).expect("even two-fermion state");
            let rho = StateMatrix::mixture(&psi, w).expect("valid weight");
            let d_ens = psi.dim();
            let analytic =
                crate::analytic::two_fermion_mixture_info_loss(&dec.lambdas, w, d_ens, &vn)
                    .expect("normalized spectrum");
            let cfg = OptimizerConfig::new(Scope::Qsp)
                .with_restarts(2)
                .with_seed(seed ^ trial as u64);
            let opt = minimize(&rho, &vn, &cfg).expect("valid instance");
            (reconstruction, lambda_dev, (opt.value - analytic).abs())
        })
        .collect();

    let checks = vec![
        SuiteCheck::new("zumino-reconstruction", 1e-10, triples.iter().map(|t| t.0)),
        SuiteCheck::new("slater-eigenvalues", 1e-10, triples.iter().map(|t| t.1)),
        SuiteCheck::new("mixture-closed-form", 1e-6, triples.iter().map(|t| t.2)),
    ];
    Ok(SuiteReport::new(Suite::TwoFermion, n, trials, seed, checks, vec![]))
}
