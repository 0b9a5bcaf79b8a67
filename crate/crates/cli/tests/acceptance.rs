//! Acceptance suite: every release gate as one test, each printing its own
//! pass/fail line through the harness. Run with
//!
//! ```text
//! cargo test -p fermi-loss-cli --test acceptance
//! ```
//!
//! Tolerances are pinned in the assertions; seeds are fixed so the suite is
//! deterministic.

use fermi_loss::analytic;
use fermi_loss::entropy::EntropyFunctional;
use fermi_loss::fock::{FockSpace, Sector};
use fermi_loss::onebody::{one_body_summary, pair_entropy};
use fermi_loss::optimizer::{minimize, OptimizerConfig, Scope};
use fermi_loss::random::{random_pure, trial_rng};
use fermi_loss::suites::{run_suite, Suite, SuiteReport};
use fermi_loss_cli::commands::run_curves;
use rayon::prelude::*;

fn vn() -> EntropyFunctional {
    EntropyFunctional::VonNeumann
}

fn quad() -> EntropyFunctional {
    EntropyFunctional::Quadratic
}

fn assert_suite(report: &SuiteReport) {
    for check in &report.checks {
        assert!(
            check.passed,
            "{}/{}: max deviation {:.3e} exceeds {:.1e}",
            report.suite, check.name, check.max_deviation, check.tolerance
        );
    }
}

/// Criterion 1: the benchmark curves on a 101-point grid, with the
/// quasiparticle loss recomputed by the optimizer on the 8-dimensional odd
/// sector; deviations stay within 1e-6 and the qualitative features hold.
#[test]
fn criterion_01_benchmark_curves_reproduced() {
    let rows = run_curves(101, true, 0).expect("curves computed");
    assert_eq!(rows.len(), 101);
    for row in &rows {
        let dev_vn = row.dev_i_vn.expect("verify enabled");
        let dev_quad = row.dev_i_quad.expect("verify enabled");
        assert!(dev_vn <= 1e-6, "w = {}: vn deviation {dev_vn:.3e}", row.w);
        assert!(
            dev_quad <= 1e-6,
            "w = {}: quad deviation {dev_quad:.3e}",
            row.w
        );
        if row.w <= 3.0 / 7.0 {
            assert_eq!(row.e_vn, 0.0, "w = {}", row.w);
            assert_eq!(row.e_quad, 0.0, "w = {}", row.w);
        } else {
            assert!(row.e_vn > 0.0, "w = {}", row.w);
            assert!(row.e_quad > 0.0, "w = {}", row.w);
        }
        if row.w > 0.0 {
            assert!(row.i_vn > 0.0, "w = {}", row.w);
            assert!(row.i_quad > 0.0, "w = {}", row.w);
        }
    }
}

/// Criterion 2: endpoint values at w = 1.
#[test]
fn criterion_02_endpoint_values() {
    assert!((analytic::n4_mixture_info_loss(1.0, &vn()).unwrap() - 4.0).abs() <= 1e-9);
    assert!((analytic::n4_mixture_info_loss(1.0, &quad()).unwrap() - 4.0).abs() <= 1e-9);
    assert!((analytic::n4_entanglement_of_formation(1.0, &vn()).unwrap() - 4.0).abs() <= 1e-9);
    assert!((analytic::n4_entanglement_of_formation(1.0, &quad()).unwrap() - 4.0).abs() <= 1e-9);
}

/// Criterion 3: the quadratic loss is exactly 4w² on the whole grid.
#[test]
fn criterion_03_quadratic_exactness() {
    for i in 0..=100 {
        let w = i as f64 / 100.0;
        let loss = analytic::n4_mixture_info_loss(w, &quad()).unwrap();
        assert!(
            (loss - 4.0 * w * w).abs() <= 1e-10,
            "w = {w}: {loss} vs {}",
            4.0 * w * w
        );
    }
}

/// Criterion 4: near the pure state the von Neumann loss dips below the
/// entanglement of formation.
#[test]
fn criterion_04_near_pure_crossing() {
    let w = 0.999;
    let i_vn = analytic::n4_mixture_info_loss(w, &vn()).unwrap();
    let e_vn = analytic::n4_entanglement_of_formation(w, &vn()).unwrap();
    assert!(i_vn < e_vn, "I = {i_vn} not below E = {e_vn}");
}

/// Criterion 5: for pure states the optimizer reproduces the one-body
/// entanglement entropies in both scopes, 100 states per mode count.
#[test]
fn criterion_05_pure_state_equivalence() {
    let seed = 42u64;
    for n in 2..=6usize {
        let worst: f64 = (0..100u64)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(seed + n as u64, trial);
                let sector = if trial % 2 == 0 { Sector::Even } else { Sector::Odd };
                let space = FockSpace::new(n, sector).expect("valid mode count");
                let psi = random_pure(&mut rng, &space);
                let summary = one_body_summary(&psi).expect("definite parity");

                let qsp_expected: f64 = summary
                    .qsp_eigs
                    .iter()
                    .map(|&f| pair_entropy(&vn(), f))
                    .sum();
                let cfg = OptimizerConfig::new(Scope::Qsp).with_restarts(1);
                let qsp = minimize(&psi, &vn(), &cfg).expect("valid instance").value;

                let sp_expected: f64 = summary
                    .sp_eigs
                    .iter()
                    .map(|&l| pair_entropy(&vn(), l))
                    .sum();
                let cfg = OptimizerConfig::new(Scope::Sp).with_restarts(1);
                let sp = minimize(&psi, &vn(), &cfg).expect("valid instance").value;

                (qsp - qsp_expected).abs().max((sp - sp_expected).abs())
            })
            .reduce(|| 0.0, f64::max);
        assert!(worst <= 1e-6, "n = {n}: worst deviation {worst:.3e}");
    }
}

/// Criterion 6: the zero-loss theorems at 200 instances each, plus a
/// constructed mixed-parity three-mode instance with positive loss.
#[test]
fn criterion_06_zero_loss_theorems() {
    let two = analytic::theorem_harness(2, 200, 1001).unwrap();
    assert!(
        two.max_qsp_loss <= 1e-6,
        "two-mode max loss {:.3e}",
        two.max_qsp_loss
    );
    let three = analytic::theorem_harness(3, 200, 1002).unwrap();
    assert!(
        three.max_qsp_loss <= 1e-6,
        "three-mode max loss {:.3e}",
        three.max_qsp_loss
    );

    let rho = analytic::mixed_parity_three_mode_example();
    let cfg = OptimizerConfig::new(Scope::Qsp).with_restarts(6).with_seed(5);
    let value = minimize(&rho, &vn(), &cfg).unwrap().value;
    assert!(value > 1e-3, "mixed-parity loss {value:.3e} not positive");
}

/// Criterion 7: loss nonnegativity and post-measurement majorization over
/// 10^4 random (state, mode, functional) triples.
#[test]
fn criterion_07_majorization_nonnegativity() {
    let report = run_suite(Suite::Majorization, 3, 10_000, 2024).unwrap();
    assert_suite(&report);
}

/// Criterion 8: discord and ancilla identities on 10^3 instances each.
#[test]
fn criterion_08_discord_and_ancilla_identities() {
    assert_suite(&run_suite(Suite::Discord, 3, 1_000, 31).unwrap());
    assert_suite(&run_suite(Suite::Ancilla, 3, 1_000, 32).unwrap());
}

/// Criterion 9: central finite differences match the variational gradient
/// on 100 random instances.
#[test]
fn criterion_09_gradient_correctness() {
    assert_suite(&run_suite(Suite::Gradient, 3, 100, 77).unwrap());
}

/// Criterion 10: a 10^5-sample brute-force search never undercuts the
/// optimizer on 50 two-mode states.
#[test]
fn criterion_10_oracle_consistency() {
    assert_suite(&run_suite(Suite::Oracle, 2, 50, 88).unwrap());
}

/// Criterion 11: the two-fermion pipeline at six modes — canonical-form
/// reconstruction, Slater eigenvalues, and the mixture closed form against
/// the optimizer.
#[test]
fn criterion_11_two_fermion_pipeline() {
    assert_suite(&run_suite(Suite::TwoFermion, 6, 50, 99).unwrap());
}

/// Criterion 12: optimizer values invariant under one-body unitaries and
/// Bogoliubov rotations, 20 transforms per scope on 20 four-mode instances.
#[test]
fn criterion_12_invariance() {
    assert_suite(&run_suite(Suite::Invariance, 4, 20, 123).unwrap());
}
