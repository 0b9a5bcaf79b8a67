//! Closed forms for mixtures of a pure state with the maximally mixed state,
//!
//! ```text
//! ρ = w |ψ⟩⟨ψ| + (1 - w)/d · I_d ,
//! ```
//!
//! whose minimum information loss is reached in the basis diagonalizing the
//! extended one-body matrix of |ψ⟩. With p_k the per-mode occupancies in
//! that basis, the eigenvalues of ρ'(k) are w p_k + (1-w)/d,
//! w (1-p_k) + (1-w)/d, and (d-2) copies of (1-w)/d, giving the loss in
//! closed form. Also the four-mode odd-parity benchmark (concurrence,
//! entanglement of formation), the two-fermion mixture, and the randomized
//! harness for the two- and three-mode zero-loss theorems.

use crate::entropy::EntropyFunctional;
use crate::fock::Sector;
use crate::linalg::{cr, CMat, CVec};
use crate::onebody::{diagonalize_qsp, one_body_summary};
use crate::optimizer::{minimize, OptimizerConfig, Scope};
use crate::state::StateMatrix;
use crate::{Error, Result};
use rayon::prelude::*;

/// Mixture of a pure state with the maximally mixed state of dimension d,
/// described through the pure component's per-mode occupancy spectrum in
/// its optimal basis (ρ^sp eigenvalues for sp measurements, ρ^qsp pair
/// representatives for quasiparticle ones).
#[derive(Debug, Clone)]
pub struct MixtureSpec {
    pub w: f64,
    pub d: usize,
    pub spectrum: Vec<f64>,
}

impl MixtureSpec {
    pub fn new(w: f64, d: usize, spectrum: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Invalid(format!("mixing weight {w} outside [0, 1]")));
        }
        if d < 2 {
            return Err(Error::Invalid(format!("ensemble dimension {d} below 2")));
        }
        if spectrum.iter().any(|&p| !(-1e-12..=1.0 + 1e-12).contains(&p)) {
            return Err(Error::Invalid("spectrum entry outside [0, 1]".into()));
        }
        Ok(MixtureSpec {
            w,
            d,
            spectrum: spectrum.iter().map(|&p| p.clamp(0.0, 1.0)).collect(),
        })
    }
}

/// Eigenvalue list of ρ'(k) for the mixture, given the mode occupancy p.
fn post_spectrum(w: f64, d: usize, p: f64) -> Vec<f64> {
    let floor = (1.0 - w) / d as f64;
    let mut spec = vec![w * p + floor, w * (1.0 - p) + floor];
    spec.extend(std::iter::repeat(floor).take(d - 2));
    spec
}

/// Eigenvalue list of the mixture itself.
fn prior_spectrum(w: f64, d: usize) -> Vec<f64> {
    let floor = (1.0 - w) / d as f64;
    let mut spec = vec![w + floor];
    spec.extend(std::iter::repeat(floor).take(d - 1));
    spec
}

/// Minimum information loss of the mixture in closed form: the sum over
/// modes of S_f(ρ'(k)) - S_f(ρ) evaluated on the eigenvalue lists above.
/// For trace forms this reduces to
/// Σ_k [f(w p_k + (1-w)/d) + f(w(1-p_k) + (1-w)/d) - f(w + (1-w)/d) - f((1-w)/d)].
pub fn mixture_info_loss(spec: &MixtureSpec, f: &EntropyFunctional) -> Result<f64> {
    let prior = crate::entropy::entropy_of_spectrum(&prior_spectrum(spec.w, spec.d), f)?;
    let mut total = 0.0;
    for &p in &spec.spectrum {
        let post =
            crate::entropy::entropy_of_spectrum(&post_spectrum(spec.w, spec.d, p), f)?;
        total += post - prior;
    }
    Ok(total)
}

/// Leading small-w behavior w² |f''(1/d)| Σ_k p_k (1 - p_k); exact for the
/// quadratic functional at every w, where it is also d-independent.
pub fn quadratic_increase(spec: &MixtureSpec, f: &EntropyFunctional) -> Result<f64> {
    let curvature = f.second_derivative(1.0 / spec.d as f64)?.abs();
    let fluctuation: f64 = spec.spectrum.iter().map(|&p| p * (1.0 - p)).sum();
    Ok(spec.w * spec.w * curvature * fluctuation)
}

/// Fermionic concurrence of the four-mode odd-parity mixture built on the
/// maximally entangled state: C(ρ) = max[(7w - 3)/4, 0], with threshold
/// w = 3/7.
pub fn n4_concurrence_mixture(w: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Invalid(format!("mixing weight {w} outside [0, 1]")));
    }
    Ok(((7.0 * w - 3.0) / 4.0).max(0.0))
}

/// Entanglement of formation of the same mixture: 0 below the threshold,
/// 4 h((1 + sqrt(1 - C²))/2) for the von Neumann member and 4 C² for the
/// quadratic one.
pub fn n4_entanglement_of_formation(w: f64, f: &EntropyFunctional) -> Result<f64> {
    let c = n4_concurrence_mixture(w)?;
    match f {
        EntropyFunctional::VonNeumann => {
            if c <= 0.0 {
                Ok(0.0)
            } else {
                let fp = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
                Ok(4.0 * crate::entropy::binary_entropy(fp))
            }
        }
        EntropyFunctional::Quadratic => Ok(4.0 * c * c),
        other => Err(Error::Invalid(format!(
            "no closed-form entanglement of formation for {other}"
        ))),
    }
}

/// Information loss of the four-mode benchmark mixture (odd-parity sector,
/// d = 8, all four occupancies 1/2).
pub fn n4_mixture_info_loss(w: f64, f: &EntropyFunctional) -> Result<f64> {
    let spec = MixtureSpec::new(w, 8, vec![0.5; 4])?;
    mixture_info_loss(&spec, f)
}

/// Two-fermion mixture loss: the optimal measurement is on the Slater basis
/// of the pure component, where both members of pair k have occupancy λ_k,
/// so every pair contributes twice.
pub fn two_fermion_mixture_info_loss(
    lambdas: &[f64],
    w: f64,
    d: usize,
    f: &EntropyFunctional,
) -> Result<f64> {
    let total: f64 = lambdas.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized(total, 1e-8));
    }
    let doubled: Vec<f64> = lambdas.iter().flat_map(|&l| [l, l]).collect();
    let spec = MixtureSpec::new(w, d, doubled)?;
    mixture_info_loss(&spec, f)
}

/// Randomized check of the zero-loss theorems: every parity-commuting state
/// of two modes, and every definite-parity state of three modes, has
/// vanishing quasiparticle information loss, with the diagonalizing basis
/// recovered from the ρ^qsp eigenbasis.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub trials: usize,
    /// Largest optimizer value seen (should be ≤ 1e-6).
    pub max_qsp_loss: f64,
    /// Largest commutator norm ||[ρ, a†_k a_k]|| in the recovered basis.
    pub max_commutator: f64,
    /// Two modes only: smallest sp-scope loss over instances with
    /// ⟨c†c†⟩ ≠ 0, which the theorem requires to stay positive.
    pub min_sp_loss_number_violating: Option<f64>,
    /// Two modes only: how many instances satisfy the thermal-like
    /// factorization of the even-sector eigenvalues (recorded, not
    /// asserted).
    pub factorization_satisfied: usize,
}

pub fn theorem_harness(n: usize, trials: usize, seed: u64) -> Result<TheoremReport> {
    if n != 2 && n != 3 {
        return Err(Error::Invalid(format!(
            "theorem harness covers two and three modes, got {n}"
        )));
    }
    let per_trial: Vec<(f64, f64, Option<f64>, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = crate::random::trial_rng(seed, trial as u64);
            let rho = if n == 2 {
                crate::random::random_parity_commuting(&mut rng, 2)
            } else {
                let sector = if trial % 2 == 0 { Sector::Even } else { Sector::Odd };
                let space = crate::fock::FockSpace::new(3, sector).expect("n = 3 valid");
                crate::random::random_mixed(&mut rng, &space)
            };

            let cfg = OptimizerConfig::new(Scope::Qsp)
                .with_restarts(3)
                .with_seed(seed ^ trial as u64);
            let qsp_loss = minimize(&rho, &EntropyFunctional::VonNeumann, &cfg)
                .expect("parity-commuting input")
                .value;

            // the proofs' construction: the ρ^qsp eigenbasis modes commute
            // with ρ
            let summary = one_body_summary(&rho).expect("parity-commuting input");
            let (w_diag, _) = diagonalize_qsp(&summary);
            let space = rho.space();
            let cs = space.annihilation_all();
            let rho_emb = space.embed(rho.matrix());
            let mut max_comm = 0.0f64;
            for k in 0..n {
                let a = w_diag.mode_from_cached(&cs, k);
                let occ = a.adjoint() * &a;
                max_comm = max_comm.max(crate::linalg::commutator(&rho_emb, &occ).norm());
            }

            let mut sp_loss = None;
            let mut factorized = false;
            if n == 2 {
                let pair_norm = summary.kappa.norm();
                if pair_norm > 1e-6 {
                    let cfg = OptimizerConfig::new(Scope::Sp)
                        .with_restarts(3)
                        .with_seed(seed ^ trial as u64);
                    sp_loss = Some(
                        minimize(&rho, &EntropyFunctional::VonNeumann, &cfg)
                            .expect("parity-commuting input")
                            .value,
                    );
                }
                factorized = two_mode_factorization_holds(&rho);
            }

            (qsp_loss, max_comm, sp_loss, factorized)
        })
        .collect();

    let mut report = TheoremReport {
        n,
        trials,
        max_qsp_loss: 0.0,
        max_commutator: 0.0,
        min_sp_loss_number_violating: None,
        factorization_satisfied: 0,
    };
    for (loss, comm, sp_loss, factorized) in per_trial {
        report.max_qsp_loss = report.max_qsp_loss.max(loss);
        report.max_commutator = report.max_commutator.max(comm);
        if let Some(v) = sp_loss {
            report.min_sp_loss_number_violating = Some(
                report
                    .min_sp_loss_number_violating
                    .map_or(v, |cur| cur.min(v)),
            );
        }
        if factorized {
            report.factorization_satisfied += 1;
        }
    }
    Ok(report)
}

/// Whether the even-sector eigenvalues of a two-mode parity-commuting state
/// satisfy the thermal-form factorization q₂⁺ = (q₁⁻ + q₂⁺)(q₂⁻ + q₂⁺).
fn two_mode_factorization_holds(rho: &StateMatrix) -> bool {
    let space = rho.space();
    let collect = |sector: Sector| -> Vec<f64> {
        let sub = space.with_sector(sector);
        let block = CMat::from_fn(sub.dim(), sub.dim(), |i, j| {
            let bi = sub.basis()[i];
            let bj = sub.basis()[j];
            match (space.position(bi), space.position(bj)) {
                (Some(p), Some(q)) => rho.matrix()[(p, q)],
                _ => crate::linalg::ZERO,
            }
        });
        let mut vals = crate::linalg::eigvalsh(&block);
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    };
    let even = collect(Sector::Even);
    let odd = collect(Sector::Odd);
    let lhs = even[1];
    let rhs = (odd[0] + even[1]) * (odd[1] + even[1]);
    (lhs - rhs).abs() <= 1e-9
}

/// A three-mode state mixing eigenstates of both parities whose
/// quasiparticle information loss stays away from zero; the normal bases of
/// the two parity components differ.
pub fn mixed_parity_three_mode_example() -> StateMatrix {
    let space = crate::fock::FockSpace::new(3, Sector::Full).expect("n = 3 valid");
    let inv = cr(std::f64::consts::FRAC_1_SQRT_2);
    // odd component (c_0† + c_1†)|0>/√2: a Slater determinant in the
    // rotated orbital (0 + 1)/√2
    let mut odd = CVec::zeros(8);
    odd[0b001] = inv;
    odd[0b010] = inv;
    // even component (1 + c_1†c_2†)|0>/√2: a quasiparticle vacuum pairing
    // modes 1 and 2; its normal basis is incompatible with the rotated
    // orbital above
    let mut even = CVec::zeros(8);
    even[0b000] = inv;
    even[0b110] = inv;
    let mat = (&odd * odd.adjoint() + &even * even.adjoint()).scale(0.5);
    StateMatrix::from_density(space, mat).expect("valid mixture")
}
