//! Entropy functionals over density-matrix spectra.
//!
//! Trace-form members S_f(ρ) = Tr f(ρ) use a strictly concave integrand f on
//! [0, 1] with f(0) = f(1) = 0, normalized so that a maximally mixed qubit
//! has entropy 1:
//!
//! - von Neumann: f(p) = -p log2 p
//! - quadratic:   f(p) = 2 p (1 - p)
//! - Tsallis(q):  f(p) = (p - p^q) / (1 - 2^(1-q))
//!
//! The Rényi family S_q^R = log2(Tr ρ^q)/(1-q) is a monotone function of the
//! Tsallis entropy of the same order; it has no trace-form derivative, so
//! optimization problems delegate to the Tsallis member.
//!
//! Base-2 logarithms throughout.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Tolerated negativity of spectrum entries before clipping.
const ENTRY_TOL: f64 = 1e-12;
/// Tolerated deviation of the spectrum sum from one.
const SUM_TOL: f64 = 1e-9;
/// Eigenvalue floor for derivative evaluation.
const DERIVATIVE_FLOOR: f64 = 1e-12;
/// Slack in majorization partial-sum comparisons.
const MAJORIZATION_SLACK: f64 = 1e-10;

const LN2: f64 = std::f64::consts::LN_2;

/// Tagged entropy family, selectable from the CLI grammar
/// `vn | quad | tsallis:<q> | renyi:<q>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum EntropyFunctional {
    VonNeumann,
    Quadratic,
    Tsallis { q: f64 },
    Renyi { q: f64 },
}

impl EntropyFunctional {
    pub fn tsallis(q: f64) -> Result<Self> {
        if q <= 0.0 || q == 1.0 {
            return Err(Error::InvalidEntropyOrder(q));
        }
        Ok(EntropyFunctional::Tsallis { q })
    }

    pub fn renyi(q: f64) -> Result<Self> {
        if q <= 0.0 || q == 1.0 {
            return Err(Error::InvalidEntropyOrder(q));
        }
        Ok(EntropyFunctional::Renyi { q })
    }

    /// Whether the member is of trace form Tr f(ρ).
    pub fn is_trace_form(&self) -> bool {
        !matches!(self, EntropyFunctional::Renyi { .. })
    }

    /// The trace-form objective the optimizer descends on: Rényi delegates
    /// to the Tsallis member of the same order.
    pub fn optimization_surrogate(&self) -> EntropyFunctional {
        match *self {
            EntropyFunctional::Renyi { q } => EntropyFunctional::Tsallis { q },
            other => other,
        }
    }

    /// Trace-form integrand f(p) on [0, 1].
    pub fn integrand(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        match *self {
            EntropyFunctional::VonNeumann => {
                if p <= 0.0 {
                    0.0
                } else {
                    -p * p.ln() / LN2
                }
            }
            EntropyFunctional::Quadratic => 2.0 * p * (1.0 - p),
            EntropyFunctional::Tsallis { q } => (p - p.powf(q)) / (1.0 - (1.0 - q).exp2()),
            EntropyFunctional::Renyi { .. } => {
                unreachable!("Rényi entropy is not of trace form")
            }
        }
    }

    /// Derivative f'(p) of the trace-form integrand, with p floored at
    /// 1e-12. Rejected for the Rényi family.
    pub fn derivative(&self, p: f64) -> Result<f64> {
        let p = p.max(DERIVATIVE_FLOOR);
        match *self {
            EntropyFunctional::VonNeumann => Ok(-(p.ln() + 1.0) / LN2),
            EntropyFunctional::Quadratic => Ok(2.0 - 4.0 * p),
            EntropyFunctional::Tsallis { q } => {
                Ok((1.0 - q * p.powf(q - 1.0)) / (1.0 - (1.0 - q).exp2()))
            }
            EntropyFunctional::Renyi { .. } => Err(Error::RenyiDerivative),
        }
    }

    /// Second derivative f''(p) of the trace-form integrand (negative on
    /// (0, 1) by strict concavity). Rejected for the Rényi family.
    pub fn second_derivative(&self, p: f64) -> Result<f64> {
        let p = p.max(DERIVATIVE_FLOOR);
        match *self {
            EntropyFunctional::VonNeumann => Ok(-1.0 / (p * LN2)),
            EntropyFunctional::Quadratic => Ok(-4.0),
            EntropyFunctional::Tsallis { q } => {
                Ok(-q * (q - 1.0) * p.powf(q - 2.0) / (1.0 - (1.0 - q).exp2()))
            }
            EntropyFunctional::Renyi { .. } => Err(Error::RenyiDerivative),
        }
    }
}

impl FromStr for EntropyFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vn" => Ok(EntropyFunctional::VonNeumann),
            "quad" => Ok(EntropyFunctional::Quadratic),
            other => {
                let parse_q = |rest: &str| -> Result<f64> {
                    rest.parse::<f64>().map_err(|_| {
                        Error::Invalid(format!("cannot parse entropy order in '{other}'"))
                    })
                };
                if let Some(rest) = other.strip_prefix("tsallis:") {
                    EntropyFunctional::tsallis(parse_q(rest)?)
                } else if let Some(rest) = other.strip_prefix("renyi:") {
                    EntropyFunctional::renyi(parse_q(rest)?)
                } else {
                    Err(Error::Invalid(format!(
                        "unknown entropy selector '{other}' (expected vn, quad, tsallis:<q> or renyi:<q>)"
                    )))
                }
            }
        }
    }
}

impl std::fmt::Display for EntropyFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EntropyFunctional::VonNeumann => write!(f, "vn"),
            EntropyFunctional::Quadratic => write!(f, "quad"),
            EntropyFunctional::Tsallis { q } => write!(f, "tsallis:{q}"),
            EntropyFunctional::Renyi { q } => write!(f, "renyi:{q}"),
        }
    }
}

fn validate_spectrum(spectrum: &[f64]) -> Result<Vec<f64>> {
    let mut sum = 0.0;
    for &p in spectrum {
        if p < -ENTRY_TOL {
            return Err(Error::InvalidSpectrumEntry(p));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::NotNormalized(sum, SUM_TOL));
    }
    Ok(spectrum.iter().map(|&p| p.clamp(0.0, 1.0)).collect())
}

/// Entropy of a probability spectrum under the chosen functional.
pub fn entropy_of_spectrum(spectrum: &[f64], f: &EntropyFunctional) -> Result<f64> {
    let clipped = validate_spectrum(spectrum)?;
    match *f {
        EntropyFunctional::Renyi { q } => {
            let power: f64 = clipped.iter().map(|&p| p.powf(q)).sum();
            Ok(power.log2() / (1.0 - q))
        }
        ref trace_form => Ok(clipped.iter().map(|&p| trace_form.integrand(p)).sum()),
    }
}

/// Entropy of a density matrix through its eigenvalue spectrum.
pub fn entropy_of_state(rho: &crate::state::StateMatrix, f: &EntropyFunctional) -> Result<f64> {
    entropy_of_spectrum(&rho.spectrum(), f)
}

/// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p).
pub fn binary_entropy(p: f64) -> f64 {
    let vn = EntropyFunctional::VonNeumann;
    vn.integrand(p) + vn.integrand(1.0 - p)
}

/// Whether sorted spectrum `a` majorizes sorted spectrum `b`. Inputs are
/// re-sorted descending and zero-padded to a common length; both must sum
/// to 1 within 1e-9.
pub fn majorizes(a: &[f64], b: &[f64]) -> Result<bool> {
    let sum_a: f64 = a.iter().sum();
    let sum_b: f64 = b.iter().sum();
    if (sum_a - 1.0).abs() > SUM_TOL {
        return Err(Error::NotNormalized(sum_a, SUM_TOL));
    }
    if (sum_b - 1.0).abs() > SUM_TOL {
        return Err(Error::NotNormalized(sum_b, SUM_TOL));
    }
    let len = a.len().max(b.len());
    let sorted = |v: &[f64]| {
        let mut s: Vec<f64> = v.to_vec();
        s.resize(len, 0.0);
        s.sort_by(|x, y| y.partial_cmp(x).unwrap());
        s
    };
    let a = sorted(a);
    let b = sorted(b);
    let mut pa = 0.0;
    let mut pb = 0.0;
    for k in 0..len {
        pa += a[k];
        pb += b[k];
        if pa < pb - MAJORIZATION_SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_probabilities, trial_rng};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn all_families() -> Vec<EntropyFunctional> {
        vec![
            EntropyFunctional::VonNeumann,
            EntropyFunctional::Quadratic,
            EntropyFunctional::tsallis(0.5).unwrap(),
            EntropyFunctional::tsallis(2.0).unwrap(),
            EntropyFunctional::tsallis(3.0).unwrap(),
            EntropyFunctional::renyi(0.5).unwrap(),
            EntropyFunctional::renyi(2.0).unwrap(),
        ]
    }

    #[test]
    fn maximally_mixed_qubit_normalization() {
        for f in all_families() {
            let s = entropy_of_spectrum(&[0.5, 0.5], &f).unwrap();
            assert_relative_eq!(s, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_spectrum_has_zero_entropy() {
        for f in all_families() {
            let s = entropy_of_spectrum(&[1.0, 0.0, 0.0, 0.0], &f).unwrap();
            assert!(s.abs() < 1e-12, "{f}: {s}");
        }
    }

    #[test]
    fn maximally_mixed_d8_von_neumann() {
        let spec = vec![1.0 / 8.0; 8];
        let s = entropy_of_spectrum(&spec, &EntropyFunctional::VonNeumann).unwrap();
        assert_relative_eq!(s, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn renyi_two_of_flat_qubit() {
        let s = entropy_of_spectrum(&[0.5, 0.5], &EntropyFunctional::renyi(2.0).unwrap()).unwrap();
        assert_relative_eq!(s, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_spectra() {
        let f = EntropyFunctional::VonNeumann;
        assert!(entropy_of_spectrum(&[0.7, 0.7], &f).is_err());
        assert!(entropy_of_spectrum(&[1.1, -0.1], &f).is_err());
    }

    /// Central finite differences of the integrand; the independent oracle
    /// for the derivative values asserted below.
    fn fd_derivative(f: &EntropyFunctional, p: f64) -> f64 {
        let eps = 1e-6;
        (f.integrand(p + eps) - f.integrand(p - eps)) / (2.0 * eps)
    }

    #[test]
    fn von_neumann_derivative_matches_finite_differences() {
        let f = EntropyFunctional::VonNeumann;
        // frozen from the finite-difference oracle: f'(1/2) of -p log2 p
        assert_relative_eq!(f.derivative(0.5).unwrap(), -0.4426950408889634, epsilon = 1e-12);
        for &p in &[0.1, 0.25, 0.5, 0.9] {
            assert_relative_eq!(
                f.derivative(p).unwrap(),
                fd_derivative(&f, p),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn quadratic_derivative_values() {
        let f = EntropyFunctional::Quadratic;
        assert_relative_eq!(f.derivative(0.25).unwrap(), 1.0, epsilon = 1e-14);
        // |f''| = 4 everywhere
        for &p in &[0.1, 0.4, 0.8] {
            let eps = 1e-5;
            let second =
                (f.derivative(p + eps).unwrap() - f.derivative(p - eps).unwrap()) / (2.0 * eps);
            assert_relative_eq!(second.abs(), 4.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn tsallis_derivative_matches_finite_differences() {
        for q in [0.5, 2.0, 3.5] {
            let f = EntropyFunctional::tsallis(q).unwrap();
            for &p in &[0.1, 0.3, 0.7] {
                assert_relative_eq!(
                    f.derivative(p).unwrap(),
                    fd_derivative(&f, p),
                    epsilon = 1e-7
                );
            }
        }
    }

    #[test]
    fn renyi_has_no_derivative() {
        let f = EntropyFunctional::renyi(2.0).unwrap();
        assert!(matches!(f.derivative(0.5), Err(Error::RenyiDerivative)));
    }

    #[test]
    fn majorization_basics() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5]).unwrap());
        assert!(majorizes(&[0.5, 0.5], &[0.5, 0.5]).unwrap());
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0]).unwrap());
        // padding to common length
        assert!(majorizes(&[0.6, 0.4], &[0.4, 0.3, 0.3]).unwrap());
    }

    #[test]
    fn schur_horn_diagonal_is_majorized() {
        // eigenvalues of a Hermitian matrix majorize its diagonal in any basis
        let mut rng = trial_rng(21, 0);
        for _ in 0..20 {
            let g = random_hermitian(&mut rng, 4);
            // shift/scale into a density-like spectrum
            let vals = crate::linalg::eigvalsh(&g);
            let shift = vals[0].min(0.0).abs() + 0.1;
            let shifted = &g + crate::linalg::CMat::identity(4, 4).scale(shift);
            let tr: f64 = shifted.diagonal().iter().map(|z| z.re).sum();
            let rho = shifted.unscale(tr);
            let eigs = crate::linalg::eigvalsh(&rho);
            let diag: Vec<f64> = rho.diagonal().iter().map(|z| z.re).collect();
            assert!(majorizes(&eigs, &diag).unwrap());
        }
    }

    #[test]
    fn tsallis_approaches_von_neumann_at_unit_order() {
        let mut rng = trial_rng(22, 0);
        for _ in 0..10 {
            let spec = random_probabilities(&mut rng, 6);
            let vn = entropy_of_spectrum(&spec, &EntropyFunctional::VonNeumann).unwrap();
            for q in [1.0 - 1e-4, 1.0 + 1e-4] {
                let ts =
                    entropy_of_spectrum(&spec, &EntropyFunctional::tsallis(q).unwrap()).unwrap();
                assert!((ts - vn).abs() < 1e-3, "q = {q}: {ts} vs {vn}");
            }
        }
    }

    #[test]
    fn renyi_is_the_stated_monotone_of_tsallis() {
        let mut rng = trial_rng(23, 0);
        for _ in 0..20 {
            let spec = random_probabilities(&mut rng, 5);
            for q in [0.5, 2.0, 3.0] {
                let ts =
                    entropy_of_spectrum(&spec, &EntropyFunctional::tsallis(q).unwrap()).unwrap();
                let ry =
                    entropy_of_spectrum(&spec, &EntropyFunctional::renyi(q).unwrap()).unwrap();
                let expected = (1.0 - (1.0 - (1.0 - q).exp2()) * ts).log2() / (1.0 - q);
                assert!((ry - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn selector_grammar_roundtrip() {
        assert_eq!(
            "vn".parse::<EntropyFunctional>().unwrap(),
            EntropyFunctional::VonNeumann
        );
        assert_eq!(
            "quad".parse::<EntropyFunctional>().unwrap(),
            EntropyFunctional::Quadratic
        );
        assert_eq!(
            "tsallis:2".parse::<EntropyFunctional>().unwrap(),
            EntropyFunctional::Tsallis { q: 2.0 }
        );
        assert_eq!(
            "renyi:0.5".parse::<EntropyFunctional>().unwrap(),
            EntropyFunctional::Renyi { q: 0.5 }
        );
        assert!("tsallis:1".parse::<EntropyFunctional>().is_err());
        assert!("renyi:-1".parse::<EntropyFunctional>().is_err());
        assert!("shannon".parse::<EntropyFunctional>().is_err());
    }

    proptest! {
        /// Schur concavity: a ≻ b implies S_f(b) ≥ S_f(a) for every family.
        #[test]
        fn schur_concavity(raw in proptest::collection::vec(1e-3..1.0f64, 4), t in 0.0..1.0f64) {
            let sum: f64 = raw.iter().sum();
            let spec: Vec<f64> = raw.iter().map(|x| x / sum).collect();
            // b = doubly-stochastic mix of spec: interpolation toward flat
            let flat = 1.0 / spec.len() as f64;
            let mixed: Vec<f64> = spec.iter().map(|&p| t * flat + (1.0 - t) * p).collect();
            prop_assert!(majorizes(&spec, &mixed).unwrap());
            for f in all_families() {
                let sa = entropy_of_spectrum(&spec, &f).unwrap();
                let sb = entropy_of_spectrum(&mixed, &f).unwrap();
                prop_assert!(sb >= sa - 1e-10, "{f}: {sb} < {sa}");
            }
        }
    }
}
