//! JSON state files: the on-disk description of a fermionic state.
//!
//! ```json
//! {
//!   "n": 4,
//!   "sector": "odd",
//!   "representation": {
//!     "type": "alpha-beta",
//!     "alpha": [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
//!     "beta":  [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
//!   }
//! }
//! ```
//!
//! Complex numbers are `[real, imaginary]` pairs. Representations:
//! `pure-amplitudes` (vector over the sector basis), `density-matrix`,
//! `alpha-beta` (four-mode odd-parity normal form), `two-fermion-m`
//! (antisymmetric coefficient matrix), and `mixture` wrapping a pure inner
//! representation with weight `w` and an optional ensemble-dimension
//! override (the two-fermion canonical ensemble n(n-1)/2 mixes with the
//! normalized projector onto the two-particle subspace).

use crate::CliError;
use fermi_loss::linalg::{cr, CMat, CVec, C64};
use fermi_loss::{FockSpace, OddParityFourModeState, Sector, StateMatrix, TwoFermionState};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub type ComplexPair = [f64; 2];

fn complex(pair: &ComplexPair) -> C64 {
    C64::new(pair[0], pair[1])
}

fn vector(pairs: &[ComplexPair]) -> CVec {
    CVec::from_iterator(pairs.len(), pairs.iter().map(complex))
}

fn matrix(rows: &[Vec<ComplexPair>]) -> Result<CMat, CliError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(CliError::Validation("ragged matrix rows".into()));
    }
    Ok(CMat::from_fn(r, c, |i, j| complex(&rows[i][j])))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Representation {
    PureAmplitudes {
        amplitudes: Vec<ComplexPair>,
    },
    DensityMatrix {
        matrix: Vec<Vec<ComplexPair>>,
    },
    AlphaBeta {
        alpha: Vec<ComplexPair>,
        beta: Vec<ComplexPair>,
    },
    TwoFermionM {
        m: Vec<Vec<ComplexPair>>,
    },
    Mixture {
        inner: Box<Representation>,
        w: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d_override: Option<usize>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub sector: Sector,
    pub representation: Representation,
}

impl StateFile {
    pub fn load(path: &Path) -> Result<StateFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read state file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Validation(format!("invalid state file {}: {e}", path.display()))
        })
    }

    /// Assemble the density matrix on its Fock space.
    pub fn build(&self) -> Result<StateMatrix, CliError> {
        let space = FockSpace::new(self.n, self.sector)?;
        build_representation(&self.representation, &space)
    }
}

fn build_representation(
    rep: &Representation,
    space: &FockSpace,
) -> Result<StateMatrix, CliError> {
    match rep {
        Representation::PureAmplitudes { amplitudes } => {
            Ok(StateMatrix::pure_from_amplitudes(space.clone(), vector(amplitudes))?)
        }
        Representation::DensityMatrix { matrix: rows } => {
            Ok(StateMatrix::from_density(space.clone(), matrix(rows)?)?)
        }
        Representation::AlphaBeta { alpha, beta } => {
            if space.n() != 4 || space.sector() != Sector::Odd {
                return Err(CliError::Validation(
                    "alpha-beta states require n = 4 and the odd sector".into(),
                ));
            }
            let state = OddParityFourModeState::new(vector(alpha), vector(beta))?;
            Ok(state.to_state())
        }
        Representation::TwoFermionM { m } => {
            if space.sector() == Sector::Odd {
                return Err(CliError::Validation(
                    "two-fermion states have even parity".into(),
                ));
            }
            let state = TwoFermionState::new(matrix(m)?)?;
            Ok(state.to_state(space.sector())?)
        }
        Representation::Mixture {
            inner,
            w,
            d_override,
        } => {
            let pure = build_representation(inner, space)?;
            if !pure.is_pure() {
                return Err(CliError::Validation(
                    "mixture inner representation must be a pure state".into(),
                ));
            }
            match d_override {
                None => Ok(StateMatrix::mixture(&pure, *w)?),
                Some(d) if *d == space.dim() => Ok(StateMatrix::mixture(&pure, *w)?),
                Some(d) => {
                    // canonical two-fermion ensemble: mix with the projector
                    // onto the two-particle subspace
                    let two_particle: Vec<usize> = (0..space.dim())
                        .filter(|&i| (space.basis()[i] as u32).count_ones() == 2)
                        .collect();
                    if !matches!(inner.as_ref(), Representation::TwoFermionM { .. })
                        || *d != two_particle.len()
                    {
                        return Err(CliError::Validation(format!(
                            "d_override {d} matches neither the space dimension {} nor the \
                             two-particle subspace of a two-fermion state",
                            space.dim()
                        )));
                    }
                    if !(0.0..=1.0).contains(w) {
                        return Err(CliError::Validation(format!(
                            "mixing weight {w} outside [0, 1]"
                        )));
                    }
                    let mut mat = pure.matrix().scale(*w);
                    let floor = (1.0 - w) / *d as f64;
                    for &i in &two_particle {
                        mat[(i, i)] += cr(floor);
                    }
                    Ok(StateMatrix::from_density(space.clone(), mat)?)
                }
            }
        }
    }
}

/// Serialized Bogoliubov transform: row-major complex pair arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformFile {
    pub n: usize,
    pub u: Vec<Vec<ComplexPair>>,
    pub v: Vec<Vec<ComplexPair>>,
}

impl TransformFile {
    pub fn from_transform(w: &fermi_loss::BogoliubovTransform) -> TransformFile {
        let n = w.n();
        let pairs = |m: &CMat| -> Vec<Vec<ComplexPair>> {
            (0..n)
                .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect()
        };
        TransformFile {
            n,
            u: pairs(w.u()),
            v: pairs(w.v()),
        }
    }

    pub fn to_transform(&self) -> Result<fermi_loss::BogoliubovTransform, CliError> {
        Ok(fermi_loss::BogoliubovTransform::new(
            matrix(&self.u)?,
            matrix(&self.v)?,
        )?)
    }

    pub fn load(path: &Path) -> Result<TransformFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read transform file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Validation(format!(
                "invalid transform file {}: {e}",
                path.display()
            ))
        })
    }
}
