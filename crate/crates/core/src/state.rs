//! Density matrices on a Fock space or one of its parity sectors.

use crate::fock::{FockSpace, Sector};
use crate::linalg::{eigh, hermiticity_error, hermitize, trace, CMat, CVec};
use crate::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
const PSD_TOL: f64 = 1e-9;
const PURITY_TOL: f64 = 1e-10;

/// Hermitian, positive semi-definite, trace-one matrix on the ordered basis
/// of a [`FockSpace`].
#[derive(Debug, Clone)]
pub struct StateMatrix {
    space: FockSpace,
    mat: CMat,
}

impl StateMatrix {
    /// Validate and wrap a density matrix. The trace is renormalized exactly
    /// when within tolerance of one.
    pub fn from_density(space: FockSpace, mat: CMat) -> Result<Self> {
        if mat.nrows() != space.dim() || mat.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: mat.nrows(),
            });
        }
        let herm = hermiticity_error(&mat);
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let mat = hermitize(&mat);
        let tr = trace(&mat).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(tr, TRACE_TOL));
        }
        let mat = mat.unscale(tr);
        let min_eig = crate::linalg::eigvalsh(&mat)
            .first()
            .copied()
            .unwrap_or(f64::INFINITY);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemiDefinite(min_eig));
        }
        Ok(StateMatrix { space, mat })
    }

    /// Pure state |ψ⟩⟨ψ| from amplitudes over the space's basis.
    pub fn pure_from_amplitudes(space: FockSpace, amps: CVec) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: amps.len(),
            });
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(norm, TRACE_TOL));
        }
        let amps = amps.unscale(norm);
        let mat = &amps * amps.adjoint();
        Ok(StateMatrix { space, mat })
    }

    /// Maximally mixed state I/d on the space.
    pub fn maximally_mixed(space: FockSpace) -> Self {
        let d = space.dim();
        let mat = CMat::identity(d, d).unscale(d as f64);
        StateMatrix { space, mat }
    }

    /// Mixture w ρ_pure + (1-w) I/d on the pure state's space.
    pub fn mixture(pure: &StateMatrix, w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Invalid(format!(
                "mixing weight w = {w} outside [0, 1]"
            )));
        }
        let d = pure.space.dim() as f64;
        let mat = pure.mat.scale(w) + CMat::identity(pure.space.dim(), pure.space.dim()).scale((1.0 - w) / d);
        Ok(StateMatrix {
            space: pure.space.clone(),
            mat,
        })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - 1.0).abs() <= PURITY_TOL
    }

    /// Eigenvalues clipped to [0, 1], descending.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = crate::linalg::eigvalsh(&self.mat)
            .iter()
            .map(|&v| v.clamp(0.0, 1.0))
            .collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    /// Amplitude vector of a pure state (top eigenvector, phase fixed).
    pub fn pure_amplitudes(&self) -> Result<CVec> {
        let purity = self.purity();
        if (purity - 1.0).abs() > PURITY_TOL {
            return Err(Error::NotPure(purity));
        }
        let (vals, vecs) = eigh(&self.mat);
        let top = vals.len() - 1;
        if (vals[top] - 1.0).abs() > 1e-8 {
            return Err(Error::NotPure(purity));
        }
        let mut v = vecs.column(top).into_owned();
        crate::linalg::fix_phase(&mut v, 1e-12);
        Ok(v)
    }

    /// ‖[ρ, P]‖ on this space. Parity is diagonal, so the restriction is
    /// valid on any sector.
    pub fn parity_commutator_norm(&self) -> f64 {
        let p = self.space.restrict(&self.space.parity_full());
        crate::linalg::commutator(&self.mat, &p).norm()
    }

    /// Expectation Tr(ρ · op) of a parity-even full-space operator.
    pub fn expectation_full(&self, full_op: &CMat) -> crate::linalg::C64 {
        let restricted = self.space.restrict(full_op);
        // Tr(ρ A) without forming the product.
        let d = self.dim();
        let mut acc = crate::linalg::ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += self.mat[(i, j)] * restricted[(j, i)];
            }
        }
        acc
    }

    /// Conjugate by a unitary given on the full space (must be parity-even
    /// when the state lives on a sector).
    pub fn conjugated_full(&self, u_full: &CMat) -> Result<Self> {
        let u = self.space.restrict(u_full);
        let mat = &u * &self.mat * u.adjoint();
        StateMatrix::from_density(self.space.clone(), mat)
    }

    /// The same state embedded in the full 2^n-dimensional space.
    pub fn embed_full(&self) -> StateMatrix {
        if matches!(self.space.sector(), Sector::Full) {
            return self.clone();
        }
        let full = self.space.with_sector(Sector::Full);
        let mat = self.space.embed(&self.mat);
        StateMatrix { space: full, mat }
    }

    /// Construct directly without validation; reserved for internal paths
    /// that produce exactly valid states.
    pub(crate) fn from_parts_unchecked(space: FockSpace, mat: CMat) -> Self {
        StateMatrix { space, mat }
    }
}

/// Build a pure state on `space` from a full-space amplitude vector,
/// restricting to the sector and checking no weight is lost.
pub fn pure_from_full_amplitudes(space: FockSpace, full_amps: &CVec) -> Result<StateMatrix> {
    if full_amps.len() != space.full_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.full_dim(),
            got: full_amps.len(),
        });
    }
    let amps = CVec::from_iterator(
        space.dim(),
        space.basis().iter().map(|&b| full_amps[b]),
    );
    let lost: f64 = full_amps.norm_squared() - amps.norm_squared();
    if lost.abs() > 1e-10 {
        return Err(Error::Invalid(format!(
            "amplitudes have weight {lost:.3e} outside the {:?} sector",
            space.sector()
        )));
    }
    StateMatrix::pure_from_amplitudes(space, amps)
}
