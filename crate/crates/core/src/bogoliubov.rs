//! Bogoliubov transformations of fermionic mode operators.
//!
//! A transformation is stored through its n×n blocks (U, V), assembled as
//! the 2n×2n unitary
//!
//! ```text
//! W = | U       V      |
//!     | conj(V) conj(U)|
//! ```
//!
//! acting on the stacked operator vector: (a, a†)^T = W† (c, c†)^T, i.e.
//! a_i = Σ_j conj(U_ji) c_j + V_ji c†_j. Pairing-free transforms (V = 0)
//! reduce to ordinary sp basis changes.

use crate::fock::FockSpace;
use crate::linalg::{antisymmetry_error, expm_i_hermitian, hermiticity_error, CMat};
use crate::{Error, Result};

const UNITARITY_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-12;

/// One-body generator (h, Δ): h Hermitian, Δ antisymmetric, assembled as
///
/// ```text
/// ℋ = | h         Δ      |
///     | -conj(Δ) -conj(h)|
/// ```
#[derive(Debug, Clone)]
pub struct OneBodyGenerator {
    pub h: CMat,
    pub delta: CMat,
}

impl OneBodyGenerator {
    pub fn new(h: CMat, delta: CMat) -> Result<Self> {
        let n = h.nrows();
        if h.ncols() != n || delta.nrows() != n || delta.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: delta.nrows(),
            });
        }
        let herm = hermiticity_error(&h);
        if herm > SYMMETRY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let anti = antisymmetry_error(&delta);
        if anti > SYMMETRY_TOL {
            return Err(Error::NotAntisymmetric(anti));
        }
        Ok(OneBodyGenerator { h, delta })
    }

    pub fn n(&self) -> usize {
        self.h.nrows()
    }

    /// The assembled Hermitian 2n×2n matrix ℋ.
    pub fn assembled(&self) -> CMat {
        let n = self.n();
        let mut m = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.h[(i, j)];
                m[(i, n + j)] = self.delta[(i, j)];
                m[(n + i, j)] = -self.delta[(i, j)].conj();
                m[(n + i, n + j)] = -self.h[(i, j)].conj();
            }
        }
        m
    }

    /// Frobenius norm of the generator components.
    pub fn norm(&self) -> f64 {
        (self.h.norm_squared() + self.delta.norm_squared()).sqrt()
    }

    pub fn scale(&self, s: f64) -> OneBodyGenerator {
        OneBodyGenerator {
            h: self.h.scale(s),
            delta: self.delta.scale(s),
        }
    }
}

/// A Bogoliubov transformation through its (U, V) blocks.
#[derive(Debug, Clone)]
pub struct BogoliubovTransform {
    u: CMat,
    v: CMat,
}

impl BogoliubovTransform {
    /// Validate the unitarity conditions U U† + V V† = I, U V^T + V U^T = 0.
    pub fn new(u: CMat, v: CMat) -> Result<Self> {
        let n = u.nrows();
        if u.ncols() != n || v.nrows() != n || v.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.nrows(),
            });
        }
        let t = BogoliubovTransform { u, v };
        let dev = t.unitarity_error();
        if dev > UNITARITY_TOL {
            return Err(Error::NotBogoliubov(dev));
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        BogoliubovTransform {
            u: CMat::identity(n, n),
            v: CMat::zeros(n, n),
        }
    }

    /// Pure sp rotation (V = 0) from a unitary matrix.
    pub fn from_sp_unitary(u: CMat) -> Result<Self> {
        let n = u.nrows();
        BogoliubovTransform::new(u, CMat::zeros(n, n))
    }

    /// Exponential map W = exp(i t ℋ) of a one-body generator. The block
    /// symmetry of ℋ guarantees the result has the Bogoliubov form.
    pub fn from_generator(gen: &OneBodyGenerator, t: f64) -> Self {
        let n = gen.n();
        let w = expm_i_hermitian(&gen.assembled(), t);
        let u = w.view((0, 0), (n, n)).into_owned();
        let v = w.view((0, n), (n, n)).into_owned();
        // The lower blocks equal the conjugates of the upper ones up to the
        // eigensolver's precision; assert rather than assume.
        let lower_dev = (w.view((n, 0), (n, n)).into_owned() - v.conjugate()).norm()
            + (w.view((n, n), (n, n)).into_owned() - u.conjugate()).norm();
        debug_assert!(lower_dev < 1e-10, "block symmetry violated: {lower_dev}");
        BogoliubovTransform { u, v }
    }

    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    pub fn u(&self) -> &CMat {
        &self.u
    }

    pub fn v(&self) -> &CMat {
        &self.v
    }

    /// Deviation from the Bogoliubov unitarity conditions.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.n();
        let id = CMat::identity(n, n);
        let orth = (&self.u * self.u.adjoint() + &self.v * self.v.adjoint() - id).norm();
        let pair = (&self.u * self.v.transpose() + &self.v * self.u.transpose()).norm();
        (orth * orth + pair * pair).sqrt()
    }

    /// Whether the transform mixes creation with annihilation operators.
    pub fn has_pairing(&self, tol: f64) -> bool {
        self.v.norm() > tol
    }

    /// The assembled 2n×2n unitary W.
    pub fn assembled(&self) -> CMat {
        let n = self.n();
        let mut m = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.u[(i, j)];
                m[(i, n + j)] = self.v[(i, j)];
                m[(n + i, j)] = self.v[(i, j)].conj();
                m[(n + i, n + j)] = self.u[(i, j)].conj();
            }
        }
        m
    }

    /// Composition: modes of `other` expressed in the frame of `self`.
    /// Assembled matrices multiply, so the result is W_self · W_other.
    pub fn compose(&self, other: &BogoliubovTransform) -> Result<BogoliubovTransform> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        let u = &self.u * &other.u + &self.v * other.v.conjugate();
        let v = &self.u * &other.v + &self.v * other.u.conjugate();
        Ok(BogoliubovTransform { u, v })
    }

    /// Inverse transformation W†.
    pub fn inverse(&self) -> BogoliubovTransform {
        BogoliubovTransform {
            u: self.u.adjoint(),
            v: self.v.transpose(),
        }
    }

    /// Project back onto the group after accumulated compositions: the polar
    /// factor W (W†W)^(-1/2) preserves the block symmetry, which is then
    /// re-enforced exactly by averaging the conjugate blocks.
    pub fn renormalized(&self) -> BogoliubovTransform {
        let n = self.n();
        let w = self.assembled();
        let gram = w.adjoint() * &w;
        let inv_sqrt = crate::linalg::spectral_map(&gram, |x| 1.0 / x.max(1e-300).sqrt());
        let polar = &w * inv_sqrt;
        let u = polar.view((0, 0), (n, n)).into_owned();
        let v = polar.view((0, n), (n, n)).into_owned();
        let u_low = polar.view((n, n), (n, n)).into_owned().conjugate();
        let v_low = polar.view((n, 0), (n, n)).into_owned().conjugate();
        BogoliubovTransform {
            u: (u + u_low).scale(0.5),
            v: (v + v_low).scale(0.5),
        }
    }

    /// Dense Fock matrix of the quasiparticle annihilation operator
    /// a_k = Σ_j conj(U_jk) c_j + V_jk c†_j, on the full space.
    pub fn quasiparticle_mode(&self, space: &FockSpace, k: usize) -> Result<CMat> {
        if k >= self.n() {
            return Err(Error::ModeIndexOutOfRange {
                index: k,
                n: self.n(),
            });
        }
        if space.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: space.n(),
            });
        }
        let cs = space.annihilation_all();
        Ok(self.mode_from_cached(&cs, k))
    }

    /// Same as [`Self::quasiparticle_mode`] with precomputed c-matrices.
    pub fn mode_from_cached(&self, cs: &[CMat], k: usize) -> CMat {
        let d = cs[0].nrows();
        let mut a = CMat::zeros(d, d);
        for j in 0..self.n() {
            let uc = self.u[(j, k)].conj();
            if uc.norm_sqr() > 0.0 {
                a += cs[j].scale(1.0) * uc;
            }
            let v = self.v[(j, k)];
            if v.norm_sqr() > 0.0 {
                a += cs[j].adjoint() * v;
            }
        }
        a
    }

    /// All n quasiparticle mode matrices for this transform.
    pub fn modes_from_cached(&self, cs: &[CMat]) -> Vec<CMat> {
        (0..self.n()).map(|k| self.mode_from_cached(cs, k)).collect()
    }
}
