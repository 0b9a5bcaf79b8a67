//! Occupation-number Fock space of n fermionic modes.
//!
//! Basis states are bitstrings b in 0..2^n with bit m equal to the occupation
//! of mode m (mode 0 is the least significant bit), enumerated in increasing
//! bitstring order. Creation and annihilation matrices carry the
//! Jordan-Wigner sign string over lower mode indices:
//!
//! ```text
//! c_m |...n_m...> = (-1)^(sum_{j<m} n_j) δ_{n_m,1} |...n_m - 1...>
//! ```
//!
//! Mode operators are always built on the full 2^n-dimensional space;
//! parity-even products may afterwards be restricted to an even/odd sector.

use crate::linalg::{cr, CMat, ZERO};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest supported mode count; keeps the dense Fock dimension at 4096.
pub const MAX_MODES: usize = 12;

const SYMMETRY_TOL: f64 = 1e-12;

/// Parity sector selector for a Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl Sector {
    fn admits(self, bits: usize) -> bool {
        match self {
            Sector::Full => true,
            Sector::Even => bits.count_ones() % 2 == 0,
            Sector::Odd => bits.count_ones() % 2 == 1,
        }
    }
}

/// What a [`ModeOperator`] matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Annihilation,
    Creation,
    Number,
    ProjectorOccupied,
    ProjectorEmpty,
}

/// A single-mode operator as a dense matrix on the full Fock space.
#[derive(Debug, Clone)]
pub struct ModeOperator {
    pub matrix: CMat,
    pub kind: ModeKind,
    pub mode: usize,
}

/// Enumerated occupation-number basis, optionally restricted to a parity
/// sector.
#[derive(Debug, Clone)]
pub struct FockSpace {
    n: usize,
    sector: Sector,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sector == other.sector
    }
}

impl FockSpace {
    pub fn new(n: usize, sector: Sector) -> Result<Self> {
        if n < 1 || n > MAX_MODES {
            return Err(Error::ModeCountOutOfRange(n, MAX_MODES));
        }
        let full = 1usize << n;
        let basis: Vec<usize> = (0..full).filter(|&b| sector.admits(b)).collect();
        let mut position = vec![None; full];
        for (i, &b) in basis.iter().enumerate() {
            position[b] = Some(i);
        }
        Ok(FockSpace {
            n,
            sector,
            basis,
            position,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Dimension of the (possibly sector-restricted) space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension 2^n of the underlying full Fock space.
    pub fn full_dim(&self) -> usize {
        1 << self.n
    }

    /// Ordered basis bitstrings of this space.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Position of a full-space bitstring within this basis, if admitted.
    pub fn position(&self, bits: usize) -> Option<usize> {
        self.position.get(bits).copied().flatten()
    }

    /// Companion space on the same modes with a different sector.
    pub fn with_sector(&self, sector: Sector) -> FockSpace {
        FockSpace::new(self.n, sector).expect("mode count already validated")
    }

    fn check_mode(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::ModeIndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Restrict a parity-even full-space operator to this sector.
    ///
    /// For the full sector this is a copy. The caller is responsible for the
    /// operator actually being parity-even; parity-odd operators have no
    /// sector-diagonal action.
    pub fn restrict(&self, full_op: &CMat) -> CMat {
        debug_assert_eq!(full_op.nrows(), self.full_dim());
        if matches!(self.sector, Sector::Full) {
            return full_op.clone();
        }
        let d = self.dim();
        CMat::from_fn(d, d, |i, j| full_op[(self.basis[i], self.basis[j])])
    }

    /// Embed a sector operator back into the full space (zero elsewhere).
    pub fn embed(&self, sector_op: &CMat) -> CMat {
        debug_assert_eq!(sector_op.nrows(), self.dim());
        if matches!(self.sector, Sector::Full) {
            return sector_op.clone();
        }
        let mut full = CMat::zeros(self.full_dim(), self.full_dim());
        for (i, &bi) in self.basis.iter().enumerate() {
            for (j, &bj) in self.basis.iter().enumerate() {
                full[(bi, bj)] = sector_op[(i, j)];
            }
        }
        full
    }

    /// Annihilation matrix c_k on the full Fock space.
    pub fn annihilation_full(&self, k: usize) -> Result<CMat> {
        self.check_mode(k)?;
        let d = self.full_dim();
        let mut m = CMat::zeros(d, d);
        let bit = 1usize << k;
        let lower_mask = bit - 1;
        for b in 0..d {
            if b & bit != 0 {
                let sign = if ((b & lower_mask).count_ones()) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                m[(b & !bit, b)] = cr(sign);
            }
        }
        Ok(m)
    }

    /// All n annihilation matrices at once.
    pub fn annihilation_all(&self) -> Vec<CMat> {
        (0..self.n)
            .map(|k| self.annihilation_full(k).expect("mode in range"))
            .collect()
    }

    pub fn mode_operator(&self, kind: ModeKind, k: usize) -> Result<ModeOperator> {
        let c = self.annihilation_full(k)?;
        let matrix = match kind {
            ModeKind::Annihilation => c,
            ModeKind::Creation => c.adjoint(),
            ModeKind::Number => c.adjoint() * &c,
            ModeKind::ProjectorOccupied => c.adjoint() * &c,
            ModeKind::ProjectorEmpty => &c * c.adjoint(),
        };
        Ok(ModeOperator {
            matrix,
            kind,
            mode: k,
        })
    }

    /// Occupied/empty projector pair (Π_k, Π_k̄) for particle mode k, on the
    /// full space.
    pub fn mode_projectors(&self, k: usize) -> Result<(CMat, CMat)> {
        let c = self.annihilation_full(k)?;
        Ok((c.adjoint() * &c, &c * c.adjoint()))
    }

    /// Number parity operator P = exp(iπN) on the full space: diagonal
    /// entries (-1)^popcount, with P² = I.
    pub fn parity_full(&self) -> CMat {
        let d = self.full_dim();
        CMat::from_fn(d, d, |i, j| {
            if i == j {
                cr(if (i as u32).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                })
            } else {
                ZERO
            }
        })
    }

    /// Total number operator N on the full space.
    pub fn number_full(&self) -> CMat {
        let d = self.full_dim();
        CMat::from_fn(d, d, |i, j| {
            if i == j {
                cr(i.count_ones() as f64)
            } else {
                ZERO
            }
        })
    }

    /// Fock matrix of the general one-body form
    /// H = Σ h_ij c†_i c_j + ½ Σ (Δ_ij c†_i c†_j + conj(Δ_ij) c_j c_i),
    /// on the full space. Requires h Hermitian and Δ antisymmetric.
    pub fn one_body_hamiltonian(&self, h: &CMat, delta: &CMat) -> Result<CMat> {
        if h.nrows() != self.n || h.ncols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: h.nrows(),
            });
        }
        if delta.nrows() != self.n || delta.ncols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: delta.nrows(),
            });
        }
        let herm = crate::linalg::hermiticity_error(h);
        if herm > SYMMETRY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let anti = crate::linalg::antisymmetry_error(delta);
        if anti > SYMMETRY_TOL {
            return Err(Error::NotAntisymmetric(anti));
        }

        let cs = self.annihilation_all();
        let d = self.full_dim();
        let mut out = CMat::zeros(d, d);
        for i in 0..self.n {
            let ci_dag = cs[i].adjoint();
            for j in 0..self.n {
                if h[(i, j)] != ZERO {
                    out += (&ci_dag * &cs[j]) * h[(i, j)];
                }
                if delta[(i, j)] != ZERO {
                    let pair = &ci_dag * cs[j].adjoint();
                    out += pair.adjoint() * (delta[(i, j)].conj() * cr(0.5));
                    out += pair * (delta[(i, j)] * cr(0.5));
                }
            }
        }
        Ok(out)
    }
}
