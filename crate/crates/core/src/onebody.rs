//! One-body objects extracted from many-body states: the n×n density matrix
//! ρ^sp with entries ⟨c†_j c_i⟩, the pairing tensor κ with entries ⟨c_j c_i⟩,
//! and the extended 2n×2n matrix
//!
//! ```text
//! ρ^qsp = | ρ^sp        κ             |
//!         | -conj(κ)    1 - conj(ρ^sp)|
//! ```
//!
//! whose spectrum comes in pairs (f_k, 1 - f_k). Also the pure-state one-body
//! entanglement entropies, the odd-parity four-mode normal form and its
//! concurrence, and the Slater (Zumino) decomposition of two-fermion states.

use crate::bogoliubov::BogoliubovTransform;
use crate::entropy::EntropyFunctional;
use crate::fock::{FockSpace, Sector};
use crate::linalg::{
    antisymmetry_error, cr, eigh, fix_phase, frobenius_inner, hermiticity_error, trace_product,
    CMat, CVec, I, ZERO,
};
use crate::state::{pure_from_full_amplitudes, StateMatrix};
use crate::{Error, Result};

const PARITY_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-10;
/// Eigenvalues within this distance of 1/2 are handled as degenerate
/// Kramers pairs when building the diagonalizing transform.
const HALF_CLUSTER_TOL: f64 = 1e-8;

/// One-body contractions of a state and their spectra.
#[derive(Debug, Clone)]
pub struct OneBodySummary {
    /// ρ^sp with entries ⟨c†_j c_i⟩.
    pub rho_sp: CMat,
    /// κ with entries ⟨c_j c_i⟩.
    pub kappa: CMat,
    /// Assembled 2n×2n extended density matrix.
    pub rho_qsp: CMat,
    /// Eigenvalues of ρ^sp, descending, clipped to [0, 1].
    pub sp_eigs: Vec<f64>,
    /// Pair representatives f_k ≥ 1/2 of the ρ^qsp spectrum, descending.
    pub qsp_eigs: Vec<f64>,
    /// Frobenius norm removed when enforcing Hermiticity/antisymmetry.
    pub symmetrization_error: f64,
}

impl OneBodySummary {
    pub fn n(&self) -> usize {
        self.rho_sp.nrows()
    }

    /// Full 2n-element ρ^qsp spectrum, descending.
    pub fn qsp_spectrum_full(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .qsp_eigs
            .iter()
            .flat_map(|&f| [f, 1.0 - f])
            .collect();
        all.sort_by(|a, b| b.partial_cmp(a).unwrap());
        all
    }
}

/// Contract a parity-commuting state down to its one-body summary.
pub fn one_body_summary(rho: &StateMatrix) -> Result<OneBodySummary> {
    let parity_dev = rho.parity_commutator_norm();
    if parity_dev > PARITY_TOL {
        return Err(Error::ParityViolation(parity_dev));
    }
    let space = rho.space();
    let n = space.n();
    let cs = space.annihilation_all();
    let rho_emb = space.embed(rho.matrix());

    // <c†_j c_i> = Tr(c_i ρ c†_j), <c_j c_i> = Tr(c_i ρ c_j)
    let mut rho_sp = CMat::zeros(n, n);
    let mut kappa = CMat::zeros(n, n);
    for i in 0..n {
        let r_i = &cs[i] * &rho_emb;
        for j in 0..n {
            rho_sp[(i, j)] = frobenius_inner(&cs[j], &r_i);
            kappa[(i, j)] = trace_product(&r_i, &cs[j]);
        }
    }

    let herm_dev = hermiticity_error(&rho_sp);
    let anti_dev = antisymmetry_error(&kappa);
    let symmetrization_error = (herm_dev * herm_dev + anti_dev * anti_dev).sqrt();
    let rho_sp = crate::linalg::hermitize(&rho_sp);
    let kappa = (&kappa - kappa.transpose()).scale(0.5);

    let mut rho_qsp = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            rho_qsp[(i, j)] = rho_sp[(i, j)];
            rho_qsp[(i, n + j)] = kappa[(i, j)];
            rho_qsp[(n + i, j)] = -kappa[(i, j)].conj();
            rho_qsp[(n + i, n + j)] =
                (if i == j { cr(1.0) } else { ZERO }) - rho_sp[(i, j)].conj();
        }
    }

    let mut sp_eigs: Vec<f64> = crate::linalg::eigvalsh(&rho_sp)
        .into_iter()
        .map(|v| v.clamp(0.0, 1.0))
        .collect();
    sp_eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut qsp_all: Vec<f64> = crate::linalg::eigvalsh(&rho_qsp)
        .into_iter()
        .map(|v| v.clamp(0.0, 1.0))
        .collect();
    qsp_all.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let qsp_eigs: Vec<f64> = qsp_all[..n].to_vec();

    Ok(OneBodySummary {
        rho_sp,
        kappa,
        rho_qsp,
        sp_eigs,
        qsp_eigs,
        symmetrization_error,
    })
}

/// The antiunitary pairing x ↦ σ_x conj(x): maps an eigenvector of ρ^qsp
/// with eigenvalue f to one with eigenvalue 1 - f.
fn pair_partner(x: &CVec) -> CVec {
    let n = x.len() / 2;
    CVec::from_fn(x.len(), |i, _| {
        if i < n {
            x[n + i].conj()
        } else {
            x[i - n].conj()
        }
    })
}

/// Build the Bogoliubov transform diagonalizing ρ^qsp: W† ρ^qsp W =
/// diag(f, 1-f) with the representatives f_k ≥ 1/2 sorted descending.
///
/// Away from f = 1/2 the pair partner of an eigenvector is automatically an
/// orthogonal eigenvector for 1 - f. Inside a degenerate f = 1/2 cluster the
/// partner map is an antiunitary involution, so the cluster is spanned by
/// partner-invariant vectors r; pairs (r_1 + i r_2)/√2 are then orthogonal
/// to their own partners by construction.
pub fn diagonalize_qsp(summary: &OneBodySummary) -> (BogoliubovTransform, Vec<f64>) {
    let n = summary.n();
    let (vals, vecs) = eigh(&summary.rho_qsp);

    let mut reps: Vec<(f64, CVec)> = Vec::with_capacity(n);
    let mut half_cluster: Vec<CVec> = Vec::new();
    for idx in (0..2 * n).rev() {
        let f = vals[idx];
        if f > 0.5 + HALF_CLUSTER_TOL {
            let mut x = vecs.column(idx).into_owned();
            fix_phase(&mut x, 1e-10);
            reps.push((f.clamp(0.0, 1.0), x));
        } else if (f - 0.5).abs() <= HALF_CLUSTER_TOL {
            half_cluster.push(vecs.column(idx).into_owned());
        }
        // f < 1/2 entries are the partners; reconstructed below
    }

    if !half_cluster.is_empty() {
        // Partner-invariant orthonormal basis of the cluster.
        let mut real_basis: Vec<CVec> = Vec::new();
        for y in &half_cluster {
            let jy = pair_partner(y);
            for cand in [y + &jy, (y - &jy).map(|z| z * I)] {
                let mut v = cand;
                for r in &real_basis {
                    let overlap = r.dotc(&v);
                    v -= r * overlap;
                }
                // re-symmetrize against numerical drift
                v = (&v + pair_partner(&v)).scale(0.5);
                let norm = v.norm();
                if norm > 1e-6 {
                    real_basis.push(v.unscale(norm));
                }
            }
        }
        debug_assert_eq!(real_basis.len(), half_cluster.len());
        for pair in real_basis.chunks_exact(2) {
            let x = (&pair[0] + pair[1].map(|z| z * I)).scale(std::f64::consts::FRAC_1_SQRT_2);
            reps.push((0.5, x));
        }
    }

    debug_assert_eq!(reps.len(), n);
    let mut w = CMat::zeros(2 * n, 2 * n);
    let mut f_list = Vec::with_capacity(n);
    for (k, (f, x)) in reps.iter().enumerate() {
        w.set_column(k, x);
        w.set_column(n + k, &pair_partner(x));
        f_list.push(*f);
    }

    let u = w.view((0, 0), (n, n)).into_owned();
    let v_lower = w.view((n, 0), (n, n)).into_owned();
    let transform = BogoliubovTransform::new(u, v_lower.conjugate())
        .expect("paired eigenvectors form a Bogoliubov transform");
    (transform, f_list)
}

/// Per-mode entropy of the occupation pair {p, 1-p} under the chosen
/// functional; trace forms give f(p) + f(1-p).
pub fn pair_entropy(f: &EntropyFunctional, p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    match *f {
        EntropyFunctional::Renyi { q } => (p.powf(q) + (1.0 - p).powf(q)).log2() / (1.0 - q),
        ref trace_form => trace_form.integrand(p) + trace_form.integrand(1.0 - p),
    }
}

fn require_pure(psi: &StateMatrix) -> Result<()> {
    let purity = psi.purity();
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure(purity));
    }
    Ok(())
}

/// One-body entanglement entropy of a pure state: Σ_k S_f({λ_k, 1-λ_k})
/// over the ρ^sp spectrum. Vanishes exactly on Slater determinants.
pub fn sp_entanglement_entropy(psi: &StateMatrix, f: &EntropyFunctional) -> Result<f64> {
    require_pure(psi)?;
    let summary = one_body_summary(psi)?;
    Ok(summary.sp_eigs.iter().map(|&l| pair_entropy(f, l)).sum())
}

/// Generalized one-body entanglement entropy of a pure state over the full
/// ρ^qsp spectrum. Vanishes exactly on quasiparticle Slater determinants.
pub fn qsp_entanglement_entropy(psi: &StateMatrix, f: &EntropyFunctional) -> Result<f64> {
    require_pure(psi)?;
    let summary = one_body_summary(psi)?;
    Ok(summary.qsp_eigs.iter().map(|&l| pair_entropy(f, l)).sum())
}

/// Odd-parity pure state of four modes: a superposition of one-fermion and
/// three-fermion components,
/// |ψ⟩ = Σ_i α_i c†_i|0⟩ + conj(β_i) c_i |0̄⟩ with |0̄⟩ fully occupied.
#[derive(Debug, Clone)]
pub struct OddParityFourModeState {
    alpha: CVec,
    beta: CVec,
}

impl OddParityFourModeState {
    pub fn new(alpha: CVec, beta: CVec) -> Result<Self> {
        if alpha.len() != 4 || beta.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: alpha.len().max(beta.len()),
            });
        }
        let norm_sq = alpha.norm_squared() + beta.norm_squared();
        if (norm_sq - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm_sq.sqrt(), 1e-10));
        }
        let scale = norm_sq.sqrt();
        Ok(OddParityFourModeState {
            alpha: alpha.unscale(scale),
            beta: beta.unscale(scale),
        })
    }

    /// The maximally entangled reference state α = β = (1/√2, 0, 0, 0).
    pub fn maximally_entangled() -> Self {
        let mut alpha = CVec::zeros(4);
        alpha[0] = cr(std::f64::consts::FRAC_1_SQRT_2);
        OddParityFourModeState {
            alpha: alpha.clone(),
            beta: alpha,
        }
    }

    pub fn alpha(&self) -> &CVec {
        &self.alpha
    }

    pub fn beta(&self) -> &CVec {
        &self.beta
    }

    /// Fermionic concurrence C = 2 |β† α| ∈ [0, 1].
    pub fn concurrence(&self) -> f64 {
        (2.0 * self.beta.dotc(&self.alpha).norm()).clamp(0.0, 1.0)
    }

    /// The fourfold-degenerate ρ^qsp eigenvalue pair
    /// f_± = (1 ± sqrt(1 - C²))/2.
    pub fn qsp_pair(&self) -> (f64, f64) {
        let c = self.concurrence();
        let root = (1.0 - c * c).max(0.0).sqrt();
        ((1.0 + root) / 2.0, (1.0 - root) / 2.0)
    }

    /// Assemble the Fock state on the odd-parity sector of four modes.
    pub fn to_state(&self) -> StateMatrix {
        let space = FockSpace::new(4, Sector::Odd).expect("n = 4 in range");
        let full = 1usize << 4;
        let all_occupied = full - 1;
        let mut amps = CVec::zeros(full);
        for m in 0..4 {
            amps[1 << m] += self.alpha[m];
            // c_m |0̄⟩ carries the Jordan-Wigner sign (-1)^m
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            amps[all_occupied & !(1 << m)] += self.beta[m].conj() * cr(sign);
        }
        pure_from_full_amplitudes(space, &amps).expect("normalized odd-parity amplitudes")
    }
}

/// Outcome of the Slater (Zumino) decomposition of a two-fermion state.
#[derive(Debug, Clone)]
pub struct SlaterDecomposition {
    /// Unitary U with U† M conj(U) block diagonal.
    pub unitary: CMat,
    /// Slater eigenvalues λ_k (each doubly degenerate pair counted once),
    /// descending; zero modes excluded.
    pub lambdas: Vec<f64>,
}

/// Two-fermion state |ψ⟩ = ½ Σ_ij M_ij c†_i c†_j |0⟩ with M antisymmetric
/// and ½ Tr M M† = 1.
#[derive(Debug, Clone)]
pub struct TwoFermionState {
    m: CMat,
}

impl TwoFermionState {
    pub fn new(m: CMat) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.ncols(),
            });
        }
        let anti = antisymmetry_error(&m);
        if anti > 1e-10 {
            return Err(Error::NotAntisymmetric(anti));
        }
        let half_trace = m.norm_squared() / 2.0;
        if (half_trace - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized(half_trace, 1e-8));
        }
        Ok(TwoFermionState {
            m: ((&m - m.transpose()).scale(0.5)).unscale(half_trace.sqrt()),
        })
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn coefficient_matrix(&self) -> &CMat {
        &self.m
    }

    /// Canonical form via the Hermitian eigenproblem of M M†: each positive
    /// eigenvalue λ is doubly degenerate; a representative eigenvector v is
    /// completed by its partner w = M conj(v)/√λ, and the column pair (w, v)
    /// produces the block √λ [[0, 1], [-1, 0]] in U† M conj(U). Zero modes
    /// are filled with identity columns projected onto the remaining space.
    pub fn slater_decompose(&self) -> SlaterDecomposition {
        let n = self.n();
        let h = &self.m * self.m.adjoint();
        let (vals, vecs) = eigh(&h);

        let mut columns: Vec<CVec> = Vec::with_capacity(n);
        let mut lambdas = Vec::new();

        let project_out = |v: &mut CVec, chosen: &[CVec]| {
            for c in chosen {
                let overlap = c.dotc(&*v);
                *v -= c * overlap;
            }
        };

        for idx in (0..n).rev() {
            if vals[idx] < 1e-12 {
                break;
            }
            let mut v = vecs.column(idx).into_owned();
            project_out(&mut v, &columns);
            let norm = v.norm();
            if norm < 0.5 {
                continue; // already represented through a partner
            }
            v = v.unscale(norm);
            fix_phase(&mut v, 1e-10);
            let u = &self.m * v.conjugate();
            let lambda = u.norm_squared();
            if lambda < 1e-12 {
                continue;
            }
            let w = u.unscale(lambda.sqrt());
            lambdas.push(lambda);
            columns.push(w);
            columns.push(v);
        }

        // zero modes: deterministic completion from identity columns
        let mut e_idx = 0;
        while columns.len() < n && e_idx < n {
            let mut v = CVec::zeros(n);
            v[e_idx] = cr(1.0);
            e_idx += 1;
            project_out(&mut v, &columns);
            let norm = v.norm();
            if norm > 1e-6 {
                columns.push(v.unscale(norm));
            }
        }

        let mut unitary = CMat::zeros(n, n);
        for (k, col) in columns.iter().enumerate() {
            unitary.set_column(k, col);
        }
        SlaterDecomposition { unitary, lambdas }
    }

    /// Assemble the Fock state; amplitude of the pair (i, j), i < j, is M_ij.
    pub fn to_state(&self, sector: Sector) -> Result<StateMatrix> {
        let n = self.n();
        let space = FockSpace::new(n, sector)?;
        let mut amps = CVec::zeros(1 << n);
        for i in 0..n {
            for j in (i + 1)..n {
                amps[(1 << i) | (1 << j)] = self.m[(i, j)];
            }
        }
        pure_from_full_amplitudes(space, &amps)
    }
}

/// Block-diagonal canonical matrix D with blocks √λ_k [[0, 1], [-1, 0]].
pub fn slater_normal_form(n: usize, lambdas: &[f64]) -> CMat {
    let mut d = CMat::zeros(n, n);
    for (k, &l) in lambdas.iter().enumerate() {
        let s = cr(l.sqrt());
        d[(2 * k, 2 * k + 1)] = s;
        d[(2 * k + 1, 2 * k)] = -s;
    }
    d
}
