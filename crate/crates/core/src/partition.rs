//! Bipartitions of the single-particle space: parity-blocked Schmidt
//! decompositions, reduced states of mode subsets, the single-mode
//! entanglement-of-formation identity, and purification of mixed states.
//!
//! A subset A of m modes splits every basis bitstring b into an A-part μ and
//! a B-part ν. Writing basis kets with the A-modes' creation operators in
//! front, |μν⟩ = Π_{i∈A} (c†_i)^{n_i} Π_{j∈B} (c†_j)^{n_j} |0⟩, relates to
//! the globally ordered ket by the parity of the permutation that interleaves
//! the two ascending sequences; all fermionic sign bookkeeping for subsets is
//! centralized in that sign.

use crate::entropy::{entropy_of_spectrum, EntropyFunctional};
use crate::fock::{FockSpace, Sector};
use crate::linalg::{cr, eigh, CMat, CVec};
use crate::state::{pure_from_full_amplitudes, StateMatrix};
use crate::{Error, Result};

const PURITY_TOL: f64 = 1e-10;

/// Mode subset with precomputed bit masks and index packing.
#[derive(Debug, Clone)]
struct Split {
    a_modes: Vec<usize>,
    b_modes: Vec<usize>,
}

impl Split {
    fn new(n: usize, subset: &[usize]) -> Result<Self> {
        let mut a_modes: Vec<usize> = subset.to_vec();
        a_modes.sort_unstable();
        a_modes.dedup();
        if a_modes.is_empty() || a_modes.len() >= n || a_modes.iter().any(|&m| m >= n) {
            return Err(Error::InvalidModeSubset(n));
        }
        let b_modes: Vec<usize> = (0..n).filter(|m| !a_modes.contains(m)).collect();
        Ok(Split { a_modes, b_modes })
    }

    fn m(&self) -> usize {
        self.a_modes.len()
    }

    /// Pack the A-part of a full bitstring into an m-bit index.
    fn mu_of(&self, bits: usize) -> usize {
        self.a_modes
            .iter()
            .enumerate()
            .filter(|(_, &m)| bits & (1 << m) != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn nu_of(&self, bits: usize) -> usize {
        self.b_modes
            .iter()
            .enumerate()
            .filter(|(_, &m)| bits & (1 << m) != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Reassemble a full bitstring from subset indices.
    fn bits_of(&self, mu: usize, nu: usize) -> usize {
        let mut bits = 0;
        for (i, &m) in self.a_modes.iter().enumerate() {
            if mu & (1 << i) != 0 {
                bits |= 1 << m;
            }
        }
        for (j, &m) in self.b_modes.iter().enumerate() {
            if nu & (1 << j) != 0 {
                bits |= 1 << m;
            }
        }
        bits
    }

    /// Sign of reordering the A-then-B creation product into global mode
    /// order: (-1)^#{(a, b) ∈ A_occ × B_occ : b < a}.
    fn sign(&self, mu: usize, nu: usize) -> f64 {
        let mut inversions = 0usize;
        for (i, &a) in self.a_modes.iter().enumerate() {
            if mu & (1 << i) == 0 {
                continue;
            }
            for (j, &b) in self.b_modes.iter().enumerate() {
                if nu & (1 << j) != 0 && b < a {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Schmidt data of a pure state across a mode-subset bipartition.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    /// The A-modes, ascending.
    pub subset: Vec<usize>,
    /// Coefficient matrix C with ψ = Σ C_{μν} |μν⟩; rows μ, columns ν.
    pub coefficients: CMat,
    /// Singular values σ_k of C, descending; Σ σ² = 1.
    pub schmidt_values: Vec<f64>,
    /// E_AB = S(ρ_A) = S(ρ_B), von Neumann.
    pub entanglement: f64,
    /// Reduced state of A on its own 2^m-dimensional Fock space.
    pub rho_a: StateMatrix,
    /// Reduced state of B.
    pub rho_b: StateMatrix,
}

fn definite_parity_amplitudes(psi: &StateMatrix) -> Result<CVec> {
    let amps = psi.pure_amplitudes()?;
    let space = psi.space();
    let full = CVec::from_fn(space.full_dim(), |b, _| {
        space.position(b).map_or(crate::linalg::ZERO, |i| amps[i])
    });
    // definite number parity: no amplitude weight on both parities
    let even: f64 = (0..full.len())
        .filter(|b| (*b as u32).count_ones() % 2 == 0)
        .map(|b| full[b].norm_sqr())
        .sum();
    let odd = 1.0 - even;
    if even.min(odd) > 1e-10 {
        return Err(Error::ParityViolation(even.min(odd)));
    }
    Ok(full)
}

/// Parity-blocked Schmidt decomposition of a definite-parity pure state for
/// the bipartition (A, complement).
pub fn schmidt_decompose(psi: &StateMatrix, subset: &[usize]) -> Result<PartitionReport> {
    let n = psi.space().n();
    let split = Split::new(n, subset)?;
    let full = definite_parity_amplitudes(psi)?;

    let m = split.m();
    let rows = 1usize << m;
    let cols = 1usize << (n - m);
    let mut c = CMat::zeros(rows, cols);
    for b in 0..full.len() {
        if full[b].norm_sqr() > 0.0 {
            let mu = split.mu_of(b);
            let nu = split.nu_of(b);
            c[(mu, nu)] = full[b] * cr(split.sign(mu, nu));
        }
    }

    let svd = c.clone().svd(false, false);
    let mut schmidt_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    schmidt_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let probs: Vec<f64> = schmidt_values.iter().map(|&s| (s * s).clamp(0.0, 1.0)).collect();
    let entanglement = entropy_of_spectrum(&probs, &EntropyFunctional::VonNeumann)?;

    let rho_a_mat = &c * c.adjoint();
    let rho_b_mat = c.transpose() * c.conjugate();
    let space_a = FockSpace::new(m, Sector::Full)?;
    let space_b = FockSpace::new(n - m, Sector::Full)?;
    Ok(PartitionReport {
        subset: split.a_modes.clone(),
        coefficients: c,
        schmidt_values,
        entanglement,
        rho_a: StateMatrix::from_density(space_a, rho_a_mat)?,
        rho_b: StateMatrix::from_density(space_b, rho_b_mat)?,
    })
}

/// Reduced state of the modes in `subset`, on their own 2^m-dimensional
/// Fock space (modes relabeled ascending). Works for mixed states; the
/// input must commute with parity.
pub fn reduced_state(rho: &StateMatrix, subset: &[usize]) -> Result<StateMatrix> {
    let parity_dev = rho.parity_commutator_norm();
    if parity_dev > 1e-10 {
        return Err(Error::ParityViolation(parity_dev));
    }
    let space = rho.space();
    let n = space.n();
    let split = Split::new(n, subset)?;
    let m = split.m();
    let dims_a = 1usize << m;
    let dims_b = 1usize << (n - m);

    let mut out = CMat::zeros(dims_a, dims_a);
    for mu in 0..dims_a {
        for mu_p in 0..dims_a {
            let mut acc = crate::linalg::ZERO;
            for nu in 0..dims_b {
                let b_row = split.bits_of(mu, nu);
                let b_col = split.bits_of(mu_p, nu);
                if let (Some(i), Some(j)) = (space.position(b_row), space.position(b_col)) {
                    let sign = split.sign(mu, nu) * split.sign(mu_p, nu);
                    acc += rho.matrix()[(i, j)] * cr(sign);
                }
            }
            out[(mu, mu_p)] = acc;
        }
    }
    StateMatrix::from_density(FockSpace::new(m, Sector::Full)?, out)
}

/// Entanglement of formation between B1 and the rest of the complement of a
/// single measured mode, for a globally pure state.
///
/// The reduced state of the complement of mode k decomposes uniquely into
/// the two opposite-parity branches of the occupancy measurement, so the
/// convex-roof minimum is the branch average p_0 S(ρ^0_{B1}) + p_1 S(ρ^1_{B1}),
/// i.e. the conditional entropy of B1 given the occupancy of k.
pub fn single_mode_eof(psi: &StateMatrix, mode: usize, b1: &[usize]) -> Result<f64> {
    let purity = psi.purity();
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure(purity));
    }
    let space = psi.space();
    if mode >= space.n() {
        return Err(Error::ModeIndexOutOfRange {
            index: mode,
            n: space.n(),
        });
    }
    if b1.iter().any(|&m| m == mode) {
        return Err(Error::Invalid(format!(
            "sub-partition contains the measured mode {mode}"
        )));
    }

    let (occ_full, emp_full) = space.mode_projectors(mode)?;
    let occ = space.restrict(&occ_full);
    let emp = space.restrict(&emp_full);
    let mut value = 0.0;
    for proj in [&occ, &emp] {
        let unnormalized = proj * psi.matrix() * proj;
        let p = crate::linalg::trace(&unnormalized).re;
        if p > 1e-14 {
            let branch = StateMatrix::from_density(space.clone(), unnormalized.unscale(p))?;
            let reduced = reduced_state(&branch, b1)?;
            value += p * crate::entropy::entropy_of_state(&reduced, &EntropyFunctional::VonNeumann)?;
        }
    }
    Ok(value)
}

/// Purify a parity-commuting mixed state by adjoining fresh modes: m modes
/// when both parity blocks are populated, m + 1 when the support has a
/// single parity (fresh basis states of one parity are then enough to pair
/// every eigenvector while keeping the total parity definite).
pub fn purify(rho_a: &StateMatrix) -> Result<StateMatrix> {
    let parity_dev = rho_a.parity_commutator_norm();
    if parity_dev > 1e-10 {
        return Err(Error::ParityViolation(parity_dev));
    }
    let space = rho_a.space();
    if !matches!(space.sector(), Sector::Full) {
        return Err(Error::Invalid(
            "purification expects the state on the full space of its modes".into(),
        ));
    }
    let m = space.n();

    // parity-resolved eigendecomposition
    let mut eigenpairs: Vec<(f64, CVec, bool)> = Vec::new(); // (p, vector, even?)
    for even in [true, false] {
        let idx: Vec<usize> = (0..space.full_dim())
            .filter(|b| ((*b as u32).count_ones() % 2 == 0) == even)
            .collect();
        let block = CMat::from_fn(idx.len(), idx.len(), |i, j| {
            rho_a.matrix()[(idx[i], idx[j])]
        });
        let (vals, vecs) = eigh(&block);
        for (col, &p) in vals.iter().enumerate() {
            if p > 1e-12 {
                let mut v = CVec::zeros(space.full_dim());
                for (row, &b) in idx.iter().enumerate() {
                    v[b] = vecs[(row, col)];
                }
                eigenpairs.push((p, v, even));
            }
        }
    }

    let has_even = eigenpairs.iter().any(|(_, _, e)| *e);
    let has_odd = eigenpairs.iter().any(|(_, _, e)| !*e);
    let added = if has_even && has_odd { m } else { m + 1 };
    let n_total = m + added;
    if n_total > crate::fock::MAX_MODES {
        return Err(Error::ModeCountOutOfRange(n_total, crate::fock::MAX_MODES));
    }

    // fresh-mode basis strings of each parity, ascending
    let mut even_strings: Vec<usize> = (0..(1usize << added))
        .filter(|v| (*v as u32).count_ones() % 2 == 0)
        .collect();
    let mut odd_strings: Vec<usize> = (0..(1usize << added))
        .filter(|v| (*v as u32).count_ones() % 2 == 1)
        .collect();

    // the added modes sit above every A-mode, so no reordering signs appear
    let mut amps = CVec::zeros(1usize << n_total);
    for (p, vec, even) in &eigenpairs {
        let pool = if *even { &mut even_strings } else { &mut odd_strings };
        let nu = pool.pop().ok_or_else(|| {
            Error::Invalid("not enough fresh basis states to pair eigenvectors".into())
        })?;
        let weight = cr(p.sqrt());
        for b in 0..vec.len() {
            if vec[b].norm_sqr() > 0.0 {
                amps[b | (nu << m)] += weight * vec[b];
            }
        }
    }

    let total = FockSpace::new(n_total, Sector::Full)?;
    pure_from_full_amplitudes(total, &amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::binary_entropy;
    use crate::measurement::{measure_unread, ModeProjectors};
    use crate::onebody::TwoFermionState;
    use crate::random::{random_mixed, random_pure, trial_rng};
    use approx::assert_relative_eq;

    #[test]
    fn slater_determinant_is_completely_separable() {
        let space = FockSpace::new(4, Sector::Even).unwrap();
        let mut amps = CVec::zeros(8);
        // c_0† c_2† |0> = bits {0, 2}
        let pos = space.position(0b0101).unwrap();
        amps[pos] = cr(1.0);
        let psi = StateMatrix::pure_from_amplitudes(space, amps).unwrap();
        for subset in [vec![0], vec![1], vec![0, 2], vec![3], vec![0, 1, 2]] {
            let report = schmidt_decompose(&psi, &subset).unwrap();
            assert_relative_eq!(report.schmidt_values[0], 1.0, epsilon = 1e-12);
            assert!(report.entanglement.abs() < 1e-10);
        }
    }

    #[test]
    fn schmidt_values_square_sums_to_one() {
        let mut rng = trial_rng(61, 0);
        for sector in [Sector::Even, Sector::Odd] {
            let space = FockSpace::new(4, sector).unwrap();
            let psi = random_pure(&mut rng, &space);
            let report = schmidt_decompose(&psi, &[1, 3]).unwrap();
            let total: f64 = report.schmidt_values.iter().map(|s| s * s).sum();
            assert_relative_eq!(total, 1.0, epsilon = 1e-10);
            // E_AB = S(ρ_A) = S(ρ_B)
            let sa =
                crate::entropy::entropy_of_state(&report.rho_a, &EntropyFunctional::VonNeumann)
                    .unwrap();
            let sb =
                crate::entropy::entropy_of_state(&report.rho_b, &EntropyFunctional::VonNeumann)
                    .unwrap();
            assert_relative_eq!(report.entanglement, sa, epsilon = 1e-10);
            assert_relative_eq!(sa, sb, epsilon = 1e-10);
        }
    }

    #[test]
    fn cross_parity_blocks_vanish() {
        let mut rng = trial_rng(62, 0);
        let space = FockSpace::new(5, Sector::Odd).unwrap();
        let psi = random_pure(&mut rng, &space);
        let report = schmidt_decompose(&psi, &[0, 3]).unwrap();
        let c = &report.coefficients;
        // every nonzero entry must have parity(μ) + parity(ν) odd
        for mu in 0..c.nrows() {
            for nu in 0..c.ncols() {
                if c[(mu, nu)].norm() > 1e-12 {
                    let total = (mu as u32).count_ones() + (nu as u32).count_ones();
                    assert_eq!(total % 2, 1, "cross-parity entry at ({mu}, {nu})");
                }
            }
        }
    }

    #[test]
    fn single_mode_partition_matches_binary_entropy() {
        let mut rng = trial_rng(63, 0);
        let space = FockSpace::new(4, Sector::Even).unwrap();
        let psi = random_pure(&mut rng, &space);
        for k in 0..4 {
            let report = schmidt_decompose(&psi, &[k]).unwrap();
            let proj = ModeProjectors::particle(psi.space(), k).unwrap();
            let meas = measure_unread(&psi, &proj, &EntropyFunctional::VonNeumann).unwrap();
            assert_relative_eq!(
                report.entanglement,
                binary_entropy(meas.p_occupied),
                epsilon = 1e-10
            );
            // at most two Schmidt branches
            assert!(report.schmidt_values.iter().filter(|&&s| s > 1e-10).count() <= 2);
        }
    }

    #[test]
    fn two_fermion_normal_form_spectrum() {
        // ψ = Σ_k √λ_k c†_{2k} c†_{2k+1}|0>; A = left pair members {0, 2}:
        // the reduced spectrum is {λ_1, λ_2}.
        let lambdas = [0.7f64, 0.3];
        let n = 4;
        let mut m = CMat::zeros(n, n);
        for (k, &l) in lambdas.iter().enumerate() {
            m[(2 * k, 2 * k + 1)] = cr(l.sqrt());
            m[(2 * k + 1, 2 * k)] = cr(-l.sqrt());
        }
        let psi = TwoFermionState::new(m)
            .unwrap()
            .to_state(Sector::Even)
            .unwrap();
        let report = schmidt_decompose(&psi, &[0, 2]).unwrap();
        let probs: Vec<f64> = report
            .schmidt_values
            .iter()
            .map(|s| s * s)
            .filter(|p| *p > 1e-12)
            .collect();
        assert_eq!(probs.len(), 2);
        assert_relative_eq!(probs[0], 0.7, epsilon = 1e-10);
        assert_relative_eq!(probs[1], 0.3, epsilon = 1e-10);
        // brute-force oracle: reduced-density eigensolve agrees
        let rho_a = reduced_state(&psi, &[0, 2]).unwrap();
        let spec: Vec<f64> = rho_a.spectrum().into_iter().filter(|p| *p > 1e-12).collect();
        assert_relative_eq!(spec[0], 0.7, epsilon = 1e-10);
        assert_relative_eq!(spec[1], 0.3, epsilon = 1e-10);
    }

    #[test]
    fn reduced_state_matches_full_expectations() {
        // ⟨O_A⟩ = Tr(ρ_A O_A) for parity-even monomials on the subset.
        let mut rng = trial_rng(64, 0);
        for (n, sector) in [(4, Sector::Even), (5, Sector::Odd)] {
            let space = FockSpace::new(n, sector).unwrap();
            let psi = random_pure(&mut rng, &space);
            let subsets: Vec<Vec<usize>> = vec![vec![0, 2], vec![1, 3], vec![0, 1, 3]];
            for subset in subsets {
                let rho_a = reduced_state(&psi, &subset).unwrap();
                let sub_space = rho_a.space().clone();
                let cs_full = space.annihilation_all();
                let cs_sub = sub_space.annihilation_all();
                for (i, &mi) in subset.iter().enumerate() {
                    for (j, &mj) in subset.iter().enumerate() {
                        // c†_i c_j
                        let full_op = cs_full[mi].adjoint() * &cs_full[mj];
                        let sub_op = cs_sub[i].adjoint() * &cs_sub[j];
                        let lhs = psi.expectation_full(&full_op);
                        let rhs = rho_a.expectation_full(&sub_op);
                        assert!(
                            (lhs - rhs).norm() < 1e-10,
                            "number monomial ({mi},{mj}) on {subset:?}"
                        );
                        // c†_i c†_j
                        let full_op = cs_full[mi].adjoint() * cs_full[mj].adjoint();
                        let sub_op = cs_sub[i].adjoint() * cs_sub[j].adjoint();
                        let lhs = psi.expectation_full(&full_op);
                        let rhs = rho_a.expectation_full(&sub_op);
                        assert!(
                            (lhs - rhs).norm() < 1e-10,
                            "pair monomial ({mi},{mj}) on {subset:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_state_commutes_with_subset_parity() {
        let mut rng = trial_rng(65, 0);
        let space = FockSpace::new(4, Sector::Odd).unwrap();
        let psi = random_pure(&mut rng, &space);
        let rho_a = reduced_state(&psi, &[1, 2]).unwrap();
        assert!(rho_a.parity_commutator_norm() < 1e-12);
    }

    #[test]
    fn product_state_reduces_to_pure() {
        let space = FockSpace::new(3, Sector::Odd).unwrap();
        let mut amps = CVec::zeros(4);
        let pos = space.position(0b001).unwrap();
        amps[pos] = cr(1.0);
        let psi = StateMatrix::pure_from_amplitudes(space, amps).unwrap();
        let rho_a = reduced_state(&psi, &[0]).unwrap();
        assert!(rho_a.is_pure());
    }

    #[test]
    fn single_mode_eof_examples() {
        // global Slater determinant: zero
        let space = FockSpace::new(4, Sector::Even).unwrap();
        let mut amps = CVec::zeros(8);
        amps[space.position(0b0011).unwrap()] = cr(1.0);
        let slater = StateMatrix::pure_from_amplitudes(space, amps).unwrap();
        assert!(single_mode_eof(&slater, 0, &[1, 2]).unwrap() < 1e-12);

        // one entangled pair: ψ = (√p c_0†c_1† + √(1-p) c_2†c_3†)|0>,
        // B1 = {1}: both branches leave mode 1 in a definite state, but
        // B1 = {1, 2} keeps h(p)? Measuring mode 0 collapses everything
        // here, so the conditional entropy vanishes; check instead that the
        // eof of B1 = {1} after measuring mode 2 equals h(p) for the state
        // (√p c_0†c_1† + √(1-p) c_0†c_2†... use a state entangling 1 with 3.
        let p = 0.3f64;
        let space = FockSpace::new(4, Sector::Even).unwrap();
        let mut amps = CVec::zeros(8);
        // √p c_0†c_1† + √(1-p) c_2†c_3†
        amps[space.position(0b0011).unwrap()] = cr(p.sqrt());
        amps[space.position(0b1100).unwrap()] = cr((1.0 - p).sqrt());
        let psi = StateMatrix::pure_from_amplitudes(space, amps).unwrap();
        // measure mode 0; B1 = {1}: branches have mode 1 definite => 0
        let eof = single_mode_eof(&psi, 0, &[1]).unwrap();
        assert!(eof < 1e-12);
        // B1 = {1, 2} given mode 3: also definite per branch
        let eof = single_mode_eof(&psi, 3, &[1, 2]).unwrap();
        assert!(eof < 1e-12);
    }

    #[test]
    fn single_mode_eof_matches_measurement_conditional_entropy() {
        let mut rng = trial_rng(66, 0);
        let space = FockSpace::new(4, Sector::Odd).unwrap();
        for trial in 0..5usize {
            let psi = random_pure(&mut rng, &space);
            let mode = trial % 4;
            let b1: Vec<usize> = (0..4).filter(|&m| m != mode).take(2).collect();
            let eof = single_mode_eof(&psi, mode, &b1).unwrap();

            // measurement route: reduce to {mode} ∪ B1, measure the mode there
            let mut joint: Vec<usize> = b1.clone();
            joint.push(mode);
            joint.sort_unstable();
            let reduced = reduced_state(&psi, &joint).unwrap();
            let local_mode = joint.iter().position(|&m| m == mode).unwrap();
            let proj = ModeProjectors::particle(reduced.space(), local_mode).unwrap();
            let report = measure_unread(&reduced, &proj, &EntropyFunctional::VonNeumann).unwrap();
            assert_relative_eq!(eof, report.entropy_conditional, epsilon = 1e-10);
        }
    }

    #[test]
    fn purification_recovers_mixed_parity_state() {
        let mut rng = trial_rng(67, 0);
        let rho = crate::random::random_parity_commuting(&mut rng, 2);
        let pure = purify(&rho).unwrap();
        assert!(pure.is_pure());
        assert_eq!(pure.space().n(), 4);
        let back = reduced_state(&pure, &[0, 1]).unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-10);
    }

    #[test]
    fn purification_single_parity_needs_extra_mode() {
        let mut rng = trial_rng(68, 0);
        // support entirely inside the even sector of 2 modes
        let even = FockSpace::new(2, Sector::Even).unwrap();
        let rho_sector = random_mixed(&mut rng, &even);
        let rho = rho_sector.embed_full();
        let pure = purify(&rho).unwrap();
        assert_eq!(pure.space().n(), 5);
        assert!(pure.is_pure());
        let back = reduced_state(&pure, &[0, 1]).unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-10);
        // the purification has definite parity
        let p = pure.space().restrict(&pure.space().parity_full());
        let expect = crate::linalg::trace_product(pure.matrix(), &p).re;
        assert_relative_eq!(expect.abs(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_trivial_subsets() {
        let space = FockSpace::new(3, Sector::Odd).unwrap();
        let mut amps = CVec::zeros(4);
        amps[0] = cr(1.0);
        let psi = StateMatrix::pure_from_amplitudes(space, amps).unwrap();
        assert!(schmidt_decompose(&psi, &[]).is_err());
        assert!(schmidt_decompose(&psi, &[0, 1, 2]).is_err());
        assert!(schmidt_decompose(&psi, &[7]).is_err());
    }
}
