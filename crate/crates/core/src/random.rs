//! Seeded random instances used by the verification suites and tests.
//!
//! All generators take an explicit RNG so that suites are deterministic
//! given a seed; parallel trials derive independent ChaCha streams.

use crate::bogoliubov::{BogoliubovTransform, OneBodyGenerator};
use crate::fock::{FockSpace, Sector};
use crate::linalg::{cr, CMat, CVec, C64};
use crate::state::StateMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream for trial `index` of a seeded suite.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard normal via Box-Muller (keeps the dependency set small).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Complex standard normal with unit variance.
pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng)).scale(std::f64::consts::FRAC_1_SQRT_2)
}

pub fn random_complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> CMat {
    let g = random_complex_matrix(rng, n, n);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d.unscale(d.norm()) } else { cr(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian matrix with O(1) entries.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMat {
    let g = random_complex_matrix(rng, n, n);
    (&g + g.adjoint()).scale(0.5)
}

/// Random complex antisymmetric matrix with O(1) entries.
pub fn random_antisymmetric(rng: &mut impl Rng, n: usize) -> CMat {
    let g = random_complex_matrix(rng, n, n);
    (&g - g.transpose()).scale(0.5)
}

/// Random one-body generator; `pairing = false` zeroes the Δ block.
pub fn random_generator(rng: &mut impl Rng, n: usize, pairing: bool) -> OneBodyGenerator {
    let h = random_hermitian(rng, n);
    let delta = if pairing {
        random_antisymmetric(rng, n)
    } else {
        CMat::zeros(n, n)
    };
    OneBodyGenerator::new(h, delta).expect("constructed symmetric")
}

/// Random Bogoliubov transformation from the exponential map.
pub fn random_bogoliubov(rng: &mut impl Rng, n: usize) -> BogoliubovTransform {
    BogoliubovTransform::from_generator(&random_generator(rng, n, true), 1.0)
}

/// Random sp unitary as a pairing-free Bogoliubov transformation.
pub fn random_sp_rotation(rng: &mut impl Rng, n: usize) -> BogoliubovTransform {
    BogoliubovTransform::from_sp_unitary(haar_unitary(rng, n)).expect("unitary input")
}

/// Normalized random amplitude vector.
pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> CVec {
    loop {
        let v = CVec::from_fn(dim, |_, _| complex_normal(rng));
        let norm = v.norm();
        if norm > 1e-6 {
            return v.unscale(norm);
        }
    }
}

/// Random pure state on the given space (definite parity if the space is a
/// sector).
pub fn random_pure(rng: &mut impl Rng, space: &FockSpace) -> StateMatrix {
    let amps = random_unit_vector(rng, space.dim());
    StateMatrix::pure_from_amplitudes(space.clone(), amps).expect("normalized amplitudes")
}

/// Random full-rank mixed state on the given space (Wishart construction).
pub fn random_mixed(rng: &mut impl Rng, space: &FockSpace) -> StateMatrix {
    let d = space.dim();
    let g = random_complex_matrix(rng, d, d);
    let w = &g * g.adjoint();
    let tr: f64 = w.diagonal().iter().map(|z| z.re).sum();
    StateMatrix::from_density(space.clone(), w.unscale(tr)).expect("valid Wishart state")
}

/// Random parity-commuting mixed state on the full space of n modes, with
/// both parity blocks populated.
pub fn random_parity_commuting(rng: &mut impl Rng, n: usize) -> StateMatrix {
    let full = FockSpace::new(n, Sector::Full).expect("valid mode count");
    let even = full.with_sector(Sector::Even);
    let odd = full.with_sector(Sector::Odd);
    let rho_e = random_mixed(rng, &even);
    let rho_o = random_mixed(rng, &odd);
    let weight: f64 = rng.gen_range(0.2..0.8);
    let mat = even.embed(rho_e.matrix()).scale(weight)
        + odd.embed(rho_o.matrix()).scale(1.0 - weight);
    StateMatrix::from_density(full, mat).expect("block-diagonal state is valid")
}

/// Random probability vector of the given length (flat Dirichlet).
pub fn random_probabilities(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let mut raw: Vec<f64> = (0..len).map(|_| -f64::ln(rng.gen_range(f64::MIN_POSITIVE..1.0))).collect();
    let sum: f64 = raw.iter().sum();
    raw.iter_mut().for_each(|x| *x /= sum);
    raw
}

/// Random two-fermion coefficient matrix: antisymmetric with ½ Tr MM† = 1.
pub fn random_two_fermion_m(rng: &mut impl Rng, n: usize) -> CMat {
    let a = random_antisymmetric(rng, n);
    let norm_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    a.unscale((norm_sq / 2.0).sqrt())
}
