//! Small dense complex linear-algebra helpers shared across the crate.
//!
//! Everything here works on `DMatrix<Complex64>` at desk scale (dimension
//! ≤ 4096); Hermitian eigensolves go through nalgebra's `SymmetricEigen`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Frobenius deviation from Hermiticity.
pub fn hermiticity_error(m: &CMat) -> f64 {
    (m - m.adjoint()).norm()
}

/// Frobenius deviation from antisymmetry (M^T = -M).
pub fn antisymmetry_error(m: &CMat) -> f64 {
    (m.transpose() + m).norm()
}

/// Hermitian part (m + m†)/2.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

fn to_faer(m: &CMat) -> faer::Mat<faer::c64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        faer::c64::new(m[(i, j)].re, m[(i, j)].im)
    })
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    let fm = to_faer(&hermitize(m));
    let mut vals: Vec<f64> = fm
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .expect("Hermitian eigensolve converges");
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending and
/// eigenvector columns permuted to match.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let fm = to_faer(&hermitize(m));
    let evd = fm
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("Hermitian eigensolve converges");
    let s = evd.S();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[a].re.partial_cmp(&s[b].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| s[i].re).collect();
    let vecs = CMat::from_fn(n, n, |i, col| {
        let z = u[(i, order[col])];
        C64::new(z.re, z.im)
    });
    (vals, vecs)
}

/// U g(Λ) U† for a Hermitian matrix with eigenvalues mapped through `g`.
pub fn spectral_map(m: &CMat, g: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = eigh(m);
    let d = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|&v| cr(g(v))),
    ));
    &vecs * d * vecs.adjoint()
}

/// exp(i t H) for Hermitian `h`, via eigensolve; exactly unitary up to
/// eigensolver precision.
pub fn expm_i_hermitian(h: &CMat, t: f64) -> CMat {
    let (vals, vecs) = eigh(h);
    let d = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|&v| C64::from_polar(1.0, t * v)),
    ));
    &vecs * d * vecs.adjoint()
}

/// Kronecker product (row-major block convention: index = i_a * dim_b + i_b).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Σ conj(a_ij) b_ij.
pub fn frobenius_inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Tr(A B) without forming the product.
pub fn trace_product(a: &CMat, b: &CMat) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for p in 0..n {
        for q in 0..n {
            acc += a[(p, q)] * b[(q, p)];
        }
    }
    acc
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Trace as a complex number.
pub fn trace(m: &CMat) -> C64 {
    m.diagonal().iter().sum()
}

/// Fix the overall phase of a vector so that its first component of
/// magnitude above `tol` is real positive. Zero vectors pass through.
pub fn fix_phase(v: &mut CVec, tol: f64) {
    if let Some(lead) = v.iter().find(|z| z.norm() > tol) {
        let phase = lead.unscale(lead.norm());
        let correction = phase.conj();
        for z in v.iter_mut() {
            *z *= correction;
        }
    }
}
