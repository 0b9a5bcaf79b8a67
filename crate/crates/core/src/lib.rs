//! Exact-diagonalization toolkit for one-body information loss in fermion
//! systems.
//!
//! The crate builds the full 2^n-dimensional Fock space of n fermionic modes,
//! measures the occupancy of single-particle or Bogoliubov quasiparticle
//! modes, and minimizes the resulting entropy increase (the one-body
//! information loss) over all mode bases. Closed-form benchmark families and
//! randomized verification suites are included.
//!
//! Modules:
//! - [`fock`]: occupation-number basis, mode operators, parity sectors.
//! - [`state`]: density matrices on a Fock space or parity sector.
//! - [`entropy`]: trace-form and Rényi entropy functionals, majorization.
//! - [`bogoliubov`]: quasiparticle transformations and their generators.
//! - [`onebody`]: one-body density matrices, entanglement entropies, the
//!   two-fermion Slater (Zumino) decomposition, the n=4 concurrence.
//! - [`measurement`]: unread occupancy measurements and information loss.
//! - [`partition`]: parity-blocked Schmidt decompositions of mode subsets.
//! - [`optimizer`]: loss minimization over mode bases with an exponential-map
//!   retraction and a brute-force sampling oracle.
//! - [`analytic`]: closed forms for mixtures with the maximally mixed state.
//! - [`suites`]: seeded randomized verification suites.

pub mod analytic;
pub mod bogoliubov;
pub mod entropy;
pub mod fock;
pub mod linalg;
pub mod measurement;
pub mod onebody;
pub mod optimizer;
pub mod partition;
pub mod random;
pub mod state;
pub mod suites;

use thiserror::Error;

/// Errors reported by toolkit operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode count {0} outside supported range 1..={1}")]
    ModeCountOutOfRange(usize, usize),

    #[error("mode index {index} out of range for {n} modes")]
    ModeIndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not antisymmetric (deviation {0:.3e})")]
    NotAntisymmetric(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPositiveSemiDefinite(f64),

    #[error("trace/normalization is {0}, expected 1 within {1:.1e}")]
    NotNormalized(f64, f64),

    #[error("state does not commute with number parity (deviation {0:.3e})")]
    ParityViolation(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("spectrum entry {0} outside [0, 1]")]
    InvalidSpectrumEntry(f64),

    #[error("entropy parameter q = {0} must be positive and different from 1")]
    InvalidEntropyOrder(f64),

    #[error("no functional derivative for the Rényi family; optimize the Tsallis form of the same order")]
    RenyiDerivative,

    #[error("projector pair does not resolve the identity (deviation {0:.3e})")]
    ProjectorResolution(f64),

    #[error("transform is not a valid Bogoliubov transformation (deviation {0:.3e})")]
    NotBogoliubov(f64),

    #[error("mode subset must be a nonempty proper subset of 0..{0}")]
    InvalidModeSubset(usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use bogoliubov::{BogoliubovTransform, OneBodyGenerator};
pub use entropy::EntropyFunctional;
pub use fock::{FockSpace, ModeKind, ModeOperator, Sector};
pub use measurement::{MeasurementReport, ModeProjectors};
pub use onebody::{OddParityFourModeState, OneBodySummary, TwoFermionState};
pub use optimizer::{OptimizationResult, OptimizerConfig, Scope};
pub use state::StateMatrix;
pub use suites::{Suite, SuiteReport};
