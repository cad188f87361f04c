//! Dense complex linear algebra: square matrices, Hermitian eigendecomposition,
//! spectral matrix functions, and seeded random ensembles.
//!
//! Everything is plain `Vec<Complex64>` storage with `O(n³)` algorithms; the
//! dimensions in play (≤ a few hundred) never justify anything fancier.

mod eig;
mod matrix;
mod random;
mod vector;

pub use eig::{evolution_unitary, hermitian_eig, matrix_function, SpectralDecomposition};
pub use matrix::ComplexMatrix;
pub use random::{
    random_hermitian, random_normal_operator, random_state, random_unitary, rng_from_seed,
    SpectrumBox,
};
pub use vector::StateVector;

pub(crate) use vector::{inner as inner_product, norm as vector_norm};

use thiserror::Error;

/// Errors out of the linear-algebra layer.
#[derive(Debug, Error)]
pub enum MatlinError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries for dim {dim}, got {got}")]
    BadShape { dim: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.3e}")]
    NonHermitian { residual: f64, tol: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix function undefined at eigenvalue {eigenvalue}")]
    DomainError { eigenvalue: f64 },
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
}
