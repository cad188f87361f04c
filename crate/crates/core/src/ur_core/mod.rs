//! The two-state uncertainty-relation engine.
//!
//! For normal `A`, `B` and unit vectors `φ`, `χ` the certified inequality is
//!
//! ```text
//! |q_{A,B}(φ,χ)| ≤ inf_{a,b∈ℂ} F(a,b),
//! F(a,b) = ‖(A−a)φ‖‖(B−b)χ‖ + ‖(B−b)φ‖‖(A−a)χ‖.
//! ```
//!
//! The infimum is computed two independent ways:
//! * [`gur_bound`]: restrict `(a,b)` to the segment parametrized by
//!   `λ₁ ∈ [0,1]` (where all stationary points of `F` live), solve the
//!   degree-≤5 stationary polynomial, and take the best candidate including
//!   the endpoints;
//! * [`oracle_infimum`]: brute-force grid over `(Re a, Im a, Re b, Im b)`
//!   followed by golden-section coordinate descent.
//!
//! Agreement of the two routes is the core acceptance gate of the crate.

mod bound;
mod moments;
mod oracle;
mod polynomial;

pub use bound::{
    gur_bound, lambda_form, lambda_grid_min, robertson, stationary_lambdas, stationary_polynomial,
    CrossMoments, GurReport, LambdaCandidates, Method, DEGENERACY_CUTOFF,
};
pub use moments::{
    deviation, mean, moment_report, spread_from_mean, unitary_spread, MomentReport,
    UnitarySpread, MEAN_VANISHING_CUTOFF,
};
pub use oracle::{golden_section_minimize, oracle_infimum, objective_f, weak_commutator, OracleInfimum};
pub use polynomial::real_roots_in_interval;

pub use crate::matlin::StateVector;

use thiserror::Error;

/// Normality admission threshold used by every engine entry point.
pub const NORMALITY_TOL: f64 = 1e-10;

/// Unitarity admission threshold for spread computations (scaled by dim).
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum UrError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("operator is not normal: ‖A*A−AA*‖_F = {residual:.3e} over tol {tol:.3e}·‖A‖²")]
    NotNormal { residual: f64, tol: f64 },
    #[error("operator is not unitary: ‖V*V−1‖_F = {residual:.3e}")]
    NotUnitary { residual: f64 },
    #[error("λ₁ = {value} outside [0,1]")]
    RangeError { value: f64 },
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<(), UrError> {
    if left == right {
        Ok(())
    } else {
        Err(UrError::DimMismatch { left, right })
    }
}

pub(crate) fn check_normal(a: &crate::matlin::ComplexMatrix) -> Result<(), UrError> {
    if a.is_normal(NORMALITY_TOL) {
        Ok(())
    } else {
        Err(UrError::NotNormal {
            residual: a.normality_residual(),
            tol: NORMALITY_TOL,
        })
    }
}
