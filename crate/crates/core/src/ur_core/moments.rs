use super::{check_dims, UrError, UNITARITY_TOL};
use crate::matlin::{ComplexMatrix, StateVector};
use num_complex::Complex64;

/// Below this modulus a unitary mean counts as vanishing and the spread
/// `δ_ψ(V)` is reported as infinite.
pub const MEAN_VANISHING_CUTOFF: f64 = 1e-13;

/// `δ_ψ(V) = Δ_ψ(V)/√(1−Δ²_ψ(V))`, infinite at maximal spread.
///
/// Kept as an explicit two-variant value instead of an `f64` sentinel so a
/// report can never silently arithmetic on `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitarySpread {
    Finite(f64),
    Infinite,
}

impl UnitarySpread {
    pub fn is_finite(&self) -> bool {
        matches!(self, UnitarySpread::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            UnitarySpread::Finite(x) => Some(*x),
            UnitarySpread::Infinite => None,
        }
    }
}

/// First and second moments of one operator in one state.
#[derive(Debug, Clone, Copy)]
pub struct MomentReport {
    /// ⟨A⟩_ψ = (ψ, Aψ)
    pub mean: Complex64,
    /// Δ_ψ(A) = ‖(A − ⟨A⟩)ψ‖
    pub deviation: f64,
    /// δ_ψ(A), populated only when A is unitary within tolerance.
    pub unitary_spread: Option<UnitarySpread>,
}

/// ⟨A⟩_ψ = (ψ, Aψ).
pub fn mean(a: &ComplexMatrix, psi: &StateVector) -> Result<Complex64, UrError> {
    check_dims(a.dim(), psi.dim())?;
    let image = a.apply(psi.amplitudes());
    Ok(crate::matlin::inner_product(psi.amplitudes(), &image))
}

/// Δ_ψ(A) = ‖(A − ⟨A⟩)ψ‖.
pub fn deviation(a: &ComplexMatrix, psi: &StateVector) -> Result<f64, UrError> {
    check_dims(a.dim(), psi.dim())?;
    let image = a.apply(psi.amplitudes());
    let m = crate::matlin::inner_product(psi.amplitudes(), &image);
    Ok(centered_norm(&image, m, psi))
}

/// `‖image − m·ψ‖` for an already-applied operator image.
pub(crate) fn centered_norm(image: &[Complex64], m: Complex64, psi: &StateVector) -> f64 {
    image
        .iter()
        .zip(psi.amplitudes())
        .map(|(w, p)| (w - m * p).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `δ_ψ(V) = √(1−|⟨V⟩|²)/|⟨V⟩|` for unitary `V`; infinite when the mean
/// vanishes (within [`MEAN_VANISHING_CUTOFF`]).
pub fn unitary_spread(v: &ComplexMatrix, psi: &StateVector) -> Result<UnitarySpread, UrError> {
    check_dims(v.dim(), psi.dim())?;
    if !v.is_unitary(UNITARITY_TOL) {
        return Err(UrError::NotUnitary {
            residual: v.unitarity_residual(),
        });
    }
    let m = mean(v, psi)?;
    Ok(spread_from_mean(m))
}

/// Spread from a unitary mean alone, via `Δ² = 1 − |⟨V⟩|²`.
pub fn spread_from_mean(m: Complex64) -> UnitarySpread {
    let modulus = m.norm();
    if modulus <= MEAN_VANISHING_CUTOFF {
        UnitarySpread::Infinite
    } else {
        // Clamp guards |⟨V⟩| = 1 + ε roundoff for eigenstates.
        let var = (1.0 - modulus * modulus).max(0.0);
        UnitarySpread::Finite(var.sqrt() / modulus)
    }
}

/// Mean, deviation, and (for unitary operators) the spread in one shot.
pub fn moment_report(a: &ComplexMatrix, psi: &StateVector) -> Result<MomentReport, UrError> {
    check_dims(a.dim(), psi.dim())?;
    let image = a.apply(psi.amplitudes());
    let m = crate::matlin::inner_product(psi.amplitudes(), &image);
    let dev = centered_norm(&image, m, psi);
    let unitary_spread = if a.is_unitary(UNITARITY_TOL) {
        Some(spread_from_mean(m))
    } else {
        None
    };
    Ok(MomentReport {
        mean: m,
        deviation: dev,
        unitary_spread,
    })
}
