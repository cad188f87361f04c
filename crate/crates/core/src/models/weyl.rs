use super::{bound_tol, ModelError};
use crate::matlin::{ComplexMatrix, StateVector};
use crate::report::{ExperimentRecord, FLAG_ENGINE_MISMATCH, FLAG_INFINITE_SPREAD};
use crate::ur_core::{gur_bound, moment_report, spread_from_mean, UnitarySpread};
use num_complex::Complex64;

/// Unitaries with `WU = ω·UW` for a unimodular scalar ω.
#[derive(Debug, Clone)]
pub struct WeylPair {
    dim: usize,
    u: ComplexMatrix,
    w: ComplexMatrix,
    omega: Complex64,
}

impl WeylPair {
    /// Validate and wrap an arbitrary realization.
    pub fn new(u: ComplexMatrix, w: ComplexMatrix, omega: Complex64) -> Result<Self, ModelError> {
        let dim = u.dim();
        let pair = Self { dim, u, w, omega };
        let residual = pair.commutation_residual();
        let scale = (dim as f64).sqrt();
        if !pair.u.is_unitary(1e-12) || !pair.w.is_unitary(1e-12) {
            return Err(ModelError::BadWeylPair {
                residual: pair.u.unitarity_residual().max(pair.w.unitarity_residual()),
            });
        }
        if (pair.omega.norm() - 1.0).abs() > 1e-12 || residual > 1e-12 * scale.max(1.0) {
            return Err(ModelError::BadWeylPair { residual });
        }
        Ok(pair)
    }

    /// The canonical d-dimensional realization: `W = diag(ω⁰..ω^{d−1})` the
    /// clock, `U` the cyclic shift `|k⟩ → |k+1 mod d⟩`, `ω = exp(2πi/d)`.
    pub fn clock_shift(d: usize) -> Self {
        assert!(d >= 2, "clock/shift pair needs d ≥ 2");
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / d as f64);
        let w = ComplexMatrix::diagonal(
            &(0..d)
                .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64))
                .collect::<Vec<_>>(),
        );
        let mut u = ComplexMatrix::zeros(d);
        for k in 0..d {
            u[((k + 1) % d, k)] = Complex64::new(1.0, 0.0);
        }
        Self { dim: d, u, w, omega }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// `ε = ½|ω−1| ∈ [0,1]`.
    pub fn epsilon(&self) -> f64 {
        0.5 * (self.omega - Complex64::new(1.0, 0.0)).norm()
    }

    /// `‖WU − ω·UW‖_F`
    pub fn commutation_residual(&self) -> f64 {
        let wu = &self.w * &self.u;
        let uw = &self.u * &self.w;
        (&wu - &uw.scale(self.omega)).frobenius_norm()
    }

    /// Swap symmetry: `(U,W,ω)` valid ⟹ `(W,U,ω̄)` valid.
    pub fn swapped(&self) -> Result<Self, ModelError> {
        Self::new(self.w.clone(), self.u.clone(), self.omega.conj())
    }
}

/// Certify `½|ω−1| ≤ δ_ψ(W)·δ_ψ(U)` on one state, and cross-check the general
/// engine on the substitution `A=W`, `B=U`, `φ=Uψ`, `χ=W*ψ`: its left side
/// must be `|ω−1|` and (for ω ≠ 1, finite spreads) the optimal λ₁ must be ½.
pub fn weyl_bound_check(pair: &WeylPair, psi: &StateVector) -> Result<ExperimentRecord, ModelError> {
    let eps = pair.epsilon();
    let w_rep = moment_report(pair.w(), psi)?;
    let u_rep = moment_report(pair.u(), psi)?;
    let spread_w = spread_from_mean(w_rep.mean);
    let spread_u = spread_from_mean(u_rep.mean);

    let model = "weyl_pair";
    let dim = pair.dim();
    let mut record = match (spread_w, spread_u) {
        (UnitarySpread::Finite(dw), UnitarySpread::Finite(du)) => {
            ExperimentRecord::bound(model, dim, eps, dw * du, bound_tol(dw * du))
                .with_extra("delta_w", dw)
                .with_extra("delta_u", du)
        }
        _ => ExperimentRecord::trivial(model, dim, eps, FLAG_INFINITE_SPREAD),
    };
    record = record.with_extra("epsilon", eps);

    // Engine cross-check runs regardless; it needs no finite spreads.
    let phi = StateVector::from_unnormalized(pair.u().apply(psi.amplitudes()))?;
    let chi = StateVector::from_unnormalized(pair.w().adjoint().apply(psi.amplitudes()))?;
    let engine = gur_bound(pair.w(), pair.u(), &phi, &chi)?;
    let omega_gap = (pair.omega() - Complex64::new(1.0, 0.0)).norm();
    record = record
        .with_extra("engine_lhs", engine.lhs)
        .with_extra("engine_rhs", engine.rhs)
        .with_extra("lambda_star", engine.lambda_star)
        .require((engine.lhs - omega_gap).abs() <= 1e-10, FLAG_ENGINE_MISMATCH);
    if omega_gap > 1e-12 && spread_w.is_finite() && spread_u.is_finite() {
        record = record.require(
            (engine.lambda_star - 0.5).abs() <= 1e-8,
            FLAG_ENGINE_MISMATCH,
        );
    }
    Ok(record)
}

/// Largest residual among the four mean-transport identities for `φ = Uψ`,
/// `χ = W*ψ`:
/// `⟨W⟩_φ = ω⟨W⟩_ψ`, `⟨W⟩_χ = ⟨W⟩_ψ`, `⟨U⟩_φ = ⟨U⟩_ψ`, `⟨U⟩_χ = ω⟨U⟩_ψ`.
pub fn mean_transport_residual(pair: &WeylPair, psi: &StateVector) -> Result<f64, ModelError> {
    let phi = StateVector::from_unnormalized(pair.u().apply(psi.amplitudes()))?;
    let chi = StateVector::from_unnormalized(pair.w().adjoint().apply(psi.amplitudes()))?;
    let omega = pair.omega();
    let w_psi = moment_report(pair.w(), psi)?.mean;
    let u_psi = moment_report(pair.u(), psi)?.mean;
    let w_phi = moment_report(pair.w(), &phi)?.mean;
    let w_chi = moment_report(pair.w(), &chi)?.mean;
    let u_phi = moment_report(pair.u(), &phi)?.mean;
    let u_chi = moment_report(pair.u(), &chi)?.mean;
    let residual = [
        (w_phi - omega * w_psi).norm(),
        (w_chi - w_psi).norm(),
        (u_phi - u_psi).norm(),
        (u_chi - omega * u_psi).norm(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    Ok(residual)
}

/// All four transport identities within 1e-12.
pub fn mean_transport_check(pair: &WeylPair, psi: &StateVector) -> Result<bool, ModelError> {
    Ok(mean_transport_residual(pair, psi)? <= 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matlin::random_state;

    #[test]
    fn d2_is_the_pauli_realization() {
        let pair = WeylPair::clock_shift(2);
        // W = σ₃, U = σ₁, ω = −1
        assert!((pair.omega() + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((pair.w()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((pair.w()[(1, 1)] + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((pair.u()[(0, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((pair.u()[(1, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn d4_epsilon_is_half_sqrt_two() {
        let pair = WeylPair::clock_shift(4);
        assert!((pair.omega() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((pair.epsilon() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn commutation_residual_is_tiny_for_all_small_d() {
        for d in 2..=12 {
            let pair = WeylPair::clock_shift(d);
            assert!(pair.commutation_residual() <= 1e-12 * (d as f64).sqrt());
        }
    }

    #[test]
    fn swap_symmetry() {
        for d in [2, 3, 5, 8] {
            let pair = WeylPair::clock_shift(d);
            assert!(pair.swapped().is_ok());
        }
    }

    #[test]
    fn eigenstate_of_w_flags_infinite_spread() {
        let pair = WeylPair::clock_shift(2);
        let rec = weyl_bound_check(&pair, &StateVector::basis(2, 0)).unwrap();
        assert!(rec.flags.contains(FLAG_INFINITE_SPREAD));
        assert!(rec.passed);
    }

    #[test]
    fn transport_identities_hold() {
        for d in [2, 5] {
            let pair = WeylPair::clock_shift(d);
            for seed in 0..5 {
                let psi = random_state(d, seed);
                assert!(mean_transport_check(&pair, &psi).unwrap());
            }
            assert!(mean_transport_check(&pair, &StateVector::basis(d, 1)).unwrap());
        }
    }

    #[test]
    fn commuting_pair_with_omega_one_is_valid_and_trivial() {
        // Two commuting diagonals form a Weyl pair with ω = 1.
        let u = ComplexMatrix::diagonal(&[
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ]);
        let w = ComplexMatrix::diagonal(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ]);
        let pair = WeylPair::new(u, w, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(pair.epsilon(), 0.0);
        let psi = random_state(2, 7);
        let rec = weyl_bound_check(&pair, &psi).unwrap();
        assert!(rec.passed);
        assert!(mean_transport_check(&pair, &psi).unwrap());
    }
}
