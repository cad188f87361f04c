use super::{bound_tol, ModelError};
use crate::matlin::{ComplexMatrix, StateVector};
use crate::report::{ExperimentRecord, FLAG_ENGINE_MISMATCH, FLAG_INFINITE_SPREAD};
use crate::ur_core::{gur_bound, moment_report, spread_from_mean, UnitarySpread};
use num_complex::Complex64;

const EDGE_MASS_TOL: f64 = 1e-8;

/// Angular-momentum truncation of the rotor: basis |m⟩, m = −M..M, with
/// `L = diag(m)` and the angle unitaries acting as shifts in m.
///
/// `W(n) = exp(−inΦ)` maps |m⟩ → |m−n⟩; the implementation wraps cyclically so
/// the matrix stays unitary, and every checker demands that the state carries
/// no mass near the truncation edge, which makes the wrap invisible and the
/// infinite-dimensional relations exact at finite size.
#[derive(Debug, Clone)]
pub struct RotorModel {
    m_max: i64,
    dim: usize,
}

impl RotorModel {
    pub fn new(m_max: i64) -> Self {
        assert!(m_max >= 1);
        Self {
            m_max,
            dim: (2 * m_max + 1) as usize,
        }
    }

    pub fn m_max(&self) -> i64 {
        self.m_max
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, m: i64) -> usize {
        (m + self.m_max) as usize
    }

    /// `L = diag(m)`, m ascending from −M to M.
    pub fn l_operator(&self) -> ComplexMatrix {
        ComplexMatrix::real_diagonal(
            &(-self.m_max..=self.m_max)
                .map(|m| m as f64)
                .collect::<Vec<_>>(),
        )
    }

    /// `W(n)`: |m⟩ → |m−n⟩, cyclic at the truncation edge.
    pub fn w_shift(&self, n: i64) -> ComplexMatrix {
        let d = self.dim as i64;
        let mut w = ComplexMatrix::zeros(self.dim);
        for m in -self.m_max..=self.m_max {
            let src = self.index(m);
            let dst = (self.index(m) as i64 - n).rem_euclid(d) as usize;
            w[(dst, src)] = Complex64::new(1.0, 0.0);
        }
        w
    }

    /// `U(β) = exp(−iβL)`, diagonal and exact.
    pub fn u_evolution(&self, beta: f64) -> ComplexMatrix {
        ComplexMatrix::diagonal(
            &(-self.m_max..=self.m_max)
                .map(|m| Complex64::from_polar(1.0, -beta * m as f64))
                .collect::<Vec<_>>(),
        )
    }

    /// Probability mass on levels within `margin` of the truncation edge.
    pub fn edge_mass(&self, psi: &StateVector, margin: i64) -> f64 {
        let amps = psi.amplitudes();
        let mut mass = 0.0;
        for m in -self.m_max..=self.m_max {
            if m.abs() > self.m_max - margin {
                mass += amps[self.index(m)].norm_sqr();
            }
        }
        mass
    }
}

/// Certify the truncated-rotor bounds on one edge-safe state:
///
/// * `|sin(½nβ)| ≤ δ_ψ(W(n))·δ_ψ(U(β))` — the Weyl-pair bound for the pair
///   `(W(n), U(β))`, valid for every `β ∈ (0,2π)` on edge-safe support;
/// * `½|n| ≤ δ_ψ(W(n))·Δ_ψ(L)` — its β → 0 limit form, with `Δ(L)` exact.
///
/// The headline lhs/rhs pair is the limit form; the β-form and the engine
/// cross-check (`lhs = |e^{−inβ}−1|` under `A=W(n)`, `B=U(β)`, `φ=Uψ`,
/// `χ=W*ψ`) are carried in the extras.
pub fn rotor_bound_check(
    model: &RotorModel,
    n: i64,
    beta: f64,
    psi: &StateVector,
) -> Result<ExperimentRecord, ModelError> {
    assert!(
        beta > 0.0 && beta < std::f64::consts::TAU,
        "β must lie in (0, 2π)"
    );
    let margin = n.abs().max(1);
    let mass = model.edge_mass(psi, margin);
    if mass > EDGE_MASS_TOL {
        return Err(ModelError::EdgeSupport { mass });
    }

    let w = model.w_shift(n);
    let u = model.u_evolution(beta);
    let l = model.l_operator();

    let w_rep = moment_report(&w, psi)?;
    let u_rep = moment_report(&u, psi)?;
    let dev_l = moment_report(&l, psi)?.deviation;

    let name = "rotor_truncated";
    let dim = model.dim();
    let lhs_limit = 0.5 * n.abs() as f64;

    let mut record = match spread_from_mean(w_rep.mean) {
        UnitarySpread::Finite(dw) => {
            let rhs = dw * dev_l;
            let mut rec = ExperimentRecord::bound(name, dim, lhs_limit, rhs, bound_tol(rhs))
                .with_extra("delta_w", dw)
                .with_extra("dev_l", dev_l)
                .with_extra("dev_w", w_rep.deviation);
            // β-form of the bound, when the U-spread is finite too.
            match spread_from_mean(u_rep.mean) {
                UnitarySpread::Finite(du) => {
                    let lhs_beta = (0.5 * n as f64 * beta).sin().abs();
                    let rhs_beta = dw * du;
                    rec = rec
                        .with_extra("lhs_beta", lhs_beta)
                        .with_extra("rhs_beta", rhs_beta)
                        .require(rhs_beta - lhs_beta >= -bound_tol(rhs_beta), "BetaFormViolated");
                }
                UnitarySpread::Infinite => {
                    rec = rec.with_flag(FLAG_INFINITE_SPREAD);
                }
            }
            rec
        }
        UnitarySpread::Infinite => {
            // e.g. ψ an L-eigenstate: Δ(W(n)) hits its maximal value 1.
            ExperimentRecord::trivial(name, dim, lhs_limit, FLAG_INFINITE_SPREAD)
                .with_extra("dev_w", w_rep.deviation)
                .with_extra("dev_l", dev_l)
        }
    };

    // General-engine cross-check with A = W(n), B = U(β), φ = Uψ, χ = W*ψ;
    // exact on edge-safe support.
    let phi = StateVector::from_unnormalized(u.apply(psi.amplitudes()))?;
    let chi = StateVector::from_unnormalized(w.adjoint().apply(psi.amplitudes()))?;
    let engine = gur_bound(&w, &u, &phi, &chi)?;
    let omega_gap = (Complex64::from_polar(1.0, -(n as f64) * beta) - Complex64::new(1.0, 0.0)).norm();
    record = record
        .with_extra("engine_lhs", engine.lhs)
        .with_extra("n", n as f64)
        .with_extra("beta", beta)
        .require((engine.lhs - omega_gap).abs() <= 1e-10, FLAG_ENGINE_MISMATCH);
    Ok(record)
}
