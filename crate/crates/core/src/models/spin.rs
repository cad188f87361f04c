use super::{bound_tol, ModelError};
use crate::matlin::{hermitian_eig, matrix_function, ComplexMatrix, StateVector};
use crate::report::{ExperimentRecord, FLAG_ENGINE_MISMATCH};
use crate::ur_core::{mean, moment_report, weak_commutator};
use num_complex::Complex64;

/// Half-integer spin quantum number, stored as 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpinJ {
    two_j: u32,
}

impl SpinJ {
    pub fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn value(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn is_integer(&self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    /// Representation dimension 2j+1.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn parity(&self) -> Parity {
        if self.is_integer() {
            Parity::Bosonic
        } else {
            Parity::Fermionic
        }
    }
}

impl std::fmt::Display for SpinJ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

/// Integer spins are bosonic (`exp(i2πJ₃) = 1`), half-integer fermionic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Bosonic,
    Fermionic,
}

/// One spin-j irreducible block: ladder construction in the J₃ eigenbasis,
/// m descending from j to −j.
#[derive(Debug, Clone)]
pub struct SpinSystem {
    pub j: SpinJ,
    pub j1: ComplexMatrix,
    pub j2: ComplexMatrix,
    pub j3: ComplexMatrix,
    pub jplus: ComplexMatrix,
    pub jminus: ComplexMatrix,
    pub jsq: ComplexMatrix,
    pub parity: Parity,
    /// 0 in the bosonic case, 1 in the fermionic case.
    pub delta: f64,
}

/// Standard ladder construction: `J₊|j m⟩ = √(j(j+1)−m(m+1))|j m+1⟩`,
/// `J₁ = (J₊+J₋)/2`, `J₂ = (J₊−J₋)/2i`, `J₃ = diag(m)`.
pub fn spin_system(j: SpinJ) -> SpinSystem {
    let n = j.dim();
    let jv = j.value();
    let m_of = |i: usize| jv - i as f64;

    let j3 = ComplexMatrix::real_diagonal(&(0..n).map(m_of).collect::<Vec<_>>());
    let mut jplus = ComplexMatrix::zeros(n);
    for i in 1..n {
        // raises m(i) to m(i)+1 = m(i−1)
        let m = m_of(i);
        jplus[(i - 1, i)] = Complex64::new((jv * (jv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jminus = jplus.adjoint();
    let j1 = (&jplus + &jminus).scale(Complex64::new(0.5, 0.0));
    let j2 = (&jplus - &jminus).scale(Complex64::new(0.0, -0.5));
    let jsq = ComplexMatrix::identity(n).scale(Complex64::new(jv * (jv + 1.0), 0.0));
    let parity = j.parity();
    SpinSystem {
        j,
        j1,
        j2,
        j3,
        jplus,
        jminus,
        jsq,
        parity,
        delta: match parity {
            Parity::Bosonic => 0.0,
            Parity::Fermionic => 1.0,
        },
    }
}

/// A direct sum of spin irreps of uniform parity; single irreps are the
/// one-summand case.
#[derive(Debug, Clone)]
pub struct SpinRep {
    pub summands: Vec<SpinJ>,
    pub parity: Parity,
    pub delta: f64,
    pub dim: usize,
    pub j1: ComplexMatrix,
    pub j2: ComplexMatrix,
    pub j3: ComplexMatrix,
    pub jsq: ComplexMatrix,
    /// J₃ eigenvalue housed at each basis index.
    pub m_values: Vec<f64>,
    /// Largest j in the sum; `‖Jᵢ‖ = j`.
    pub j_max: f64,
}

impl SpinRep {
    pub fn direct_sum(js: &[SpinJ]) -> Result<Self, ModelError> {
        assert!(!js.is_empty());
        let parity = js[0].parity();
        if js.iter().any(|j| j.parity() != parity) {
            return Err(ModelError::MixedParity);
        }
        let systems: Vec<SpinSystem> = js.iter().map(|&j| spin_system(j)).collect();
        let dim: usize = js.iter().map(|j| j.dim()).sum();
        let mut j1 = ComplexMatrix::zeros(dim);
        let mut j2 = ComplexMatrix::zeros(dim);
        let mut j3 = ComplexMatrix::zeros(dim);
        let mut jsq = ComplexMatrix::zeros(dim);
        let mut m_values = Vec::with_capacity(dim);
        let mut offset = 0;
        for sys in &systems {
            let n = sys.j.dim();
            for r in 0..n {
                m_values.push(sys.j.value() - r as f64);
                for c in 0..n {
                    j1[(offset + r, offset + c)] = sys.j1[(r, c)];
                    j2[(offset + r, offset + c)] = sys.j2[(r, c)];
                    j3[(offset + r, offset + c)] = sys.j3[(r, c)];
                    jsq[(offset + r, offset + c)] = sys.jsq[(r, c)];
                }
            }
            offset += n;
        }
        let j_max = js.iter().map(|j| j.value()).fold(0.0, f64::max);
        Ok(Self {
            summands: js.to_vec(),
            parity,
            delta: match parity {
                Parity::Bosonic => 0.0,
                Parity::Fermionic => 1.0,
            },
            dim,
            j1,
            j2,
            j3,
            jsq,
            m_values,
            j_max,
        })
    }

    pub fn single(j: SpinJ) -> Self {
        Self::direct_sum(&[j]).expect("single irrep has uniform parity")
    }

    /// Projection onto the J₃ = m eigenspace (diagonal 0/1 matrix).
    pub fn projection_m(&self, m: f64) -> ComplexMatrix {
        ComplexMatrix::diagonal(
            &self
                .m_values
                .iter()
                .map(|&mv| {
                    if (mv - m).abs() < 0.25 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect::<Vec<_>>(),
        )
    }

    /// `P = P_μ + P_{μ−1}`.
    pub fn p_operator(&self, mu: f64) -> ComplexMatrix {
        &self.projection_m(mu) + &self.projection_m(mu - 1.0)
    }

    /// `E = (Σ_{m≥μ} − Σ_{m≤μ−1}) P_m`, the J₃ sign operator about μ.
    pub fn e_operator(&self, mu: f64) -> ComplexMatrix {
        ComplexMatrix::diagonal(
            &self
                .m_values
                .iter()
                .map(|&mv| {
                    if mv >= mu - 0.25 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(-1.0, 0.0)
                    }
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Admissible μ values with `μ−1 ≤ 0 ≤ μ`: {½} fermionic, {0, 1} bosonic.
    pub fn mu_choices(&self) -> Vec<f64> {
        match self.parity {
            Parity::Fermionic => vec![0.5],
            Parity::Bosonic => vec![0.0, 1.0],
        }
    }
}

fn shifted_norm(op: &ComplexMatrix, shift: f64, psi: &StateVector) -> f64 {
    let image = op.apply(psi.amplitudes());
    image
        .iter()
        .zip(psi.amplitudes())
        .map(|(w, p)| (w - Complex64::new(shift, 0.0) * p).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// The two-state angular momentum inequality for real shifts `j₁`, `j₂`:
///
/// ```text
/// |(φ, J₃ψ)| ≤ ‖(J₁−j₁)φ‖‖(J₂−j₂)ψ‖ + ‖(J₂−j₂)φ‖‖(J₁−j₁)ψ‖
/// ```
///
/// cross-checked against the weak commutator: `q_{J₁,J₂}(φ,ψ) = i(φ,J₃ψ)`.
pub fn angmom_two_state_bound(
    rep: &SpinRep,
    phi: &StateVector,
    psi: &StateVector,
    j1_shift: f64,
    j2_shift: f64,
) -> Result<ExperimentRecord, ModelError> {
    let j3_psi = rep.j3.apply(psi.amplitudes());
    let lhs = crate::matlin::inner_product(phi.amplitudes(), &j3_psi).norm();
    let rhs = shifted_norm(&rep.j1, j1_shift, phi) * shifted_norm(&rep.j2, j2_shift, psi)
        + shifted_norm(&rep.j2, j2_shift, phi) * shifted_norm(&rep.j1, j1_shift, psi);
    let q = weak_commutator(&rep.j1, &rep.j2, phi, psi)?;
    let scale = 1.0 + rep.j_max * rep.j_max;
    Ok(
        ExperimentRecord::bound("angmom_two_state", rep.dim, lhs, rhs, 1e-10 * scale)
            .with_extra("j1_shift", j1_shift)
            .with_extra("j2_shift", j2_shift)
            .require((q.norm() - lhs).abs() <= 1e-10 * scale, FLAG_ENGINE_MISMATCH),
    )
}

/// Bounded-spectrum form `‖J₃ψ‖ ≤ 2j·(Δ_ψ(J₁)+Δ_ψ(J₂))`; when `J₃ψ = 0` the
/// variances additionally satisfy `Δ²(J₁) = Δ²(J₂) = ½⟨J²⟩_ψ`.
pub fn bounded_norm_bound(rep: &SpinRep, psi: &StateVector) -> Result<ExperimentRecord, ModelError> {
    let j3_psi = rep.j3.apply(psi.amplitudes());
    let lhs = crate::matlin::vector_norm(&j3_psi);
    let dev1 = moment_report(&rep.j1, psi)?.deviation;
    let dev2 = moment_report(&rep.j2, psi)?.deviation;
    let rhs = 2.0 * rep.j_max * (dev1 + dev2);
    let mut record = ExperimentRecord::bound("bounded_norm", rep.dim, lhs, rhs, bound_tol(rhs))
        .with_extra("dev_j1", dev1)
        .with_extra("dev_j2", dev2);
    if lhs <= 1e-12 {
        let half_jsq = 0.5 * mean(&rep.jsq, psi)?.re;
        record = record
            .with_extra("half_mean_jsq", half_jsq)
            .with_extra("kernel_branch", 1.0)
            .require(
                (dev1 * dev1 - half_jsq).abs() <= 1e-10 && (dev2 * dev2 - half_jsq).abs() <= 1e-10,
                "KernelVarianceMismatch",
            );
    }
    Ok(record)
}

/// The |J₃| bound. For each admissible μ the operators `P`, `E`, `|J₃| = EJ₃`
/// are built and their defining identities verified:
/// `E² = 1`, `P² = P`, `J₃ = E|J₃|`, `EJᵢE − Jᵢ = −2PJᵢP ≡ Wᵢ`, and
/// `|Wᵢ| = [J²+¼δ]^{1/2}P`. Then
///
/// ```text
/// (ψ,|J₃|ψ) ≤ 2Δ(J₁)Δ(J₂) + ‖[J²+¼δ]^{1/2}Pψ‖·(Δ(J₁)+Δ(J₂))
/// ```
///
/// is certified for each μ (both bosonic choices; the tighter one is the
/// headline rhs), and when `Pψ = 0` the corollary
/// `½⟨|J₃|⟩ ≤ Δ(J₁)Δ(J₂)` is asserted as well.
pub fn abs_j3_bound(rep: &SpinRep, psi: &StateVector) -> Result<ExperimentRecord, ModelError> {
    let dev1 = moment_report(&rep.j1, psi)?.deviation;
    let dev2 = moment_report(&rep.j2, psi)?.deviation;
    let identity = ComplexMatrix::identity(rep.dim);
    let op_scale = 1.0 + rep.j_max * (rep.j_max + 1.0);

    // [J² + ¼δ]^{1/2} through the spectral decomposition.
    let shifted_jsq = &rep.jsq + &identity.scale(Complex64::new(0.25 * rep.delta, 0.0));
    let sqrt_jsq = matrix_function(&hermitian_eig(&shifted_jsq)?, |x| {
        Complex64::new(x.max(0.0).sqrt(), 0.0)
    })?;

    let mut record = ExperimentRecord::bound("abs_j3", rep.dim, 0.0, 0.0, 0.0);
    let mut headline_rhs = f64::INFINITY;
    let mut lhs = 0.0;
    let mut ok = true;
    let mut corollary_seen = false;

    for (idx, mu) in rep.mu_choices().into_iter().enumerate() {
        let p = rep.p_operator(mu);
        let e = rep.e_operator(mu);
        let abs_j3 = &e * &rep.j3;

        // Construction identities.
        let e_sq = (&(&e * &e) - &identity).frobenius_norm();
        let p_sq = (&(&p * &p) - &p).frobenius_norm();
        let sign_split = (&(&e * &abs_j3) - &rep.j3).frobenius_norm();
        ok &= e_sq <= 1e-12 * rep.dim as f64;
        ok &= p_sq <= 1e-12 * rep.dim as f64;
        ok &= sign_split <= 1e-12 * rep.dim as f64 * op_scale;

        let sqrt_p = &sqrt_jsq * &p;
        for (label, ji) in [("j1", &rep.j1), ("j2", &rep.j2)] {
            let w = &(&(&e * ji) * &e) - ji;
            let reflected = (&w + &(&(&p * ji) * &p).scale(Complex64::new(2.0, 0.0)))
                .frobenius_norm();
            ok &= reflected <= 1e-10 * op_scale;
            // |Wᵢ| from the spectrum of Wᵢ itself vs the closed form.
            let abs_w = matrix_function(&hermitian_eig(&w)?, |x| Complex64::new(x.abs(), 0.0))?;
            let closed_form_gap = (&abs_w - &sqrt_p).frobenius_norm();
            ok &= closed_form_gap <= 1e-10 * op_scale;
            record = record.with_extra(
                &format!("identity_gap_mu{idx}_{label}"),
                reflected.max(closed_form_gap),
            );
        }

        // The inequality at this μ.
        let abs_mean = mean(&abs_j3, psi)?;
        debug_assert!(abs_mean.im.abs() < 1e-12);
        lhs = abs_mean.re;
        let p_psi_norm = crate::matlin::vector_norm(&sqrt_p.apply(psi.amplitudes()));
        let rhs = 2.0 * dev1 * dev2 + p_psi_norm * (dev1 + dev2);
        ok &= rhs - lhs >= -bound_tol(rhs);
        record = record
            .with_extra(&format!("rhs_mu{idx}"), rhs)
            .with_extra(&format!("mu{idx}"), mu);
        headline_rhs = headline_rhs.min(rhs);

        // Corollary branch: Pψ = 0 collapses the bound to the product form.
        let plain_p_norm = crate::matlin::vector_norm(&p.apply(psi.amplitudes()));
        if plain_p_norm <= 1e-12 {
            corollary_seen = true;
            ok &= 0.5 * lhs <= dev1 * dev2 + 1e-10 * op_scale;
        }
    }

    record.lhs = lhs;
    record.rhs = headline_rhs;
    record.slack = headline_rhs - lhs;
    record.passed = ok && record.slack >= -bound_tol(headline_rhs);
    record = record
        .with_extra("dev_j1", dev1)
        .with_extra("dev_j2", dev2)
        .with_extra("corollary_branch", if corollary_seen { 1.0 } else { 0.0 });
    if !ok {
        record = record.fail("AbsJ3IdentityViolated");
    }
    Ok(record)
}
