use super::moments::centered_norm;
use super::oracle::weak_commutator_unchecked;
use super::polynomial::real_roots_in_interval;
use super::{check_dims, check_normal, UrError};
use crate::matlin::{inner_product, ComplexMatrix, StateVector};
use num_complex::Complex64;

/// Below this size the stationary polynomial (equivalently both shift gaps
/// `δ⟨A⟩`, `δ⟨B⟩`) counts as degenerate: the bound is λ-independent and the
/// candidate set collapses to `{1/2}`.
pub const DEGENERACY_CUTOFF: f64 = 1e-14;

/// How the reported infimum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// A closed-form minimizer (e.g. the equal-state specialization).
    ClosedForm,
    /// Stationary-polynomial candidates plus interval endpoints.
    Quintic,
    /// Dense λ-grid scan.
    Scan,
    /// Brute-force grid plus descent over complex (a, b).
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::ClosedForm => "closed_form",
            Method::Quintic => "quintic",
            Method::Scan => "scan",
            Method::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// Both sides of the two-state bound, with the minimizing shifts.
///
/// `lambda_star` is λ₁; λ₂ = 1 − λ₁ throughout.
#[derive(Debug, Clone)]
pub struct GurReport {
    pub lhs: f64,
    pub rhs: f64,
    pub a_star: Complex64,
    pub b_star: Complex64,
    pub lambda_star: f64,
    pub method: Method,
    pub slack: f64,
}

impl GurReport {
    /// The inequality itself, at the certification tolerance.
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-9 * (1.0 + self.rhs)
    }
}

impl std::fmt::Display for GurReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "½|q| = {:.6e} ≤ {:.6e} = rhs/2  (λ₁ = {:.6}, method {})",
            0.5 * self.lhs,
            0.5 * self.rhs,
            self.lambda_star,
            self.method
        )
    }
}

/// The eight scalars the λ-parametrized bound depends on: means and deviations
/// of both operators in both states.
#[derive(Debug, Clone, Copy)]
pub struct CrossMoments {
    pub mean_a_phi: Complex64,
    pub mean_a_chi: Complex64,
    pub mean_b_phi: Complex64,
    pub mean_b_chi: Complex64,
    pub dev_a_phi: f64,
    pub dev_a_chi: f64,
    pub dev_b_phi: f64,
    pub dev_b_chi: f64,
}

impl CrossMoments {
    pub fn compute(
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        phi: &StateVector,
        chi: &StateVector,
    ) -> Result<Self, UrError> {
        check_dims(a.dim(), b.dim())?;
        check_dims(a.dim(), phi.dim())?;
        check_dims(a.dim(), chi.dim())?;
        let pair = |op: &ComplexMatrix, st: &StateVector| {
            let image = op.apply(st.amplitudes());
            let m = inner_product(st.amplitudes(), &image);
            (m, centered_norm(&image, m, st))
        };
        let (mean_a_phi, dev_a_phi) = pair(a, phi);
        let (mean_a_chi, dev_a_chi) = pair(a, chi);
        let (mean_b_phi, dev_b_phi) = pair(b, phi);
        let (mean_b_chi, dev_b_chi) = pair(b, chi);
        Ok(Self {
            mean_a_phi,
            mean_a_chi,
            mean_b_phi,
            mean_b_chi,
            dev_a_phi,
            dev_a_chi,
            dev_b_phi,
            dev_b_chi,
        })
    }

    /// δ⟨A⟩ = ⟨A⟩_φ − ⟨A⟩_χ
    pub fn delta_a(&self) -> Complex64 {
        self.mean_a_phi - self.mean_a_chi
    }

    /// δ⟨B⟩ = ⟨B⟩_φ − ⟨B⟩_χ
    pub fn delta_b(&self) -> Complex64 {
        self.mean_b_phi - self.mean_b_chi
    }

    /// The shifts a λ value parametrizes:
    /// `a = λ₂⟨A⟩_φ + λ₁⟨A⟩_χ`, `b = λ₂⟨B⟩_φ + λ₁⟨B⟩_χ`.
    pub fn shifts(&self, lambda1: f64) -> (Complex64, Complex64) {
        let lambda2 = 1.0 - lambda1;
        (
            self.mean_a_phi * lambda2 + self.mean_a_chi * lambda1,
            self.mean_b_phi * lambda2 + self.mean_b_chi * lambda1,
        )
    }

    /// `F(a, b)` from moments alone, using
    /// `‖(A−a)ψ‖² = Δ²_ψ(A) + |a − ⟨A⟩_ψ|²`.
    pub fn objective(&self, a: Complex64, b: Complex64) -> f64 {
        let term = |dev: f64, m: Complex64, shift: Complex64| {
            (dev * dev + (shift - m).norm_sqr()).sqrt()
        };
        term(self.dev_a_phi, self.mean_a_phi, a) * term(self.dev_b_chi, self.mean_b_chi, b)
            + term(self.dev_b_phi, self.mean_b_phi, b) * term(self.dev_a_chi, self.mean_a_chi, a)
    }
}

/// The bracketed expression of the bound's second line at `λ₁ ∈ [0,1]`:
///
/// ```text
/// √(Δ²_φ(A)+|δ⟨A⟩|²λ₁²)·√(Δ²_χ(B)+|δ⟨B⟩|²λ₂²)
///   + √(Δ²_φ(B)+|δ⟨B⟩|²λ₁²)·√(Δ²_χ(A)+|δ⟨A⟩|²λ₂²)
/// ```
pub fn lambda_form(lambda1: f64, m: &CrossMoments) -> Result<f64, UrError> {
    if !(0.0..=1.0).contains(&lambda1) || !lambda1.is_finite() {
        return Err(UrError::RangeError { value: lambda1 });
    }
    let lambda2 = 1.0 - lambda1;
    let p = m.delta_a().norm_sqr();
    let q = m.delta_b().norm_sqr();
    let l1 = lambda1 * lambda1;
    let l2 = lambda2 * lambda2;
    Ok(
        (m.dev_a_phi * m.dev_a_phi + p * l1).sqrt() * (m.dev_b_chi * m.dev_b_chi + q * l2).sqrt()
            + (m.dev_b_phi * m.dev_b_phi + q * l1).sqrt()
                * (m.dev_a_chi * m.dev_a_chi + p * l2).sqrt(),
    )
}

/// λ₁ candidates for the infimum, with the degenerate case marked.
#[derive(Debug, Clone)]
pub struct LambdaCandidates {
    pub lambdas: Vec<f64>,
    pub degenerate: bool,
}

/// Ascending coefficients of the stationary condition as a polynomial in λ₁:
///
/// ```text
/// (Δ²_φ(A)+pλ₁²)(Δ²_φ(B)+qλ₁²)λ₂² − (Δ²_χ(A)+pλ₂²)(Δ²_χ(B)+qλ₂²)λ₁² = 0,
/// ```
///
/// with `p = |δ⟨A⟩|²`, `q = |δ⟨B⟩|²`, `λ₂ = 1−λ₁`. The degree-6 terms cancel
/// identically, leaving degree ≤ 5.
pub fn stationary_polynomial(m: &CrossMoments) -> Vec<f64> {
    let p = m.delta_a().norm_sqr();
    let q = m.delta_b().norm_sqr();
    let a1 = m.dev_a_phi * m.dev_a_phi;
    let b1 = m.dev_b_phi * m.dev_b_phi;
    let a2 = m.dev_a_chi * m.dev_a_chi;
    let b2 = m.dev_b_chi * m.dev_b_chi;

    // (a1 + p λ²)(b1 + q λ²)(1−λ)²
    let lhs = conv(&conv(&[a1, 0.0, p], &[b1, 0.0, q]), &[1.0, -2.0, 1.0]);
    // (a2 + p(1−λ)²)(b2 + q(1−λ)²)λ²
    let rhs = conv(
        &conv(&[a2 + p, -2.0 * p, p], &[b2 + q, -2.0 * q, q]),
        &[0.0, 0.0, 1.0],
    );
    lhs.iter().zip(rhs.iter()).map(|(l, r)| l - r).collect()
}

fn conv(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Solve the stationary condition for λ₁ candidates in `[0,1]`.
///
/// The interval endpoints are always appended — the stationary argument does
/// not exclude a boundary infimum for every input. When both shift gaps
/// vanish the objective is λ-independent and the candidate set is `{1/2}`.
pub fn stationary_lambdas(m: &CrossMoments) -> LambdaCandidates {
    let poly = stationary_polynomial(m);
    let p = m.delta_a().norm_sqr();
    let q = m.delta_b().norm_sqr();
    let coeff_scale = poly.iter().fold(0.0f64, |acc, &c| acc.max(c.abs()));
    if coeff_scale < DEGENERACY_CUTOFF || (p < DEGENERACY_CUTOFF && q < DEGENERACY_CUTOFF) {
        return LambdaCandidates {
            lambdas: vec![0.5],
            degenerate: true,
        };
    }
    let mut lambdas = real_roots_in_interval(&poly, -1e-10, 1.0 + 1e-10);
    for l in lambdas.iter_mut() {
        *l = l.clamp(0.0, 1.0);
    }
    lambdas.push(0.0);
    lambdas.push(1.0);
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lambdas.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    LambdaCandidates {
        lambdas,
        degenerate: false,
    }
}

/// Minimum of [`lambda_form`] over a uniform λ-grid; the slow-but-simple
/// reference used to validate the candidate set.
pub fn lambda_grid_min(m: &CrossMoments, points: usize) -> (f64, f64) {
    assert!(points >= 2);
    let mut best = (0.0, f64::INFINITY);
    for k in 0..points {
        let lambda = k as f64 / (points - 1) as f64;
        let value = lambda_form(lambda, m).expect("grid λ is in range");
        if value < best.1 {
            best = (lambda, value);
        }
    }
    best
}

/// The generalized two-state bound: `lhs = |q_{A,B}(φ,χ)|` against the
/// λ-parametrized infimum, minimizing shifts included.
pub fn gur_bound(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    phi: &StateVector,
    chi: &StateVector,
) -> Result<GurReport, UrError> {
    check_normal(a)?;
    check_normal(b)?;
    let lhs = weak_commutator_unchecked(a, b, phi, chi)?.norm();
    let m = CrossMoments::compute(a, b, phi, chi)?;
    let candidates = stationary_lambdas(&m);
    let mut lambda_star = candidates.lambdas[0];
    let mut rhs = f64::INFINITY;
    for &lambda in &candidates.lambdas {
        let value = lambda_form(lambda, &m)?;
        if value < rhs {
            rhs = value;
            lambda_star = lambda;
        }
    }
    let (a_star, b_star) = m.shifts(lambda_star);
    Ok(GurReport {
        lhs,
        rhs,
        a_star,
        b_star,
        lambda_star,
        method: Method::Quintic,
        slack: rhs - lhs,
    })
}

/// The equal-state specialization `½|q_{A,B}(ψ,ψ)| ≤ Δ_ψ(A)Δ_ψ(B)`,
/// reported with `rhs = 2Δ_ψ(A)Δ_ψ(B)` and the closed-form minimizers
/// `a = ⟨A⟩_ψ`, `b = ⟨B⟩_ψ`.
pub fn robertson(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    psi: &StateVector,
) -> Result<GurReport, UrError> {
    check_normal(a)?;
    check_normal(b)?;
    let lhs = weak_commutator_unchecked(a, b, psi, psi)?.norm();
    let m = CrossMoments::compute(a, b, psi, psi)?;
    let rhs = 2.0 * m.dev_a_phi * m.dev_b_phi;
    Ok(GurReport {
        lhs,
        rhs,
        a_star: m.mean_a_phi,
        b_star: m.mean_b_phi,
        lambda_star: 0.5,
        method: Method::ClosedForm,
        slack: rhs - lhs,
    })
}
