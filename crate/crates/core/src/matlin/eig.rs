use super::{ComplexMatrix, MatlinError, StateVector};
use num_complex::Complex64;

/// Cap on cyclic Jacobi sweeps; well-conditioned Hermitian matrices converge
/// in well under ten sweeps at the dimensions this crate works at.
const MAX_SWEEPS: usize = 50;

/// Hermiticity admission tolerance, relative to `‖H‖_F`.
const HERMITICITY_REL_TOL: f64 = 1e-12;

/// Off-diagonal convergence target, relative to `‖H‖_F`.
const OFF_DIAGONAL_REL_TOL: f64 = 1e-14;

/// Eigendecomposition `H = V·diag(λ)·V*` of a Hermitian matrix.
///
/// Eigenvalues are ascending; ties keep the order in which the Jacobi
/// iteration left them, so repeated runs report identical layouts.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    basis: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V·diag(λ)·V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        &(&self.basis * &ComplexMatrix::diagonal(&diag)) * &self.basis.adjoint()
    }

    /// `‖V*V − 1‖_F`, for orthonormality checks.
    pub fn orthonormality_residual(&self) -> f64 {
        self.basis.unitarity_residual()
    }

    /// Spectral weights `|⟨eᵢ, ψ⟩|²` of a state, i.e. the probability measure
    /// the decomposition induces on the eigenvalue list.
    pub fn state_weights(&self, psi: &StateVector) -> Vec<f64> {
        let n = self.dim();
        let amps = psi.amplitudes();
        (0..n)
            .map(|col| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (row, amp) in amps.iter().enumerate() {
                    acc += self.basis[(row, col)].conj() * amp;
                }
                acc.norm_sqr()
            })
            .collect()
    }
}

/// Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<SpectralDecomposition, MatlinError> {
    let n = h.dim();
    let fro = h.frobenius_norm();
    let herm_tol = HERMITICITY_REL_TOL * fro;
    let herm_res = h.hermiticity_residual();
    if herm_res > herm_tol && herm_res > 1e-300 {
        return Err(MatlinError::NonHermitian {
            residual: herm_res,
            tol: herm_tol,
        });
    }

    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let off_target = OFF_DIAGONAL_REL_TOL * fro;

    let mut converged = off_norm(&a) <= off_target;
    let mut sweeps = 0;
    while !converged {
        if sweeps >= MAX_SWEEPS {
            return Err(MatlinError::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= off_target;
    }

    // Ascending sort, stable so equal eigenvalues keep their diagonal order.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let basis = ComplexMatrix::from_fn(n, |row, col| v[(row, order[col])]);

    Ok(SpectralDecomposition { eigenvalues, basis })
}

/// Apply a scalar function to a Hermitian operator through its spectrum:
/// `f(H) = V·diag(f(λᵢ))·V*`. Rejects eigenvalues where `f` returns a
/// non-finite value (e.g. a real square root fed a negative input).
pub fn matrix_function(
    d: &SpectralDecomposition,
    f: impl Fn(f64) -> Complex64,
) -> Result<ComplexMatrix, MatlinError> {
    let mut mapped = Vec::with_capacity(d.dim());
    for &lam in d.eigenvalues() {
        let z = f(lam);
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(MatlinError::DomainError { eigenvalue: lam });
        }
        mapped.push(z);
    }
    Ok(&(d.basis() * &ComplexMatrix::diagonal(&mapped)) * &d.basis().adjoint())
}

/// `exp(−i·s·H)` for Hermitian `H` given by its decomposition.
pub fn evolution_unitary(d: &SpectralDecomposition, s: f64) -> ComplexMatrix {
    // exp of i·real is always finite.
    matrix_function(d, |x| Complex64::new(0.0, -s * x).exp()).expect("exp is total")
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided Jacobi rotation annihilating the (p,q) entry.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let beta_abs = beta.norm();
    if beta_abs <= 1e-300 {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let phase = beta / beta_abs;

    // Solve t² − 2τt − 1 = 0 for the smaller-magnitude root.
    let tau = (gamma - alpha) / (2.0 * beta_abs);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let sigma = t * c;
    // s enters the plane rotation J = [[c, −s̄],[s, c]] on columns (p,q).
    let s = phase.conj() * sigma;
    let s_conj = phase * sigma;

    let n = a.dim();
    // Column update A ← A·J.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c + aiq * s;
        a[(i, q)] = aip * (-s_conj) + aiq * c;
    }
    // Row update A ← J*·A.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c + aqj * s_conj;
        a[(q, j)] = apj * (-s) + aqj * c;
    }
    // The rotation annihilates these to roundoff; pin them exactly.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // Accumulate eigenvectors V ← V·J.
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c + viq * s;
        v[(i, q)] = vip * (-s_conj) + viq * c;
    }
}
