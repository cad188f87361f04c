use super::MatlinError;
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Dense square complex matrix, row-major storage.
///
/// Construction rejects non-finite entries; all other invariants (hermiticity,
/// unitarity, normality) are checked on demand with caller-chosen tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, MatlinError> {
        if entries.len() != dim * dim {
            return Err(MatlinError::BadShape {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatlinError::NonFinite);
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let entries: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&entries)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * z).collect(),
        }
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "apply: dimension mismatch");
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, x) in row.iter().zip(v.iter()) {
                acc += a * x;
            }
            out.push(acc);
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `‖self − self*‖_F`
    pub fn hermiticity_residual(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `‖self*·self − 1‖_F`
    pub fn unitarity_residual(&self) -> f64 {
        let prod = &self.adjoint() * self;
        (&prod - &Self::identity(self.dim)).frobenius_norm()
    }

    /// Unitary within `tol·dim` in Frobenius norm.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol * self.dim as f64
    }

    /// `‖A*A − AA*‖_F`
    pub fn normality_residual(&self) -> f64 {
        let adj = self.adjoint();
        (&(&adj * self) - &(self * &adj)).frobenius_norm()
    }

    /// True iff `‖A*A − AA*‖_F ≤ tol·‖A‖_F²`.
    pub fn is_normal(&self, tol: f64) -> bool {
        assert!(tol > 0.0, "normality tolerance must be positive");
        let scale = self.frobenius_norm();
        self.normality_residual() <= tol * scale * scale
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "mul: dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_wrong_shape_and_nan() {
        assert!(ComplexMatrix::new(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn unitary_is_normal() {
        // Pauli σ₂ is unitary, hence normal.
        let s2 = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        assert!(s2.is_unitary(1e-12));
        assert!(s2.is_normal(1e-10));
    }

    #[test]
    fn nilpotent_shift_is_not_normal() {
        // [[0,1],[0,0]]: A*A = diag(0,1), AA* = diag(1,0), residual √2.
        let a = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(!a.is_normal(1e-10));
        assert!((a.normality_residual() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hermitian_plus_i_commuting_hermitian_is_normal() {
        // diag(1,2) + i·diag(3,-1): commuting Hermitian parts.
        let a = ComplexMatrix::diagonal(&[c(1.0, 3.0), c(2.0, -1.0)]);
        assert!(a.is_normal(1e-10));
    }

    #[test]
    fn commutator_of_paulis() {
        let s1 = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let s2 = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        // [σ₁,σ₂] = 2iσ₃
        let comm = s1.commutator(&s2);
        assert!((comm[(0, 0)] - c(0.0, 2.0)).norm() < 1e-15);
        assert!((comm[(1, 1)] - c(0.0, -2.0)).norm() < 1e-15);
        assert!(comm[(0, 1)].norm() < 1e-15);
    }
}
