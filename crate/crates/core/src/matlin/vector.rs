use super::MatlinError;
use num_complex::Complex64;

/// Normalized complex amplitude vector. The constructor enforces `‖ψ‖ = 1`
/// within 1e-12, so downstream moment code can assume a unit state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes that are already normalized (within 1e-12).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, MatlinError> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatlinError::NonFinite);
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(MatlinError::ZeroVector);
        }
        Ok(Self { amplitudes })
    }

    /// Normalize arbitrary finite amplitudes.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self, MatlinError> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatlinError::NonFinite);
        }
        let norm = norm(&amplitudes);
        if norm < 1e-300 {
            return Err(MatlinError::ZeroVector);
        }
        let inv = 1.0 / norm;
        Ok(Self {
            amplitudes: amplitudes.iter().map(|z| z * inv).collect(),
        })
    }

    /// Basis state |k⟩.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// ⟨self, other⟩, antilinear in the first slot.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }
}

/// ⟨x, y⟩ = Σ x̄ᵢ yᵢ on raw slices.
pub(crate) fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_basis() {
        let v = StateVector::from_unnormalized(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 4.0),
        ])
        .unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let e1 = StateVector::basis(2, 1);
        assert!((v.inner(&e1).norm() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn rejects_zero_vector() {
        assert!(StateVector::from_unnormalized(vec![Complex64::new(0.0, 0.0)]).is_err());
    }
}
