use super::{ComplexMatrix, MatlinError, StateVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All randomness in the crate flows through ChaCha8 seeded with a 64-bit
/// value, so every draw is reproducible from the seed recorded in a report.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Axis-aligned rectangle in the complex plane from which spectra are drawn.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl SpectrumBox {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        assert!(re_lo <= re_hi && im_lo <= im_hi, "degenerate spectrum box");
        Self {
            re: (re_lo, re_hi),
            im: (im_lo, im_hi),
        }
    }

    /// Real segment: spectra of Hermitian draws.
    pub fn real_segment(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, 0.0, 0.0)
    }

    /// The square [−1,1] × [−1,1]i.
    pub fn unit_square() -> Self {
        Self::new(-1.0, 1.0, -1.0, 1.0)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let re = sample_range(rng, self.re);
        let im = sample_range(rng, self.im);
        Complex64::new(re, im)
    }
}

fn sample_range(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

// Box–Muller; one deviate per call keeps the stream layout obvious.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-style random unitary: orthonormalize a seeded complex Gaussian matrix
/// by modified Gram–Schmidt (the positive-diagonal QR convention).
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    random_unitary_with(dim, &mut rng)
}

fn random_unitary_with(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    assert!(dim >= 1);
    // columns[j] is the j-th column vector.
    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    for j in 0..dim {
        // Two orthogonalization passes keep the loss of orthogonality at the
        // roundoff level even for nearly dependent draws.
        for _ in 0..2 {
            for k in 0..j {
                let proj = inner(&columns[k], &columns[j]);
                let (head, tail) = columns.split_at_mut(j);
                for (t, h) in tail[0].iter_mut().zip(head[k].iter()) {
                    *t -= proj * h;
                }
            }
        }
        let norm = norm(&columns[j]);
        assert!(norm > 1e-150, "Gaussian draw collapsed during QR");
        let inv = 1.0 / norm;
        for z in columns[j].iter_mut() {
            *z *= inv;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| columns[j][i])
}

/// Random normal operator `V·diag(z)·V*` with spectrum drawn uniformly from
/// `spectrum_box` and `V` Haar-style. Same seed, same matrix.
pub fn random_normal_operator(dim: usize, seed: u64, spectrum_box: SpectrumBox) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    let diag: Vec<Complex64> = (0..dim).map(|_| spectrum_box.sample(&mut rng)).collect();
    if dim == 1 {
        return ComplexMatrix::diagonal(&diag);
    }
    let v = random_unitary_with(dim, &mut rng);
    &(&v * &ComplexMatrix::diagonal(&diag)) * &v.adjoint()
}

/// Hermitian draw: real spectrum in `[lo, hi]`, Haar-rotated.
pub fn random_hermitian(dim: usize, seed: u64, lo: f64, hi: f64) -> ComplexMatrix {
    random_normal_operator(dim, seed, SpectrumBox::real_segment(lo, hi))
}

/// Seeded complex Gaussian amplitudes, normalized.
pub fn random_state(dim: usize, seed: u64) -> StateVector {
    let mut rng = rng_from_seed(seed);
    random_state_with(dim, &mut rng)
}

pub(crate) fn random_state_with(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amplitudes: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    match StateVector::from_unnormalized(amplitudes) {
        Ok(v) => v,
        // Probability ~0, but the retry keeps the function total.
        Err(MatlinError::ZeroVector) => random_state_with(dim, rng),
        Err(e) => unreachable!("gaussian amplitudes are finite: {e}"),
    }
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
