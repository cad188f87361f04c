use super::bound::CrossMoments;
use super::{check_dims, check_normal, UrError};
use crate::matlin::{inner_product, vector_norm, ComplexMatrix, StateVector};
use num_complex::Complex64;

/// Weak commutator `q_{A,B}(φ,χ) = (A*φ, Bχ) − (B*φ, Aχ)`.
///
/// Computed from the definition (adjoint images, not a commutator product),
/// so the finite-dimensional identity `q = (φ, [A,B]χ)` stays an independent
/// cross-check.
pub fn weak_commutator(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    phi: &StateVector,
    chi: &StateVector,
) -> Result<Complex64, UrError> {
    check_normal(a)?;
    check_normal(b)?;
    weak_commutator_unchecked(a, b, phi, chi)
}

/// Same form without the normality admission test; callers that already
/// validated the operators use this on hot paths.
pub(crate) fn weak_commutator_unchecked(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    phi: &StateVector,
    chi: &StateVector,
) -> Result<Complex64, UrError> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), phi.dim())?;
    check_dims(a.dim(), chi.dim())?;
    let a_star_phi = a.adjoint().apply(phi.amplitudes());
    let b_star_phi = b.adjoint().apply(phi.amplitudes());
    let a_chi = a.apply(chi.amplitudes());
    let b_chi = b.apply(chi.amplitudes());
    Ok(inner_product(&a_star_phi, &b_chi) - inner_product(&b_star_phi, &a_chi))
}

/// `F(a,b) = ‖(A−a)φ‖‖(B−b)χ‖ + ‖(B−b)φ‖‖(A−a)χ‖`, evaluated from the
/// definition by shifting the operator images.
pub fn objective_f(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    phi: &StateVector,
    chi: &StateVector,
    shift_a: Complex64,
    shift_b: Complex64,
) -> Result<f64, UrError> {
    check_normal(a)?;
    check_normal(b)?;
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), phi.dim())?;
    check_dims(a.dim(), chi.dim())?;
    let shifted = |op: &ComplexMatrix, st: &StateVector, z: Complex64| {
        let image = op.apply(st.amplitudes());
        let shifted: Vec<Complex64> = image
            .iter()
            .zip(st.amplitudes())
            .map(|(w, p)| w - z * p)
            .collect();
        vector_norm(&shifted)
    };
    Ok(shifted(a, phi, shift_a) * shifted(b, chi, shift_b)
        + shifted(b, phi, shift_b) * shifted(a, chi, shift_a))
}

/// Result of the brute-force infimum search.
#[derive(Debug, Clone, Copy)]
pub struct OracleInfimum {
    /// Minimum of `F` over the refined grid (moment-formula evaluation).
    pub value: f64,
    /// The same point evaluated through the definition of `F`; the gap
    /// between the two is roundoff, recorded for honesty.
    pub value_by_definition: f64,
    pub a: Complex64,
    pub b: Complex64,
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Ground-truth brute-force infimum of `F` over complex `(a, b)` treated as
/// four real coordinates: a dense grid (at least 41 points per axis) followed
/// by golden-section coordinate descent down to 1e-8 steps.
///
/// `bounding_box` overrides the default search square, which covers
/// `[min mean − 3·max deviation, max mean + 3·max deviation]` on every real
/// axis of each variable — the minimizing shifts are convex combinations of
/// the means, so they always lie well inside.
pub fn oracle_infimum(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    phi: &StateVector,
    chi: &StateVector,
    bounding_box: Option<(f64, f64)>,
    n_grid: usize,
) -> Result<OracleInfimum, UrError> {
    assert!(n_grid >= 41, "oracle grid must have ≥ 41 points per axis");
    check_normal(a)?;
    check_normal(b)?;
    let m = CrossMoments::compute(a, b, phi, chi)?;

    let (a_lo, a_hi) = match bounding_box {
        Some(body) => body,
        None => covering_interval(&[m.mean_a_phi, m.mean_a_chi], m.dev_a_phi.max(m.dev_a_chi)),
    };
    let (b_lo, b_hi) = match bounding_box {
        Some(body) => body,
        None => covering_interval(&[m.mean_b_phi, m.mean_b_chi], m.dev_b_phi.max(m.dev_b_chi)),
    };

    let axis = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n_grid - 1) as f64;

    let mut best = [0.0f64; 4];
    let mut best_val = f64::INFINITY;
    for i in 0..n_grid {
        let ar = axis(a_lo, a_hi, i);
        for j in 0..n_grid {
            let ai = axis(a_lo, a_hi, j);
            let za = Complex64::new(ar, ai);
            for k in 0..n_grid {
                let br = axis(b_lo, b_hi, k);
                for l in 0..n_grid {
                    let bi = axis(b_lo, b_hi, l);
                    let v = m.objective(za, Complex64::new(br, bi));
                    if v < best_val {
                        best_val = v;
                        best = [ar, ai, br, bi];
                    }
                }
            }
        }
    }

    // Coordinate descent refinement from the best grid point.
    let mut x = best;
    let mut step = ((a_hi - a_lo).max(b_hi - b_lo) / (n_grid - 1) as f64).max(1e-6);
    let eval = |x: &[f64; 4]| {
        CrossMoments::objective(
            &m,
            Complex64::new(x[0], x[1]),
            Complex64::new(x[2], x[3]),
        )
    };
    while step > 1e-8 {
        for coord in 0..4 {
            let (xc, _) = golden_section_minimize(
                |t| {
                    let mut y = x;
                    y[coord] = t;
                    eval(&y)
                },
                x[coord] - step,
                x[coord] + step,
                1e-10,
            );
            x[coord] = xc;
        }
        step *= 0.5;
    }
    let value = eval(&x);
    let za = Complex64::new(x[0], x[1]);
    let zb = Complex64::new(x[2], x[3]);
    let value_by_definition = objective_f(a, b, phi, chi, za, zb)?;
    Ok(OracleInfimum {
        value,
        value_by_definition,
        a: za,
        b: zb,
    })
}

fn covering_interval(means: &[Complex64], max_dev: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for z in means {
        lo = lo.min(z.re).min(z.im);
        hi = hi.max(z.re).max(z.im);
    }
    (lo - 3.0 * max_dev, hi + 3.0 * max_dev)
}
