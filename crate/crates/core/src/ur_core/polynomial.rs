//! Real roots of low-degree real polynomials on an interval.
//!
//! The stationary condition of the λ-parametrized bound is a polynomial of
//! degree ≤ 5; only its real roots inside `[0,1]` matter, and a missed root
//! means a wrong infimum. Rather than eigen-decompose a non-Hermitian
//! companion matrix (the crate's eigensolver is Hermitian-only), the roots are
//! isolated by recursion on the derivative — between consecutive critical
//! points the polynomial is monotone, so plain bisection finds every sign
//! change — plus an explicit near-zero test at critical points so tangential
//! (double) roots are not dropped.

/// Horner evaluation; `coeffs[k]` multiplies `x^k`.
pub(crate) fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Drop numerically-zero leading coefficients (relative to the largest one).
fn trim(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<f64> = coeffs.iter().map(|&c| c / scale).collect();
    while let Some(&last) = out.last() {
        if last.abs() <= 1e-14 && out.len() > 1 {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// All real roots of the polynomial inside `[lo, hi]`, ascending, deduplicated.
///
/// An identically-zero polynomial reports no roots; callers detect that case
/// themselves (every point is then a root).
pub fn real_roots_in_interval(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let p = trim(coeffs);
    let mut roots = roots_recursive(&p, lo, hi);
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-11);
    roots
}

fn roots_recursive(p: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    match p.len() {
        0 | 1 => Vec::new(),
        2 => {
            // c0 + c1 x
            let r = -p[0] / p[1];
            in_range(r, lo, hi).into_iter().collect()
        }
        3 => quadratic_roots(p[0], p[1], p[2], lo, hi),
        _ => {
            let crit = roots_recursive(&trim(&derivative(p)), lo, hi);
            let mut breakpoints = Vec::with_capacity(crit.len() + 2);
            breakpoints.push(lo);
            breakpoints.extend(crit.iter().copied());
            breakpoints.push(hi);
            breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());

            let mut roots = Vec::new();
            // Tangential roots sit at critical points where |p| dips to ~0.
            for &c in &crit {
                if eval(p, c).abs() <= 1e-12 {
                    roots.push(c.clamp(lo, hi));
                }
            }
            for w in breakpoints.windows(2) {
                let (x0, x1) = (w[0], w[1]);
                if x1 - x0 <= 1e-15 {
                    continue;
                }
                let f0 = eval(p, x0);
                let f1 = eval(p, x1);
                if f0 == 0.0 {
                    roots.push(x0);
                }
                if f1 == 0.0 {
                    roots.push(x1);
                }
                if f0 * f1 < 0.0 {
                    roots.push(bisect(p, x0, x1, f0));
                }
            }
            roots
        }
    }
}

fn quadratic_roots(c0: f64, c1: f64, c2: f64, lo: f64, hi: f64) -> Vec<f64> {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let scale = c1 * c1 + (4.0 * c2 * c0).abs();
    let mut out = Vec::new();
    if disc < 0.0 {
        // Allow a grazing double root lost to roundoff.
        if disc > -1e-12 * scale.max(1e-300) {
            out.extend(in_range(-c1 / (2.0 * c2), lo, hi));
        }
        return out;
    }
    // Citardauq-style split avoids cancellation.
    let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
    let r1 = q / c2;
    let r2 = if q.abs() > 0.0 { c0 / q } else { -c1 / (2.0 * c2) };
    out.extend(in_range(r1, lo, hi));
    out.extend(in_range(r2, lo, hi));
    out
}

fn in_range(x: f64, lo: f64, hi: f64) -> Option<f64> {
    if x.is_finite() && x >= lo - 1e-10 && x <= hi + 1e-10 {
        Some(x.clamp(lo, hi))
    } else {
        None
    }
}

fn bisect(p: &[f64], mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let sign_lo = f_lo.signum();
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn quintic_with_known_roots() {
        // (x−0.1)(x−0.3)(x−0.5)(x−0.7)(x−0.9) expanded
        let roots_in = [0.1, 0.3, 0.5, 0.7, 0.9];
        let mut coeffs = vec![1.0];
        for r in roots_in {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k] -= r * c;
                next[k + 1] += c;
            }
            coeffs = next;
        }
        let roots = real_roots_in_interval(&coeffs, 0.0, 1.0);
        assert_eq!(roots.len(), 5);
        for (got, want) in roots.iter().zip(roots_in.iter()) {
            assert!(close(*got, *want), "{got} vs {want}");
        }
    }

    #[test]
    fn double_root_is_found() {
        // (x−0.4)²(x+2) = x³ + 1.2x² − 1.44x + 0.32: tangential at 0.4
        let coeffs = [0.32, -1.44, 1.2, 1.0];
        let roots = real_roots_in_interval(&coeffs, 0.0, 1.0);
        assert_eq!(roots.len(), 1, "roots: {roots:?} from {coeffs:?}");
        assert!(close(roots[0], 0.4));
    }

    #[test]
    fn no_roots_degree_zero_and_constant() {
        assert!(real_roots_in_interval(&[3.0], 0.0, 1.0).is_empty());
        assert!(real_roots_in_interval(&[], 0.0, 1.0).is_empty());
        assert!(real_roots_in_interval(&[0.0, 0.0], 0.0, 1.0).is_empty());
    }

    #[test]
    fn endpoint_roots_kept() {
        // x(x−1)
        let roots = real_roots_in_interval(&[0.0, -1.0, 1.0], 0.0, 1.0);
        assert_eq!(roots.len(), 2);
        assert!(close(roots[0], 0.0) && close(roots[1], 1.0));
    }
}
