//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Evaluates `p` and `p′` at `z` (ascending real coefficients).
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Rounding-error bound for Horner evaluation at `z`.
pub fn eval_error_bound(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let magnitude = coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs());
    4.0 * coeffs.len() as f64 * f64::EPSILON * magnitude
}

/// Accepted residual at `z`: `tol`, or the evaluation noise floor if larger.
pub fn residual_ok(coeffs: &[f64], z: Complex64, tol: f64) -> bool {
    eval(coeffs, z).norm() <= tol.max(eval_error_bound(coeffs, z))
}

/// All complex roots of a real polynomial (ascending coefficients, nonzero
/// leading coefficient), with multiplicity.
///
/// Exact zero roots are split off first. The remaining roots start on a
/// circle of radius `1 + max|c_k/c_n|` at angles `2πk/n + 0.4`, which makes the
/// result deterministic.
pub fn find_roots(coeffs: &[f64], tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
    let mut coeffs: Vec<f64> = coeffs.to_vec();
    while coeffs.last() == Some(&0.0) {
        coeffs.pop();
    }
    let Some(&lead) = coeffs.last() else {
        return Err(Error::Precondition("zero polynomial has no finite root set".into()));
    };
    let zeros = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let monic: Vec<f64> = coeffs[zeros..].iter().map(|c| c / lead).collect();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let degree = monic.len() - 1;
    match degree {
        0 => return Ok(roots),
        1 => {
            roots.push(Complex64::new(-monic[0], 0.0));
            return Ok(roots);
        }
        _ => {}
    }

    let radius = 1.0 + monic[..degree].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut iterations = 0;
    for _ in 0..max_iter {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { d.inv() }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }

    // Newton polish; harmless on clustered roots since steps are only kept if
    // they reduce the residual.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let candidate = *zi - p / dp;
            if candidate.is_finite() && eval(&monic, candidate).norm() < p.norm() {
                *zi = candidate;
            } else {
                break;
            }
        }
    }

    let worst = z.iter().map(|&zi| eval(&monic, zi).norm()).fold(0.0, f64::max);
    if !z.iter().all(|&zi| residual_ok(&monic, zi, tol)) {
        return Err(Error::RootFinding { iterations, residual: worst });
    }
    roots.extend(z);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re));
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn real_distinct_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let roots = find_roots(&[6.0, -7.0, 0.0, 1.0], 1e-10, 500).unwrap();
        let re = sorted_re(roots);
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let roots = find_roots(&[-1.0, 0.0, 0.0, 1.0], 1e-10, 500).unwrap();
        for z in &roots {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_roots_are_exact() {
        let roots = find_roots(&[0.0, 0.0, -1.0, 1.0], 1e-10, 500).unwrap();
        assert_eq!(roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn double_root_meets_residual() {
        // (x - 0.5)^2 (x + 0.25)
        let coeffs = [0.0625, 0.0, -0.75, 1.0];
        let roots = find_roots(&coeffs, 1e-10, 500).unwrap();
        for z in roots {
            assert!(eval(&coeffs, z).norm() <= 1e-10);
        }
    }
}
