//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrices::DenseMatrix;

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order, eigenvectors as the matching columns
/// of the returned matrix.
pub(crate) fn jacobi_eigen(a: &DenseMatrix, max_sweeps: usize) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = a.dim();
    let mut a = a.clone();
    let mut v = DenseMatrix::identity(n);
    let floor = 1e-300_f64.max(f64::EPSILON * f64::EPSILON * a.frobenius());

    let mut converged = n <= 1;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotations = 0usize;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                if apq.abs() <= floor || apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotations += 1;
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
            }
        }
        if rotations == 0 {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "cyclic Jacobi",
            iterations: max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DenseMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (vals, vecs) = jacobi_eigen(&a, MAX_SWEEPS).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-15);
        assert!((vals[1] - 1.0).abs() < 1e-15);
        assert!((vecs[(0, 0)].abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sweep_cap_reports_convergence_error() {
        let a = DenseMatrix::from_fn(6, |m, n| 1.0 / (1.0 + m as f64 + n as f64));
        assert!(matches!(
            jacobi_eigen(&a, 0),
            Err(Error::Convergence { .. })
        ));
    }
}
