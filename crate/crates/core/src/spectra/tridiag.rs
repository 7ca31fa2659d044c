//! Symmetric tridiagonal helpers: Sturm-sequence bisection for extreme
//! eigenvalues and inverse iteration for the matching eigenvector.

/// Number of eigenvalues strictly below `x` for the tridiagonal matrix
/// with diagonal `d` and off-diagonal `e` (`e.len() == d.len() - 1`).
pub(crate) fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 { tiny } else { q };
        q = d[i] - x - e[i - 1] * e[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..d.len() {
        let mut r = 0.0;
        if i > 0 {
            r += e[i - 1].abs();
        }
        if i < e.len() {
            r += e[i].abs();
        }
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (zero-based) by bisection.
pub(crate) fn kth_eigenvalue(d: &[f64], e: &[f64], k: usize) -> f64 {
    let (mut lo, mut hi) = gershgorin(d, e);
    let pad = f64::EPSILON * (lo.abs().max(hi.abs())).max(f64::MIN_POSITIVE);
    lo -= pad;
    hi += pad;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub(crate) fn largest_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    kth_eigenvalue(d, e, d.len() - 1)
}

pub(crate) fn smallest_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    kth_eigenvalue(d, e, 0)
}

/// Solves the general tridiagonal system with partial pivoting; `sub`,
/// `diag`, `sup` are consumed. Zero pivots are replaced by a tiny value,
/// which is what inverse iteration wants.
fn solve_tridiagonal(sub: Vec<f64>, mut diag: Vec<f64>, mut sup: Vec<f64>, b: &mut [f64]) {
    let n = diag.len();
    let tiny = f64::EPSILON * diag.iter().chain(&sub).fold(f64::MIN_POSITIVE, |m, x| m.max(x.abs()));
    if n == 1 {
        if diag[0] == 0.0 {
            diag[0] = tiny;
        }
        b[0] /= diag[0];
        return;
    }
    // `sup2` is the second superdiagonal created by row interchanges.
    let mut sup2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if diag[i].abs() >= sub[i].abs() {
            if diag[i] == 0.0 {
                diag[i] = tiny;
            }
            let fact = sub[i] / diag[i];
            diag[i + 1] -= fact * sup[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = diag[i] / sub[i];
            diag[i] = sub[i];
            let temp = diag[i + 1];
            diag[i + 1] = sup[i] - fact * temp;
            if i + 2 < n {
                sup2[i] = sup[i + 1];
                sup[i + 1] = -fact * sup2[i];
            }
            sup[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if diag[n - 1] == 0.0 {
        diag[n - 1] = tiny;
    }
    b[n - 1] /= diag[n - 1];
    b[n - 2] = (b[n - 2] - sup[n - 2] * b[n - 1]) / diag[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - sup[i] * b[i + 1] - sup2[i] * b[i + 2]) / diag[i];
    }
}

/// Unit eigenvector for the (simple) eigenvalue closest to `shift`.
pub(crate) fn eigenvector(d: &[f64], e: &[f64], shift: f64) -> Vec<f64> {
    let n = d.len();
    if n == 1 {
        return vec![1.0];
    }
    let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * ((i * 7919) % 13) as f64).collect();
    for _ in 0..3 {
        let diag: Vec<f64> = d.iter().map(|x| x - shift).collect();
        solve_tridiagonal(e.to_vec(), diag, e.to_vec(), &mut y);
        let nrm = crate::numeric::norm2(&y);
        crate::numeric::scale(1.0 / nrm, &mut y);
    }
    y
}
