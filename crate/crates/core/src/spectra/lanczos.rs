//! Lanczos iteration with full reorthogonalization for the extreme
//! eigenvalue of large symmetric or skew-symmetric operators.
//!
//! For a skew operator the diagonal coefficients vanish identically, so the
//! projected matrix is skew tridiagonal with sub-diagonal `β`. Its
//! eigenvalues are `±i` times those of the symmetric tridiagonal matrix with
//! zero diagonal and off-diagonal `β`, which is what gets bisected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tridiag;
use crate::error::{Error, Result};
use crate::matrices::{DenseMatrix, SkewMatrix, SymMatrix};
use crate::numeric::{axpy, dot, norm2, scale};

/// Matrix-free `y = M x`.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl LinearOperator for DenseMatrix {
    fn dim(&self) -> usize {
        DenseMatrix::dim(self)
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y)
    }
}

impl LinearOperator for SkewMatrix {
    fn dim(&self) -> usize {
        SkewMatrix::dim(self)
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.as_dense().matvec(x, y)
    }
}

impl LinearOperator for SymMatrix {
    fn dim(&self) -> usize {
        SymMatrix::dim(self)
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.as_dense().matvec(x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosConfig {
    pub max_iter: usize,
    /// Stop once the Ritz residual drops below `rel_tol · |θ|`.
    pub rel_tol: f64,
    pub seed: u64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self {
            max_iter: 3000,
            rel_tol: 1e-12,
            seed: 0x5eed,
        }
    }
}

/// Top eigenpair `iμ`, `u = v + i w`, of a skew operator.
#[derive(Debug, Clone)]
pub struct SkewRitz {
    pub mu: f64,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Eigenpair of largest modulus of a symmetric operator.
#[derive(Debug, Clone)]
pub struct SymRitz {
    pub lambda: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

struct Run {
    basis: Vec<Vec<f64>>,
    y: Vec<f64>,
    theta: f64,
    iterations: usize,
    residual: f64,
}

fn start_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let nrm = norm2(&q);
    scale(1.0 / nrm, &mut q);
    q
}

fn run<Op: LinearOperator + ?Sized>(
    op: &Op,
    skew: bool,
    cfg: &LanczosConfig,
    start: Option<&[f64]>,
) -> Result<Run> {
    let n = op.dim();
    let max_iter = cfg.max_iter.min(n).max(1);
    let first = match start {
        Some(s) => {
            if s.len() != n {
                return Err(Error::InvalidInput(format!(
                    "start vector has length {}, operator has dimension {n}",
                    s.len()
                )));
            }
            let nrm = norm2(s);
            if !(nrm.is_finite() && nrm > 0.0) {
                return Err(Error::InvalidInput("start vector is zero".into()));
            }
            s.iter().map(|x| x / nrm).collect()
        }
        None => start_vector(n, cfg.seed),
    };
    let mut basis = vec![first];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut r = vec![0.0; n];
    let mut op_scale = 0.0f64;

    for j in 0..max_iter {
        op.apply(&basis[j], &mut r);
        if j > 0 {
            let sign = if skew { 1.0 } else { -1.0 };
            axpy(sign * beta[j - 1], &basis[j - 1], &mut r);
        }
        let a = if skew { 0.0 } else { dot(&basis[j], &r) };
        if a != 0.0 {
            axpy(-a, &basis[j], &mut r);
        }
        // Classical Gram–Schmidt, repeated only when the first pass
        // cancelled most of the vector.
        for _ in 0..2 {
            let before = norm2(&r);
            let coeffs: Vec<f64> = basis.iter().map(|q| dot(q, &r)).collect();
            for (q, h) in basis.iter().zip(&coeffs) {
                axpy(-h, q, &mut r);
            }
            if norm2(&r) > 0.7 * before {
                break;
            }
        }
        let b = norm2(&r);
        alpha.push(a);

        let theta = if skew {
            tridiag::largest_eigenvalue(&alpha, &beta)
        } else {
            let hi = tridiag::largest_eigenvalue(&alpha, &beta);
            let lo = tridiag::smallest_eigenvalue(&alpha, &beta);
            if hi.abs() >= lo.abs() {
                hi
            } else {
                lo
            }
        };
        let y = tridiag::eigenvector(&alpha, &beta, theta);
        let residual = b * y[j].abs();
        op_scale = op_scale.max(theta.abs()).max(b).max(a.abs());

        let converged = residual <= cfg.rel_tol * theta.abs().max(f64::MIN_POSITIVE);
        let breakdown = b <= 1e-14 * op_scale || b == 0.0;
        if converged || breakdown || j + 1 == n {
            return Ok(Run {
                basis,
                y,
                theta,
                iterations: j + 1,
                residual,
            });
        }
        if j + 1 == max_iter {
            break;
        }
        let mut next = r.clone();
        scale(1.0 / b, &mut next);
        basis.push(next);
        beta.push(b);
    }
    Err(Error::Convergence {
        what: "Lanczos",
        iterations: max_iter,
    })
}

/// Largest `μ` with `iμ` an eigenvalue of the skew operator.
pub fn lanczos_skew<Op: LinearOperator + ?Sized>(op: &Op, cfg: &LanczosConfig) -> Result<SkewRitz> {
    skew_impl(op, cfg, None)
}

/// As [`lanczos_skew`], from a given start vector (for instance a nearby
/// eigenvector padded to the new size).
pub fn lanczos_skew_from<Op: LinearOperator + ?Sized>(
    op: &Op,
    cfg: &LanczosConfig,
    start: &[f64],
) -> Result<SkewRitz> {
    skew_impl(op, cfg, Some(start))
}

fn skew_impl<Op: LinearOperator + ?Sized>(
    op: &Op,
    cfg: &LanczosConfig,
    start: Option<&[f64]>,
) -> Result<SkewRitz> {
    let n = op.dim();
    if n < 2 {
        return Ok(SkewRitz {
            mu: 0.0,
            v: vec![1.0; n],
            w: vec![0.0; n],
            iterations: 0,
            residual: 0.0,
        });
    }
    let run = run(op, true, cfg, start)?;
    // Projected eigenvector z_k = (−i)^k y_k.
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for (k, (yk, q)) in run.y.iter().zip(&run.basis).enumerate() {
        let (target, sign) = match k % 4 {
            0 => (&mut v, 1.0),
            1 => (&mut w, -1.0),
            2 => (&mut v, -1.0),
            _ => (&mut w, 1.0),
        };
        axpy(sign * yk, q, target);
    }
    Ok(SkewRitz {
        mu: run.theta,
        v,
        w,
        iterations: run.iterations,
        residual: run.residual,
    })
}

/// Eigenvalue of largest modulus (with sign) of a symmetric operator.
pub fn lanczos_symmetric<Op: LinearOperator + ?Sized>(
    op: &Op,
    cfg: &LanczosConfig,
) -> Result<SymRitz> {
    symmetric_impl(op, cfg, None)
}

/// As [`lanczos_symmetric`], from a given start vector.
pub fn lanczos_symmetric_from<Op: LinearOperator + ?Sized>(
    op: &Op,
    cfg: &LanczosConfig,
    start: &[f64],
) -> Result<SymRitz> {
    symmetric_impl(op, cfg, Some(start))
}

fn symmetric_impl<Op: LinearOperator + ?Sized>(
    op: &Op,
    cfg: &LanczosConfig,
    start: Option<&[f64]>,
) -> Result<SymRitz> {
    let n = op.dim();
    if n == 0 {
        return Err(Error::InvalidInput("empty operator".into()));
    }
    let run = run(op, false, cfg, start)?;
    let mut vector = vec![0.0; n];
    for (yk, q) in run.y.iter().zip(&run.basis) {
        axpy(*yk, q, &mut vector);
    }
    Ok(SymRitz {
        lambda: run.theta,
        vector,
        iterations: run.iterations,
        residual: run.residual,
    })
}
