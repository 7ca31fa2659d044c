//! Construction of the structured matrices: Cauchy-type skew kernels
//! `A(x)`, `B(x, c)`, the Toeplitz Hilbert matrix `T_R`, the Hankel Hilbert
//! matrix `H_R`, the prolate matrix and general symbol-driven Toeplitz
//! matrices.
//!
//! Indices in this API are zero-based.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::symbols::SymbolSeries;

/// Largest dimension any dense constructor will accept.
pub const MAX_DIM: usize = 20_000;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(invalid("matrix dimension must be at least 1"));
    }
    if dim > MAX_DIM {
        return Err(invalid(format!("dimension {dim} exceeds cap {MAX_DIM}")));
    }
    Ok(())
}

/// Dense row-major square matrix of doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for n in 0..dim {
                data.push(f(m, n));
            }
        }
        Self { dim, data }
    }

    /// Builds from nested rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(invalid("rows must form a square matrix"));
        }
        Ok(Self {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.dim..(m + 1) * self.dim]
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        for (m, ym) in y.iter_mut().enumerate() {
            *ym = crate::numeric::dot(self.row(m), x);
        }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^k`, with `self^0 = I`.
    pub fn pow(&self, k: usize) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.dim);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x.abs()).collect(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, |m, n| self[(n, m)])
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        crate::numeric::norm2(&self.data)
    }

    /// Principal submatrix on the given (sorted, distinct) index set.
    pub fn principal(&self, idx: &[usize]) -> DenseMatrix {
        DenseMatrix::from_fn(idx.len(), |a, b| self[(idx[a], idx[b])])
    }

    /// CSV dump: one row per line, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for m in 0..self.dim {
            let line: Vec<String> = self.row(m).iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (m, n): (usize, usize)) -> &f64 {
        &self.data[m * self.dim + n]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (m, n): (usize, usize)) -> &mut f64 {
        &mut self.data[m * self.dim + n]
    }
}

/// Real skew-symmetric matrix. Skewness is exact: only the strict upper
/// triangle is ever computed, the lower one is its negation.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix(DenseMatrix);

impl SkewMatrix {
    /// Builds from an upper-triangle generator `f(m, n)` with `m < n`.
    pub fn from_upper(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut d = DenseMatrix::zeros(dim);
        for m in 0..dim {
            for n in m + 1..dim {
                let v = f(m, n);
                d[(m, n)] = v;
                d[(n, m)] = -v;
            }
        }
        SkewMatrix(d)
    }

    /// Accepts a dense matrix only if it is exactly skew-symmetric.
    pub fn try_from_dense(d: DenseMatrix) -> Result<Self> {
        let n = d.dim();
        for m in 0..n {
            if d[(m, m)] != 0.0 {
                return Err(invalid("skew matrix must have a zero diagonal"));
            }
            for k in m + 1..n {
                if d[(m, k)] != -d[(k, m)] {
                    return Err(invalid(format!("entry ({m},{k}) breaks skew symmetry")));
                }
            }
        }
        Ok(SkewMatrix(d))
    }

    pub fn empty() -> Self {
        SkewMatrix(DenseMatrix::zeros(0))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.0[(m, n)]
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_dense(self) -> DenseMatrix {
        self.0
    }

    pub fn scaled(&self, t: f64) -> SkewMatrix {
        SkewMatrix::from_upper(self.dim(), |m, n| t * self.get(m, n))
    }

    /// `BᵀB = −B²`, symmetrized exactly.
    pub fn gram(&self) -> SymMatrix {
        let n = self.dim();
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j)).collect())
            .collect();
        SymMatrix::from_upper(n, |i, j| crate::numeric::dot(&cols[i], &cols[j]))
    }
}

/// Real symmetric matrix; symmetry is exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(DenseMatrix);

impl SymMatrix {
    /// Builds from a generator evaluated on `m <= n` and mirrored.
    pub fn from_upper(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut d = DenseMatrix::zeros(dim);
        for m in 0..dim {
            for n in m..dim {
                let v = f(m, n);
                d[(m, n)] = v;
                d[(n, m)] = v;
            }
        }
        SymMatrix(d)
    }

    pub fn try_from_dense(d: DenseMatrix) -> Result<Self> {
        let n = d.dim();
        for m in 0..n {
            for k in m + 1..n {
                if d[(m, k)] != d[(k, m)] {
                    return Err(invalid(format!("entry ({m},{k}) breaks symmetry")));
                }
            }
        }
        Ok(SymMatrix(d))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.0[(m, n)]
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.0
    }
}

/// Dense complex square matrix, used for general Toeplitz matrices whose
/// symbol is not real-even.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for n in 0..dim {
                data.push(f(m, n));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.data[m * self.dim + n]
    }

    /// `u* C u`.
    pub fn quadratic_form(&self, u: &[Complex64]) -> Complex64 {
        assert_eq!(u.len(), self.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..self.dim {
            let row = &self.data[m * self.dim..(m + 1) * self.dim];
            let cu: Complex64 = row.iter().zip(u).map(|(c, x)| c * x).sum();
            acc += u[m].conj() * cu;
        }
        acc
    }

    fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// The real symmetric view, when the entries allow one.
    pub fn to_sym(&self) -> Option<SymMatrix> {
        if !self.is_real() {
            return None;
        }
        SymMatrix::try_from_dense(DenseMatrix::from_fn(self.dim, |m, n| self.get(m, n).re)).ok()
    }

    /// The real skew-symmetric view, when the entries allow one.
    pub fn to_skew(&self) -> Option<SkewMatrix> {
        if !self.is_real() {
            return None;
        }
        SkewMatrix::try_from_dense(DenseMatrix::from_fn(self.dim, |m, n| self.get(m, n).re)).ok()
    }
}

/// Strictly increasing abscissae `x_1 < … < x_R`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeVector(Vec<f64>);

impl NodeVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("node vector must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("nodes must be finite"));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(invalid(format!(
                "nodes must be strictly increasing (x[{}]={} >= x[{}]={})",
                i,
                values[i],
                i + 1,
                values[i + 1]
            )));
        }
        Ok(NodeVector(values))
    }

    /// `1, 2, …, R`.
    pub fn integers(r: usize) -> Self {
        NodeVector((1..=r).map(|i| i as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `t·x` for `t > 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(invalid("scale factor must be positive"));
        }
        NodeVector::new(self.0.iter().map(|x| t * x).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("weights must be finite"));
        }
        Ok(WeightVector(values))
    }

    pub fn ones(r: usize) -> Self {
        WeightVector(vec![1.0; r])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Minimum node separations.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub delta: f64,
    pub per_node: Vec<f64>,
}

/// `a_{m,n} = 1/(x_m − x_n)`, zero diagonal.
pub fn build_a(x: &NodeVector) -> Result<SkewMatrix> {
    check_dim(x.len())?;
    let xs = x.values();
    Ok(SkewMatrix::from_upper(xs.len(), |m, n| 1.0 / (xs[m] - xs[n])))
}

/// `b_{m,n} = c_m c_n/(x_m − x_n)`, zero diagonal.
pub fn build_b(x: &NodeVector, c: &WeightVector) -> Result<SkewMatrix> {
    check_dim(x.len())?;
    if x.len() != c.len() {
        return Err(invalid(format!(
            "{} nodes but {} weights",
            x.len(),
            c.len()
        )));
    }
    let xs = x.values();
    let cs = c.values();
    Ok(SkewMatrix::from_upper(xs.len(), |m, n| {
        cs[m] * cs[n] / (xs[m] - xs[n])
    }))
}

/// Toeplitz Hilbert matrix `(T_R)_{m,n} = 1/(m − n)`.
pub fn build_t(r: usize) -> Result<SkewMatrix> {
    check_dim(r)?;
    Ok(SkewMatrix::from_upper(r, |m, n| 1.0 / (m as f64 - n as f64)))
}

/// Hankel Hilbert matrix `(H_R)_{m,n} = 1/(m + n − 1)` (one-based).
pub fn build_h(r: usize) -> Result<SymMatrix> {
    check_dim(r)?;
    Ok(SymMatrix::from_upper(r, |m, n| 1.0 / ((m + n + 1) as f64)))
}

/// Prolate matrix: `sin(2πw(m−n))/(m−n)` off the diagonal, `2πw` on it.
pub fn build_prolate(r: usize, w: f64) -> Result<SymMatrix> {
    check_dim(r)?;
    if !(w > 0.0 && w < 0.5) {
        return Err(invalid(format!("prolate bandwidth {w} not in (0, 1/2)")));
    }
    Ok(SymMatrix::from_upper(r, |m, n| prolate_coefficient(w, n as i64 - m as i64)))
}

pub(crate) fn prolate_coefficient(w: f64, r: i64) -> f64 {
    let two_pi_w = 2.0 * std::f64::consts::PI * w;
    if r == 0 {
        two_pi_w
    } else {
        (two_pi_w * r as f64).sin() / r as f64
    }
}

/// `(C_R)_{m,n} = c_{m−n}`.
pub fn build_toeplitz(coeffs: &SymbolSeries, r: usize) -> Result<ComplexMatrix> {
    check_dim(r)?;
    let reach = r as i64 - 1;
    for k in -reach..=reach {
        if coeffs.coefficient(k).is_none() {
            return Err(invalid(format!("symbol coefficient c_{k} is missing")));
        }
    }
    Ok(ComplexMatrix::from_fn(r, |m, n| {
        coeffs
            .coefficient(m as i64 - n as i64)
            .expect("checked above")
    }))
}

/// Principal submatrix with row and column `n` removed.
pub fn remove_index(b: &SkewMatrix, n: usize) -> Result<SkewMatrix> {
    if n >= b.dim() {
        return Err(invalid(format!("index {n} out of range for dimension {}", b.dim())));
    }
    let keep: Vec<usize> = (0..b.dim()).filter(|&i| i != n).collect();
    Ok(SkewMatrix::from_upper(keep.len(), |i, j| b.get(keep[i], keep[j])))
}

/// Principal submatrix of a skew matrix on a sorted index set.
pub fn principal_skew(b: &SkewMatrix, idx: &[usize]) -> SkewMatrix {
    SkewMatrix::from_upper(idx.len(), |i, j| b.get(idx[i], idx[j]))
}

pub fn min_gaps(x: &NodeVector) -> Result<GapReport> {
    let xs = x.values();
    if xs.len() < 2 {
        return Err(invalid("minimum gap needs at least two nodes"));
    }
    // Sorted nodes: the nearest neighbour is adjacent.
    let per_node: Vec<f64> = (0..xs.len())
        .map(|i| {
            let left = if i > 0 { xs[i] - xs[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < xs.len() {
                xs[i + 1] - xs[i]
            } else {
                f64::INFINITY
            };
            left.min(right)
        })
        .collect();
    let delta = per_node.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(GapReport { delta, per_node })
}
