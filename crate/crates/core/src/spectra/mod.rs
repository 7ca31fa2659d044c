//! Eigendecompositions and spectral norms.
//!
//! Skew-symmetric matrices are decomposed through the positive
//! semidefinite matrix `S = −B² = BᵀB`, whose eigenvalues are `μ²` with
//! two-dimensional eigenspaces spanned by the real and imaginary parts of
//! the eigenvector of `iμ`. Each pair is then polished by inverse iteration
//! on `B − iμ` (in real form), which recovers the accuracy lost by
//! squaring.

mod jacobi;
mod lanczos;
mod toeplitz_op;
pub(crate) mod tridiag;

pub use lanczos::{
    lanczos_skew, lanczos_skew_from, lanczos_symmetric, lanczos_symmetric_from, LanczosConfig,
    LinearOperator, SkewRitz, SymRitz,
};
pub use toeplitz_op::ToeplitzOperator;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::lu::Lu;
use crate::matrices::{DenseMatrix, SkewMatrix, SymMatrix};
use crate::numeric::{dot, norm2, scale};

pub use jacobi::MAX_SWEEPS;

/// Matrices at or below this size use the dense Jacobi route for norms.
pub const DENSE_NORM_LIMIT: usize = 48;

/// Relative threshold under which `μ` is classified as zero.
pub const ZERO_MU_THRESHOLD: f64 = 1e-10;

/// Default eigen-residual tolerance for an `R × R` problem.
pub fn default_tol(r: usize) -> f64 {
    1e-12 * r.max(1) as f64
}

/// Eigenpair `B(v + i w) = iμ(v + i w)` with `‖v + i w‖ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub mu: f64,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

impl EigenPair {
    pub fn u(&self) -> Vec<Complex64> {
        self.v
            .iter()
            .zip(&self.w)
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect()
    }

    /// `max(‖Bw − μv‖, ‖Bv + μw‖)`.
    pub fn residual(&self, b: &SkewMatrix) -> f64 {
        let n = b.dim();
        let mut bv = vec![0.0; n];
        let mut bw = vec![0.0; n];
        b.as_dense().matvec(&self.v, &mut bv);
        b.as_dense().matvec(&self.w, &mut bw);
        let r1: Vec<f64> = (0..n).map(|i| bw[i] - self.mu * self.v[i]).collect();
        let r2: Vec<f64> = (0..n).map(|i| bv[i] + self.mu * self.w[i]).collect();
        norm2(&r1).max(norm2(&r2))
    }

    /// Rotates the phase so the largest-magnitude component is real positive.
    fn fix_phase(&mut self) {
        let (k, _) = self
            .v
            .iter()
            .zip(&self.w)
            .map(|(a, b)| a.hypot(*b))
            .enumerate()
            .fold((0, -1.0), |best, (i, m)| if m > best.1 { (i, m) } else { best });
        let z = Complex64::new(self.v[k], self.w[k]);
        let rot = z.conj() / z.norm();
        for i in 0..self.v.len() {
            let u = Complex64::new(self.v[i], self.w[i]) * rot;
            self.v[i] = u.re;
            self.w[i] = u.im;
        }
        self.w[k] = 0.0;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    /// Sorted by `μ` descending.
    pub pairs: Vec<EigenPair>,
    pub zero_multiplicity: usize,
    /// Real unit null vectors, one per zero eigenvalue.
    pub null_vectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    pub fn norm(&self) -> f64 {
        self.pairs.first().map_or(0.0, |p| p.mu)
    }

    /// All `μ` values, zeros included, descending.
    pub fn mus(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.pairs.iter().map(|p| p.mu).collect();
        out.extend(std::iter::repeat_n(0.0, self.zero_multiplicity));
        out
    }

    /// Every eigenvector: the pairs, then each null vector as a pair with
    /// `μ = 0` and `w = 0`.
    pub fn all_modes(&self) -> Vec<EigenPair> {
        let mut out = self.pairs.clone();
        out.extend(self.null_vectors.iter().map(|v| EigenPair {
            mu: 0.0,
            v: v.clone(),
            w: vec![0.0; v.len()],
        }));
        out
    }
}

/// Dense symmetric eigendecomposition, eigenvalues descending.
pub fn symmetric_eigen(s: &SymMatrix, tol: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let n = s.dim();
    let (values, vectors) = jacobi::jacobi_eigen(s.as_dense(), MAX_SWEEPS)?;
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::with_capacity(n);
    let mut su = vec![0.0; n];
    for (j, &lambda) in values.iter().enumerate() {
        let u: Vec<f64> = (0..n).map(|i| vectors[(i, j)]).collect();
        s.as_dense().matvec(&u, &mut su);
        let res = norm2(&su.iter().zip(&u).map(|(a, b)| a - lambda * b).collect::<Vec<_>>());
        if res > tol * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::Convergence {
                what: "symmetric eigen residual",
                iterations: MAX_SWEEPS,
            });
        }
        out.push((lambda, u));
    }
    Ok(out)
}

/// Symmetric eigendecomposition of a dense matrix that is only expected to
/// be symmetric up to `tol` relative.
pub fn symmetric_eigen_dense(m: &DenseMatrix, tol: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = m.dim();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > tol * scale {
                return Err(invalid(format!("matrix is not symmetric at ({i},{j})")));
            }
        }
    }
    let sym = SymMatrix::from_upper(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    symmetric_eigen(&sym, tol)
}

/// Full spectral decomposition of a skew-symmetric matrix.
pub fn skew_spectrum(b: &SkewMatrix, tol: f64) -> Result<SpectralDecomposition> {
    let n = b.dim();
    if n == 0 {
        return Ok(SpectralDecomposition {
            pairs: vec![],
            zero_multiplicity: 0,
            null_vectors: vec![],
        });
    }
    let (values, vectors) = jacobi::jacobi_eigen(b.gram().as_dense(), MAX_SWEEPS)?;
    let norm = values[0].max(0.0).sqrt();
    let zero_cut = ZERO_MU_THRESHOLD * norm;
    let column = |j: usize| -> Vec<f64> { (0..n).map(|i| vectors[(i, j)]).collect() };

    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    let mut nulls = Vec::new();
    let mut bv = vec![0.0; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let v = column(i);
        b.as_dense().matvec(&v, &mut bv);
        let mu = norm2(&bv);
        if mu <= zero_cut || norm == 0.0 {
            nulls.push(v);
            continue;
        }
        let w: Vec<f64> = bv.iter().map(|x| -x / mu).collect();
        // The eigenspace partner of v is the remaining column most aligned with w.
        let partner = (0..n)
            .filter(|&j| !used[j])
            .max_by(|&a, &c| {
                dot(&column(a), &w)
                    .abs()
                    .total_cmp(&dot(&column(c), &w).abs())
            });
        if let Some(j) = partner {
            used[j] = true;
        }
        let mut pair = EigenPair {
            mu,
            v: v.iter().map(|x| x * std::f64::consts::FRAC_1_SQRT_2).collect(),
            w: w.iter().map(|x| x * std::f64::consts::FRAC_1_SQRT_2).collect(),
        };
        refine_pair(b, &mut pair);
        pairs.push(pair);
    }
    refine_nulls(b, &mut nulls);

    // Refinement can in principle push a tiny μ under the cut.
    let (small, mut pairs): (Vec<EigenPair>, Vec<EigenPair>) =
        pairs.into_iter().partition(|p| p.mu <= zero_cut);
    for p in small {
        let mut v = p.v;
        scale(1.0 / norm2(&v), &mut v);
        let mut w = p.w;
        scale(1.0 / norm2(&w), &mut w);
        nulls.push(v);
        nulls.push(w);
    }
    for p in pairs.iter_mut() {
        p.fix_phase();
    }
    pairs.sort_by(|a, c| c.mu.total_cmp(&a.mu));
    for v in nulls.iter_mut() {
        let k = (0..n).max_by(|&a, &c| v[a].abs().total_cmp(&v[c].abs())).unwrap();
        if v[k] < 0.0 {
            scale(-1.0, v);
        }
    }

    let bound = tol * norm.max(f64::MIN_POSITIVE);
    if pairs.iter().any(|p| p.residual(b) > bound) {
        return Err(Error::Convergence {
            what: "skew eigenpair residual",
            iterations: MAX_SWEEPS,
        });
    }
    debug_assert_eq!(2 * pairs.len() + nulls.len(), n);
    Ok(SpectralDecomposition {
        zero_multiplicity: nulls.len(),
        pairs,
        null_vectors: nulls,
    })
}

/// Two steps of inverse iteration on `B − iμ`, written as the real
/// `2R × 2R` system `[[B, μI], [−μI, B]]`, then a Rayleigh update of `μ`.
fn refine_pair(b: &SkewMatrix, pair: &mut EigenPair) {
    let n = b.dim();
    let m = 2 * n;
    let mut data = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let bij = b.get(i, j);
            data[i * m + j] = bij;
            data[(n + i) * m + n + j] = bij;
        }
        data[i * m + n + i] = pair.mu;
        data[(n + i) * m + i] = -pair.mu;
    }
    let lu = Lu::factor(m, data);
    let tiny = f64::EPSILON * pair.mu.max(b.as_dense().max_abs());
    let mut x: Vec<f64> = pair.v.iter().chain(&pair.w).cloned().collect();
    for _ in 0..2 {
        x = lu.solve(&x, tiny);
        let nrm = norm2(&x);
        scale(1.0 / nrm, &mut x);
    }
    let (v, w) = x.split_at(n);
    let mut bw = vec![0.0; n];
    b.as_dense().matvec(w, &mut bw);
    pair.mu = 2.0 * dot(v, &bw);
    pair.v = v.to_vec();
    pair.w = w.to_vec();
}

fn refine_nulls(b: &SkewMatrix, nulls: &mut [Vec<f64>]) {
    if nulls.is_empty() {
        return;
    }
    let n = b.dim();
    let lu = Lu::factor(n, b.as_dense().as_slice().to_vec());
    let tiny = f64::EPSILON * b.as_dense().max_abs().max(f64::MIN_POSITIVE);
    for k in 0..nulls.len() {
        let mut x = lu.solve(&nulls[k], tiny);
        for prev in 0..k {
            let h = dot(&nulls[prev], &x);
            crate::numeric::axpy(-h, &nulls[prev].clone(), &mut x);
        }
        let nrm = norm2(&x);
        if nrm.is_finite() && nrm > 0.0 {
            scale(1.0 / nrm, &mut x);
            nulls[k] = x;
        }
    }
}

/// Spectral norm of a normal (symmetric or skew-symmetric) matrix.
pub trait SpectralNorm {
    fn spectral_norm(&self) -> Result<f64>;
}

impl SpectralNorm for SkewMatrix {
    fn spectral_norm(&self) -> Result<f64> {
        let n = self.dim();
        if n <= 1 {
            return Ok(0.0);
        }
        if n <= DENSE_NORM_LIMIT {
            let (values, _) = jacobi::jacobi_eigen(self.gram().as_dense(), MAX_SWEEPS)?;
            return Ok(values[0].max(0.0).sqrt());
        }
        Ok(lanczos_skew(self, &LanczosConfig::default())?.mu)
    }
}

impl SpectralNorm for SymMatrix {
    fn spectral_norm(&self) -> Result<f64> {
        let n = self.dim();
        if n <= DENSE_NORM_LIMIT {
            let (values, _) = jacobi::jacobi_eigen(self.as_dense(), MAX_SWEEPS)?;
            return Ok(values[0].abs().max(values[n - 1].abs()));
        }
        Ok(lanczos_symmetric(self, &LanczosConfig::default())?.lambda.abs())
    }
}

/// `max |eigenvalue|`.
pub fn spectral_norm<M: SpectralNorm + ?Sized>(m: &M) -> Result<f64> {
    m.spectral_norm()
}

/// `((−1)^k Tr(B^{2k}))^{1/(2k)}`, an upper estimate of `‖B‖` that is within
/// a factor `R^{1/(2k)}` of it.
pub fn spectral_norm_trace(b: &SkewMatrix, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(invalid("trace-power order must be at least 1"));
    }
    let n = b.dim();
    if n == 0 {
        return Ok(0.0);
    }
    // (−1)^k B^{2k} = (BᵀB)^k; scale to keep the powers in range.
    let gram = b.gram();
    let s = gram.as_dense().max_abs();
    if s == 0.0 {
        return Ok(0.0);
    }
    let normalized = DenseMatrix::from_fn(n, |i, j| gram.get(i, j) / s);
    let mut result = DenseMatrix::identity(n);
    let mut base = normalized;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result.matmul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.matmul(&base);
        }
    }
    let tr = result.trace();
    if !tr.is_finite() || tr <= 0.0 {
        return Err(Error::Range(format!(
            "trace of normalized power is {tr} at k = {k}"
        )));
    }
    Ok(s.sqrt() * tr.powf(1.0 / (2.0 * k as f64)))
}

/// `‖T_R‖`, through FFT-backed Lanczos once the dense route gets costly.
pub fn hilbert_toeplitz_norm(r: usize) -> Result<f64> {
    if r <= 1 {
        return Ok(0.0);
    }
    if r <= DENSE_NORM_LIMIT {
        return crate::matrices::build_t(r)?.spectral_norm();
    }
    Ok(lanczos_skew(&ToeplitzOperator::hilbert(r), &LanczosConfig::default())?.mu)
}

/// Top eigenpair of `T_R` (`R ≥ 2`) through the FFT-backed operator.
pub fn hilbert_toeplitz_top_pair(r: usize) -> Result<EigenPair> {
    if r < 2 {
        return Err(invalid("T_R has a nonzero eigenvalue only for R >= 2"));
    }
    let ritz = lanczos_skew(&ToeplitzOperator::hilbert(r), &LanczosConfig::default())?;
    let mut pair = EigenPair {
        mu: ritz.mu,
        v: ritz.v,
        w: ritz.w,
    };
    pair.fix_phase();
    Ok(pair)
}

/// `‖T_R‖` for every size in `rs`. Consecutive sizes are grouped in chunks;
/// inside a chunk each run starts from the previous top vector, resized.
pub fn hilbert_toeplitz_norms(rs: &[usize]) -> Result<Vec<f64>> {
    const CHUNK: usize = 32;
    let chunks: Vec<Result<Vec<f64>>> = rs
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut prev: Option<Vec<f64>> = None;
            let mut out = Vec::with_capacity(chunk.len());
            for &r in chunk {
                if r <= DENSE_NORM_LIMIT {
                    out.push(hilbert_toeplitz_norm(r)?);
                    continue;
                }
                let op = ToeplitzOperator::hilbert(r);
                let cfg = LanczosConfig::default();
                let ritz = match &prev {
                    Some(p) => {
                        let mut start = p.clone();
                        start.resize(r, 0.0);
                        lanczos_skew_from(&op, &cfg, &start)?
                    }
                    None => lanczos_skew(&op, &cfg)?,
                };
                prev = Some(ritz.v.iter().zip(&ritz.w).map(|(a, b)| a + b).collect());
                out.push(ritz.mu);
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::with_capacity(rs.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{build_b, build_h, build_t, build_toeplitz, NodeVector, WeightVector};
    use crate::symbols::SymbolSeries;
    use std::f64::consts::PI;

    #[test]
    fn identity_spectrum() {
        let id = SymMatrix::from_upper(5, |m, n| if m == n { 1.0 } else { 0.0 });
        let eig = symmetric_eigen(&id, 1e-12).unwrap();
        assert!(eig.iter().all(|(l, _)| *l == 1.0));
    }

    #[test]
    fn tridiagonal_top_eigenvalue_closed_form() {
        for r in [2usize, 5, 17, 40] {
            let c = build_toeplitz(&SymbolSeries::cosine(), r).unwrap().to_sym().unwrap();
            let eig = symmetric_eigen(&c, default_tol(r)).unwrap();
            let want = 2.0 * (PI / (r as f64 + 1.0)).cos();
            assert!((eig[0].0 - want).abs() < 1e-13);
            // orthonormal eigenvectors
            for a in 0..r {
                for b in 0..r {
                    let d = dot(&eig[a].1, &eig[b].1);
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn h2_characteristic_polynomial() {
        let eig = symmetric_eigen(&build_h(2).unwrap(), 1e-12).unwrap();
        let (l1, l2) = (eig[0].0, eig[1].0);
        assert!((l1 + l2 - 4.0 / 3.0).abs() < 1e-15);
        assert!((l1 * l2 - 1.0 / 12.0).abs() < 1e-15);
        assert!(l1 > l2);
    }

    #[test]
    fn non_symmetric_dense_rejected() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            symmetric_eigen_dense(&m, 1e-12),
            Err(Error::InvalidInput(_))
        ));
        assert!(symmetric_eigen(&build_h(2).unwrap(), 0.0).is_err());
    }

    #[test]
    fn t2_and_t3_closed_forms() {
        let d2 = skew_spectrum(&build_t(2).unwrap(), 1e-12).unwrap();
        assert_eq!(d2.pairs.len(), 1);
        assert_eq!(d2.zero_multiplicity, 0);
        assert!((d2.pairs[0].mu - 1.0).abs() < 1e-14);

        let d3 = skew_spectrum(&build_t(3).unwrap(), 1e-12).unwrap();
        assert_eq!(d3.pairs.len(), 1);
        assert_eq!(d3.zero_multiplicity, 1);
        assert!((d3.pairs[0].mu - 1.5).abs() < 1e-14);

        assert!((spectral_norm(&build_t(2).unwrap()).unwrap() - 1.0).abs() < 1e-14);
        assert!((spectral_norm(&build_t(3).unwrap()).unwrap() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn zero_weight_borders_the_spectrum() {
        let x = NodeVector::new(vec![0.0, 0.7, 1.1, 2.5, 4.0]).unwrap();
        let c = WeightVector::new(vec![1.2, -0.4, 0.0, 2.0, 0.9]).unwrap();
        let b = build_b(&x, &c).unwrap();
        let full = skew_spectrum(&b, 1e-12).unwrap();
        let reduced = skew_spectrum(&crate::matrices::remove_index(&b, 2).unwrap(), 1e-12).unwrap();
        let mut a = full.mus();
        let mut r = reduced.mus();
        r.push(0.0);
        a.sort_by(f64::total_cmp);
        r.sort_by(f64::total_cmp);
        for (p, q) in a.iter().zip(&r) {
            assert!((p - q).abs() < 1e-12);
        }
        assert_eq!(full.zero_multiplicity, reduced.zero_multiplicity + 1);
    }

    #[test]
    fn norms_below_pi() {
        for r in [10usize, 100, 1000] {
            let n = hilbert_toeplitz_norm(r).unwrap();
            assert!(n < PI, "R={r}: {n}");
        }
        let dense = spectral_norm(&build_t(100).unwrap()).unwrap();
        assert!((dense - hilbert_toeplitz_norm(100).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn dense_and_krylov_routes_agree() {
        let t = build_t(120).unwrap();
        let via_jacobi = skew_spectrum(&t, default_tol(120)).unwrap().norm();
        let via_lanczos = lanczos_skew(&t, &LanczosConfig::default()).unwrap().mu;
        assert!((via_jacobi - via_lanczos).abs() < 1e-12);
        let h = build_h(80).unwrap();
        let via_jacobi = symmetric_eigen(&h, 1e-9).unwrap()[0].0;
        assert!((via_jacobi - spectral_norm(&h).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn trace_estimator_examples() {
        let t2 = build_t(2).unwrap();
        for k in [1u32, 2, 5, 13] {
            let est = spectral_norm_trace(&t2, k).unwrap();
            assert!((est - 2f64.powf(1.0 / (2.0 * k as f64))).abs() < 1e-14);
        }
        let t10 = build_t(10).unwrap();
        let est = spectral_norm_trace(&t10, 20).unwrap();
        let norm = spectral_norm(&t10).unwrap();
        assert!(est >= norm && est <= 1.1 * norm);
        assert!(est >= norm / 10f64.powf(1.0 / 40.0));
        assert_eq!(spectral_norm_trace(&build_t(1).unwrap(), 3).unwrap(), 0.0);
        assert!(spectral_norm_trace(&t10, 0).is_err());
    }

    #[test]
    fn odd_dimension_has_a_zero_mode() {
        for r in [1usize, 3, 7, 11] {
            let d = skew_spectrum(&build_t(r).unwrap(), default_tol(r)).unwrap();
            assert!(d.zero_multiplicity >= 1);
            assert_eq!(2 * d.pairs.len() + d.zero_multiplicity, r);
        }
    }
}
