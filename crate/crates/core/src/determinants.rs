//! Determinants of `B(x, c)`: the perfect-matching sum of squared entries,
//! with LU and Pfaffian oracles, principal-minor sums `σ_k` and the
//! Newton–Girard power sums.

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::lu::Lu;
use crate::matrices::{principal_skew, DenseMatrix, SkewMatrix};
use crate::numeric::CompensatedSum;

/// Largest even size accepted by the matching routines.
pub const MATCHING_CAP: usize = 16;

/// Largest size accepted by `sigma_k`.
pub const SIGMA_CAP: usize = 12;

/// Perfect matching of `{0, …, R−1}` as pairs `(m_i, n_i)` with
/// `m_i < n_i` and `m_1 < m_2 < …` (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Checks the canonical-order and partition invariants.
    pub fn is_canonical(&self, r: usize) -> bool {
        let mut seen = vec![false; r];
        for (i, &(m, n)) in self.pairs.iter().enumerate() {
            if m >= n || n >= r || seen[m] || seen[n] {
                return false;
            }
            if i > 0 && self.pairs[i - 1].0 >= m {
                return false;
            }
            seen[m] = true;
            seen[n] = true;
        }
        seen.iter().all(|&s| s)
    }
}

fn check_matching_size(r: usize) -> Result<()> {
    if r % 2 == 1 {
        return Err(invalid(format!("perfect matchings need an even size, got {r}")));
    }
    if r > MATCHING_CAP {
        return Err(invalid(format!("size {r} exceeds the matching cap {MATCHING_CAP}")));
    }
    Ok(())
}

/// All `(R−1)!!` perfect matchings, by pairing the smallest unmatched index.
pub fn enumerate_matchings(r: usize) -> Result<Vec<Matching>> {
    check_matching_size(r)?;
    if r == 0 {
        return Err(invalid("size must be positive"));
    }
    fn rec(free: &mut Vec<usize>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        if free.is_empty() {
            out.push(Matching {
                pairs: current.clone(),
            });
            return;
        }
        let m = free.remove(0);
        for j in 0..free.len() {
            let n = free.remove(j);
            current.push((m, n));
            rec(free, current, out);
            current.pop();
            free.insert(j, n);
        }
        free.insert(0, m);
    }
    let mut out = Vec::new();
    rec(&mut (0..r).collect(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// `Σ_{matchings} Π b_{m_i n_i}²` over the free indices (bitmask).
fn matching_sum(sq: &[f64], r: usize, free: u32) -> f64 {
    if free == 0 {
        return 1.0;
    }
    let m = free.trailing_zeros() as usize;
    let rest = free & !(1 << m);
    let mut acc = CompensatedSum::new();
    let mut bits = rest;
    while bits != 0 {
        let n = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let b2 = sq[m * r + n];
        if b2 != 0.0 {
            acc.add(b2 * matching_sum(sq, r, rest & !(1 << n)));
        }
    }
    acc.value()
}

/// `det B` by the perfect-matching formula: `0` for odd `R`, otherwise the
/// sum over matchings of the products of squared matched entries.
///
/// The formula holds for matrices of the form `c_m c_n/(x_m − x_n)`; for
/// other skew matrices it generally disagrees with `det`.
pub fn det_matching(b: &SkewMatrix) -> Result<f64> {
    let r = b.dim();
    if r % 2 == 1 {
        if r > MATCHING_CAP + 1 {
            return Err(invalid(format!("size {r} exceeds the matching cap")));
        }
        return Ok(0.0);
    }
    check_matching_size(r)?;
    if r == 0 {
        return Ok(1.0);
    }
    let sq: Vec<f64> = b.as_dense().as_slice().iter().map(|x| x * x).collect();
    let all: u32 = (1u32 << r) - 1;
    let rest = all & !1;
    // Split on the partner of index 0; the branches are summed in order.
    let branches: Vec<f64> = (1..r)
        .into_par_iter()
        .map(|n| sq[n] * matching_sum(&sq, r, rest & !(1 << n)))
        .collect();
    Ok(branches.into_iter().sum::<CompensatedSum>().value())
}

/// `det_matching` together with `|det_matching − Pf²|`, which is zero up to
/// roundoff exactly when the matching formula applies.
pub fn det_matching_checked(b: &SkewMatrix) -> Result<(f64, f64)> {
    let d = det_matching(b)?;
    let pf2 = if b.dim().is_multiple_of(2) {
        pfaffian(b)?.powi(2)
    } else {
        0.0
    };
    Ok((d, (d - pf2).abs()))
}

/// Determinant by partially pivoted LU.
pub fn det_lu(m: &DenseMatrix) -> f64 {
    if m.dim() == 0 {
        return 1.0;
    }
    Lu::factor(m.dim(), m.as_slice().to_vec()).det()
}

/// Pfaffian by Parlett–Reid skew elimination with pivoting, normalized so
/// that `Pf([[0, b], [−b, 0]]) = b`.
pub fn pfaffian(b: &SkewMatrix) -> Result<f64> {
    let n = b.dim();
    if n % 2 == 1 {
        return Err(invalid(format!("Pfaffian of odd size {n}")));
    }
    let mut a = b.as_dense().as_slice().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        let kp = (k + 1..n)
            .max_by(|&i, &j| a[idx(i, k)].abs().total_cmp(&a[idx(j, k)].abs()))
            .expect("non-empty range");
        if kp != k + 1 {
            for c in 0..n {
                a.swap(idx(k + 1, c), idx(kp, c));
            }
            for r in 0..n {
                a.swap(idx(r, k + 1), idx(r, kp));
            }
            pf = -pf;
        }
        let pivot = a[idx(k, k + 1)];
        if pivot == 0.0 {
            return Ok(0.0);
        }
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|j| a[idx(k, j)] / pivot).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[idx(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[idx(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

/// `σ_k = Σ_{|J| = k} det B_J`, each minor by the matching formula.
pub fn sigma_k(b: &SkewMatrix, k: usize) -> Result<f64> {
    let r = b.dim();
    if k == 0 || k > r {
        return Err(invalid(format!("σ_k needs 1 ≤ k ≤ R, got k = {k}, R = {r}")));
    }
    if r > SIGMA_CAP {
        return Err(invalid(format!("size {r} exceeds the σ_k cap {SIGMA_CAP}")));
    }
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let subsets: Vec<u32> = (0u32..1 << r).filter(|s| s.count_ones() as usize == k).collect();
    let minors: Vec<f64> = subsets
        .par_iter()
        .map(|&s| {
            let idx: Vec<usize> = (0..r).filter(|i| s & (1 << i) != 0).collect();
            det_matching(&principal_skew(b, &idx))
        })
        .collect::<Result<_>>()?;
    Ok(minors.into_iter().sum::<CompensatedSum>().value())
}

/// All `σ_1, …, σ_R`.
pub fn all_sigmas(b: &SkewMatrix) -> Result<Vec<f64>> {
    (1..=b.dim()).map(|k| sigma_k(b, k)).collect()
}

/// Power sums `s_1, …, s_L` from `σ_1, σ_2, …` (missing `σ_i` are zero):
/// `s_l = Σ_{i<l} (−1)^{i−1} σ_i s_{l−i} + (−1)^{l−1} l σ_l`.
pub fn newton_girard(sigmas: &[f64], l: usize) -> Vec<f64> {
    let sigma = |i: usize| sigmas.get(i - 1).copied().unwrap_or(0.0);
    let sign = |i: usize| if i % 2 == 1 { 1.0 } else { -1.0 };
    let mut s: Vec<f64> = Vec::with_capacity(l);
    for j in 1..=l {
        let mut acc = CompensatedSum::new();
        for i in 1..j {
            acc.add(sign(i) * sigma(i) * s[j - i - 1]);
        }
        acc.add(sign(j) * j as f64 * sigma(j));
        s.push(acc.value());
    }
    s
}
