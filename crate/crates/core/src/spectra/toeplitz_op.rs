//! FFT-backed matrix-free product with a real Toeplitz matrix, through its
//! circulant embedding. Used for `T_R` at sizes where a dense copy is
//! wasteful.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::lanczos::LinearOperator;

pub struct ToeplitzOperator {
    dim: usize,
    len: usize,
    spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl ToeplitzOperator {
    /// `column[k] = c_k` and `row[k] = c_{−k}` for `k = 0..R`, with
    /// `column[0] == row[0]`.
    pub fn new(column: &[f64], row: &[f64]) -> Self {
        assert_eq!(column.len(), row.len());
        assert!(!column.is_empty());
        let dim = column.len();
        let len = (2 * dim).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);

        let mut spectrum = vec![Complex64::new(0.0, 0.0); len];
        for k in 0..dim {
            spectrum[k] = Complex64::new(column[k], 0.0);
        }
        for k in 1..dim {
            spectrum[len - k] = Complex64::new(row[k], 0.0);
        }
        forward.process(&mut spectrum);
        let inv_len = 1.0 / len as f64;
        for s in spectrum.iter_mut() {
            *s *= inv_len;
        }
        Self {
            dim,
            len,
            spectrum,
            forward,
            inverse,
        }
    }

    /// The operator form of `T_R`: `c_k = 1/k`, `c_{−k} = −1/k`.
    pub fn hilbert(r: usize) -> Self {
        let column: Vec<f64> = (0..r).map(|k| if k == 0 { 0.0 } else { 1.0 / k as f64 }).collect();
        let row: Vec<f64> = column.iter().map(|c| -c).collect();
        Self::new(&column, &row)
    }
}

impl LinearOperator for ToeplitzOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.len];
        for (b, xi) in buf.iter_mut().zip(x) {
            b.re = *xi;
        }
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.inverse.process(&mut buf);
        for (yi, b) in y.iter_mut().zip(&buf) {
            *yi = b.re;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::build_t;

    #[test]
    fn matches_dense_hilbert_product() {
        let r = 37;
        let t = build_t(r).unwrap();
        let op = ToeplitzOperator::hilbert(r);
        let x: Vec<f64> = (0..r).map(|i| ((i * 31 % 17) as f64 - 8.0) / 3.0).collect();
        let mut y1 = vec![0.0; r];
        let mut y2 = vec![0.0; r];
        t.as_dense().matvec(&x, &mut y1);
        op.apply(&x, &mut y2);
        for i in 0..r {
            assert!((y1[i] - y2[i]).abs() < 1e-13, "{i}: {} vs {}", y1[i], y2[i]);
        }
    }
}
