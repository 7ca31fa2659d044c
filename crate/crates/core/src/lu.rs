//! Partially pivoted LU factorization of a dense row-major matrix.

#[derive(Debug, Clone)]
pub(crate) struct Lu {
    n: usize,
    data: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factorizes `data` (row-major, `n × n`). Exactly zero pivots are kept;
    /// `solve` replaces them with `tiny` so inverse iteration still works.
    pub(crate) fn factor(n: usize, mut data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| data[i * n + k].abs().total_cmp(&data[j * n + k].abs()))
                .unwrap();
            if p != k {
                for c in 0..n {
                    data.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = data[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = data[i * n + k] / pivot;
                if f == 0.0 {
                    continue;
                }
                data[i * n + k] = f;
                for c in k + 1..n {
                    data[i * n + c] -= f * data[k * n + c];
                }
            }
        }
        Lu { n, data, perm, sign }
    }

    pub(crate) fn det(&self) -> f64 {
        let n = self.n;
        (0..n).map(|i| self.data[i * n + i]).product::<f64>() * self.sign
    }

    pub(crate) fn solve(&self, b: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.data[i * n + k] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.data[i * n + k] * x[k];
            }
            let mut d = self.data[i * n + i];
            if d.abs() < tiny {
                d = if d < 0.0 { -tiny } else { tiny };
            }
            x[i] = s / d;
        }
        x
    }
}
