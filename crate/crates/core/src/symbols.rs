//! Toeplitz symbols `f(x) = Σ c_r e^{irx}`: evaluation, the quadratic-form
//! identity `u* C_R u = ∫ f |φ|²`, the Grenander–Szegő rate near a smooth
//! maximum, and the exponentially small gap of the prolate matrix.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::matrices::{build_prolate, build_toeplitz, prolate_coefficient};
use crate::numeric::linear_fit;
use crate::quadrature;
use crate::spectra::{spectral_norm, tridiag};

/// Evaluator attached to a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `i(x − π)` on `(0, 2π)`, with `c_r = −1/r`.
    Hilbert,
    /// `π` times the indicator of `[0, 2πw] ∪ [2π(1−w), 2π]`.
    Prolate(f64),
    /// `2 cos x`.
    Cosine,
    /// No closed form: the truncated Fourier sum is the symbol.
    Table,
}

/// Fourier coefficients `c_r`, known for `|r| ≤ K` (or for every `r` when
/// the table is a finite trigonometric polynomial).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSeries {
    coeffs: BTreeMap<i64, Complex64>,
    reach: Option<u64>,
    closed_form: ClosedForm,
}

impl SymbolSeries {
    /// `f ≡ c0`.
    pub fn constant(c0: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, Complex64::new(c0, 0.0));
        Self {
            coeffs,
            reach: None,
            closed_form: ClosedForm::Table,
        }
    }

    /// `f(x) = 2 cos x`.
    pub fn cosine() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(-1, Complex64::new(1.0, 0.0));
        coeffs.insert(1, Complex64::new(1.0, 0.0));
        Self {
            coeffs,
            reach: None,
            closed_form: ClosedForm::Cosine,
        }
    }

    /// Symbol of `T_R`-type matrices, truncated at `|r| ≤ k`.
    pub fn hilbert(k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        for r in -(k as i64)..=k as i64 {
            let c = if r == 0 { 0.0 } else { -1.0 / r as f64 };
            coeffs.insert(r, Complex64::new(c, 0.0));
        }
        Self {
            coeffs,
            reach: Some(k as u64),
            closed_form: ClosedForm::Hilbert,
        }
    }

    /// Symbol of the prolate matrix, truncated at `|r| ≤ k`.
    pub fn prolate(w: f64, k: usize) -> Result<Self> {
        if !(w > 0.0 && w < 0.5) {
            return Err(invalid(format!("prolate bandwidth {w} not in (0, 1/2)")));
        }
        let mut coeffs = BTreeMap::new();
        for r in -(k as i64)..=k as i64 {
            coeffs.insert(r, Complex64::new(prolate_coefficient(w, r), 0.0));
        }
        Ok(Self {
            coeffs,
            reach: Some(k as u64),
            closed_form: ClosedForm::Prolate(w),
        })
    }

    /// Custom finite table; coefficients absent from the map are zero, so
    /// the symbol is the trigonometric polynomial they define.
    pub fn from_table(coeffs: BTreeMap<i64, Complex64>) -> Result<Self> {
        if coeffs.values().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("symbol coefficients must be finite"));
        }
        Ok(Self {
            coeffs,
            reach: None,
            closed_form: ClosedForm::Table,
        })
    }

    pub fn closed_form(&self) -> ClosedForm {
        self.closed_form
    }

    /// Truncation order `K`, or `None` for an exact trigonometric polynomial.
    pub fn reach(&self) -> Option<u64> {
        self.reach
    }

    /// Largest `|r|` with a stored coefficient.
    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|r| r.unsigned_abs()).max().unwrap_or(0)
    }

    /// `c_r`, or `None` beyond the truncation order.
    pub fn coefficient(&self, r: i64) -> Option<Complex64> {
        match self.reach {
            Some(k) if r.unsigned_abs() > k => None,
            _ => Some(self.coeffs.get(&r).copied().unwrap_or_default()),
        }
    }

    /// `c_{−r} = conj(c_r)` for every stored `r`.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(&r, c)| {
            let d = self.coefficient(-r).unwrap_or_default();
            (d - c.conj()).norm() <= 1e-15 * c.norm().max(1.0)
        })
    }

    fn truncated_sum(&self, x: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&r, c)| c * Complex64::from_polar(1.0, r as f64 * x))
            .sum()
    }
}

/// `φ(x) = (2π)^{−1/2} Σ_{n=1}^{R} u_n e^{i(n−1)x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    u: Vec<Complex64>,
}

impl TrigPolynomial {
    pub fn new(u: Vec<Complex64>) -> Self {
        Self { u }
    }

    pub fn from_real(u: &[f64]) -> Self {
        Self::new(u.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.u
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        // Horner in z = e^{ix}.
        let z = Complex64::from_polar(1.0, x);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.u.iter().rev() {
            acc = acc * z + c;
        }
        acc / (2.0 * PI).sqrt()
    }

    /// `Σ |u_n|²`.
    pub fn norm_sq(&self) -> f64 {
        self.u.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `ρ_k = Σ_{m−n=k} u_m ū_n` for `k = −(R−1)..R−1`, stored at index
    /// `k + R − 1`; then `|φ|² = (2π)^{−1} Σ ρ_k e^{ikx}`.
    pub fn autocorrelation(&self) -> Vec<Complex64> {
        let r = self.u.len();
        if r == 0 {
            return Vec::new();
        }
        let mut rho = vec![Complex64::new(0.0, 0.0); 2 * r - 1];
        for m in 0..r {
            for n in 0..r {
                rho[m + r - 1 - n] += self.u[m] * self.u[n].conj();
            }
        }
        rho
    }

    /// `∫_a^b |φ|² dx`, exactly from the Fourier modes.
    pub fn integral_abs_sq(&self, a: f64, b: f64) -> f64 {
        let r = self.u.len() as i64;
        let rho = self.autocorrelation();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -(r - 1)..r {
            let c = rho[(k + r - 1) as usize];
            acc += if k == 0 {
                c * (b - a)
            } else {
                let kf = k as f64;
                c * (Complex64::from_polar(1.0, kf * b) - Complex64::from_polar(1.0, kf * a))
                    / Complex64::new(0.0, kf)
            };
        }
        acc.re / (2.0 * PI)
    }

    /// `∫_0^{2π} x |φ(x)|² dx`, using `∫_0^{2π} x e^{ikx} dx = 2π/(ik)`.
    pub fn first_moment(&self) -> f64 {
        let r = self.u.len() as i64;
        let rho = self.autocorrelation();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -(r - 1)..r {
            let c = rho[(k + r - 1) as usize];
            acc += if k == 0 {
                c * PI
            } else {
                c / Complex64::new(0.0, k as f64)
            };
        }
        acc.re
    }
}

/// Value of the symbol at `x ∈ [0, 2π]`.
pub fn symbol_eval(s: &SymbolSeries, x: f64) -> Result<Complex64> {
    if !(0.0..=2.0 * PI).contains(&x) {
        return Err(invalid(format!("symbol argument {x} outside [0, 2π]")));
    }
    Ok(match s.closed_form {
        ClosedForm::Hilbert => {
            if x == 0.0 || x == 2.0 * PI {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, x - PI)
            }
        }
        ClosedForm::Prolate(w) => {
            let inside = x <= 2.0 * PI * w || x >= 2.0 * PI * (1.0 - w);
            Complex64::new(if inside { PI } else { 0.0 }, 0.0)
        }
        ClosedForm::Cosine => Complex64::new(2.0 * x.cos(), 0.0),
        ClosedForm::Table => s.truncated_sum(x),
    })
}

/// Both sides of `u* C_R u = ∫_0^{2π} f |φ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub matrix_side: Complex64,
    pub integral_side: Complex64,
}

impl QuadraticForm {
    pub fn discrepancy(&self) -> f64 {
        (self.matrix_side - self.integral_side).norm()
    }
}

/// Number of points of the uniform rule for a table symbol and size `R`.
pub fn grid_size(s: &SymbolSeries, r: usize) -> usize {
    // The integrand has degree ≤ K + 2(R − 1); keep the rule exact.
    (8 * r + 64).max(2 * (s.degree() as usize + r) + 1)
}

/// Evaluates the quadratic-form identity for a unit vector `u`.
pub fn quadratic_form(s: &SymbolSeries, u: &[Complex64]) -> Result<QuadraticForm> {
    let r = u.len();
    let nrm: f64 = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (nrm - 1.0).abs() > 1e-12 {
        return Err(invalid(format!("quadratic form needs a unit vector, got norm {nrm}")));
    }
    let c = build_toeplitz(s, r)?;
    let matrix_side = c.quadratic_form(u);

    let phi = TrigPolynomial::new(u.to_vec());
    let integral_side = match s.closed_form {
        ClosedForm::Hilbert | ClosedForm::Prolate(_) => {
            // ∫ f e^{ikx} dx = 2π c_{−k} exactly for these symbols.
            let rho = phi.autocorrelation();
            let ri = r as i64;
            (-(ri - 1)..ri)
                .map(|k| rho[(k + ri - 1) as usize] * closed_form_coefficient(s.closed_form, -k))
                .sum()
        }
        ClosedForm::Cosine | ClosedForm::Table => {
            let n = grid_size(s, r);
            quadrature::periodic_rule(n, |x| {
                symbol_eval(s, x).expect("grid inside [0, 2π]") * phi.eval(x).norm_sqr()
            })
        }
    };
    Ok(QuadraticForm {
        matrix_side,
        integral_side,
    })
}

fn closed_form_coefficient(form: ClosedForm, r: i64) -> Complex64 {
    let c = match form {
        ClosedForm::Hilbert if r == 0 => 0.0,
        ClosedForm::Hilbert => -1.0 / r as f64,
        ClosedForm::Prolate(w) => prolate_coefficient(w, r),
        _ => unreachable!("only discontinuous closed forms use exact coefficients"),
    };
    Complex64::new(c, 0.0)
}

/// One row of the Grenander–Szegő table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsRow {
    pub r: usize,
    pub gap: f64,
    pub predicted: f64,
    pub ratio: f64,
}

/// Location and curvature of the maximum of a real smooth symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolMaximum {
    pub x0: f64,
    pub value: f64,
    pub second_derivative: f64,
}

fn real_value(s: &SymbolSeries, x: f64) -> f64 {
    match s.closed_form {
        ClosedForm::Cosine => 2.0 * x.cos(),
        _ => s.truncated_sum(x).re,
    }
}

fn second_derivative(s: &SymbolSeries, x: f64) -> f64 {
    match s.closed_form {
        ClosedForm::Cosine => -2.0 * x.cos(),
        _ => s
            .coeffs
            .iter()
            .map(|(&r, c)| -(r * r) as f64 * c * Complex64::from_polar(1.0, r as f64 * x))
            .sum::<Complex64>()
            .re,
    }
}

/// Finds the unique maximum of `|f|` for a real trigonometric-polynomial
/// symbol, or reports why the rate hypothesis fails.
pub fn symbol_maximum(s: &SymbolSeries) -> Result<SymbolMaximum> {
    if !matches!(s.closed_form, ClosedForm::Cosine | ClosedForm::Table) || s.reach.is_some() {
        return Err(Error::HypothesisNotMet(
            "rate check needs a smooth (finite trigonometric) symbol".into(),
        ));
    }
    if !s.is_real() {
        return Err(Error::HypothesisNotMet("symbol is not real-valued".into()));
    }
    let n = 64 * (s.degree() as usize + 1);
    let h = 2.0 * PI / n as f64;
    let values: Vec<f64> = (0..n).map(|j| real_value(s, j as f64 * h)).collect();
    let (imax, &vmax) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let vmin = values.iter().copied().fold(f64::INFINITY, f64::min);
    if -vmin > vmax {
        return Err(Error::HypothesisNotMet(
            "sup |f| is attained at a minimum of f".into(),
        ));
    }
    // Newton on f' from the best grid point.
    let mut x = imax as f64 * h;
    for _ in 0..50 {
        let d1: f64 = match s.closed_form {
            ClosedForm::Cosine => -2.0 * x.sin(),
            _ => s
                .coeffs
                .iter()
                .map(|(&r, c)| Complex64::new(0.0, r as f64) * c * Complex64::from_polar(1.0, r as f64 * x))
                .sum::<Complex64>()
                .re,
        };
        let d2 = second_derivative(s, x);
        if d2 >= 0.0 {
            break;
        }
        let step = d1 / d2;
        x -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    let x0 = x.rem_euclid(2.0 * PI);
    let value = real_value(s, x0);
    let f2 = second_derivative(s, x0);
    if f2.abs() <= 1e-12 * value.abs().max(1.0) {
        return Err(Error::HypothesisNotMet(
            "f'' vanishes at the maximum (constant or flat symbol)".into(),
        ));
    }
    // Uniqueness: no other grid local maximum reaches the same height.
    let tol = 1e-9 * value.abs().max(1.0);
    for j in 0..n {
        let prev = values[(j + n - 1) % n];
        let next = values[(j + 1) % n];
        let dist = {
            let d = (j as f64 * h - x0).abs();
            d.min(2.0 * PI - d)
        };
        if values[j] >= prev && values[j] >= next && dist > 2.0 * h && values[j] >= value - tol {
            return Err(Error::HypothesisNotMet("maximum of f is not unique".into()));
        }
    }
    Ok(SymbolMaximum {
        x0,
        value,
        second_derivative: f2,
    })
}

/// Table of `(R, M − ‖C_R‖, π²|f''(x₀)|/(2R²), ratio)`.
pub fn gs_rate_check(s: &SymbolSeries, r_list: &[usize]) -> Result<Vec<GsRow>> {
    let max = symbol_maximum(s)?;
    if r_list.contains(&0) {
        return Err(invalid("R must be positive"));
    }
    r_list
        .par_iter()
        .map(|&r| {
            let c = build_toeplitz(s, r)?
                .to_sym()
                .ok_or_else(|| invalid("symbol does not give a real symmetric matrix"))?;
            let norm = spectral_norm(&c)?;
            let gap = max.value - norm;
            let predicted = PI * PI * max.second_derivative.abs() / (2.0 * (r * r) as f64);
            Ok(GsRow {
                r,
                gap,
                predicted,
                ratio: gap / predicted,
            })
        })
        .collect()
}

/// One row of the prolate-gap table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProlateRow {
    pub r: usize,
    pub gap: f64,
    pub log_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProlateGapTable {
    pub rows: Vec<ProlateRow>,
    /// Least-squares slope of `log gap` against `R` (needs two rows).
    pub slope: Option<f64>,
}

/// Leading eigenvector of `P_R`, computed from the tridiagonal matrix that
/// commutes with it. The tridiagonal spectrum is well separated, so the
/// vector is accurate even when `π − ‖P_R‖` is far below machine precision.
pub fn prolate_top_vector(r: usize, w: f64) -> Result<Vec<f64>> {
    if !(w > 0.0 && w < 0.5) {
        return Err(invalid(format!("prolate bandwidth {w} not in (0, 1/2)")));
    }
    if r == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let nf = r as f64;
    let cw = (2.0 * PI * w).cos();
    let d: Vec<f64> = (0..r)
        .map(|n| {
            let t = (nf - 1.0 - 2.0 * n as f64) / 2.0;
            t * t * cw
        })
        .collect();
    let e: Vec<f64> = (1..r).map(|n| n as f64 * (nf - n as f64) / 2.0).collect();
    let theta = tridiag::largest_eigenvalue(&d, &e);
    let mut v = tridiag::eigenvector(&d, &e, theta);
    let nrm = crate::numeric::norm2(&v);
    let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    for x in v.iter_mut() {
        *x *= sign / nrm;
    }
    Ok(v)
}

/// `π − ‖P_R‖ = π · (energy of the top eigenvector outside the band)`,
/// with the out-of-band integral done by Gauss–Legendre. Stays positive
/// well beyond the point where `π − λ_max` cancels in double precision.
pub fn prolate_gap_single(r: usize, w: f64) -> Result<f64> {
    let v = prolate_top_vector(r, w)?;
    // |V(f)|², V(f) = Σ v_n e^{−2πifn}; even in f for real v.
    let power = |f: f64| {
        let z = Complex64::from_polar(1.0, -2.0 * PI * f);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in v.iter().rev() {
            acc = acc * z + c;
        }
        acc.norm_sqr()
    };
    let panels = r / 8 + 2;
    let out_of_band = 2.0 * quadrature::integrate(power, w, 0.5, panels, 24);
    Ok(PI * out_of_band)
}

/// `π − ‖P_R‖` from a dense eigen-solve; loses all accuracy once the gap
/// nears machine precision.
pub fn prolate_gap_dense(r: usize, w: f64) -> Result<f64> {
    Ok(PI - spectral_norm(&build_prolate(r, w)?)?)
}

/// Prolate gaps over a list of sizes, with the fitted log-gap slope.
pub fn prolate_gap(w: f64, r_list: &[usize]) -> Result<ProlateGapTable> {
    if !(w > 0.0 && w < 0.5) {
        return Err(invalid(format!("prolate bandwidth {w} not in (0, 1/2)")));
    }
    let rows: Vec<ProlateRow> = r_list
        .par_iter()
        .map(|&r| {
            let gap = prolate_gap_single(r, w)?;
            Ok(ProlateRow {
                r,
                gap,
                log_gap: gap.ln(),
            })
        })
        .collect::<Result<_>>()?;
    let slope = if rows.len() >= 2 {
        let xs: Vec<f64> = rows.iter().map(|row| row.r as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|row| row.log_gap).collect();
        Some(linear_fit(&xs, &ys).0)
    } else {
        None
    };
    Ok(ProlateGapTable { rows, slope })
}

pub fn write_gs_csv<W: Write>(rows: &[GsRow], mut out: W) -> io::Result<()> {
    writeln!(out, "R,gap,predicted,ratio")?;
    for row in rows {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e}",
            row.r, row.gap, row.predicted, row.ratio
        )?;
    }
    Ok(())
}

pub fn write_prolate_csv<W: Write>(table: &ProlateGapTable, mut out: W) -> io::Result<()> {
    writeln!(out, "R,gap,log_gap")?;
    for row in &table.rows {
        writeln!(out, "{},{:.16e},{:.16e}", row.r, row.gap, row.log_gap)?;
    }
    Ok(())
}
