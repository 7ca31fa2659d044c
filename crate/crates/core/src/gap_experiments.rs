//! The gap `π − ‖T_R‖` and its Hankel counterpart: sweeps, the lower bound
//! for odd `R`, and the explicit witness vector whose Rayleigh quotient
//! certifies the upper bound `π − ‖T_R‖ = O(log R / R)`.

use std::f64::consts::{E, PI};
use std::io::{self, Write};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::identities::{top_eigvec_profile, ResidualReport, BOUND_SLACK};
use crate::matrices::build_h;
use crate::numeric::CompensatedSum;
use crate::spectra::{
    hilbert_toeplitz_norm, hilbert_toeplitz_norms, spectral_norm, LinearOperator, ToeplitzOperator,
};
use crate::symbols::TrigPolynomial;

/// Largest `R` in the default Figure 1 sweep.
pub const FIGURE1_R_MAX: usize = 10_000;
/// Half-width of the Figure 2 eigenvector.
pub const FIGURE2_S: usize = 1000;
/// Largest `R` for the `‖H_R‖ ≤ ‖T_{2R+1}‖` comparison.
pub const HANKEL_R_MAX: usize = 500;
/// Agreement required between the two evaluations of the witness quotient.
pub const RAYLEIGH_AGREEMENT: f64 = 1e-8;

/// `π − ‖T_R‖`.
pub fn gap_t(r: usize) -> Result<f64> {
    if r == 0 {
        return Err(invalid("R must be at least 1"));
    }
    Ok(PI - hilbert_toeplitz_norm(r)?)
}

/// `(π − ‖T_R‖) R / log R`.
pub fn rescaled_gap(r: usize) -> Result<f64> {
    if r < 2 {
        return Err(invalid(format!("rescaled gap needs R >= 2, got {r}")));
    }
    let rf = r as f64;
    Ok(gap_t(r)? * rf / rf.ln())
}

/// For `R = 2S + 1`: `‖T_R‖² < π² − 6/(S+1)` and `π − ‖T_R‖ > 3/(π(S+1))`.
pub fn lower_bound_check(s: usize) -> Result<ResidualReport> {
    if s == 0 {
        return Err(invalid("S must be at least 1"));
    }
    Ok(lower_bound_report(s, hilbert_toeplitz_norm(2 * s + 1)?))
}

fn lower_bound_report(s: usize, norm: f64) -> ResidualReport {
    let sq_excess = norm * norm - (PI * PI - 6.0 / (s as f64 + 1.0));
    let gap_excess = 3.0 / (PI * (s as f64 + 1.0)) - (PI - norm);
    let excess = sq_excess.max(gap_excess);
    ResidualReport::assess("gap_lower_odd", 2 * s + 1, excess.max(0.0), 1.0, BOUND_SLACK)
        .with_descriptor(format!("margin={:.6e}", -excess))
}

/// [`lower_bound_check`] on every odd row (`R ≥ 3`) of a sweep.
pub fn lower_bound_reports(rows: &[GapRow]) -> Vec<ResidualReport> {
    rows.iter()
        .filter(|row| row.r >= 3 && row.r % 2 == 1)
        .map(|row| lower_bound_report(row.r / 2, row.norm))
        .collect()
}

/// `π − ‖T_R‖ > π/(2R)`.
pub fn half_over_r_check(r: usize) -> Result<ResidualReport> {
    if r == 0 {
        return Err(invalid("R must be at least 1"));
    }
    Ok(half_over_r_report(r, gap_t(r)?))
}

fn half_over_r_report(r: usize, gap: f64) -> ResidualReport {
    let excess = PI / (2.0 * r as f64) - gap;
    ResidualReport::assess("gap_lower_all", r, excess.max(0.0), 1.0, BOUND_SLACK)
        .with_descriptor(format!("margin={:.6e}", -excess))
}

/// [`half_over_r_check`] on every row of a sweep.
pub fn half_over_r_reports(rows: &[GapRow]) -> Vec<ResidualReport> {
    rows.iter().map(|row| half_over_r_report(row.r, row.gap)).collect()
}

/// Coefficients of `(1 + t + … + t^{M−1})^k` for `k = 0..=k_max`.
fn powers_of_geometric(m: usize, k_max: usize) -> Vec<Vec<BigUint>> {
    let mut out = vec![vec![BigUint::one()]];
    for _ in 0..k_max {
        let prev = out.last().expect("nonempty");
        let len = prev.len() + m - 1;
        let mut next = Vec::with_capacity(len);
        // Sliding window sum of width M.
        let mut window = BigUint::zero();
        for j in 0..len {
            if j < prev.len() {
                window += &prev[j];
            }
            if j >= m {
                window -= &prev[j - m];
            }
            next.push(window.clone());
        }
        out.push(next);
    }
    out
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 1 {
        return Err(invalid(format!("need M >= 2 and N >= 1, got M={m}, N={n}")));
    }
    if m > 1 << 16 || n > 1 << 12 {
        return Err(Error::Range(format!("M={m}, N={n} too large for exact expansion")));
    }
    Ok(())
}

/// Coefficient of `t^{N(M−1)}` in `(1 + t + … + t^{M−1})^{2N}`.
pub fn central_coefficient(m: usize, n: usize) -> Result<BigUint> {
    check_mn(m, n)?;
    let powers = powers_of_geometric(m, 2 * n);
    Ok(powers[2 * n][n * (m - 1)].clone())
}

/// Coefficients `b_{l,N}` of `(1 + t + … + t^{M−1})^N`.
pub fn witness_coefficients(m: usize, n: usize) -> Result<Vec<BigUint>> {
    check_mn(m, n)?;
    Ok(powers_of_geometric(m, n).swap_remove(n))
}

fn lemma8_report(m: usize, n: usize, central: &BigUint) -> ResidualReport {
    let mb = BigUint::from(m);
    let lower_num = mb.pow(2 * n as u32);
    let lower_den = BigUint::from(n * (m - 1) + 1);
    let upper = mb.pow(2 * n as u32 - 1);
    let holds = lower_num <= central * &lower_den && *central <= upper;
    // Relative excess over each bound, for display only.
    let ln_c = big_ln(central);
    let ln_lower = big_ln(&lower_num) - big_ln(&lower_den);
    let ln_upper = big_ln(&upper);
    let excess = (ln_lower - ln_c).max(ln_c - ln_upper);
    let mut report = ResidualReport::assess("lemma8", n * (m - 1) + 1, excess.max(0.0), 1.0, 0.0)
        .with_descriptor(format!("M={m} N={n}"));
    report.outcome = if holds {
        crate::identities::Outcome::Pass
    } else {
        crate::identities::Outcome::Fail
    };
    report
}

/// `M^{2N}/(N(M−1)+1) ≤ b_{N(M−1),2N} ≤ M^{2N−1}` in exact integers.
pub fn lemma8_bounds(m: usize, n: usize) -> Result<ResidualReport> {
    let central = central_coefficient(m, n)?;
    Ok(lemma8_report(m, n, &central))
}

/// Lemma 8 for every `2 ≤ M ≤ m_max`, `1 ≤ N ≤ n_max`, sharing the
/// polynomial powers across `N`.
pub fn lemma8_grid(m_max: usize, n_max: usize) -> Result<Vec<ResidualReport>> {
    if m_max < 2 || n_max < 1 {
        return Err(invalid("need m_max >= 2 and n_max >= 1"));
    }
    check_mn(m_max, n_max)?;
    let rows: Vec<Vec<ResidualReport>> = (2..=m_max)
        .into_par_iter()
        .map(|m| {
            let powers = powers_of_geometric(m, 2 * n_max);
            (1..=n_max)
                .map(|n| lemma8_report(m, n, &powers[2 * n][n * (m - 1)]))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Natural logarithm of a positive big integer.
fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `M = ⌊2R/log R⌋`, `N = ⌊log R / 2⌋` and the cutoff `γ = πe log R / R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessParams {
    pub r: usize,
    pub m: usize,
    pub n: usize,
    pub gamma: f64,
}

impl WitnessParams {
    pub fn new(r: usize) -> Result<Self> {
        if r < 3 {
            return Err(invalid(format!("witness needs R >= 3, got {r}")));
        }
        let rf = r as f64;
        let ln = rf.ln();
        let m = (2.0 * rf / ln).floor() as usize;
        let n = (ln / 2.0).floor() as usize;
        if n == 0 {
            return Err(invalid(format!("N = floor(log R / 2) is 0 for R = {r}")));
        }
        if m < 2 {
            return Err(invalid(format!("M = floor(2R / log R) is {m} for R = {r}")));
        }
        if n * (m - 1) + 1 > r {
            return Err(invalid(format!("N(M-1)+1 = {} exceeds R = {r}", n * (m - 1) + 1)));
        }
        Ok(Self {
            r,
            m,
            n,
            gamma: PI * E * ln / rf,
        })
    }

    /// Degree of `g` plus one: the number of leading coordinates in use.
    pub fn support(&self) -> usize {
        self.n * (self.m - 1) + 1
    }

    /// `ln` of `[(N(M−1)+1)/M^{2N}] [1/(2N−1)] (2π/γ)^{2N−1}`.
    pub fn ln_epsilon_bound(&self) -> f64 {
        let n = self.n as f64;
        (self.support() as f64).ln() - 2.0 * n * (self.m as f64).ln() - (2.0 * n - 1.0).ln()
            + (2.0 * n - 1.0) * (2.0 * PI / self.gamma).ln()
    }

    /// `πe log R / R + 2πe³/R`.
    pub fn final_bound(&self) -> f64 {
        let rf = self.r as f64;
        PI * E * rf.ln() / rf + 2.0 * PI * E.powi(3) / rf
    }
}

/// The witness `φ(x) = g(x − γ/2)/‖g‖` with `g = (Σ_{m<M} e^{imx})^N` and
/// the quantities certifying `π − ‖T_R‖ ≤ γ + 2πε`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate {
    pub params: WitnessParams,
    /// Coefficient vector of `φ`, length `R`.
    pub u: Vec<Complex64>,
    /// `∫_γ^{2π} |φ|²`.
    pub epsilon: f64,
    pub epsilon_bound: f64,
    /// `|u* T_R u|` through the Toeplitz operator.
    pub rayleigh: f64,
    /// `|π − ∫ x |φ|²|`, the same quantity from the symbol side.
    pub rayleigh_moment: f64,
    /// `γ + 2πε`.
    pub gap_bound: f64,
    pub final_bound: f64,
    /// `‖T_R‖`.
    pub norm: f64,
}

impl WitnessCertificate {
    pub fn unit_norm_error(&self) -> f64 {
        (self.u.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs()
    }

    /// One report per certified inequality.
    pub fn reports(&self) -> Vec<ResidualReport> {
        let r = self.params.r;
        let gap = PI - self.rayleigh;
        let le = |name: &str, lhs: f64, rhs: f64, slack: f64| {
            ResidualReport::assess(name, r, (lhs - rhs).max(0.0), 1.0, slack)
                .with_descriptor(format!("lhs={lhs:.6e} rhs={rhs:.6e}"))
        };
        vec![
            le("witness_unit_norm", self.unit_norm_error(), 0.0, 1e-12),
            le("witness_epsilon_nonneg", 0.0, self.epsilon, 1e-12),
            le("witness_epsilon_bound", self.epsilon, self.epsilon_bound, 0.0),
            le("witness_rayleigh_norm", self.rayleigh, self.norm, BOUND_SLACK),
            ResidualReport::assess(
                "witness_rayleigh_agree",
                r,
                (self.rayleigh - self.rayleigh_moment).abs(),
                1.0,
                RAYLEIGH_AGREEMENT,
            ),
            le("witness_gap_bound", gap, self.gap_bound, 1e-9),
            le("witness_final_bound", gap, self.params.final_bound(), 1e-9),
        ]
    }

    pub fn ok(&self) -> bool {
        self.reports().iter().all(ResidualReport::ok)
    }
}

/// Builds and evaluates the witness for `T_R`.
pub fn build_witness(r: usize) -> Result<WitnessCertificate> {
    let params = WitnessParams::new(r)?;
    let beta = witness_coefficients(params.m, params.n)?;
    let central: BigUint = beta.iter().map(|b| b * b).sum();
    let ln_central = big_ln(&central);
    let half_gamma = params.gamma / 2.0;
    let mut u = vec![Complex64::new(0.0, 0.0); r];
    for (l, b) in beta.iter().enumerate() {
        // β_l / √central, in log space so large expansions do not overflow.
        let mag = if b.is_zero() {
            0.0
        } else {
            (big_ln(b) - 0.5 * ln_central).exp()
        };
        u[l] = Complex64::from_polar(mag, -(l as f64) * half_gamma);
    }

    let phi = TrigPolynomial::new(u[..params.support()].to_vec());
    let epsilon = phi.integral_abs_sq(params.gamma, 2.0 * PI);
    let rayleigh_moment = (PI - phi.first_moment()).abs();
    let rayleigh = hilbert_form(&u).abs();
    let ln_bound = params.ln_epsilon_bound();
    if ln_bound > f64::MAX.ln() {
        return Err(Error::Range(format!("epsilon bound e^{ln_bound} overflows")));
    }
    Ok(WitnessCertificate {
        params,
        epsilon,
        epsilon_bound: ln_bound.exp(),
        rayleigh,
        rayleigh_moment,
        gap_bound: params.gamma + 2.0 * PI * epsilon,
        final_bound: params.final_bound(),
        norm: hilbert_toeplitz_norm(r)?,
        u,
    })
}

/// `Im(u* T_R u)`; the real part vanishes because `T_R` is real skew.
fn hilbert_form(u: &[Complex64]) -> f64 {
    let r = u.len();
    let op = ToeplitzOperator::hilbert(r);
    let re: Vec<f64> = u.iter().map(|z| z.re).collect();
    let im: Vec<f64> = u.iter().map(|z| z.im).collect();
    let mut t_re = vec![0.0; r];
    let mut t_im = vec![0.0; r];
    op.apply(&re, &mut t_re);
    op.apply(&im, &mut t_im);
    let mut acc = CompensatedSum::new();
    for k in 0..r {
        acc.add(re[k] * t_im[k] - im[k] * t_re[k]);
    }
    acc.value()
}

/// One row of the `T_R` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    pub r: usize,
    pub norm: f64,
    pub gap: f64,
    pub rescaled_gap: f64,
}

/// `R = 2..=min(100, r_max)` densely, then a geometric grid of ratio
/// `1.05` up to `r_max` (which is always included).
pub fn figure1_grid(r_max: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (2..=r_max.min(100)).collect();
    let mut x = 100.0f64;
    loop {
        x *= 1.05;
        let r = x.round() as usize;
        if r >= r_max {
            break;
        }
        if out.last() != Some(&r) {
            out.push(r);
        }
    }
    if out.last() != Some(&r_max) && r_max >= 2 {
        out.push(r_max);
    }
    out
}

/// Gap and rescaled gap on the given sizes (each `R ≥ 2`), in input order.
pub fn gap_sweep(rs: &[usize]) -> Result<Vec<GapRow>> {
    if let Some(r) = rs.iter().find(|&&r| r < 2) {
        return Err(invalid(format!("sweep sizes must be >= 2, got {r}")));
    }
    let norms = hilbert_toeplitz_norms(rs)?;
    Ok(rs
        .iter()
        .zip(norms)
        .map(|(&r, norm)| {
            let gap = PI - norm;
            let rf = r as f64;
            GapRow {
                r,
                norm,
                gap,
                rescaled_gap: gap * rf / rf.ln(),
            }
        })
        .collect())
}

/// Whether `gap` strictly decreases along rows sorted by `R`.
pub fn gaps_decreasing(rows: &[GapRow]) -> bool {
    rows.windows(2).all(|w| w[0].r < w[1].r && w[1].gap < w[0].gap)
}

/// `|u_n|`, `n = −S..S`, for the top eigenvector of `T_{2S+1}`.
pub fn figure2_profile(s: usize) -> Result<Vec<(i64, f64)>> {
    let profile = top_eigvec_profile(s)?;
    Ok(profile
        .into_iter()
        .enumerate()
        .map(|(k, a)| (k as i64 - s as i64, a))
        .collect())
}

/// One row of the `H_R` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelRow {
    pub r: usize,
    pub norm: f64,
    pub gap: f64,
    /// `gap / (π⁵/(2 log² R))`; undefined for `R = 1`.
    pub wilf_ratio: Option<f64>,
    /// `‖T_{2R+1}‖`.
    pub toeplitz_norm: f64,
}

/// `π − ‖H_R‖` together with the Wilf–de Bruijn ratio.
pub fn gap_h(r: usize) -> Result<HankelRow> {
    if r == 0 {
        return Err(invalid("R must be at least 1"));
    }
    let norm = spectral_norm(&build_h(r)?)?;
    let gap = PI - norm;
    let wilf_ratio = (r >= 2).then(|| {
        let ln = (r as f64).ln();
        gap / (PI.powi(5) / (2.0 * ln * ln))
    });
    Ok(HankelRow {
        r,
        norm,
        gap,
        wilf_ratio,
        toeplitz_norm: hilbert_toeplitz_norm(2 * r + 1)?,
    })
}

pub fn hankel_sweep(rs: &[usize]) -> Result<Vec<HankelRow>> {
    rs.par_iter().map(|&r| gap_h(r)).collect()
}

/// `gap_H` strictly decreasing, `‖H_R‖ < π` and `‖H_R‖ ≤ ‖T_{2R+1}‖`
/// along rows sorted by `R`.
pub fn hankel_reports(rows: &[HankelRow]) -> Vec<ResidualReport> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let cmp = row.norm - row.toeplitz_norm;
        out.push(
            ResidualReport::assess("hankel_vs_toeplitz", row.r, cmp.max(0.0), 1.0, BOUND_SLACK)
                .with_descriptor(format!("normH={:.6e} normT={:.6e}", row.norm, row.toeplitz_norm)),
        );
        out.push(ResidualReport::assess(
            "hankel_below_pi",
            row.r,
            if row.norm < PI { 0.0 } else { row.norm - PI + f64::MIN_POSITIVE },
            1.0,
            0.0,
        ));
        if i > 0 {
            let prev = &rows[i - 1];
            let up = row.gap - prev.gap;
            out.push(
                ResidualReport::assess(
                    "hankel_gap_decreasing",
                    row.r,
                    if up < 0.0 { 0.0 } else { up + f64::MIN_POSITIVE },
                    1.0,
                    0.0,
                )
                .with_descriptor(format!("prev_R={}", prev.r)),
            );
        }
    }
    out
}

pub fn write_figure1_csv<W: Write>(rows: &[GapRow], mut out: W) -> io::Result<()> {
    writeln!(out, "R,norm,gap,rescaled_gap")?;
    for row in rows {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e}",
            row.r, row.norm, row.gap, row.rescaled_gap
        )?;
    }
    Ok(())
}

pub fn write_figure2_csv<W: Write>(profile: &[(i64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "n,abs_u_n")?;
    for (n, a) in profile {
        writeln!(out, "{n},{a:.16e}")?;
    }
    Ok(())
}

pub fn write_witness_csv<W: Write>(certs: &[WitnessCertificate], mut out: W) -> io::Result<()> {
    writeln!(out, "R,M,N,gamma,epsilon,epsilon_bound,rayleigh,gap_bound")?;
    for c in certs {
        writeln!(
            out,
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            c.params.r,
            c.params.m,
            c.params.n,
            c.params.gamma,
            c.epsilon,
            c.epsilon_bound,
            c.rayleigh,
            c.gap_bound
        )?;
    }
    Ok(())
}

pub fn write_hankel_csv<W: Write>(rows: &[HankelRow], mut out: W) -> io::Result<()> {
    writeln!(out, "R,norm,gap,wilf_ratio")?;
    for row in rows {
        let ratio = row.wilf_ratio.map(|x| format!("{x:.16e}")).unwrap_or_default();
        writeln!(out, "{},{:.16e},{:.16e},{ratio}", row.r, row.norm, row.gap)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Outcome;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_gaps_closed_form() {
        assert_eq!(gap_t(1).unwrap(), PI);
        assert!((gap_t(2).unwrap() - (PI - 1.0)).abs() < 1e-12);
        assert!((gap_t(3).unwrap() - (PI - 1.5)).abs() < 1e-12);
        let want = (PI - 1.0) * 2.0 / 2f64.ln();
        assert!((rescaled_gap(2).unwrap() - want).abs() < 1e-12);
        assert!(rescaled_gap(1).is_err());
        assert!(gap_t(0).is_err());
    }

    #[test]
    fn odd_lower_bound_small() {
        // ‖T_3‖² = 2.25 < π² − 3.
        let rep = lower_bound_check(1).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        for s in [2usize, 10, 100] {
            assert!(lower_bound_check(s).unwrap().ok(), "S={s}");
        }
        for r in [2usize, 7, 60, 333] {
            assert!(half_over_r_check(r).unwrap().ok(), "R={r}");
        }
    }

    #[test]
    fn central_coefficient_small_cases() {
        assert_eq!(central_coefficient(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(central_coefficient(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(central_coefficient(3, 1).unwrap(), BigUint::from(3u32));
        // M = 2 gives the central binomial coefficient C(2N, N).
        for n in 1..=20u64 {
            let got = central_coefficient(2, n as usize).unwrap();
            assert_eq!(got, BigUint::from(binomial(2 * n, n)), "N={n}");
        }
        assert!(central_coefficient(1, 1).is_err());
        assert!(central_coefficient(2, 0).is_err());
    }

    #[test]
    fn central_coefficient_is_sum_of_squares() {
        for (m, n) in [(2usize, 3usize), (5, 2), (9, 4), (17, 3)] {
            let beta = witness_coefficients(m, n).unwrap();
            let total: BigUint = beta.iter().sum();
            assert_eq!(total, BigUint::from(m).pow(n as u32));
            let sq: BigUint = beta.iter().map(|b| b * b).sum();
            assert_eq!(sq, central_coefficient(m, n).unwrap());
        }
    }

    #[test]
    fn lemma8_tight_and_loose() {
        assert_eq!(lemma8_bounds(2, 1).unwrap().outcome, Outcome::Pass);
        assert_eq!(lemma8_bounds(2, 2).unwrap().outcome, Outcome::Pass);
        assert_eq!(lemma8_bounds(20, 4).unwrap().outcome, Outcome::Pass);
        let grid = lemma8_grid(12, 6).unwrap();
        assert_eq!(grid.len(), 11 * 6);
        assert!(grid.iter().all(|r| r.outcome == Outcome::Pass));
    }

    #[test]
    fn witness_params_follow_formula() {
        let p = WitnessParams::new(100).unwrap();
        assert_eq!((p.m, p.n), (43, 2));
        assert!(p.support() <= 100);
        assert!(WitnessParams::new(7).is_err());
        let p8 = WitnessParams::new(8).unwrap();
        assert_eq!(p8.n, 1);
    }

    #[test]
    fn witness_at_100_certifies() {
        let c = build_witness(100).unwrap();
        for rep in c.reports() {
            assert!(rep.ok(), "{rep:?}");
        }
        assert!(PI - c.rayleigh <= c.final_bound);
    }

    #[test]
    fn epsilon_against_quadrature() {
        let c = build_witness(64).unwrap();
        let phi = TrigPolynomial::new(c.u.clone());
        let q = crate::quadrature::integrate(
            |x| phi.eval(x).norm_sqr(),
            c.params.gamma,
            2.0 * PI,
            64,
            24,
        );
        assert!((q - c.epsilon).abs() < 1e-12, "{q} vs {}", c.epsilon);
    }

    #[test]
    fn figure1_grid_shape() {
        let g = figure1_grid(10_000);
        assert_eq!(g[0], 2);
        assert_eq!(*g.last().unwrap(), 10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(figure1_grid(50).len(), 49);
    }

    #[test]
    fn sweep_decreases() {
        let rows = gap_sweep(&[2, 3, 10, 50, 120, 400]).unwrap();
        assert!(gaps_decreasing(&rows));
        assert!(half_over_r_reports(&rows).iter().all(ResidualReport::ok));
        let odd = lower_bound_reports(&rows);
        assert_eq!(odd.len(), 1);
        assert_eq!(odd[0].r, 3);
        assert!(odd[0].ok());
        assert!(rows.iter().all(|r| r.gap > 0.0 && r.rescaled_gap > 0.0));
    }

    #[test]
    fn hankel_small_cases() {
        let h1 = gap_h(1).unwrap();
        assert!((h1.gap - (PI - 1.0)).abs() < 1e-14);
        assert!(h1.wilf_ratio.is_none());
        // λ² − (4/3)λ + 1/12 = 0.
        let lam = (4.0 / 3.0 + (16.0 / 9.0 - 1.0 / 3.0f64).sqrt()) / 2.0;
        assert!((gap_h(2).unwrap().norm - lam).abs() < 1e-13);
        let rows = hankel_sweep(&[1, 2, 10, 100]).unwrap();
        assert!(hankel_reports(&rows).iter().all(ResidualReport::ok));
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_figure1_csv(&gap_sweep(&[2]).unwrap(), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("R,norm,gap,rescaled_gap\n"));
        let mut buf = Vec::new();
        write_witness_csv(&[build_witness(30).unwrap()], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("R,M,N,gamma,epsilon,epsilon_bound,rayleigh,gap_bound\n30,"));
    }
}
