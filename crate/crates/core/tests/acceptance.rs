//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion (with one indented line per sub-check), and exits nonzero if
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hilbert_core::determinants::{det_lu, det_matching, pfaffian};
use hilbert_core::gap_experiments::{
    build_witness, figure1_grid, figure2_profile, gap_sweep, half_over_r_reports, hankel_reports,
    hankel_sweep, lemma8_grid, lower_bound_reports, write_figure1_csv, write_figure2_csv,
    FIGURE1_R_MAX, FIGURE2_S, HANKEL_R_MAX,
};
use hilbert_core::identities::{check_t_eigvec_symmetry, instance_reports, ResidualReport};
use hilbert_core::quadrature::integrate;
use hilbert_core::symbols::{gs_rate_check, quadratic_form, symbol_eval, TrigPolynomial};
use hilbert_core::{
    build_a, build_b, build_t, build_toeplitz, min_gaps, random, spectral_norm, SymbolSeries,
    WeightVector,
};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Vec<Check>);

struct Check {
    label: String,
    ok: bool,
    detail: String,
}

fn check(label: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        label: label.to_string(),
        ok,
        detail: detail.into(),
    }
}

fn within(label: &str, start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    check(label, t < limit, format!("{:.2?} < {:.0?}", t, limit))
}

fn all_ok(label: &str, reports: &[ResidualReport]) -> Check {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.ok())
        .map(|r| format!("{}(seed={:?}, R={})", r.name, r.seed, r.r))
        .collect();
    let worst = reports
        .iter()
        .map(|r| r.max_residual / (r.tolerance * r.scale).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    check(
        label,
        bad.is_empty() && !reports.is_empty(),
        if bad.is_empty() {
            format!("{} checks, worst residual/tolerance {worst:.3e}", reports.len())
        } else {
            format!("failed: {}", bad.join(", "))
        },
    )
}

fn criterion1() -> Vec<Check> {
    let start = Instant::now();
    let n2 = spectral_norm(&build_t(2).unwrap()).unwrap();
    let t3 = build_t(3).unwrap();
    let n3 = spectral_norm(&t3).unwrap();
    // A 3×3 skew matrix has eigenvalues 0 and ±i times the Euclidean norm
    // of its upper triangle.
    let closed = (t3.get(0, 1).powi(2) + t3.get(0, 2).powi(2) + t3.get(1, 2).powi(2)).sqrt();
    vec![
        check("norm T_2 = 1", (n2 - 1.0).abs() <= 1e-12, format!("{n2:.17}")),
        check(
            "norm T_3 = 1.5",
            (n3 - 1.5).abs() <= 1e-12 && (closed - 1.5).abs() <= 1e-15,
            format!("{n3:.17}"),
        ),
        within("runtime", start, Duration::from_secs(1)),
    ]
}

fn criterion2() -> Vec<Check> {
    let start = Instant::now();
    let t4 = build_t(4).unwrap();
    let d = det_matching(&t4).unwrap();
    let b = |m, n| t4.get(m, n);
    let pf_direct = b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
    let mut out = vec![check(
        "det T_4 = 169/144",
        (d - 169.0 / 144.0).abs() <= 1e-14 && (pf_direct * pf_direct - 169.0 / 144.0).abs() <= 1e-14,
        format!("{d:.17}"),
    )];

    let rows: Vec<(f64, f64, f64, f64)> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let r = random::random_even_size(seed, 2, 12);
            let (x, c) = random::random_instance(seed, r);
            let b = build_b(&x, &c).unwrap();
            let dm = det_matching(&b).unwrap();
            let dl = det_lu(b.as_dense());
            let pf = pfaffian(&b).unwrap();
            let scale = dl.abs().max(1.0);
            // Odd companion of size R + 1.
            let (xo, co) = random::random_instance(seed, r + 1);
            let bo = build_b(&xo, &co).unwrap();
            let odd_matching = det_matching(&bo).unwrap().abs();
            let hadamard: f64 = (0..bo.dim())
                .map(|m| (0..bo.dim()).map(|n| bo.get(m, n).powi(2)).sum::<f64>().sqrt())
                .product();
            let odd_lu = det_lu(bo.as_dense()).abs() / hadamard.max(1.0);
            ((dm - dl).abs() / scale, (pf * pf - dm).abs() / scale, odd_matching, odd_lu)
        })
        .collect();
    let lu = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let pf = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let odd_m = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let odd_l = rows.iter().map(|r| r.3).fold(0.0, f64::max);
    out.push(check("matching vs LU", lu <= 1e-10, format!("max relative {lu:.3e}")));
    out.push(check("Pf^2 vs matching", pf <= 1e-10, format!("max relative {pf:.3e}")));
    out.push(check(
        "odd R vanishes",
        odd_m <= 1e-12 && odd_l <= 1e-12,
        format!("matching {odd_m:.3e}, LU/Hadamard {odd_l:.3e}"),
    ));
    out.push(within("runtime", start, Duration::from_secs(30)));
    out
}

fn criterion3() -> Vec<Check> {
    let start = Instant::now();
    let reports: Vec<ResidualReport> = (0..100u64)
        .into_par_iter()
        .map(|seed| instance_reports(seed, 50).unwrap())
        .flatten()
        .collect();
    let pick = |names: &[&str]| -> Vec<ResidualReport> {
        reports
            .iter()
            .filter(|r| names.contains(&r.name.as_str()))
            .cloned()
            .collect()
    };
    let exact = pick(&["lemma1", "lemma2"]);
    let eigen = pick(&["lemma5", "lemma6", "lemma7"]);
    vec![
        check(
            "lemma 1, 2 at 1e-12",
            exact.iter().all(|r| r.tolerance == 1e-12),
            "tolerance",
        ),
        all_ok("lemma 1, 2", &exact),
        check(
            "lemma 5, 6, 7 at 1e-9",
            eigen.iter().all(|r| r.tolerance == 1e-9),
            "tolerance",
        ),
        all_ok("lemma 5, 6, 7", &eigen),
        all_ok("corollary 1", &pick(&["corollary1"])),
        all_ok("corollary 2", &pick(&["corollary2"])),
        within("runtime", start, Duration::from_secs(120)),
    ]
}

fn criterion4() -> Vec<Check> {
    let excess: Vec<(f64, f64)> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let r = random::random_size(seed, 2, 50);
            let (x, c_small, c_big) = random::shrink_pair(seed, r);
            let shrink = spectral_norm(&build_b(&x, &c_small).unwrap()).unwrap()
                - spectral_norm(&build_b(&x, &c_big).unwrap()).unwrap();
            let (spread, x0, c) = random::spread_pair(seed, r);
            let spread = spectral_norm(&build_b(&spread, &c).unwrap()).unwrap()
                - spectral_norm(&build_b(&x0, &c).unwrap()).unwrap();
            (shrink, spread)
        })
        .collect();
    let shrink = excess.iter().map(|e| e.0).fold(f64::NEG_INFINITY, f64::max);
    let spread = excess.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
    vec![
        check("weight shrink", shrink <= 1e-10, format!("max ‖B‖−‖B'‖ = {shrink:.3e}")),
        check("node spread", spread <= 1e-10, format!("max ‖B‖−‖B'‖ = {spread:.3e}")),
    ]
}

fn criterion5() -> Vec<Check> {
    let rows: Vec<(f64, f64, bool)> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let r = random::random_size(seed, 2, 50);
            let (x, _) = random::random_instance(seed, r);
            let gaps = min_gaps(&x).unwrap();
            let norm_a = spectral_norm(&build_a(&x).unwrap()).unwrap();
            let c = WeightVector::new(gaps.per_node.iter().map(|d| d.sqrt()).collect()).unwrap();
            let norm_b = spectral_norm(&build_b(&x, &c).unwrap()).unwrap();
            (norm_a - PI / gaps.delta, norm_b - 1.5 * PI, norm_b <= PI + 1e-10)
        })
        .collect();
    let a = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let b = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let probe = rows.iter().filter(|r| r.2).count();
    vec![
        check("‖A‖ ≤ π/δ", a <= 1e-10, format!("max excess {a:.3e}")),
        check("‖B(x, √δ_n)‖ ≤ 3π/2", b <= 1e-10, format!("max excess {b:.3e}")),
        check("probe ‖B‖ ≤ π (recorded)", true, format!("{probe}/100 instances")),
    ]
}

fn criterion6() -> Vec<Check> {
    let rs: Vec<usize> = (2..=2000).collect();
    let rows = gap_sweep(&rs).unwrap();
    let odd: Vec<ResidualReport> = lower_bound_reports(&rows)
        .into_iter()
        .filter(|r| r.r <= 501)
        .collect();
    let mut out = vec![
        check("S = 1..250 covered", odd.len() == 250, format!("{} sizes", odd.len())),
        all_ok("π − ‖T_{2S+1}‖ > 3/(π(S+1))", &odd),
        all_ok("π − ‖T_R‖ > π/(2R), R = 2..2000", &half_over_r_reports(&rows)),
    ];
    let positive = rows.iter().all(|r| r.gap > 0.0);
    out.push(check("gaps positive", positive, ""));
    out
}

fn criterion7() -> Vec<Check> {
    let mut out = Vec::new();
    for r in [100usize, 1000] {
        let c = build_witness(r).unwrap();
        out.push(check(
            &format!("R={r}: ε ≤ bound"),
            (0.0..=c.epsilon_bound).contains(&c.epsilon),
            format!("ε={:.3e} bound={:.3e}", c.epsilon, c.epsilon_bound),
        ));
        out.push(check(
            &format!("R={r}: rayleigh ≤ ‖T_R‖"),
            c.rayleigh <= c.norm + 1e-10,
            format!("{:.12} ≤ {:.12}", c.rayleigh, c.norm),
        ));
        let bound = PI * std::f64::consts::E * (r as f64).ln() / r as f64
            + 2.0 * PI * std::f64::consts::E.powi(3) / r as f64;
        out.push(check(
            &format!("R={r}: π − rayleigh ≤ πe log R/R + 2πe³/R"),
            PI - c.rayleigh <= bound,
            format!("{:.6e} ≤ {:.6e}", PI - c.rayleigh, bound),
        ));
        out.push(all_ok(&format!("R={r}: certificate"), &c.reports()));
    }
    let grid = lemma8_grid(64, 16).unwrap();
    out.push(check("lemma 8 grid size", grid.len() == 63 * 16, format!("{}", grid.len())));
    out.push(all_ok("lemma 8, M ≤ 64, N ≤ 16", &grid));
    out
}

fn criterion8() -> Vec<Check> {
    let r = 200;
    let row = gs_rate_check(&SymbolSeries::cosine(), &[r]).unwrap()[0];
    let c = build_toeplitz(&SymbolSeries::cosine(), r).unwrap().to_sym().unwrap();
    let norm = spectral_norm(&c).unwrap();
    let closed_gap = 2.0 - 2.0 * (PI / (r as f64 + 1.0)).cos();
    let closed_ratio = closed_gap * 2.0 * (r * r) as f64 / (PI * PI * 2.0);
    vec![
        check(
            "ratio in [0.9, 1.1]",
            (0.9..=1.1).contains(&row.ratio),
            format!("{:.6}", row.ratio),
        ),
        check(
            "gap matches 2 − 2cos(π/(R+1))",
            ((2.0 - norm) - closed_gap).abs() <= 1e-12 && (row.ratio - closed_ratio).abs() <= 1e-8,
            format!("{:.6e} vs {closed_gap:.6e}", 2.0 - norm),
        ),
    ]
}

fn criterion9() -> Vec<Check> {
    let r = 16;
    let mut rng = random::rng(9);
    let symbols = [
        ("constant", SymbolSeries::constant(1.0)),
        ("cosine", SymbolSeries::cosine()),
        ("hilbert", SymbolSeries::hilbert(r)),
    ];
    let mut out = Vec::new();
    for (name, s) in symbols {
        let mut worst = 0.0f64;
        let mut worst_oracle = 0.0f64;
        for _ in 0..20 {
            let mut u: Vec<Complex64> = (0..r)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let nrm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            u.iter_mut().for_each(|z| *z /= nrm);
            let q = quadratic_form(&s, &u).unwrap();
            worst = worst.max(q.discrepancy());
            // Independent integral: composite Gauss–Legendre on the closed form.
            let phi = TrigPolynomial::new(u.clone());
            let part = |re: bool| {
                integrate(
                    |x| {
                        let f = symbol_eval(&s, x).unwrap() * phi.eval(x).norm_sqr();
                        if re {
                            f.re
                        } else {
                            f.im
                        }
                    },
                    0.0,
                    2.0 * PI,
                    32,
                    24,
                )
            };
            let oracle = Complex64::new(part(true), part(false));
            worst_oracle = worst_oracle.max((q.matrix_side - oracle).norm());
        }
        out.push(check(
            &format!("{name}: |u*Cu − ∫f|φ|²| ≤ 1e-8"),
            worst <= 1e-8 && worst_oracle <= 1e-8,
            format!("identity {worst:.3e}, quadrature oracle {worst_oracle:.3e}"),
        ));
    }
    out
}

fn criterion10() -> Vec<Check> {
    let dir = tempfile::tempdir().unwrap();
    let mut out = Vec::new();

    let rows = gap_sweep(&figure1_grid(FIGURE1_R_MAX)).unwrap();
    let path = dir.path().join("figure1.csv");
    write_figure1_csv(&rows, std::fs::File::create(&path).unwrap()).unwrap();
    let csv = std::fs::read_to_string(&path).unwrap();
    let parsed: Vec<(usize, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    let last_r = parsed.last().map(|p| p.0).unwrap_or(0);
    let positive = parsed.iter().all(|p| p.1 > 0.0);
    let tail: Vec<f64> = parsed.iter().filter(|p| p.0 >= 100).map(|p| p.1).collect();
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let step = parsed
        .windows(2)
        .filter(|w| w[0].0 >= 100)
        .map(|w| (w[1].1 / w[0].1 - 1.0).abs())
        .fold(0.0, f64::max);
    out.push(check(
        "figure1: R up to 10000, positive, slowly varying",
        csv.starts_with("R,norm,gap,rescaled_gap\n")
            && last_r == FIGURE1_R_MAX
            && positive
            && hi / lo <= 1.5
            && step <= 0.02,
        format!("{} rows, R≥100 range [{lo:.4}, {hi:.4}], max step {step:.2e}", parsed.len()),
    ));

    let profile = figure2_profile(FIGURE2_S).unwrap();
    let path = dir.path().join("figure2.csv");
    write_figure2_csv(&profile, std::fs::File::create(&path).unwrap()).unwrap();
    let csv = std::fs::read_to_string(&path).unwrap();
    let amp: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let s = FIGURE2_S;
    let right_increasing = amp[s..].windows(2).all(|w| w[0] < w[1]);
    let left_increasing = amp[..=s].windows(2).all(|w| w[0] > w[1]);
    out.push(check(
        "figure2: centre-minimal profile at S=1000",
        amp.len() == 2 * s + 1 && right_increasing && left_increasing,
        format!(
            "|u_0|={:.4e} |u_±S|=({:.4e}, {:.4e})",
            amp[s],
            amp[0],
            amp[2 * s]
        ),
    ));

    let sym: Vec<ResidualReport> = (0..=50usize)
        .into_par_iter()
        .map(|s| check_t_eigvec_symmetry(s).unwrap())
        .collect();
    out.push(all_ok("u_{-n} = −conj(u_n), R ≤ 101", &sym));

    let rs: Vec<usize> = (1..=HANKEL_R_MAX).collect();
    let hankel = hankel_sweep(&rs).unwrap();
    out.push(all_ok("H_R: decreasing gap, ‖H_R‖ < π, ‖H_R‖ ≤ ‖T_{2R+1}‖", &hankel_reports(&hankel)));
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form spectra", criterion1),
        ("determinant oracles", criterion2),
        ("identity suites", criterion3),
        ("monotonicity under dominance", criterion4),
        ("Montgomery–Vaughan bounds", criterion5),
        ("Hilbert gap lower bounds", criterion6),
        ("witness certificate and Lemma 8", criterion7),
        ("Grenander–Szegő rate", criterion8),
        ("Toeplitz quadratic form", criterion9),
        ("figure reproductions", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let ok = checks.iter().all(|c| c.ok);
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.1?})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            start.elapsed()
        );
        for c in &checks {
            println!("    [{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.label, c.detail);
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
