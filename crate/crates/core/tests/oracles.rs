use std::f64::consts::PI;

use hilbert_core::gap_experiments::{build_witness, central_coefficient, gap_sweep};
use hilbert_core::spectra::{default_tol, hilbert_toeplitz_norm, hilbert_toeplitz_top_pair};
use hilbert_core::{build_h, build_t, skew_spectrum, spectral_norm};
use num_bigint::{BigInt, BigUint};

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of `t^j` in `((1 − t^M)/(1 − t))^{2N}` by inclusion–exclusion.
fn central_by_inclusion_exclusion(m: i64, n: i64) -> BigUint {
    let j = n * (m - 1);
    let mut acc = BigInt::from(0);
    for i in 0..=2 * n {
        let rest = j - i * m;
        if rest < 0 {
            break;
        }
        let term = binomial(2 * n, i) * binomial(rest + 2 * n - 1, 2 * n - 1);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("nonnegative")
}

#[test]
fn central_coefficient_matches_inclusion_exclusion() {
    for m in 2..=40usize {
        for n in 1..=8usize {
            assert_eq!(
                central_coefficient(m, n).unwrap(),
                central_by_inclusion_exclusion(m as i64, n as i64),
                "M={m} N={n}"
            );
        }
    }
}

#[test]
fn operator_norm_matches_dense_spectrum() {
    for r in [49usize, 64, 97, 150] {
        let dense = skew_spectrum(&build_t(r).unwrap(), default_tol(r)).unwrap().norm();
        let fast = hilbert_toeplitz_norm(r).unwrap();
        assert!((dense - fast).abs() <= 1e-12, "R={r}: {dense} vs {fast}");
    }
}

#[test]
fn top_pair_from_operator_is_an_eigenvector() {
    let r = 301;
    let pair = hilbert_toeplitz_top_pair(r).unwrap();
    assert!(pair.residual(&build_t(r).unwrap()) <= 1e-10);
}

#[test]
fn sweep_matches_single_runs() {
    let rs: Vec<usize> = (40..=140).step_by(7).collect();
    let rows = gap_sweep(&rs).unwrap();
    for row in rows {
        let single = PI - hilbert_toeplitz_norm(row.r).unwrap();
        assert!((row.gap - single).abs() <= 1e-12, "R={}", row.r);
    }
}

#[test]
fn witness_certifies_for_every_size() {
    for r in 8..=300usize {
        let c = build_witness(r).unwrap();
        for rep in c.reports() {
            assert!(rep.ok(), "R={r}: {rep:?}");
        }
        // The witness never beats the true norm.
        assert!(c.rayleigh <= c.norm + 1e-12);
    }
}

#[test]
fn hankel_norm_below_toeplitz_of_double_size() {
    for r in [3usize, 17, 60] {
        let h = spectral_norm(&build_h(r).unwrap()).unwrap();
        let t = hilbert_toeplitz_norm(2 * r + 1).unwrap();
        assert!(h <= t && h < PI, "R={r}: {h} vs {t}");
    }
}
