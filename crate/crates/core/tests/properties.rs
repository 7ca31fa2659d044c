use hilbert_core::determinants::{all_sigmas, det_lu, det_matching, newton_girard, pfaffian};
use hilbert_core::spectra::default_tol;
use hilbert_core::{
    build_b, random, skew_spectrum, spectral_norm, spectral_norm_trace, NodeVector, WeightVector,
};
use proptest::prelude::*;

fn instance(seed: u64, r: usize) -> (NodeVector, WeightVector) {
    random::random_instance(seed, r)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_accounts_for_every_dimension(seed in any::<u64>(), r in 1usize..24) {
        let (x, c) = instance(seed, r);
        let b = build_b(&x, &c).unwrap();
        let dec = skew_spectrum(&b, default_tol(r)).unwrap();
        prop_assert_eq!(2 * dec.pairs.len() + dec.zero_multiplicity, r);
        prop_assert_eq!(dec.null_vectors.len(), dec.zero_multiplicity);
        if r % 2 == 1 {
            prop_assert!(dec.zero_multiplicity >= 1);
        }
        let norm = dec.norm();
        for p in &dec.pairs {
            prop_assert!(p.residual(&b) <= 1e-9 * norm.max(1.0));
            let len: f64 = p.v.iter().chain(&p.w).map(|a| a * a).sum();
            prop_assert!((len - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn frobenius_equals_twice_sum_of_squares(seed in any::<u64>(), r in 2usize..24) {
        let (x, c) = instance(seed, r);
        let b = build_b(&x, &c).unwrap();
        let dec = skew_spectrum(&b, default_tol(r)).unwrap();
        let fro = b.as_dense().frobenius().powi(2);
        let spec: f64 = dec.pairs.iter().map(|p| 2.0 * p.mu * p.mu).sum();
        prop_assert!(rel(fro, spec) <= 1e-11, "{} vs {}", fro, spec);
    }

    #[test]
    fn norm_scales_with_nodes_and_weights(
        seed in any::<u64>(),
        r in 2usize..20,
        t in 0.25f64..4.0,
        s in 0.25f64..4.0,
    ) {
        let (x, c) = instance(seed, r);
        let base = spectral_norm(&build_b(&x, &c).unwrap()).unwrap();
        let xt = x.scaled(t).unwrap();
        let stretched = spectral_norm(&build_b(&xt, &c).unwrap()).unwrap();
        prop_assert!(rel(stretched * t, base) <= 1e-10);
        let cs = WeightVector::new(c.values().iter().map(|v| v * s).collect()).unwrap();
        let heavier = spectral_norm(&build_b(&x, &cs).unwrap()).unwrap();
        prop_assert!(rel(heavier, s * s * base) <= 1e-10);
    }

    #[test]
    fn norm_invariant_under_translation(seed in any::<u64>(), r in 2usize..20, a in -5.0f64..5.0) {
        let (x, c) = instance(seed, r);
        let base = spectral_norm(&build_b(&x, &c).unwrap()).unwrap();
        let shifted = NodeVector::new(x.values().iter().map(|v| v + a).collect()).unwrap();
        let moved = spectral_norm(&build_b(&shifted, &c).unwrap()).unwrap();
        prop_assert!(rel(base, moved) <= 1e-9);
    }

    #[test]
    fn trace_estimate_brackets_the_norm(seed in any::<u64>(), r in 2usize..20, k in 1u32..6) {
        let (x, c) = instance(seed, r);
        let b = build_b(&x, &c).unwrap();
        let norm = spectral_norm(&b).unwrap();
        let est = spectral_norm_trace(&b, k).unwrap();
        prop_assert!(est >= norm * (1.0 - 1e-12));
        prop_assert!(est <= norm * (r as f64).powf(1.0 / (2.0 * k as f64)) * (1.0 + 1e-12));
    }

    #[test]
    fn determinant_routes_agree(seed in any::<u64>(), half in 1usize..6, s in 0.5f64..2.0) {
        let r = 2 * half;
        let (x, c) = instance(seed, r);
        let b = build_b(&x, &c).unwrap();
        let dm = det_matching(&b).unwrap();
        let dl = det_lu(b.as_dense());
        let pf = pfaffian(&b).unwrap();
        prop_assert!((dm - dl).abs() <= 1e-10 * dl.abs().max(1.0));
        prop_assert!((pf * pf - dm).abs() <= 1e-10 * dm.abs().max(1.0));
        // Every matching uses each weight once: det scales as s^{2R}.
        let cs = WeightVector::new(c.values().iter().map(|v| v * s).collect()).unwrap();
        let scaled = det_matching(&build_b(&x, &cs).unwrap()).unwrap();
        prop_assert!(rel(scaled, dm * s.powi(2 * r as i32)) <= 1e-11);
    }

    #[test]
    fn odd_determinant_is_zero(seed in any::<u64>(), half in 0usize..6) {
        let (x, c) = instance(seed, 2 * half + 1);
        prop_assert_eq!(det_matching(&build_b(&x, &c).unwrap()).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Power sums of the spectrum `{±iμ}` against Newton–Girard applied to
    /// principal-minor sums: `s_{2k} = 2(−1)^k Σ μ^{2k}`, odd sums vanish.
    #[test]
    fn power_sums_from_minors(seed in any::<u64>(), r in 2usize..9) {
        let (x, c) = instance(seed, r);
        let b = build_b(&x, &c).unwrap();
        let dec = skew_spectrum(&b, default_tol(r)).unwrap();
        let s = newton_girard(&all_sigmas(&b).unwrap(), 2 * r);
        let top = dec.norm().max(1.0);
        for (idx, sl) in s.iter().enumerate() {
            let l = idx + 1;
            let scale = top.powi(l as i32) * r as f64;
            if l % 2 == 1 {
                prop_assert!(sl.abs() <= 1e-9 * scale, "s_{} = {}", l, sl);
            } else {
                let k = l / 2;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let want: f64 = dec.pairs.iter().map(|p| 2.0 * sign * p.mu.powi(l as i32)).sum();
                prop_assert!((sl - want).abs() <= 1e-9 * scale, "s_{}: {} vs {}", l, sl, want);
            }
        }
    }
}
