mod common;

use proptest::prelude::*;
use rand::Rng;
use receptron::domains::verify_equivalence_with;
use receptron::{
    build_selective_receptron, domain_contains, heaviside, rect_eval, selective_receptron, violation_count,
    BoxSampler, Exec, HyperRectDomain, RectPredicate,
};

#[test]
fn random_domains_in_one_to_eight_dimensions() {
    let mut rng = common::rng(2024);
    let mut total = 0;
    for case in 0..120u64 {
        let n = 1 + (case as usize % 8);
        let d = common::random_domain(&mut rng, n);
        let sampler = BoxSampler::new(d.padded_bounds(), case);
        let report = verify_equivalence_with(&d, &sampler, 1000, Exec::default());
        assert!(report.is_clean(), "case {case}: {report:?}");
        total += report.tested;
    }
    assert!(total >= 100_000);
}

/// Grid sweep with cell centers that include exact boundary hits, which the
/// unit must classify the same way as the oracle (outside).
#[test]
fn exhaustive_grids_including_boundaries() {
    let d1 = HyperRectDomain::new(&[0.5], &[1.0]).unwrap();
    let d2 = HyperRectDomain::new(&[0.5, -1.0], &[1.0, 2.0]).unwrap();
    let d3 = HyperRectDomain::new(&[0.25, 0.0, 1.0], &[0.5, 1.0, 2.0]).unwrap();
    let steps: Vec<f64> = (-64..=64).map(|k| k as f64 / 16.0).collect();
    for d in [&d1, &d2, &d3] {
        let unit = selective_receptron(d);
        let n = d.arity();
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<f64> = idx.iter().map(|&i| steps[i]).collect();
            assert_eq!(unit.activate(&x).unwrap(), domain_contains(d, &x).unwrap(), "{x:?}");
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < steps.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
}

#[test]
fn threshold_invariance() {
    let mut rng = common::rng(77);
    for _ in 0..20 {
        let d = common::random_domain(&mut rng, 3);
        let reference = selective_receptron(&d);
        let sampler = BoxSampler::new(d.padded_bounds(), 5);
        for _ in 0..10 {
            let t = rng.random_range(f64::MIN_POSITIVE..1.0);
            let t_low = -rng.random_range(1e-9..100.0);
            let unit = build_selective_receptron(&d, t, t_low).unwrap();
            for i in 0..1000 {
                let x = sampler.point(i, |x| d.on_boundary(x));
                assert_eq!(unit.activate(&x).unwrap(), reference.activate(&x).unwrap());
            }
        }
    }
}

/// Direct enumeration of f-assignments, independent of the domain code:
/// N = sum(1 - f), D = N + prod(f).
#[test]
fn ratio_is_a_step_and_normalizer_is_positive() {
    for n in 1..=12u32 {
        for mask in 0u32..1 << n {
            let f: Vec<u32> = (0..n).map(|i| mask >> i & 1).collect();
            let big_n: u32 = f.iter().map(|&v| 1 - v).sum();
            let big_d = big_n + f.iter().product::<u32>();
            assert!(big_d >= 1);
            let ratio = f64::from(big_n) / f64::from(big_d);
            assert_eq!(ratio, f64::from(u8::from(heaviside(f64::from(big_n) - 0.5).unwrap())));
        }
    }
}

#[test]
fn violation_count_matches_axis_enumeration() {
    let d = HyperRectDomain::cube(&[0.0; 4], 2.0).unwrap();
    for mask in 0u32..16 {
        // axis i outside iff bit i set
        let x: Vec<f64> = (0..4).map(|i| if mask >> i & 1 == 1 { 5.0 } else { 0.0 }).collect();
        let n = mask.count_ones();
        assert_eq!(violation_count(&d, &x).unwrap(), (n, n + u32::from(n == 0)));
    }
}

proptest! {
    #[test]
    fn rect_is_symmetric_about_its_center(
        c in -1000i32..1000,
        w in 1u32..4096,
        delta in -8192i32..8192,
    ) {
        // dyadic values keep c +- delta exact
        let (c, w, delta) = (f64::from(c) / 64.0, f64::from(w) / 64.0, f64::from(delta) / 64.0);
        let p = RectPredicate::new(c, w).unwrap();
        prop_assert_eq!(rect_eval(&p, c + delta).unwrap(), rect_eval(&p, c - delta).unwrap());
    }

    #[test]
    fn shrinking_widths_never_adds_members(
        seed in any::<u64>(),
        n in 1usize..6,
        shrink in 0.01f64..1.0,
    ) {
        let mut rng = common::rng(seed);
        let d = common::random_domain(&mut rng, n);
        let widths: Vec<f64> = d.widths().iter().map(|w| w * shrink).collect();
        let small = HyperRectDomain::new(&d.centers(), &widths).unwrap();
        let sampler = BoxSampler::new(d.padded_bounds(), seed);
        for i in 0..200 {
            let x = sampler.point(i, |_| false);
            if !d.contains(&x).unwrap() {
                prop_assert!(!small.contains(&x).unwrap());
            }
        }
    }

    #[test]
    fn evaluation_is_pure(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d = common::random_domain(&mut rng, 3);
        let unit = selective_receptron(&d);
        let x = BoxSampler::new(d.padded_bounds(), seed).point(0, |_| false);
        prop_assert_eq!(unit.activate(&x).unwrap(), unit.activate(&x).unwrap());
    }
}
