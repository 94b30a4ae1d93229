mod common;

use hadsec_core::classify::partition_count;
use hadsec_core::{
    enumerate_check_rvectors, eta_hadamard, eta_secant, hadamard_dimension, normalize,
    random_torus_points, secant_dimension, DimConfig, HadamardSpec, PrimeField, VarietyDescriptor,
    DEFAULT_PRIME,
};
use proptest::prelude::*;

/// Small descriptors: Veronese, Segre and Segre–Veronese with `N <= 35`.
fn small_descriptor() -> impl Strategy<Value = VarietyDescriptor> {
    prop_oneof![
        (2u32..=4, 1u32..=3).prop_map(|(d, n)| VarietyDescriptor::veronese(d, n).unwrap()),
        (1u32..=8).prop_map(|k| VarietyDescriptor::rnc(k).unwrap()),
        prop::collection::vec(1u32..=2, 2..=4).prop_map(|n| VarietyDescriptor::segre(&n).unwrap()),
        (prop::collection::vec(1u32..=3, 2..=3), 1u32..=2).prop_map(|(d, n)| {
            let n = vec![n; d.len()];
            VarietyDescriptor::segre_veronese(&d, &n).unwrap()
        }),
    ]
    .prop_filter("ambient dimension at most 35", |v| v.ambient_dim() <= 35)
}

fn r_vector() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 1..=3)
}

fn cfg() -> DimConfig {
    DimConfig {
        trials: 3,
        seed: 0,
        ..DimConfig::default()
    }
}

fn dim(desc: &VarietyDescriptor, r: &[usize]) -> usize {
    let spec = HadamardSpec::new(r.to_vec()).unwrap();
    hadamard_dimension(desc, &spec, &cfg())
        .unwrap()
        .computed_dim
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn chain_inequality(desc in small_descriptor(), r in r_vector()) {
        let spec = HadamardSpec::new(r).unwrap();
        let rep = hadamard_dimension(&desc, &spec, &cfg()).unwrap();
        prop_assert!(rep.chain_holds(), "{:?}", rep);
        prop_assert!(rep.computed_dim >= desc.dim());
    }

    #[test]
    fn permutation_invariance(desc in small_descriptor(), r in r_vector(), rot in 0usize..3) {
        let mut p = r.clone();
        let len = p.len();
        p.rotate_left(rot % len);
        p.reverse();
        let a = HadamardSpec::new(r).unwrap();
        let b = HadamardSpec::new(p).unwrap();
        prop_assert_eq!(a.big_r(), b.big_r());
        prop_assert_eq!(dim(&desc, a.r()), dim(&desc, b.r()));
    }

    #[test]
    fn monotone_in_r_and_m(desc in small_descriptor(), r in r_vector(), k in 0usize..3) {
        let base = dim(&desc, &r);
        let mut bigger = r.clone();
        let k = k % bigger.len();
        bigger[k] += 1;
        prop_assert!(dim(&desc, &bigger) >= base);
        let mut longer = r.clone();
        longer.push(1);
        prop_assert!(dim(&desc, &longer) >= base);
    }

    #[test]
    fn normalize_idempotent(desc in small_descriptor()) {
        let once = normalize(desc.matrix()).unwrap();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(normalize(&once).unwrap(), once);
    }

    #[test]
    fn sequential_matches_parallel(desc in small_descriptor(), r in r_vector()) {
        let spec = HadamardSpec::new(r).unwrap();
        let par = hadamard_dimension(&desc, &spec, &cfg()).unwrap();
        let seq = hadamard_dimension(&desc, &spec, &cfg().sequential()).unwrap();
        prop_assert_eq!(par, seq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn single_factor_matches_secant(desc in small_descriptor(), r in 1usize..=5) {
        let spec = HadamardSpec::new(vec![r]).unwrap();
        let had = hadamard_dimension(&desc, &spec, &cfg()).unwrap();
        let sec = secant_dimension(&desc, r, &cfg()).unwrap();
        prop_assert_eq!(had.computed_dim, sec.computed_dim);
        prop_assert_eq!(had.expected_dim_r, sec.expected_dim);
    }

    #[test]
    fn single_factor_eta_coincides(desc in small_descriptor(), r in 1usize..=6, seed in 0u64..1000) {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let a = desc.matrix();
        let y = random_torus_points(a.nrows(), r, seed, &f);
        let spec = HadamardSpec::new(vec![r]).unwrap();
        prop_assert_eq!(eta_hadamard(&f, a, &spec, &y).unwrap(), eta_secant(&f, a, &y).unwrap());
    }

    #[test]
    fn lower_bound_monotone_in_big_r(desc in small_descriptor(), r in 1usize..=5) {
        let a = secant_dimension(&desc, r, &cfg()).unwrap().computed_dim;
        let b = secant_dimension(&desc, r + 1, &cfg()).unwrap().computed_dim;
        prop_assert!(b >= a);
    }
}

#[test]
fn partition_counts() {
    for (big_r, want) in [(3, 1), (5, 4), (7, 10), (9, 21), (14, 100)] {
        assert_eq!(enumerate_check_rvectors(big_r).len(), want);
    }
    for big_r in 2..=18 {
        let vs = enumerate_check_rvectors(big_r);
        assert_eq!(vs.len() as u64, common::partitions(big_r - 1) - 1);
        assert_eq!(partition_count(big_r - 1), common::partitions(big_r - 1));
        for v in &vs {
            assert!(v.len() >= 2 && v.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(v.iter().map(|x| x - 1).sum::<usize>() + 1, big_r);
        }
    }
}
