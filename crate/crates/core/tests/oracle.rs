//! Library dimensions against the independent Jacobian oracle.

mod common;

use common::{hadamard_dim, secant_dim, sv_columns};
use hadsec_core::{
    generic_hrank, hadamard_dimension, secant_dimension, DimConfig, HadamardSpec, VarietyDescriptor,
};

fn sv(d: &[u32], n: &[u32]) -> (VarietyDescriptor, Vec<Vec<u32>>) {
    (
        VarietyDescriptor::segre_veronese(d, n).unwrap(),
        sv_columns(d, n),
    )
}

fn had(desc: &VarietyDescriptor, r: &[usize]) -> usize {
    let spec = HadamardSpec::new(r.to_vec()).unwrap();
    hadamard_dimension(desc, &spec, &DimConfig::default())
        .unwrap()
        .computed_dim
}

#[test]
fn oracle_columns_match_embedding_size() {
    for (d, n) in [
        (vec![4], vec![2]),
        (vec![2, 2, 2], vec![1, 1, 1]),
        (vec![3, 1], vec![2, 3]),
    ] {
        let (desc, cols) = sv(&d, &n);
        assert_eq!(cols.len(), desc.ambient_dim() + 1);
    }
}

#[test]
fn defective_quartic_secant() {
    let (desc, cols) = sv(&[4], &[2]);
    let ours = secant_dimension(&desc, 5, &DimConfig::default()).unwrap();
    assert_eq!(secant_dim(&cols, 5, 1), 13);
    assert_eq!(ours.computed_dim, 13);
    assert!(ours.defect_flag);
}

#[test]
fn running_example() {
    let (desc, cols) = sv(&[8], &[1]);
    assert_eq!(hadamard_dim(&cols, &[2, 3], 2, 2), 7);
    assert_eq!(had(&desc, &[2, 3]), 7);
}

#[test]
fn hypersurfaces() {
    let (segre, cols) = sv(&[1, 1, 1, 1], &[1, 1, 1, 1]);
    assert_eq!(hadamard_dim(&cols, &[2, 2], 3, 2), 14);
    assert_eq!(had(&segre, &[2, 2]), 14);
    let (v61, cols) = sv(&[6], &[1]);
    assert_eq!(hadamard_dim(&cols, &[2, 2], 4, 2), 5);
    assert_eq!(had(&v61, &[2, 2]), 5);
}

#[test]
fn generic_hrank_values() {
    let cfg = DimConfig::default();
    for (d, n, want) in [
        (vec![3], vec![2], 3),
        (vec![1, 1, 1, 1], vec![1, 1, 1, 1], 3),
    ] {
        let (desc, cols) = sv(&d, &n);
        let big_n = cols.len() - 1;
        assert!(hadamard_dim(&cols, &vec![2; want - 1], 5, 2) < big_n);
        assert_eq!(hadamard_dim(&cols, &vec![2; want], 5, 2), big_n);
        let rep = generic_hrank(&desc, 2, &cfg, 3).unwrap();
        assert_eq!(rep.found_m(), Some(want));
        assert_eq!(rep.expected_m, Some(want));
    }
}

#[test]
fn library_agrees_with_oracle_on_assorted_cases() {
    let cases: Vec<(Vec<u32>, Vec<u32>, Vec<usize>)> = vec![
        (vec![2], vec![2], vec![2, 2]),
        (vec![2], vec![3], vec![2, 2]),
        (vec![2], vec![3], vec![3, 2]),
        (vec![2], vec![4], vec![3, 3]),
        (vec![3], vec![2], vec![2, 2]),
        (vec![3], vec![3], vec![2, 2, 2]),
        (vec![4], vec![2], vec![3, 2]),
        (vec![4], vec![2], vec![2, 2, 2]),
        (vec![5], vec![1], vec![2, 2]),
        (vec![1, 1], vec![1, 2], vec![2, 2]),
        (vec![1, 1, 1], vec![1, 1, 1], vec![2, 2]),
        (vec![2, 1], vec![1, 1], vec![2, 2]),
        (vec![2, 2], vec![1, 1], vec![2, 3]),
        (vec![2, 2, 2], vec![1, 1, 1], vec![4, 3]),
        (vec![1, 1, 2], vec![1, 1, 1], vec![2, 2]),
    ];
    for (i, (d, n, r)) in cases.into_iter().enumerate() {
        let (desc, cols) = sv(&d, &n);
        let want = hadamard_dim(&cols, &r, 100 + i as u64, 2);
        assert_eq!(had(&desc, &r), want, "{} r={r:?}", desc.label());
    }
}

#[test]
fn veronese_table_sample() {
    let (desc, cols) = sv(&[4], &[2]);
    for r in [vec![2, 2, 2, 2], vec![3, 2, 2], vec![3, 3], vec![4, 2]] {
        assert_eq!(hadamard_dim(&cols, &r, 9, 2), 14, "r={r:?}");
        assert_eq!(had(&desc, &r), 14);
    }
}
