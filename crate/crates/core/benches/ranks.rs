use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hadsec_core::tables::{run_cases, veronese_cases};
use hadsec_core::{hadamard_dimension, DimConfig, HadamardSpec, VarietyDescriptor};

fn modes() -> [(&'static str, DimConfig); 2] {
    let cfg = DimConfig::default();
    [("parallel", cfg), ("sequential", cfg.sequential())]
}

/// One dimension computation: rayon spreads the trials of each round.
fn single_case(c: &mut Criterion) {
    let mut group = c.benchmark_group("hadamard_dimension");
    let cases = [
        (
            "V(4,2) (3,3)",
            VarietyDescriptor::veronese(4, 2).unwrap(),
            vec![3, 3],
        ),
        (
            "V(4,4) (8,7)",
            VarietyDescriptor::veronese(4, 4).unwrap(),
            vec![8, 7],
        ),
        (
            "SV(2,2,2) (4,4)",
            VarietyDescriptor::segre_veronese(&[2, 2, 2], &[1, 1, 1]).unwrap(),
            vec![4, 4],
        ),
    ];
    for (label, desc, r) in &cases {
        let spec = HadamardSpec::new(r.clone()).unwrap();
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, label), &spec, |b, spec| {
                b.iter(|| hadamard_dimension(desc, spec, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

/// A slice of the Veronese check table: rayon spreads the rows.
fn table_rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("veronese_table");
    group.sample_size(10);
    let cases: Vec<_> = veronese_cases().unwrap().into_iter().take(35).collect();
    for (mode, cfg) in modes() {
        group.bench_function(mode, |b| b.iter(|| run_cases(cases.clone(), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, single_case, table_rows);
criterion_main!(benches);
