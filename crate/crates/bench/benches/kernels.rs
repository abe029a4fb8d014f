use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use wegner_core::model::sample_omega_stream;
use wegner_core::spectral::count_below_dense;
use wegner_core::{assemble_hamiltonian, build_circulant, wiener_inverse, AndersonConfig, CoefficientField};

fn alpha(d: usize) -> CoefficientField {
    let mut step = vec![0i64; d];
    step[0] = 1;
    CoefficientField::from_entries(d, [(vec![0; d], 1.0), (step, -0.5)]).unwrap()
}

fn wiener(c: &mut Criterion) {
    let mut group = c.benchmark_group("wiener_inverse");
    for d in [1, 2] {
        let a = alpha(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &a, |b, a| {
            b.iter(|| wiener_inverse(black_box(a), 1e-10).unwrap())
        });
    }
    group.finish();
}

fn circulant(c: &mut Criterion) {
    let mut group = c.benchmark_group("circulant_invert");
    for (d, l) in [(1, 8), (1, 64), (2, 8), (2, 16)] {
        let a = build_circulant(&alpha(d), l, 1).unwrap();
        group.bench_function(format!("d{d}_l{l}"), |b| b.iter(|| black_box(&a).invert().unwrap()));
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("inertia_count");
    for (d, l) in [(1, 10), (1, 50), (2, 5), (2, 8)] {
        let config = AndersonConfig::simple(alpha(d), l).unwrap();
        let omega = sample_omega_stream(&config.f, config.coupling_box(), 1, 0);
        let dense = assemble_hamiltonian(&config, &omega).unwrap().to_dense();
        group.bench_function(format!("d{d}_l{l}"), |b| b.iter(|| count_below_dense(black_box(&dense), 0.25)));
    }
    group.finish();
}

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_hamiltonian");
    for (d, l) in [(1, 50), (2, 8), (2, 16)] {
        let config = AndersonConfig::simple(alpha(d), l).unwrap();
        let omega = sample_omega_stream(&config.f, config.coupling_box(), 1, 0);
        group.bench_function(format!("d{d}_l{l}"), |b| {
            b.iter(|| assemble_hamiltonian(black_box(&config), black_box(&omega)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, wiener, circulant, counting, assembly);
criterion_main!(benches);
