use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use twistcond_bench::{mixed_representation, q5};
use twistcond_core::characters::enumerate_exact;
use twistcond_core::oracle::{raw_twisted_conductor, twisted_conductor_histogram, DEFAULT_LIMIT};

fn bench_histogram(c: &mut Criterion) {
    let rep = mixed_representation();
    let mut group = c.benchmark_group("twisted_conductor_histogram");
    for k in [2u64, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| twisted_conductor_histogram(black_box(&rep), k, DEFAULT_LIMIT).unwrap())
        });
    }
    group.finish();
}

fn bench_paths(c: &mut Criterion) {
    let rep = mixed_representation();
    let sphere = enumerate_exact(q5(), 3).unwrap();
    c.bench_function("formula_path_sphere_k3", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for chi in &sphere {
                acc += rep.twisted_conductor(chi).unwrap();
            }
            black_box(acc)
        })
    });
    c.bench_function("raw_oracle_path_sphere_k3", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for chi in &sphere {
                acc += raw_twisted_conductor(&rep, chi).unwrap();
            }
            black_box(acc)
        })
    });
}

criterion_group!(benches, bench_histogram, bench_paths);
criterion_main!(benches);
