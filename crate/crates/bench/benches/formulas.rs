use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cuspdim::analysis::scan_values;
use cuspdim::{factorize, weight_coeffs, DimensionEngine, Family, OracleTable, Group, Registry};
use cuspdim_bench::SAMPLE_LEVELS;

fn single_level(c: &mut Criterion) {
    let engine = DimensionEngine::standard();
    let w = weight_coeffs(2).unwrap();
    let mut g = c.benchmark_group("dimension");
    for n in SAMPLE_LEVELS {
        let f = factorize(n).unwrap();
        for family in [Family::G0Plus, Family::G1Star] {
            g.bench_with_input(BenchmarkId::new(family.name(), n), &f, |b, f| {
                b.iter(|| engine.dimension_factored(family, black_box(f), &w).unwrap())
            });
        }
    }
    g.finish();
}

fn convolution(c: &mut Criterion) {
    let reg = Registry::standard();
    let conv = reg.get("n2_s1").unwrap().convolve(reg.get("lambda").unwrap());
    c.bench_function("convolve n2_s1*lambda at 720720", |b| b.iter(|| conv.eval(black_box(720_720)).unwrap()));
}

fn scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("g0plus k=2 N<=132000", |b| b.iter(|| scan_values(Family::G0Plus, 2, 132_000).unwrap()));
    g.bench_function("oracle gamma0 k=2 N<=5000", |b| {
        b.iter(|| OracleTable::filled(Group::Gamma0, 2, 5_000).unwrap())
    });
    g.finish();
}

criterion_group!(benches, single_level, convolution, scans);
criterion_main!(benches);
