use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sumsq_core::arith::EffortBudget;
use sumsq_core::classifier::{chart, Classifier};
use sumsq_core::two_squares::sieve_count;
use sumsq_core::ExecMode;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn chart_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("chart_50x19");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            // fresh caches each run
            b.iter(|| {
                let cl = Classifier::with_mode(EffortBudget::default(), mode);
                black_box(chart(&cl, 50, 19).unwrap())
            })
        });
    }
    group.finish();
}

fn density_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve_count_1e6");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| black_box(sieve_count(1_000_000, mode)))
        });
    }
    group.finish();
}

criterion_group!(benches, chart_sweep, density_sweep);
criterion_main!(benches);
