use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entvar_core::montecarlo::{sample_binomial, sample_multinomial, TrialStream};
use entvar_core::ProbabilityDistribution;
use std::hint::black_box;

fn bench_binomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("binomial");
    for (n, p) in [(50u64, 0.05), (1_000, 0.3), (1_000_000, 0.2)] {
        let mut rng = TrialStream::new(7, 0, 0);
        group.bench_function(BenchmarkId::from_parameter(format!("{n}x{p}")), |b| {
            b.iter(|| sample_binomial(&mut rng, black_box(n), black_box(p)))
        });
    }
    group.finish();
}

fn bench_multinomial(c: &mut Criterion) {
    let dist = ProbabilityDistribution::arithmetic(5).unwrap();
    let mut group = c.benchmark_group("multinomial_m5");
    for n in [100u64, 10_000, 1_000_000] {
        let mut rng = TrialStream::new(7, 1, 0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sample_multinomial(&dist, black_box(n), &mut rng).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_binomial, bench_multinomial);
criterion_main!(benches);
