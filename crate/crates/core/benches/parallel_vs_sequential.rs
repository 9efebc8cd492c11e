use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use markov_core::cycles::last_digit_frequency_with;
use markov_core::pell::solve_pell_brute_with;
use markov_core::{Budget, ExecMode};

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn pell_brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("pell_brute");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 7561), &mode, |b, &mode| {
            b.iter(|| solve_pell_brute_with(7561, 500_000_000, mode).unwrap())
        });
    }
    group.finish();
}

fn frequency(c: &mut Criterion) {
    let mut group = c.benchmark_group("last_digit_frequency");
    group.sample_size(10);
    let budget = Budget::default();
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 18), &mode, |b, &mode| {
            b.iter(|| last_digit_frequency_with(18, 2, &budget, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pell_brute, frequency);
criterion_main!(benches);
