use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qna_bench::{noisy_config, reference_config};
use qna_core::market::{advance_round, init_market, simulate};

fn bench_round(c: &mut Criterion) {
    let cfg = reference_config(100);
    let state = init_market(&cfg);
    c.bench_function("market/advance_round_20", |b| {
        b.iter(|| advance_round(black_box(&state), black_box(&cfg)).unwrap())
    });

    let noisy = noisy_config(100);
    c.bench_function("market/advance_round_20_noisy", |b| {
        b.iter(|| advance_round(black_box(&state), black_box(&noisy)).unwrap())
    });
}

fn bench_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("market/simulate");
    group.sample_size(20);
    group.bench_function("deterministic_500", |b| {
        b.iter(|| simulate(black_box(&reference_config(500))).unwrap())
    });
    group.bench_function("noisy_500", |b| {
        b.iter(|| simulate(black_box(&noisy_config(500))).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_round, bench_simulation);
criterion_main!(benches);
