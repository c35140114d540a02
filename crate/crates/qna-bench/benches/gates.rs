use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qna_core::network::{l_net, step, NetworkState};
use qna_core::probmap::{from_quantum, step_map, step_signed, SignedMapState};

fn bench_gate_construction(c: &mut Criterion) {
    c.bench_function("gates/l_net_build", |b| {
        b.iter(|| l_net(black_box(0.6)))
    });
}

fn bench_state_update(c: &mut Criterion) {
    let op = l_net(0.6);
    let state = NetworkState::uniform();
    c.bench_function("gates/step", |b| {
        b.iter(|| step(black_box(&state), black_box(&op)).unwrap())
    });
}

fn bench_probability_maps(c: &mut Criterion) {
    let quantum = NetworkState::uniform();
    let literal = from_quantum(&quantum);
    let signed = SignedMapState::from(&quantum);
    c.bench_function("probmap/step_map", |b| {
        b.iter(|| step_map(black_box(&literal), black_box(0.6)).unwrap())
    });
    c.bench_function("probmap/step_signed", |b| {
        b.iter(|| step_signed(black_box(&signed), black_box(0.6)))
    });
}

criterion_group!(
    benches,
    bench_gate_construction,
    bench_state_update,
    bench_probability_maps
);
criterion_main!(benches);
