use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use swplace::costmodel::{relay_expansion, sweep, CostModelParams, Scheme, Workload};

fn bench_sweep(c: &mut Criterion) {
    let sizes: Vec<u64> = (10..=20).map(|e| 1u64 << e).collect();
    let models: Vec<CostModelParams> = Scheme::ALL.iter().map(|&s| CostModelParams::default_for(s)).collect();
    let workload = Workload::default();
    c.bench_function("cost_sweep/2^10..2^20", |b| {
        b.iter(|| sweep(black_box(&sizes), &workload, &models).unwrap())
    });
}

fn bench_relays(c: &mut Criterion) {
    c.bench_function("relay_expansion/24447", |b| b.iter(|| relay_expansion(black_box(24447), 64, 64)));
}

criterion_group!(benches, bench_sweep, bench_relays);
criterion_main!(benches);
