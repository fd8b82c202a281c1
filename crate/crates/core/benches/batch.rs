use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtg_core::batch::{generate_all, is_parallel, rewrite_all, rewrite_all_sequential};

fn bench_rewrite(c: &mut Criterion) {
    let mut group = c.benchmark_group("rewrite_batch");
    group.sample_size(10);
    for n in [16usize, 32] {
        let seeds: Vec<u64> = (0..16).collect();
        let inputs: Vec<_> = generate_all(n, 2 * n, 3, &seeds)
            .into_iter()
            .map(|g| g.expect("generator succeeds"))
            .collect();
        group.bench_with_input(BenchmarkId::new("sequential", n), &inputs, |b, inputs| {
            b.iter(|| rewrite_all_sequential(black_box(inputs), 3))
        });
        let label = if is_parallel() { "parallel" } else { "batch_no_rayon" };
        group.bench_with_input(BenchmarkId::new(label, n), &inputs, |b, inputs| {
            b.iter(|| rewrite_all(black_box(inputs), 3))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rewrite);
criterion_main!(benches);
