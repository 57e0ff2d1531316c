//! Law scans under sequential and rayon execution. Both modes produce the
//! same reports; only the wall time differs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fga_core::{check_law_with, find_law, Exec, RunOptions};

fn laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("law_scan");
    group.sample_size(10);
    for (id, cap) in [("oplus_assoc", 2), ("otimes_assoc", 2), ("strong_implies_weak", 3), ("core_distributes", 3)] {
        let spec = find_law(id).unwrap().universe(Some(cap));
        for exec in [Exec::Sequential, Exec::Parallel] {
            let opts = RunOptions {
                exec,
                ..RunOptions::default()
            };
            // warm the level cache outside the timed loop
            check_law_with(id, &spec, &opts).unwrap();
            group.bench_with_input(BenchmarkId::new(id, format!("{exec:?}")), &opts, |b, opts| {
                b.iter(|| check_law_with(id, &spec, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, laws);
criterion_main!(benches);
