//! Sequential (one-worker pool) against parallel (default pool) on the
//! searches the table leans on.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hgood::exact::{directed_ramsey_exact, ramsey_exact, RamseyOptions};
use hgood::hg::{clique, Color};
use hgood::search::{find_mono_copy, longest_mono_ell_path, Limits};
use hgood::table::criterion_6;
use hgood::{constructions, Pattern};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn searches(c: &mut Criterion) {
    let lim = Limits::default();
    let tl = constructions::transitive_lb(&hgood::Tournament::cyclic_triangle(), 9).unwrap();
    let k5 = clique(3, 5).unwrap();
    let g = Pattern::parse("path:3:1:5").unwrap();
    let h = clique(3, 4).unwrap();

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (mode, pool) in pools() {
        group.bench_function(BenchmarkId::new("tight_path_n12", mode), |b| {
            b.iter(|| pool.install(|| longest_mono_ell_path(black_box(&tl.coloring), 2, Color::Red, &lim).unwrap()))
        });
        group.bench_function(BenchmarkId::new("blue_k5_n12", mode), |b| {
            b.iter(|| pool.install(|| find_mono_copy(black_box(&tl.coloring), &k5, Color::Blue, &lim).unwrap()))
        });
        group.bench_function(BenchmarkId::new("ramsey_p315_k4", mode), |b| {
            b.iter(|| pool.install(|| ramsey_exact(&g, &h, 8, &RamseyOptions::default()).unwrap()))
        });
        group.bench_function(BenchmarkId::new("directed_r4", mode), |b| {
            b.iter(|| pool.install(|| directed_ramsey_exact(4, 8).unwrap()))
        });
        group.bench_function(BenchmarkId::new("engines_500", mode), |b| b.iter(|| pool.install(|| criterion_6(0).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, searches);
criterion_main!(benches);
