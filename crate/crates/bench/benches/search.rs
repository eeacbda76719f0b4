use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use systole_core::systole::{search_shortest, verify_suite, SearchOptions};
use systole_core::{presets, IdealHNF};

fn search(c: &mut Criterion) {
    let k = presets::q_sqrt5();
    let seven = IdealHNF::integer(&k, 7).unwrap();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for h in [1u64, 2] {
        g.bench_function(format!("Q(sqrt5)/(7) height {h}"), |b| {
            b.iter(|| search_shortest(black_box(&seven), h, SearchOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let k = presets::q_sqrt5();
    let seven = IdealHNF::integer(&k, 7).unwrap();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("Q(sqrt5)/(7) 100 samples", |b| b.iter(|| verify_suite(black_box(&seven), 100, 0).unwrap()));
    g.finish();
}

criterion_group!(benches, search, verify);
criterion_main!(benches);
