use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use eolab_bench::program;
use eolab_core::oracle::brute_force_witness;
use eolab_core::poset::{all_patterns, max_chain, sample_antichain, PatternPoset};
use eolab_core::search::{search_eo_witness, search_uniform_witness, SearchBudget};
use eolab_core::vm::dovetail;
use eolab_core::{eo_leq, inversions};

fn relations(c: &mut Criterion) {
    let patterns = all_patterns(6).unwrap();
    c.bench_function("eo_leq all pairs n=6", |b| {
        b.iter(|| {
            let mut related = 0u32;
            for p in &patterns {
                for q in &patterns {
                    related += eo_leq(black_box(p), black_box(q)).unwrap() as u32;
                }
            }
            related
        })
    });
    c.bench_function("inversions n=6", |b| {
        b.iter(|| {
            patterns
                .iter()
                .map(|p| inversions(black_box(p)).len())
                .sum::<usize>()
        })
    });
}

fn poset(c: &mut Criterion) {
    let mut group = c.benchmark_group("poset build");
    group.sample_size(10);
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| PatternPoset::build(n).unwrap())
        });
    }
    group.finish();
    c.bench_function("max_chain n=8", |b| {
        b.iter(|| max_chain(black_box(8)).unwrap())
    });
    c.bench_function("sample_antichain n=4 size=3", |b| {
        b.iter(|| sample_antichain(black_box(4), 3).unwrap())
    });
}

fn vm_and_search(c: &mut Criterion) {
    let (odds, countdown, staggered, zigzag) = (
        program("odds_fast"),
        program("countdown"),
        program("staggered"),
        program("zigzag"),
    );
    c.bench_function("dovetail odds_fast k=60", |b| {
        b.iter(|| dovetail(&odds, black_box(60), 1000).unwrap())
    });

    let mut group = c.benchmark_group("search");
    for (k, w) in [(6, 2), (6, 3), (8, 3)] {
        let budget = SearchBudget::new(k, w, 10_000_000, 1000).unwrap();
        group.bench_with_input(
            BenchmarkId::new("eo staggered/zigzag", format!("k{k}w{w}")),
            &budget,
            |b, budget| b.iter(|| search_eo_witness(&staggered, &zigzag, budget).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("uniform countdown/zigzag", format!("k{k}w{w}")),
            &budget,
            |b, budget| b.iter(|| search_uniform_witness(&countdown, &zigzag, budget).unwrap()),
        );
    }
    group.finish();

    let mut group = c.benchmark_group("brute force");
    group.sample_size(10);
    group.bench_function("countdown/zigzag k=6 w=3", |b| {
        b.iter(|| {
            brute_force_witness(
                &countdown,
                &zigzag,
                6,
                3,
                eolab_core::Relation::Uniform,
                1000,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, relations, poset, vm_and_search);
criterion_main!(benches);
