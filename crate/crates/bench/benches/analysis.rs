use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use depnet::community::detect_communities;
use depnet::degree::{degree_histogram, fit_power_law, select_xmin};
use depnet::metrics::betweenness;
use depnet::mining::{frequent_itemsets, Transaction};
use depnet::null_models::{power_law_sample, preferential_attachment};
use depnet::{BetweennessMode, Direction};

fn power_law(c: &mut Criterion) {
    let mut group = c.benchmark_group("power_law");
    for n in [10_000usize, 50_000] {
        let s = power_law_sample(2.5, 2, n, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("fit", n), &s, |b, s| {
            b.iter(|| fit_power_law(black_box(s), 2).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("select_xmin", n), &s, |b, s| {
            b.iter(|| select_xmin(black_box(s)).unwrap())
        });
    }
    let pa = preferential_attachment(100_000, 3, 11).unwrap();
    let degrees = degree_histogram(&pa, Direction::In, None).samples();
    group.bench_function("select_xmin/pa_in_degrees", |b| {
        b.iter(|| select_xmin(black_box(&degrees)).unwrap())
    });
    group.finish();
}

fn louvain(c: &mut Criterion) {
    let mut group = c.benchmark_group("louvain");
    group.sample_size(10);
    for n in [1_000usize, 10_000] {
        let g = preferential_attachment(n, 3, 5)
            .unwrap()
            .undirected_projection();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| detect_communities(black_box(g), 0).unwrap())
        });
    }
    group.finish();
}

fn brandes(c: &mut Criterion) {
    let mut group = c.benchmark_group("brandes");
    group.sample_size(10);
    let g = preferential_attachment(2_000, 3, 6)
        .unwrap()
        .undirected_projection();
    group.bench_function("exact/2000", |b| {
        b.iter(|| betweenness(black_box(&g), BetweennessMode::Exact).unwrap())
    });
    let big = preferential_attachment(50_000, 3, 6)
        .unwrap()
        .undirected_projection();
    group.bench_function("sampled_256/50000", |b| {
        b.iter(|| {
            betweenness(
                black_box(&big),
                BetweennessMode::Sampled { k: 256, seed: 1 },
            )
            .unwrap()
        })
    });
    group.finish();
}

fn fpgrowth(c: &mut Criterion) {
    // one transaction per node: the ids it depends on
    let g = preferential_attachment(20_000, 4, 8).unwrap();
    let transactions: Vec<Transaction> = (0..g.node_count())
        .filter_map(|ix| {
            let items: BTreeSet<String> = g
                .out_edges(ix)
                .map(|(d, _)| g.entity(d).id.clone())
                .collect();
            (!items.is_empty()).then(|| Transaction {
                owner: g.entity(ix).id.clone(),
                items,
            })
        })
        .collect();
    let mut group = c.benchmark_group("fpgrowth");
    group.sample_size(10);
    for min_support in [20usize, 50] {
        group.bench_with_input(
            BenchmarkId::from_parameter(min_support),
            &min_support,
            |b, &s| b.iter(|| frequent_itemsets(black_box(&transactions), s).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, power_law, louvain, brandes, fpgrowth);
criterion_main!(benches);
