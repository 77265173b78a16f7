use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use nestmaps_bench::{field, incidence, label, MATCH_CONFIGS};
use nestmaps_core::chern::{smoothness_certificate, verify_theta_identities};
use nestmaps_core::grassmann::incidence_graph;
use nestmaps_core::nesting::{classifier_sweep, find_bijective_nesting, hall_check};
use nestmaps_core::schwz::classify_chern_splits;

fn matching(c: &mut Criterion) {
    let mut g = c.benchmark_group("matching");
    for (q, n, i, j) in MATCH_CONFIGS {
        let inc = incidence(q, n, i, j);
        g.bench_with_input(BenchmarkId::from_parameter(label(q, n, i, j)), &inc, |b, inc| {
            b.iter(|| find_bijective_nesting(black_box(inc)))
        });
    }
    g.finish();
}

fn incidence_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("incidence");
    g.sample_size(10);
    for (q, n, i, j) in [(2, 6, 2, 4), (3, 4, 1, 3)] {
        let f = field(q);
        g.bench_function(label(q, n, i, j), |b| b.iter(|| incidence_graph(i, j, n, black_box(&f)).unwrap()));
    }
    g.finish();
}

fn hall(c: &mut Criterion) {
    let inc = incidence(2, 6, 2, 4);
    c.bench_function("hall_1000_q2_n6_i2_j4", |b| b.iter(|| hall_check(black_box(&inc), 1000, 0).unwrap()));
}

fn chern(c: &mut Criterion) {
    let mut g = c.benchmark_group("chern");
    g.sample_size(10);
    g.bench_function("certificate_d50", |b| b.iter(|| smoothness_certificate(black_box(50)).unwrap()));
    g.bench_function("theta_identities_d12", |b| b.iter(|| verify_theta_identities(black_box(12)).unwrap()));
    g.finish();
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    for n in [6, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| classify_chern_splits(black_box(n)).unwrap()));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let f = field(2);
    g.bench_function("gl4_f2", |b| b.iter(|| classifier_sweep(black_box(&f), 4).unwrap()));
    g.finish();
}

criterion_group!(benches, matching, incidence_build, hall, chern, classify, sweep);
criterion_main!(benches);
