use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schur_torus::schur::{build_quads, taylor_from_rational, taylor_from_weights};
use schur_torus::verify::bundled_models;

fn quads(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_quads");
    for (name, data) in bundled_models() {
        g.bench_with_input(BenchmarkId::from_parameter(&name), &data, |b, d| {
            b.iter(|| build_quads(d).unwrap())
        });
    }
    g.finish();
}

fn taylor(c: &mut Criterion) {
    let mut g = c.benchmark_group("taylor_degree_6");
    for (name, data) in bundled_models() {
        let top = build_quads(&data).unwrap().pop().unwrap();
        g.bench_with_input(BenchmarkId::new("weights", &name), &data, |b, d| {
            b.iter(|| taylor_from_weights(d, 6).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rational", &name), &top, |b, q| {
            b.iter(|| taylor_from_rational(q, 6).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, quads, taylor);
criterion_main!(benches);
