use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use cxpt_core::clifford::{borel_pompeiu, BpConfig, Domain, MultivectorField};
use cxpt_core::field::{Constant, Gaussian};
use cxpt_core::geometry::complex_distance;
use cxpt_core::source::{moments, singular_action};
use cxpt_core::wave::{solve_cauchy, CauchyData};
use cxpt_core::{Complex64, ComplexPoint, SourceConfig, TestField};

fn distance(c: &mut Criterion) {
    let z = ComplexPoint::new(vec![0.3, -1.2, 0.7], vec![0.1, 0.4, 1.0]).unwrap();
    c.bench_function("complex_distance n=3", |b| b.iter(|| complex_distance(black_box(&z))));
}

fn sources(c: &mut Criterion) {
    let cfg = SourceConfig::default();
    let mut group = c.benchmark_group("singular_action gaussian");
    group.sample_size(10);
    for n in 3..=6usize {
        let f = Gaussian::centered(n, 1.0);
        let mut y = vec![0.0; n];
        y[n - 1] = 1.0;
        group.bench_function(format!("n={n}"), |b| b.iter(|| singular_action(&f, black_box(&y), &cfg).unwrap()));
    }
    group.finish();
    c.bench_function("moments n=4", |b| b.iter(|| moments(4, black_box(&[0.0, 0.0, 0.6, 0.8]), &cfg).unwrap()));
}

fn wave(c: &mut Criterion) {
    let v: Arc<dyn TestField> = Arc::new(Gaussian::centered(3, 1.0));
    let w: Arc<dyn TestField> = Arc::new(Constant { dim: 3, value: Complex64::new(0.0, 0.0) });
    let data = CauchyData::new(v, w).unwrap();
    let cfg = Default::default();
    c.bench_function("solve_cauchy n=3", |b| {
        b.iter(|| solve_cauchy(&data, black_box(&[0.2, 0.1, -0.3]), 1.5, &cfg).unwrap())
    });
}

fn clifford(c: &mut Criterion) {
    let f = MultivectorField::scalar(Arc::new(Gaussian::centered(3, 1.0)));
    let m = Domain::ball(vec![0.0; 3], 1.0).unwrap();
    let cfg = BpConfig::default();
    let mut group = c.benchmark_group("clifford");
    group.sample_size(10);
    group.bench_function("borel_pompeiu unit ball", |b| {
        b.iter(|| borel_pompeiu(&f, &m, black_box(&[0.2, 0.1, 0.0]), &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, distance, sources, wave, clifford);
criterion_main!(benches);
