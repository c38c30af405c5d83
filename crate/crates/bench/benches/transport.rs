use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use lsphere::mcref::simulate_halfspace;
use lsphere::phase::{sample_direction, sample_mu_exact, sample_mu_fast};
use lsphere::{Albedo, McConfig, Vec3};

fn sampling(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = Vec3::new(0.0, 0.6, 0.8);
    c.bench_function("sample_direction", |b| b.iter(|| sample_direction(black_box(d), &mut rng)));
    c.bench_function("sample_mu_exact", |b| b.iter(|| sample_mu_exact(black_box(0.3), 0.6, 0.9)));
    c.bench_function("sample_mu_fast", |b| b.iter(|| sample_mu_fast(black_box(0.3))));
}

fn halfspace(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate_halfspace");
    g.sample_size(10);
    let n = 20_000;
    g.throughput(Throughput::Elements(n));
    for albedo in [0.5, 0.9] {
        let cfg = McConfig { n_paths: n, threads: 1, ..McConfig::default() };
        let a = Albedo::new(albedo).unwrap();
        g.bench_function(format!("c{albedo}"), |b| b.iter(|| simulate_halfspace(0.7, a, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, sampling, halfspace);
criterion_main!(benches);
