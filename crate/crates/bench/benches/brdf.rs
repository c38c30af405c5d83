use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use lsphere::brdf::{eval_brdf, DirectionPair};
use lsphere::hfun::{eval_h0_approx, eval_h1_approx, eval_h_numeric};
use lsphere::{Albedo, BrdfParams, HEvalSpec, HMode, Variant};

fn pairs(n: usize) -> Vec<DirectionPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n)
        .map(|_| {
            let (a, b, p) = (1.0 - rng.random::<f64>(), 1.0 - rng.random::<f64>(), 3.0 * rng.random::<f64>());
            DirectionPair::new(a, b, p).unwrap()
        })
        .collect()
}

fn variants(c: &mut Criterion) {
    let ps = pairs(1024);
    let params = BrdfParams::from_kd(0.6).unwrap();
    let mut g = c.benchmark_group("eval_brdf_1024");
    for v in [Variant::Accurate, Variant::Fast, Variant::Lambertian] {
        g.bench_function(v.name(), |b| b.iter(|| ps.iter().map(|p| eval_brdf(black_box(p), &params, v)).sum::<f64>()));
    }
    g.finish();
}

fn hfunctions(c: &mut Criterion) {
    let alb = Albedo::new(0.8).unwrap();
    let spec = HEvalSpec::default();
    c.bench_function("h0_approx", |b| b.iter(|| eval_h0_approx(black_box(0.4), alb)));
    c.bench_function("h1_approx", |b| b.iter(|| eval_h1_approx(black_box(0.4), alb)));
    c.bench_function("h0_numeric", |b| b.iter(|| eval_h_numeric(HMode::Zero, black_box(0.4), alb, &spec).unwrap()));
}

criterion_group!(benches, variants, hfunctions);
criterion_main!(benches);
