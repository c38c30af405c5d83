use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsphere::brdf::{eval_brdf, DirectionPair};
use lsphere::Variant;

use super::Output;
use crate::args::BenchArgs;
use crate::error::{CliError, Result};
use crate::output::{Check, Manifest, Table};

const VARIANTS: [Variant; 3] = [Variant::Accurate, Variant::Fast, Variant::Lambertian];

/// Uniform random direction pairs over the upper hemisphere cosines.
pub fn random_pairs(n: usize, seed: u64) -> Result<Vec<DirectionPair>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mu_i = 1.0 - rng.random::<f64>();
            let mu_o = 1.0 - rng.random::<f64>();
            let phi = std::f64::consts::PI * rng.random::<f64>();
            DirectionPair::new(mu_i, mu_o, phi).map_err(CliError::from)
        })
        .collect()
}

pub fn run(args: &BenchArgs) -> Result<Output> {
    if args.evals == 0 {
        return Err(CliError::Usage("--evals must be positive".into()));
    }
    let params = args.albedo.resolve(1.0)?;
    let pairs = random_pairs(args.evals as usize, args.seed)?;

    let mut table = Table::new(&["variant", "evals", "seconds", "evals_per_second", "mean_value"]);
    let mut checks = Vec::new();
    for v in VARIANTS {
        let t = Instant::now();
        let mut sum = 0.0;
        for p in &pairs {
            sum += eval_brdf(black_box(p), &params, v);
        }
        let secs = t.elapsed().as_secs_f64().max(1e-12);
        let rate = pairs.len() as f64 / secs;
        table.push(vec![
            v.name().into(),
            pairs.len().into(),
            secs.into(),
            rate.into(),
            (black_box(sum) / pairs.len() as f64).into(),
        ]);
        checks.push(Check::info(format!("{}_evals_per_second", v.name()), rate));
    }
    let mut m = Manifest::new("bench");
    m.push("c", params.c().get());
    m.push("kd", params.kd());
    m.push("evals", args.evals);
    m.push("seed", args.seed);
    Output::from_table(&table, m, checks)
}
