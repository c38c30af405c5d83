use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsphere::phase::{
    legendre_coefficient, phase, phase_cdf, phase_cdf_inverse, sample_mu_exact, sample_mu_fast, truncation_error,
    LEGENDRE_COEFFS, MEAN_COSINE,
};
use lsphere::quad::{integrate, QuadOptions};

use super::{linspace, Output};
use crate::args::PhaseArgs;
use crate::error::{CliError, Result};
use crate::output::{Cell, Check, Manifest, Table};

/// Largest `|sample_mu_fast(xi) - F^-1(xi)|` over a uniform grid on `[0, 1]`.
pub fn fast_sampler_max_error(points: usize) -> Result<(f64, f64)> {
    let mut worst = (0.0, 0.0);
    for xi in linspace(0.0, 1.0, points) {
        let e = (sample_mu_fast(xi) - phase_cdf_inverse(xi)?).abs();
        if e > worst.0 {
            worst = (e, xi);
        }
    }
    Ok(worst)
}

/// Kolmogorov-Smirnov distance of the exact sampler and its sample mean and
/// standard error.
pub fn exact_sampler_stats(samples: usize, seed: u64) -> Result<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mus: Vec<f64> = (0..samples).map(|_| sample_mu_exact(rng.random(), rng.random(), rng.random())).collect();
    let n = mus.len() as f64;
    let mean = mus.iter().sum::<f64>() / n;
    let var = mus.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (n - 1.0);
    mus.sort_by(f64::total_cmp);
    let mut d: f64 = 0.0;
    for (k, &m) in mus.iter().enumerate() {
        let f = phase_cdf(m)?;
        d = d.max(f - k as f64 / n).max((k + 1) as f64 / n - f);
    }
    Ok((d, mean, (var / n).sqrt()))
}

pub fn run(args: &PhaseArgs) -> Result<Output> {
    if args.sampler_grid < 2 || args.samples < 2 || args.grid < 2 {
        return Err(CliError::Usage("grids and sample counts must be at least 2".into()));
    }
    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-12, max_subdivisions: 500 };
    let mut checks = Vec::new();

    let norm = 2.0 * PI * integrate(phase, -1.0, 1.0, &opts)?.value;
    checks.push(Check::at_most("normalization", (norm - 1.0).abs(), args.tol_norm));
    let mean = 2.0 * PI * integrate(|m| m * phase(m), -1.0, 1.0, &opts)?.value;
    checks.push(Check::at_most("mean_cosine", (mean - MEAN_COSINE).abs(), args.tol_norm));
    for (k, &expected) in LEGENDRE_COEFFS.iter().enumerate() {
        let a = legendre_coefficient(k)?;
        checks.push(Check::at_most(format!("legendre_a{k}"), (a - expected).abs(), args.tol_legendre));
    }

    let t = truncation_error(args.terms, args.grid as usize)?;
    checks.push(Check::info(format!("truncation{}_max_abs", args.terms), t.max_abs));
    checks.push(Check::info(format!("truncation{}_argmax_abs", args.terms), t.argmax_abs));
    checks.push(Check::info(format!("truncation{}_max_rel_to_peak", args.terms), t.max_rel_to_peak));
    checks.push(Check::info(format!("truncation{}_max_rel_pointwise", args.terms), t.max_rel_pointwise));

    let (fast, at) = fast_sampler_max_error(args.sampler_grid as usize)?;
    checks.push(Check::at_most("sampler_fast_max_abs", fast, args.tol_fast));
    checks.push(Check::info("sampler_fast_argmax_xi", at));

    let (ks, mean, se) = exact_sampler_stats(args.samples as usize, args.seed)?;
    checks.push(Check::at_most("sampler_exact_ks", ks, 4.0 / (args.samples as f64).sqrt()));
    checks.push(Check::at_most("sampler_exact_mean_z", ((mean - MEAN_COSINE) / se).abs(), 3.0));

    let mut table = Table::new(&["check", "measured", "bound", "status"]);
    for c in &checks {
        table.push(vec![Cell::from(c.name.as_str()), c.measured.into(), c.bound.into(), c.status.name().into()]);
    }
    let mut m = Manifest::new("validate-phase");
    m.push("terms", args.terms);
    m.push("grid", args.grid);
    m.push("sampler_grid", args.sampler_grid);
    m.push("samples", args.samples);
    m.push("seed", args.seed);
    m.push("tol_norm", args.tol_norm);
    m.push("tol_legendre", args.tol_legendre);
    m.push("tol_fast", args.tol_fast);
    Output::from_table(&table, m, checks)
}
