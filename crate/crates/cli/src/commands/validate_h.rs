use lsphere::hfun::{eval_h0_approx, eval_h1_approx, eval_h_numeric, h0_infinity, HEvalSpec, HMode};
use lsphere::Albedo;

use super::{linspace, Output};
use crate::args::HArgs;
use crate::error::{CliError, Result};
use crate::output::{Check, Manifest, Table};

/// Albedos at which the large-argument mode-0 limit is checked.
pub const H0_INFINITY_ALBEDOS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];
/// Argument standing in for infinity in that check.
pub const H0_INFINITY_MU: f64 = 1e3;

/// Worst relative error of a fit over the grid, with its location.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitError {
    pub max_rel: f64,
    pub mu: f64,
    pub c: f64,
}

pub fn run(args: &HArgs) -> Result<Output> {
    if args.c_grid < 2 || args.mu_grid < 2 {
        return Err(CliError::Usage("--c-grid and --mu-grid must be at least 2".into()));
    }
    let spec = HEvalSpec { rel_tol: args.quad_rel_tol, ..HEvalSpec::default() };
    let mut table = Table::new(&["section", "mode", "mu", "c", "numeric", "fitted", "rel_error"]);
    let mut worst = [FitError::default(); 2];
    for c in linspace(0.0, 1.0, args.c_grid) {
        let cc = Albedo::new(c)?;
        for mu in linspace(0.0, 1.0, args.mu_grid) {
            for (slot, mode) in [HMode::Zero, HMode::One].into_iter().enumerate() {
                let numeric = eval_h_numeric(mode, mu, cc, &spec)?;
                let fitted = match mode {
                    HMode::Zero => eval_h0_approx(mu, cc),
                    _ => eval_h1_approx(mu, cc),
                };
                let rel = (fitted - numeric).abs() / numeric;
                if rel > worst[slot].max_rel {
                    worst[slot] = FitError { max_rel: rel, mu, c };
                }
                table.push(vec![
                    "grid".into(),
                    mode.index().into(),
                    mu.into(),
                    c.into(),
                    numeric.into(),
                    fitted.into(),
                    rel.into(),
                ]);
            }
        }
    }

    let mut checks = vec![
        Check::at_most("h0_fit_max_rel", worst[0].max_rel, args.tol_h0),
        Check::info("h0_fit_argmax_mu", worst[0].mu),
        Check::info("h0_fit_argmax_c", worst[0].c),
        Check::at_most("h1_fit_max_rel", worst[1].max_rel, args.tol_h1),
        Check::info("h1_fit_argmax_mu", worst[1].mu),
        Check::info("h1_fit_argmax_c", worst[1].c),
    ];
    for c in H0_INFINITY_ALBEDOS {
        let cc = Albedo::new(c)?;
        let limit = h0_infinity(cc)?;
        let numeric = eval_h_numeric(HMode::Zero, H0_INFINITY_MU, cc, &spec)?;
        let rel = (numeric - limit).abs() / limit;
        table.push(vec![
            "h0_infinity".into(),
            0u8.into(),
            H0_INFINITY_MU.into(),
            c.into(),
            numeric.into(),
            limit.into(),
            rel.into(),
        ]);
        checks.push(Check::at_most(format!("h0_infinity_c{c}"), rel, args.tol_h0_inf));
    }

    let mut m = Manifest::new("validate-h");
    m.push("c_grid", args.c_grid);
    m.push("mu_grid", args.mu_grid);
    m.push("tol_h0", args.tol_h0);
    m.push("tol_h1", args.tol_h1);
    m.push("tol_h0_inf", args.tol_h0_inf);
    m.push("quad_rel_tol", args.quad_rel_tol);
    Output::from_table(&table, m, checks)
}
