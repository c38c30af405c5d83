use lsphere::brdf::{
    albedo_spherical, c_to_kd, c_to_kd_raw, constants_ae, constants_bcdf, constants_lm, f0_multi, f0_single_3term,
    f0_total, f1_multi, f1_multi_fast, f1_single_3term, f1_total, kd_to_c, kd_to_c_raw, F1_SERIES_WEIGHT,
};
use lsphere::hfun::{h0_infinity, h1_at_one_approx};
use lsphere::{Albedo, BrdfParams};

use super::{linspace, Output};
use crate::args::{value_name, Quantity, TablesArgs};
use crate::error::{CliError, Result};
use crate::output::{Check, Manifest, Table};

fn constants(grid: usize) -> Result<Table> {
    let mut t = Table::new(&["c", "l", "m", "a", "b", "cc", "d", "e", "f", "h1_at_one", "h0_infinity"]);
    for c in linspace(0.0, 1.0, grid) {
        let cc = Albedo::new(c)?;
        let (l, m) = constants_lm(cc);
        let (a, e) = constants_ae(cc);
        let [b, c3, d, f] = constants_bcdf(cc);
        let hinf = h0_infinity(cc).ok();
        t.push(vec![
            c.into(),
            l.into(),
            m.into(),
            a.into(),
            b.into(),
            c3.into(),
            d.into(),
            e.into(),
            f.into(),
            h1_at_one_approx(cc).into(),
            hinf.into(),
        ]);
    }
    Ok(t)
}

/// Largest `|c - kd_to_c(c_to_kd(c))|` and `|kd - c_to_kd(kd_to_c(kd))|` on a grid.
pub fn round_trip_errors(grid: usize) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, 0.0f64);
    for x in linspace(0.0, 1.0, grid) {
        let c_back = kd_to_c(c_to_kd(x)?)?.get();
        let kd_back = c_to_kd(kd_to_c(x)?.get())?;
        worst.0 = worst.0.max((c_back - x).abs());
        worst.1 = worst.1.max((kd_back - x).abs());
    }
    Ok(worst)
}

/// Largest `|albedo_spherical(c) - c_to_kd(c)|` on a grid.
pub fn spherical_albedo_gap(grid: usize) -> Result<(f64, f64)> {
    let mut worst = (0.0, 0.0);
    for c in linspace(0.0, 1.0, grid) {
        let cc = Albedo::new(c)?;
        let gap = (albedo_spherical(&BrdfParams::from_albedo(cc)) - c_to_kd(c)?).abs();
        if gap > worst.0 {
            worst = (gap, c);
        }
    }
    Ok(worst)
}

fn albedo_map(grid: usize) -> Result<Table> {
    let mut t = Table::new(&["c", "kd_fit_raw", "kd_fit", "albedo_spherical", "c_round_trip", "kd_to_c_raw_at_c"]);
    for c in linspace(0.0, 1.0, grid) {
        let cc = Albedo::new(c)?;
        let kd = c_to_kd(c)?;
        t.push(vec![
            c.into(),
            c_to_kd_raw(c).into(),
            kd.into(),
            albedo_spherical(&BrdfParams::from_albedo(cc)).into(),
            kd_to_c(kd)?.get().into(),
            kd_to_c_raw(c).into(),
        ]);
    }
    Ok(t)
}

fn modes(grid: usize, c: Albedo) -> Result<Table> {
    let mut t = Table::new(&[
        "mu_i",
        "mu_o",
        "f0_total",
        "f0_single_3term",
        "f0_multi",
        "f1_total",
        "f1_single_3term",
        "f1_multi",
        "f1_multi_fast",
        "cos_phi_weight",
    ]);
    // Zero cosines are excluded: the modes use the grazing clamp there.
    for mi in linspace(0.0, 1.0, grid + 1).into_iter().skip(1) {
        for mo in linspace(0.0, 1.0, grid + 1).into_iter().skip(1) {
            t.push(vec![
                mi.into(),
                mo.into(),
                f0_total(mi, mo, c).into(),
                f0_single_3term(mi, mo, c).into(),
                f0_multi(mi, mo, c).into(),
                f1_total(mi, mo, c).into(),
                f1_single_3term(mi, mo, c).into(),
                f1_multi(mi, mo, c).into(),
                f1_multi_fast(mi, mo, c).into(),
                F1_SERIES_WEIGHT.into(),
            ]);
        }
    }
    Ok(t)
}

pub fn run(args: &TablesArgs) -> Result<Output> {
    if args.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let mut m = Manifest::new("tables");
    m.push("quantity", value_name(&args.quantity));
    m.push("grid", args.grid);
    let mut checks = Vec::new();
    let table = match args.quantity {
        Quantity::Constants => constants(args.grid)?,
        Quantity::AlbedoMap => {
            let (c_err, kd_err) = round_trip_errors(args.grid)?;
            checks.push(Check::info("c_round_trip_max_abs", c_err));
            checks.push(Check::info("kd_round_trip_max_abs", kd_err));
            albedo_map(args.grid)?
        }
        Quantity::Modes => {
            let params = args.albedo.resolve(1.0)?;
            m.push("c", params.c().get());
            modes(args.grid, params.c())?
        }
    };
    Output::from_table(&table, m, checks)
}
