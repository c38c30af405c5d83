//! Statistical comparison of Monte Carlo estimates against the analytic model.

use crate::brdf::{f0_multi, f1_multi, single_scatter, DirectionPair, FourierModes, F1_SERIES_WEIGHT};
use crate::hfun::Albedo;
use crate::mcref::{fourier_project_grid, Absorption, BinGrid, BinLayout, Component, ModeEstimate};
use crate::quad::GaussLegendre;

/// Gauss-Legendre order per bin edge for analytic bin averages.
const BIN_RULE_ORDER: usize = 8;

/// Expected estimator value for bin `(i, j)`:
/// `integral of f mu_o dmu_o dphi / (mu_mid d_mu d_phi)`.
pub fn bin_average<F: Fn(f64, f64) -> f64>(layout: &BinLayout, i: usize, j: usize, f: F) -> f64 {
    let gl = GaussLegendre::new(BIN_RULE_ORDER);
    let (m0, m1) = layout.mu_range(i);
    let (p0, p1) = layout.phi_range(j);
    let mut sum = 0.0;
    for (mu, wm) in gl.points(m0, m1) {
        for (phi, wp) in gl.points(p0, p1) {
            sum += wm * wp * mu * f(mu, phi);
        }
    }
    sum / (layout.mu_mid(i) * layout.d_mu() * layout.d_phi())
}

/// Expected estimator value of a `mu_o`-only function over row `i`.
pub fn row_average<F: Fn(f64) -> f64>(layout: &BinLayout, i: usize, f: F) -> f64 {
    let gl = GaussLegendre::new(BIN_RULE_ORDER);
    let (m0, m1) = layout.mu_range(i);
    gl.integrate(m0, m1, |mu| mu * f(mu)) / (layout.mu_mid(i) * layout.d_mu())
}

/// Exact single scattering averaged over every bin, row-major in `mu_o`.
pub fn single_scatter_reference(layout: &BinLayout, mu_i: f64, c: Albedo) -> Vec<f64> {
    let mut out = Vec::with_capacity(layout.len());
    for i in 0..layout.n_mu {
        for j in 0..layout.n_phi {
            out.push(bin_average(layout, i, j, |mu, phi| {
                DirectionPair::new(mu_i, mu, phi).map_or(0.0, |p| single_scatter(&p, c))
            }));
        }
    }
    out
}

/// Analytic multiple-scattering modes averaged over each `mu_o` row, as
/// coefficients of `1`, `cos(phi)`, `cos(2 phi)`.
pub fn multiple_mode_reference(layout: &BinLayout, mu_i: f64, c: Albedo) -> Vec<FourierModes> {
    (0..layout.n_mu)
        .map(|i| FourierModes {
            f0: row_average(layout, i, |mu| f0_multi(mu_i, mu, c)),
            f1: row_average(layout, i, |mu| F1_SERIES_WEIGHT * f1_multi(mu_i, mu, c)),
            f2: 0.0,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinComparison {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub stderr: f64,
    pub reference: f64,
    pub sigma: f64,
    pub z: f64,
}

#[inline]
fn z_score(value: f64, reference: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        (value - reference) / sigma
    } else if value == reference {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Per-bin test of the single-collision tally against exact single scattering.
///
/// The spread is the larger of the measured standard error and the one implied
/// by the reference itself, so that sparsely populated bins are not judged on
/// a near-zero sample variance.
pub fn compare_single_scatter(grid: &BinGrid, mu_i: f64, c: Albedo, absorption: Absorption) -> Vec<BinComparison> {
    let l = grid.layout;
    let n = grid.n_paths as f64;
    let est = crate::mcref::estimate_brdf(grid, Component::Single);
    let reference = single_scatter_reference(&l, mu_i, c);
    let escape_weight = match absorption {
        Absorption::Weighting => c.get(),
        Absorption::Analog => 1.0,
    };
    let mut out = Vec::with_capacity(l.len());
    for i in 0..l.n_mu {
        let scale = 1.0 / (l.mu_mid(i) * l.d_mu() * l.d_phi());
        for j in 0..l.n_phi {
            let k = i * l.n_phi + j;
            let r = reference[k];
            let hyp = ((escape_weight * scale * r - r * r).max(0.0) / n).sqrt();
            let sigma = est.stderr[k].max(hyp);
            out.push(BinComparison {
                i,
                j,
                value: est.value[k],
                stderr: est.stderr[k],
                reference: r,
                sigma,
                z: z_score(est.value[k], r, sigma),
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeComparison {
    pub i: usize,
    pub mc: ModeEstimate,
    pub reference: FourierModes,
    pub z0: f64,
    pub z1: f64,
}

/// Row-wise test of the multiple-scattering modes 0 and 1.
///
/// `floor` is a relative fit tolerance: `sigma^2 = stderr^2 + (floor *
/// |reference f0|)^2` for both modes, since the first-mode fit error scales
/// with the row's overall magnitude rather than with the first mode itself.
pub fn compare_multiple_modes(grid: &BinGrid, mu_i: f64, c: Albedo, floor: f64) -> Vec<ModeComparison> {
    let reference = multiple_mode_reference(&grid.layout, mu_i, c);
    fourier_project_grid(grid, Component::Multiple)
        .into_iter()
        .zip(reference)
        .enumerate()
        .map(|(i, (mc, r))| {
            let f = floor * r.f0.abs();
            ModeComparison {
                i,
                mc,
                reference: r,
                z0: z_score(mc.modes.f0, r.f0, mc.stderr.f0.hypot(f)),
                z1: z_score(mc.modes.f1, r.f1, mc.stderr.f1.hypot(f)),
            }
        })
        .collect()
}

/// Fraction of scores with `|z| < limit`.
pub fn pass_rate<I: IntoIterator<Item = f64>>(scores: I, limit: f64) -> f64 {
    let (mut n, mut ok) = (0usize, 0usize);
    for z in scores {
        n += 1;
        if z.abs() < limit {
            ok += 1;
        }
    }
    if n == 0 {
        1.0
    } else {
        ok as f64 / n as f64
    }
}

/// `max |f^(2)| / max f^(0)` over the rows of the multiple-scattering tally.
pub fn mode2_ratio(grid: &BinGrid) -> f64 {
    let rows = fourier_project_grid(grid, Component::Multiple);
    let top2 = rows.iter().map(|r| r.modes.f2.abs()).fold(0.0, f64::max);
    let top0 = rows.iter().map(|r| r.modes.f0).fold(0.0, f64::max);
    if top0 > 0.0 {
        top2 / top0
    } else {
        0.0
    }
}
