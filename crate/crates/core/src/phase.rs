//! The far-field phase function of a smooth white Lambertian sphere.
//!
//! `p(mu) = 2 (sqrt(1 - mu^2) - mu acos(mu)) / (3 pi^2)`, normalized so that
//! `2 pi * integral of p over [-1, 1]` is one. The particle scatters mostly
//! backwards: the mean deflection cosine is `-4/9`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{check_range, Error, Result};
use crate::geom::Vec3;
use crate::quad::{gauss_kronrod_21, integrate, QuadOptions};

/// Mean deflection cosine `g`.
pub const MEAN_COSINE: f64 = -4.0 / 9.0;

/// Closed-form Legendre coefficients `A_0..=A_6`.
pub const LEGENDRE_COEFFS: [f64; 7] = [1.0, -4.0 / 3.0, 5.0 / 16.0, 0.0, 1.0 / 64.0, 0.0, 13.0 / 4096.0];

/// Roundoff slack accepted on `|mu| <= 1` before reporting a domain error.
const COSINE_SLACK: f64 = 1e-12;

/// Cosine of the scattering deflection angle.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeflectionCosine(f64);

impl DeflectionCosine {
    pub fn new(mu: f64) -> Result<Self> {
        check_range("mu", mu, -1.0 - COSINE_SLACK, 1.0 + COSINE_SLACK, "[-1, 1]")?;
        Ok(Self(mu.clamp(-1.0, 1.0)))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<DeflectionCosine> for f64 {
    fn from(mu: DeflectionCosine) -> f64 {
        mu.0
    }
}

/// Phase function density per steradian, with `mu` clamped into `[-1, 1]`.
#[inline]
pub fn phase(mu: f64) -> f64 {
    let mu = mu.clamp(-1.0, 1.0);
    2.0 * ((1.0 - mu * mu).sqrt() - mu * mu.acos()) / (3.0 * PI * PI)
}

pub fn eval_phase(mu: f64) -> Result<f64> {
    Ok(phase(DeflectionCosine::new(mu)?.get()))
}

/// Legendre polynomial `P_k(x)`.
pub fn legendre_p(k: usize, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut p0, mut p1) = (1.0, x);
            for n in 2..=k {
                let nf = n as f64;
                let p2 = ((2.0 * nf - 1.0) * x * p1 - (nf - 1.0) * p0) / nf;
                p0 = p1;
                p1 = p2;
            }
            p1
        }
    }
}

/// `A_k = 2 pi (2k + 1) * integral of p(mu) P_k(mu) over [-1, 1]`, by adaptive quadrature.
pub fn legendre_coefficient(k: usize) -> Result<f64> {
    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_subdivisions: 1000 };
    // A_k for odd k >= 3 vanishes, so a relative target alone never converges.
    let r = integrate(|mu| phase(mu) * legendre_p(k, mu), -1.0, 1.0, &opts)?;
    Ok(2.0 * PI * (2 * k + 1) as f64 * r.value)
}

/// Phase function rebuilt from its first `terms` Legendre terms.
///
/// Not clamped: with three terms the value at `mu = 1` is `-1 / (192 pi)`.
pub fn eval_phase_truncated(mu: f64, terms: usize) -> Result<f64> {
    if terms == 0 || terms > LEGENDRE_COEFFS.len() {
        return Err(Error::UnsupportedTerms(terms));
    }
    let mu = DeflectionCosine::new(mu)?.get();
    let sum: f64 = LEGENDRE_COEFFS[..terms].iter().enumerate().map(|(k, a)| a * legendre_p(k, mu)).sum();
    Ok(sum / (4.0 * PI))
}

/// Error of a truncated expansion against the exact phase under three metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationError {
    pub max_abs: f64,
    pub argmax_abs: f64,
    /// `max_abs` divided by the peak density `p(-1)`.
    pub max_rel_to_peak: f64,
    /// Largest `|truncated / exact - 1|` over grid points with positive exact density.
    pub max_rel_pointwise: f64,
    pub argmax_rel_pointwise: f64,
}

pub fn truncation_error(terms: usize, grid_points: usize) -> Result<TruncationError> {
    let n = grid_points.max(2);
    let peak = phase(-1.0);
    let mut out = TruncationError {
        max_abs: 0.0,
        argmax_abs: -1.0,
        max_rel_to_peak: 0.0,
        max_rel_pointwise: 0.0,
        argmax_rel_pointwise: -1.0,
    };
    for i in 0..n {
        let mu = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let exact = phase(mu);
        let approx = eval_phase_truncated(mu, terms)?;
        let abs = (approx - exact).abs();
        if abs > out.max_abs {
            out.max_abs = abs;
            out.argmax_abs = mu;
        }
        if exact > 0.0 {
            let rel = abs / exact;
            if rel > out.max_rel_pointwise {
                out.max_rel_pointwise = rel;
                out.argmax_rel_pointwise = mu;
            }
        }
    }
    out.max_rel_to_peak = out.max_abs / peak;
    Ok(out)
}

/// Number of nodes in the cumulative-distribution table.
pub const CDF_TABLE_POINTS: usize = 4096;

/// Cumulative distribution of the deflection cosine, backed by a table of
/// quadrature values on a uniform grid in `mu`.
#[derive(Debug, Clone)]
pub struct PhaseCdf {
    step: f64,
    values: Vec<f64>,
}

fn cdf_density(mu: f64) -> f64 {
    2.0 * PI * phase(mu)
}

fn segment_integral(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let opts = QuadOptions { abs_tol: 1e-16, rel_tol: 1e-14, max_subdivisions: 50 };
    match integrate(cdf_density, a, b, &opts) {
        Ok(r) => r.value,
        // Only reachable if the tolerance is below roundoff; the single-panel
        // estimate is still far inside the table's accuracy budget.
        Err(_) => gauss_kronrod_21(&mut cdf_density, a, b).0,
    }
}

impl PhaseCdf {
    pub fn new(points: usize) -> Self {
        let points = points.max(2);
        let step = 2.0 / (points - 1) as f64;
        let mut values = Vec::with_capacity(points);
        let mut acc = 0.0;
        values.push(0.0);
        for k in 1..points {
            let a = -1.0 + (k - 1) as f64 * step;
            let b = if k == points - 1 { 1.0 } else { -1.0 + k as f64 * step };
            acc += segment_integral(a, b);
            values.push(acc);
        }
        Self { step, values }
    }

    /// Shared default table, built on first use.
    pub fn global() -> &'static PhaseCdf {
        static TABLE: OnceLock<PhaseCdf> = OnceLock::new();
        TABLE.get_or_init(|| PhaseCdf::new(CDF_TABLE_POINTS))
    }

    fn node(&self, k: usize) -> f64 {
        if k == self.values.len() - 1 {
            1.0
        } else {
            -1.0 + k as f64 * self.step
        }
    }

    fn segment_of(&self, mu: f64) -> usize {
        let k = ((mu + 1.0) / self.step).floor() as usize;
        k.min(self.values.len() - 2)
    }

    /// `F(mu) = 2 pi * integral of p over [-1, mu]`.
    pub fn cdf(&self, mu: f64) -> f64 {
        let mu = mu.clamp(-1.0, 1.0);
        let k = self.segment_of(mu);
        self.values[k] + segment_integral(self.node(k), mu)
    }

    /// Solves `F(mu) = xi` by a bracketed Newton iteration inside the table segment.
    pub fn inverse(&self, xi: f64) -> f64 {
        let xi = xi.clamp(0.0, 1.0);
        let last = self.values.len() - 1;
        if xi <= 0.0 {
            return -1.0;
        }
        if xi >= self.values[last] {
            return 1.0;
        }
        let k = self.values.partition_point(|&v| v <= xi).saturating_sub(1).min(last - 1);
        let (mut lo, mut hi) = (self.node(k), self.node(k + 1));
        let base = self.values[k];
        let span = self.values[k + 1] - base;
        let mut mu = if span > 0.0 { lo + (hi - lo) * (xi - base) / span } else { 0.5 * (lo + hi) };
        for _ in 0..100 {
            let g = base + segment_integral(self.node(k), mu) - xi;
            if g.abs() < 1e-15 {
                break;
            }
            if g > 0.0 {
                hi = mu;
            } else {
                lo = mu;
            }
            if hi - lo < 1e-15 {
                break;
            }
            let d = cdf_density(mu);
            let newton = mu - g / d;
            mu = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        }
        mu
    }
}

pub fn phase_cdf(mu: f64) -> Result<f64> {
    let mu = DeflectionCosine::new(mu)?.get();
    Ok(PhaseCdf::global().cdf(mu))
}

pub fn phase_cdf_inverse(xi: f64) -> Result<f64> {
    let xi = check_range("xi", xi, 0.0, 1.0, "[0, 1]")?;
    Ok(PhaseCdf::global().inverse(xi))
}

/// Exact sampling of the deflection cosine from three uniform variates.
#[inline]
pub fn sample_mu_exact(xi1: f64, xi2: f64, xi3: f64) -> f64 {
    let mu = ((1.0 - xi1) * (1.0 - xi2)).sqrt() * (2.0 * PI * xi3).sin() - (xi1 * xi2).sqrt();
    mu.clamp(-1.0, 1.0)
}

/// Approximate inverse CDF; absolute error below 5e-4.
#[inline]
pub fn sample_mu_fast(xi: f64) -> f64 {
    let mu = 1.0 - 2.0 * (1.0 - xi.powf(0.0401885 * xi + 1.01938)).powf(0.397225);
    mu.clamp(-1.0, 1.0)
}

/// Cosine and sine of a uniform angle, by rejection from the unit disk.
#[inline]
pub fn sample_unit_circle<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        let r2 = x * x + y * y;
        if r2 <= 1.0 && r2 > 0.0 {
            // Doubling the disk angle keeps it uniform.
            return ((x * x - y * y) / r2, 2.0 * x * y / r2);
        }
    }
}

/// Scatters a unit propagation direction with the exact phase function.
///
/// Same construction as [`sample_mu_exact`], with both uniform angles drawn
/// by [`sample_unit_circle`] instead of through trigonometric calls.
#[inline]
pub fn sample_direction<R: Rng + ?Sized>(incident: Vec3, rng: &mut R) -> Vec3 {
    let xi1: f64 = rng.random();
    let xi2: f64 = rng.random();
    let (_, sin3) = sample_unit_circle(rng);
    let mu = (((1.0 - xi1) * (1.0 - xi2)).sqrt() * sin3 - (xi1 * xi2).sqrt()).clamp(-1.0, 1.0);
    let (cos_phi, sin_phi) = sample_unit_circle(rng);
    let sin_theta = (1.0 - mu * mu).max(0.0).sqrt();
    let (t, b) = incident.orthonormal_basis();
    incident * mu + (t * cos_phi + b * sin_phi) * sin_theta
}
