//! Chandrasekhar H-functions for the three-term Lambert-sphere phase function.
//!
//! Each azimuthal mode `i` has an even characteristic polynomial `Psi^(i)(mu)`
//! and a dispersion function
//!
//! ```text
//! K^(i)(t) = 1 - 2 * integral over [0, 1] of Psi^(i)(mu) / (1 + mu^2 t^2) dmu
//! ```
//!
//! from which `H^(i)(mu) = exp(-(mu / pi) * integral over [0, inf) of
//! log K^(i)(t) / (1 + mu^2 t^2) dt)`. The numeric path evaluates that
//! integral; the fitted path uses cheap closed-form approximations.

use std::f64::consts::PI;

use crate::error::{check_range, Error, Result};
use crate::quad::{integrate_with_breaks, QuadOptions};

/// Single-scattering albedo of the particles, `0 <= c <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Albedo(f64);

impl Albedo {
    pub fn new(c: f64) -> Result<Self> {
        check_range("c", c, 0.0, 1.0, "[0, 1]").map(Self)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Albedo {
    type Error = Error;
    fn try_from(c: f64) -> Result<Self> {
        Self::new(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HMode {
    Zero,
    One,
    Two,
}

impl HMode {
    pub const ALL: [HMode; 3] = [HMode::Zero, HMode::One, HMode::Two];

    pub fn index(self) -> u8 {
        match self {
            HMode::Zero => 0,
            HMode::One => 1,
            HMode::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(HMode::Zero),
            1 => Some(HMode::One),
            2 => Some(HMode::Two),
            _ => None,
        }
    }
}

/// Quadrature settings for [`eval_h_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HEvalSpec {
    /// Extra breakpoint in `t` for the adaptive integrator.
    pub t_split: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for HEvalSpec {
    fn default() -> Self {
        Self { t_split: 1.0, rel_tol: 1e-10, max_subdivisions: 1000 }
    }
}

/// Below this `t` the dispersion functions use their Maclaurin series.
///
/// The closed forms lose about `eps / t^4` absolutely to cancellation, and at
/// `c = 1` the mode-0 function itself vanishes like `t^2`.
pub const K_SERIES_THRESHOLD: f64 = 0.25;
const K_SERIES_MAX_TERMS: usize = 60;

/// Characteristic polynomial `Psi^(i)(mu)` of mode `i`.
pub fn eval_psi(mode: HMode, mu: f64, c: Albedo) -> f64 {
    let c = c.get();
    let m2 = mu * mu;
    match mode {
        HMode::Zero => {
            c / 384.0 * (-15.0 * (c - 1.0) * (4.0 * c + 9.0) * m2 * m2 + (c * (20.0 * c + 281.0) - 346.0) * m2 + 207.0)
        }
        HMode::One => -c / 192.0 * (m2 - 1.0) * (5.0 * (4.0 * c + 9.0) * m2 - 64.0),
        HMode::Two => 15.0 / 256.0 * c * (m2 - 1.0) * (m2 - 1.0),
    }
}

/// Coefficients of `Psi^(i)` in `1, mu^2, mu^4`.
pub fn psi_coefficients(mode: HMode, c: Albedo) -> [f64; 3] {
    let c = c.get();
    match mode {
        HMode::Zero => [
            207.0 * c / 384.0,
            c * (c * (20.0 * c + 281.0) - 346.0) / 384.0,
            -15.0 * c * (c - 1.0) * (4.0 * c + 9.0) / 384.0,
        ],
        HMode::One => [-c / 3.0, c * (20.0 * c + 109.0) / 192.0, -5.0 * c * (4.0 * c + 9.0) / 192.0],
        HMode::Two => {
            let k = 15.0 * c / 256.0;
            [k, -2.0 * k, k]
        }
    }
}

/// `K(t) = K(0) - 2 sum_{n >= 1} (-t^2)^n * integral of Psi(mu) mu^(2n)`.
fn eval_k_series(mode: HMode, t: f64, c: Albedo) -> f64 {
    let a = psi_coefficients(mode, c);
    let t2 = t * t;
    let mut sum = 0.0;
    let mut power = -t2;
    for n in 1..K_SERIES_MAX_TERMS {
        let moment: f64 = a.iter().enumerate().map(|(j, aj)| aj / (2 * j + 2 * n + 1) as f64).sum();
        let term = power * moment;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
        power *= -t2;
    }
    k_at_zero(mode, c) - 2.0 * sum
}

/// `K^(i)(0) = 1 - 2 * integral of Psi^(i)`, in factored form.
pub fn k_at_zero(mode: HMode, c: Albedo) -> f64 {
    let c = c.get();
    match mode {
        HMode::Zero => (c - 16.0) * (c - 1.0) * (4.0 * c + 9.0) / 144.0,
        HMode::One => 1.0 - c * (8.0 * c - 110.0) / 288.0,
        HMode::Two => 1.0 - c / 16.0,
    }
}

/// Closed-form dispersion functions, without the small-`t` safeguard.
pub fn eval_k_direct(mode: HMode, t: f64, c: Albedo) -> f64 {
    let c = c.get();
    let at = t.atan();
    let t2 = t * t;
    let t3 = t2 * t;
    let t5 = t3 * t2;
    match mode {
        HMode::Zero => {
            let q = 15.0 * (c - 1.0) * (4.0 * c + 9.0);
            1.0 - c
                * ((256.0 * c - 301.0) * t3
                    + ((346.0 - c * (20.0 * c + 281.0)) * t2 - q + 207.0 * t2 * t2) * at
                    + q * t)
                / (192.0 * t5)
        }
        HMode::One => {
            1.0 - c
                * ((40.0 * c + 282.0) * t3 - 3.0 * (t2 + 1.0) * (20.0 * c + 64.0 * t2 + 45.0) * at
                    + 15.0 * (4.0 * c + 9.0) * t)
                / (288.0 * t5)
        }
        HMode::Two => {
            let u = t2 + 1.0;
            1.0 - 5.0 * c * (3.0 * u * u * at - t * (5.0 * t2 + 3.0)) / (128.0 * t5)
        }
    }
}

/// `K^(i)(t)`; even in `t`, tends to one as `t` grows, identically one at `c = 0`.
pub fn eval_k(mode: HMode, t: f64, c: Albedo) -> f64 {
    let t = t.abs();
    if c.get() == 0.0 {
        1.0
    } else if t < K_SERIES_THRESHOLD {
        eval_k_series(mode, t, c)
    } else if t.is_infinite() {
        1.0
    } else {
        eval_k_direct(mode, t, c)
    }
}

/// `K^(0)(0)` in expanded polynomial form; equal to the factored
/// [`k_at_zero`] for mode zero.
pub fn k0_at_zero(c: Albedo) -> f64 {
    let c = c.get();
    1.0 - 2.0 * (-c * c * c / 72.0 + 59.0 * c * c / 288.0 + 89.0 * c / 288.0)
}

/// Numeric H-function from the semi-infinite integral representation.
///
/// The integral runs over `u` with `t = u / (1 - u)`. `mu > 1` is accepted so
/// that the large-argument limit can be checked.
pub fn eval_h_numeric(mode: HMode, mu: f64, c: Albedo, spec: &HEvalSpec) -> Result<f64> {
    check_range("mu", mu, 0.0, f64::MAX, "[0, inf)")?;
    if mu == 0.0 || c.get() == 0.0 {
        return Ok(1.0);
    }
    if spec.rel_tol <= 0.0 {
        return Err(Error::Config(format!("rel_tol must be positive, got {}", spec.rel_tol)));
    }

    let mut bad: Option<(f64, f64)> = None;
    let mut integrand = |u: f64| {
        let one_minus = 1.0 - u;
        let t = u / one_minus;
        let k = eval_k(mode, t, c);
        if k <= 0.0 || !k.is_finite() {
            bad.get_or_insert((t, k));
            return 0.0;
        }
        k.ln() / ((1.0 + mu * mu * t * t) * one_minus * one_minus)
    };

    let to_u = |t: f64| t / (1.0 + t);
    let mut breaks = vec![0.0, to_u(spec.t_split.max(0.0)), to_u(1.0 / mu), 1.0];
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: spec.rel_tol, max_subdivisions: spec.max_subdivisions };
    let r = integrate_with_breaks(&mut integrand, &breaks, &opts)?;
    if let Some((t, value)) = bad {
        return Err(Error::NonPositiveK { mode: mode.index(), t, value });
    }
    Ok((-mu / PI * r.value).exp())
}

/// `H^(0)(inf) = 12 / sqrt((c - 16)(c - 1)(4c + 9))`.
pub fn h0_infinity(c: Albedo) -> Result<f64> {
    let c = c.get();
    if c >= 1.0 {
        return Err(Error::Divergence);
    }
    Ok(12.0 / ((c - 16.0) * (c - 1.0) * (4.0 * c + 9.0)).sqrt())
}

/// Hapke-style fit of `H^(0)`; relative error below 1% on `[0, 1]^2`.
pub fn eval_h0_approx(mu: f64, c: Albedo) -> f64 {
    let s = (1.0 - c.get()).sqrt();
    let a = (1.50112 * s.powf(6.05435) + 8.21644) / (4.17593 - 1.21222 * s);
    let d = (7.7731 - 0.565811 * s.powf(0.961546)) / (8.65912 - 0.159974 * s.powi(7));
    let x = a * mu.powf(d);
    match h0_infinity(c) {
        Ok(h_inf) => (1.0 + x) / (1.0 + x / h_inf),
        // Conservative limit: the denominator term vanishes.
        Err(_) => 1.0 + x,
    }
}

/// Fitted `H^(1)(1)` as a function of albedo.
pub fn h1_at_one_approx(c: Albedo) -> f64 {
    let c = c.get();
    (0.0242851 * c * c - 0.144839 * c).exp()
}

/// Angular profile of the `H^(1)` fit: zero at `mu = 0`, one at `mu = 1`.
pub fn h1_profile(mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let p = ((-1.12831 * mu + 1.85728) * mu - 1.07879) * mu + 0.459442;
    mu.powf(p)
}

/// Separable fit `H^(1)(mu) ~ H^(1)(1)^profile(mu)`; relative error below 0.5%.
///
/// Reduces to exactly one at `mu = 0` and at `c = 0`.
pub fn eval_h1_approx(mu: f64, c: Albedo) -> f64 {
    (h1_at_one_approx(c).ln() * h1_profile(mu)).exp()
}

/// Literal product `H^(1)(1) * exp(-0.0894878 profile(mu))`.
///
/// Kept for comparison only; it misses `H(0) = 1` by up to ~11% at `c = 1`.
pub fn eval_h1_approx_product(mu: f64, c: Albedo) -> f64 {
    h1_at_one_approx(c) * (-0.0894878 * h1_profile(mu)).exp()
}
