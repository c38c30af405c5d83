//! Analytic BRDF of a half space of Lambertian spheres.
//!
//! The reflectance is split into exact single scattering plus a multiple
//! scattering remainder expanded in azimuthal Fourier modes,
//!
//! ```text
//! f_r = f_1 + f_m^(0)(mu_i, mu_o) + f_m^(1)(mu_i, mu_o) cos(phi)
//! ```
//!
//! where each `f_m^(k)` is the all-orders three-term half-space solution minus
//! its own three-term single-scattering part. The second mode of the multiple
//! scattering is dropped. Angles follow the convention that both directions
//! point away from the surface and the incident azimuth is zero, so `phi = 0`
//! with `mu_i = mu_o` is exact backscatter.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{check_range, Result};
use crate::hfun::{eval_h0_approx, eval_h1_approx, Albedo};
use crate::phase::phase;
use crate::quad::GaussLegendre;

/// Lower clamp on direction cosines inside `1 / (mu_i + mu_o)` factors.
pub const GRAZING_CLAMP: f64 = 1e-6;

#[inline]
fn pair_sum(mu_i: f64, mu_o: f64) -> f64 {
    mu_i.max(GRAZING_CLAMP) + mu_o.max(GRAZING_CLAMP)
}

#[inline]
fn sine(mu: f64) -> f64 {
    (1.0 - mu * mu).max(0.0).sqrt()
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phi(phi: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut p = phi % two_pi;
    if p <= -PI {
        p += two_pi;
    } else if p > PI {
        p -= two_pi;
    }
    p
}

/// Incident and outgoing elevation cosines with their relative azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionPair {
    mu_i: f64,
    mu_o: f64,
    phi: f64,
}

impl DirectionPair {
    pub fn new(mu_i: f64, mu_o: f64, phi: f64) -> Result<Self> {
        check_range("mu_i", mu_i, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
        check_range("mu_o", mu_o, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
        check_range("phi", phi, f64::MIN, f64::MAX, "finite")?;
        Ok(Self { mu_i, mu_o, phi: wrap_phi(phi) })
    }

    pub fn mu_i(&self) -> f64 {
        self.mu_i
    }

    pub fn mu_o(&self) -> f64 {
        self.mu_o
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Exchanges incident and outgoing directions.
    pub fn swapped(&self) -> Self {
        Self { mu_i: self.mu_o, mu_o: self.mu_i, phi: self.phi }
    }

    /// Scattering deflection cosine `-omega_i . omega_o`.
    pub fn deflection_cosine(&self) -> f64 {
        -(sine(self.mu_i) * sine(self.mu_o) * self.phi.cos() + self.mu_i * self.mu_o)
    }
}

/// Particle albedo `c` together with the material's diffuse color `kd`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrdfParams {
    c: Albedo,
    kd: f64,
}

impl BrdfParams {
    pub fn from_albedo(c: Albedo) -> Self {
        Self { c, kd: c_to_kd_raw(c.get()).clamp(0.0, 1.0) }
    }

    pub fn from_kd(kd: f64) -> Result<Self> {
        let c = kd_to_c(kd)?;
        Ok(Self { c, kd })
    }

    pub fn c(&self) -> Albedo {
        self.c
    }

    pub fn kd(&self) -> f64 {
        self.kd
    }
}

/// Fitted constants of the first (`l`, `m`) and zeroth (`A`..`F`) modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeConstants {
    pub l: f64,
    pub m: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl ModeConstants {
    pub fn fitted(c: Albedo) -> Self {
        let (l, m) = constants_lm(c);
        let (a, e) = constants_ae(c);
        let [b, cc, d, f] = constants_bcdf(c);
        Self { l, m, a, b, c: cc, d, e, f }
    }
}

pub fn constants_lm(c: Albedo) -> (f64, f64) {
    let c = c.get();
    (-0.00473696 * c * c - 0.0589037 * c, 0.44038 * c + 1.0)
}

pub fn constants_ae(c: Albedo) -> (f64, f64) {
    let c = c.get();
    (69.0 * c / 128.0, 15.0 / 128.0 * (1.0 - c) * c * (4.0 * c / 3.0 + 3.0))
}

/// Rational fits of `B`, `C`, `D`, `F` in `s = sqrt(1 - c)`.
pub fn constants_bcdf(c: Albedo) -> [f64; 4] {
    let q = 1.0 - c.get();
    let s = q.sqrt();
    let q32 = q * s;
    let b = (0.346689 * q32 - 0.777574 * q + 0.515357 * s - 0.084463) / (0.182602 * q - 0.665502 * s + 0.964893);
    let cc = (-5602.45 * q32 + 7487.99 * q - 2567.74 * s + 682.848) / (1480.25 * q - 4008.33 * s + 5850.6);
    let d = (166.883 * q32 - 327.428 * q + 160.397 * s + 0.285529) / (596.423 * q - 412.984 * s + 674.191);
    let f = (266.063 * q32 - 21.9141 * q - 242.16 * s - 1.9209) / (215.773 * q + 457.42 * s + 1499.9);
    [b, cc, d, f]
}

/// Azimuthal Fourier coefficients of a BRDF at fixed `(mu_i, mu_o)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourierModes {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
}

impl FourierModes {
    pub fn reconstruct(&self, phi: f64) -> f64 {
        self.f0 + self.f1 * phi.cos() + self.f2 * (2.0 * phi).cos()
    }

    pub fn get(&self, m: usize) -> f64 {
        match m {
            0 => self.f0,
            1 => self.f1,
            2 => self.f2,
            _ => panic!("mode {m} out of range"),
        }
    }
}

impl std::ops::Add for FourierModes {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { f0: self.f0 + o.f0, f1: self.f1 + o.f1, f2: self.f2 + o.f2 }
    }
}

impl std::ops::Mul<f64> for FourierModes {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self { f0: self.f0 * s, f1: self.f1 * s, f2: self.f2 * s }
    }
}

/// Exact single scattering `c p(-omega_i . omega_o) / (mu_i + mu_o)`.
pub fn single_scatter(pair: &DirectionPair, c: Albedo) -> f64 {
    c.get() * phase(pair.deflection_cosine()) / pair_sum(pair.mu_i, pair.mu_o)
}

/// Fourier modes of [`single_scatter`], projected numerically in azimuth.
pub fn single_scatter_modes(mu_i: f64, mu_o: f64, c: Albedo) -> FourierModes {
    thread_local! {
        static RULE: GaussLegendre = GaussLegendre::new(96);
    }
    let s = sine(mu_i) * sine(mu_o);
    let p = mu_i * mu_o;
    let scale = c.get() / pair_sum(mu_i, mu_o);
    RULE.with(|gl| {
        let mut m = FourierModes::default();
        for (phi, w) in gl.points(0.0, PI) {
            let v = w * phase(-(s * phi.cos() + p));
            m.f0 += v;
            m.f1 += v * phi.cos();
            m.f2 += v * (2.0 * phi).cos();
        }
        FourierModes { f0: m.f0 / PI, f1: 2.0 * m.f1 / PI, f2: 2.0 * m.f2 / PI } * scale
    })
}

/// Weight of the first-mode functions in the azimuthal series.
///
/// The closed forms for the first mode follow the `f0 + 2 f1 cos(phi)`
/// normalization (their small-albedo limit is half the `cos(phi)` coefficient
/// of three-term single scattering), while the zeroth mode is the plain
/// azimuthal average.
pub const F1_SERIES_WEIGHT: f64 = 2.0;

/// All-orders first Fourier mode of the three-term half space.
pub fn f1_total(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    let (l, m) = constants_lm(c);
    let h = eval_h1_approx(mu_i, c) * eval_h1_approx(mu_o, c);
    let poly = 1.0 + (l * l + 45.0 * m / 64.0) * mu_i * mu_o + l * (mu_i + mu_o);
    c.get() * h / (6.0 * PI * pair_sum(mu_i, mu_o)) * (sine(mu_i) * sine(mu_o)) * poly
}

/// Three-term single scattering contained in [`f1_total`].
pub fn f1_single_3term(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    c.get() * (45.0 * mu_i * mu_o + 64.0) * (sine(mu_i) * sine(mu_o)) / (384.0 * PI * pair_sum(mu_i, mu_o))
}

pub fn f1_multi(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    f1_total(mu_i, mu_o, c) - f1_single_3term(mu_i, mu_o, c)
}

/// Cheaper symbolic-regression fit of [`f1_multi`].
pub fn f1_multi_fast(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    let cv = c.get();
    let sum = mu_i + mu_o;
    -0.0117 * cv * cv.atan() * (sine(mu_i) * sine(mu_o)) * (sum + mu_i * mu_o).tanh().sqrt() / pair_sum(mu_i, mu_o)
}

/// All-orders zeroth Fourier mode of the three-term half space.
pub fn f0_total(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    let k = ModeConstants::fitted(c);
    let h = eval_h0_approx(mu_i, c) * eval_h0_approx(mu_o, c);
    let sum = mu_i + mu_o;
    let prod = mu_i * mu_o;
    let poly = k.a + k.b * sum + k.c * prod + k.d * prod * sum + k.e * prod * prod + k.f * (mu_i * mu_i + mu_o * mu_o);
    h / (2.0 * PI * pair_sum(mu_i, mu_o)) * poly
}

/// Three-term single scattering contained in [`f0_total`].
pub fn f0_single_3term(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    // 45 mu_i^2 (3 mu_o^2 - 1) + 256 mu_i mu_o - 45 mu_o^2 + 207, expanded symmetrically.
    let prod = mu_i * mu_o;
    let poly = 135.0 * prod * prod - 45.0 * (mu_i * mu_i + mu_o * mu_o) + 256.0 * prod + 207.0;
    c.get() * poly / (768.0 * PI * pair_sum(mu_i, mu_o))
}

pub fn f0_multi(mu_i: f64, mu_o: f64, c: Albedo) -> f64 {
    f0_total(mu_i, mu_o, c) - f0_single_3term(mu_i, mu_o, c)
}

/// Fourier modes of the accurate variant (before clamping).
pub fn analytic_modes(mu_i: f64, mu_o: f64, c: Albedo) -> FourierModes {
    let ss = single_scatter_modes(mu_i, mu_o, c);
    FourierModes {
        f0: ss.f0 + f0_multi(mu_i, mu_o, c),
        f1: ss.f1 + F1_SERIES_WEIGHT * f1_multi(mu_i, mu_o, c),
        f2: ss.f2,
    }
}

/// Accurate variant before the final clamp to non-negative values.
pub fn eval_brdf_accurate_raw(pair: &DirectionPair, params: &BrdfParams) -> f64 {
    let c = params.c;
    let (mi, mo) = (pair.mu_i, pair.mu_o);
    single_scatter(pair, c) + f0_multi(mi, mo, c) + F1_SERIES_WEIGHT * f1_multi(mi, mo, c) * pair.phi.cos()
}

pub fn eval_brdf_accurate(pair: &DirectionPair, params: &BrdfParams) -> f64 {
    eval_brdf_accurate_raw(pair, params).max(0.0)
}

/// Fast symbolic-regression variant; uses both `c` and `kd`.
pub fn eval_brdf_fast(pair: &DirectionPair, params: &BrdfParams) -> f64 {
    let c = params.c.get();
    let s = sine(pair.mu_i) * sine(pair.mu_o);
    // acos(S) / S diverges as S -> 0, taking the middle term to zero.
    let middle = if s < 1e-12 {
        0.0
    } else {
        0.0151829 * (c - 0.249978) * (pair.phi.abs() + (pair.mu_i * pair.mu_o).sqrt()) / (s.acos() / s + 0.113706)
    };
    (single_scatter(pair, params.c) + middle + 0.234459 * params.kd.powf(1.85432)).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Accurate,
    Fast,
    /// Plain `kd / pi`, for side-by-side comparisons.
    Lambertian,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Accurate => "accurate",
            Variant::Fast => "fast",
            Variant::Lambertian => "lambertian",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "accurate" => Ok(Variant::Accurate),
            "fast" => Ok(Variant::Fast),
            "lambertian" => Ok(Variant::Lambertian),
            other => Err(format!("unknown variant '{other}'")),
        }
    }
}

/// Renderer-facing evaluation entry point, in units of 1/sr.
pub fn eval_brdf(pair: &DirectionPair, params: &BrdfParams, variant: Variant) -> f64 {
    match variant {
        Variant::Accurate => eval_brdf_accurate(pair, params),
        Variant::Fast => eval_brdf_fast(pair, params),
        Variant::Lambertian => params.kd / PI,
    }
}

/// Unclamped diffuse-color to particle-albedo fit.
pub fn kd_to_c_raw(kd: f64) -> f64 {
    let u = 1.0 - kd;
    (1.0 - 1.00425 * u.powf(2.67103)) / (1.0 - 0.219924 * u.powf(2.44559))
}

/// Unclamped particle-albedo to diffuse-color fit.
pub fn c_to_kd_raw(c: f64) -> f64 {
    let s = (1.0 - c).sqrt();
    (-0.453029 * (1.0 - c) - 0.544162 * s + 1.0) / (1.42931 * s + 1.0)
}

pub fn kd_to_c(kd: f64) -> Result<Albedo> {
    let kd = check_range("kd", kd, 0.0, 1.0, "[0, 1]")?;
    Albedo::new(kd_to_c_raw(kd).clamp(0.0, 1.0))
}

pub fn c_to_kd(c: f64) -> Result<f64> {
    let c = check_range("c", c, 0.0, 1.0, "[0, 1]")?;
    Ok(c_to_kd_raw(c).clamp(0.0, 1.0))
}

/// Quadrature resolution for hemispherical integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HemisphereRule {
    pub mu_points: usize,
    pub phi_points: usize,
}

impl Default for HemisphereRule {
    fn default() -> Self {
        Self { mu_points: 48, phi_points: 48 }
    }
}

/// `integral of f(mu_i, omega_o) mu_o d omega_o` over the outgoing hemisphere.
pub fn albedo_directional_with(mu_i: f64, params: &BrdfParams, variant: Variant, rule: HemisphereRule) -> f64 {
    let gl_mu = GaussLegendre::new(rule.mu_points);
    let gl_phi = GaussLegendre::new(rule.phi_points);
    let mut total = 0.0;
    for (mu_o, wm) in gl_mu.points(0.0, 1.0) {
        // Every variant is even in phi.
        let row: f64 = gl_phi
            .points(0.0, PI)
            .map(|(phi, wp)| {
                let pair = DirectionPair { mu_i, mu_o, phi };
                wp * eval_brdf(&pair, params, variant)
            })
            .sum();
        total += wm * mu_o * 2.0 * row;
    }
    total
}

pub fn albedo_directional(mu_i: f64, params: &BrdfParams) -> f64 {
    albedo_directional_with(mu_i, params, Variant::Accurate, HemisphereRule::default())
}

/// Spherical (bond) albedo: directional albedo averaged with weight `2 mu_i`.
pub fn albedo_spherical_with(params: &BrdfParams, variant: Variant, rule: HemisphereRule) -> f64 {
    GaussLegendre::new(rule.mu_points)
        .points(0.0, 1.0)
        .map(|(mu_i, w)| w * 2.0 * mu_i * albedo_directional_with(mu_i, params, variant, rule))
        .sum()
}

pub fn albedo_spherical(params: &BrdfParams) -> f64 {
    albedo_spherical_with(params, Variant::Accurate, HemisphereRule { mu_points: 24, phi_points: 48 })
}

/// RMS of `(fast - accurate) / accurate` over an `n x n x n` midpoint grid in
/// `(mu_i, mu_o, phi)` with `phi` in `[0, pi]`.
pub fn fast_relative_rms(params: &BrdfParams, n: usize) -> f64 {
    let mid = |k: usize| (k as f64 + 0.5) / n as f64;
    let mut sum = 0.0;
    let mut count = 0usize;
    for a in 0..n {
        for b in 0..n {
            for p in 0..n {
                let pair = DirectionPair { mu_i: mid(a), mu_o: mid(b), phi: PI * mid(p) };
                let acc = eval_brdf_accurate(&pair, params);
                if acc > 0.0 {
                    sum += ((eval_brdf_fast(&pair, params) - acc) / acc).powi(2);
                    count += 1;
                }
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).sqrt()
    }
}

/// Cosine-weighted outgoing direction; returns the pair and its pdf `mu_o / pi`.
pub fn sample_outgoing<R: Rng + ?Sized>(mu_i: f64, rng: &mut R) -> Result<(DirectionPair, f64)> {
    check_range("mu_i", mu_i, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
    // 1 - u lies in (0, 1], keeping mu_o strictly positive.
    let mu_o = (1.0 - rng.random::<f64>()).sqrt();
    let phi = PI - 2.0 * PI * rng.random::<f64>();
    let pair = DirectionPair::new(mu_i, mu_o, phi)?;
    Ok((pair, sample_pdf(mu_o)))
}

pub fn sample_pdf(mu_o: f64) -> f64 {
    mu_o.max(0.0) / PI
}
