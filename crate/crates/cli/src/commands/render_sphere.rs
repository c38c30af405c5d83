use lsphere::brdf::{eval_brdf, DirectionPair};
use lsphere::{BrdfParams, Variant, Vec3};

use super::Output;
use crate::args::RenderArgs;
use crate::error::{CliError, Result};
use crate::output::{Check, Manifest};

/// Pixels whose view cosine is below this count as limb pixels.
pub const LIMB_MU: f64 = 0.25;

/// Linear radiance image, row-major from the top-left; `None` off the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub size: usize,
    pub pixels: Vec<Option<f64>>,
}

impl Image {
    /// Sphere-relative position and view cosine of pixel `(px, py)`.
    fn surface(size: usize, px: usize, py: usize) -> Option<(Vec3, f64)> {
        let x = 2.0 * (px as f64 + 0.5) / size as f64 - 1.0;
        let y = 1.0 - 2.0 * (py as f64 + 0.5) / size as f64;
        let r2 = x * x + y * y;
        (r2 < 1.0).then(|| {
            let z = (1.0 - r2).sqrt();
            (Vec3::new(x, y, z), z)
        })
    }

    /// Limb-pixel mean radiance, counting unlit limb pixels as zero.
    pub fn limb_mean(&self) -> f64 {
        let (mut sum, mut n) = (0.0, 0usize);
        for py in 0..self.size {
            for px in 0..self.size {
                if let (Some((_, mu_o)), Some(v)) = (Self::surface(self.size, px, py), self.pixels[py * self.size + px])
                {
                    if mu_o < LIMB_MU {
                        sum += v;
                        n += 1;
                    }
                }
            }
        }
        if n == 0 {
            0.0
        } else {
            sum / n as f64
        }
    }

    /// RMS of `(other - self) / self` over sphere pixels where `self` is lit.
    pub fn rms_relative_diff(&self, other: &Image) -> f64 {
        let (mut sum, mut n) = (0.0, 0usize);
        for (a, b) in self.pixels.iter().zip(&other.pixels) {
            if let (Some(a), Some(b)) = (a, b) {
                if *a > 0.0 {
                    sum += ((b - a) / a).powi(2);
                    n += 1;
                }
            }
        }
        if n == 0 {
            0.0
        } else {
            (sum / n as f64).sqrt()
        }
    }

    /// Binary greyscale-as-RGB PPM with sRGB encoding and a black background.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.size, self.size).into_bytes();
        out.reserve(3 * self.pixels.len());
        for p in &self.pixels {
            let v = p.map_or(0, srgb_encode);
            out.extend_from_slice(&[v, v, v]);
        }
        out
    }
}

/// Linear value to an 8-bit sRGB code, clamping to `[0, 1]`.
pub fn srgb_encode(linear: f64) -> u8 {
    let x = linear.clamp(0.0, 1.0);
    let s = if x <= 0.0031308 { 12.92 * x } else { 1.055 * x.powf(1.0 / 2.4) - 0.055 };
    (255.0 * s).round() as u8
}

/// Relative azimuth between light and view about the normal `n`.
fn relative_azimuth(n: Vec3, light: Vec3, view: Vec3, mu_i: f64, mu_o: f64) -> f64 {
    let lt = light - n * mu_i;
    let vt = view - n * mu_o;
    let d = lt.length() * vt.length();
    if d < 1e-12 {
        0.0
    } else {
        (lt.dot(vt) / d).clamp(-1.0, 1.0).acos()
    }
}

/// Direct lighting `L = f_r mu_i E` of an orthographic unit sphere seen from +z.
pub fn render(params: &BrdfParams, light: Vec3, variant: Variant, size: usize, irradiance: f64) -> Result<Image> {
    let light = light.normalized();
    let view = Vec3::new(0.0, 0.0, 1.0);
    let mut pixels = Vec::with_capacity(size * size);
    for py in 0..size {
        for px in 0..size {
            pixels.push(match Image::surface(size, px, py) {
                None => None,
                Some((n, mu_o)) => {
                    let mu_i = n.dot(light).min(1.0);
                    if mu_i <= 0.0 {
                        Some(0.0)
                    } else {
                        let phi = relative_azimuth(n, light, view, mu_i, mu_o);
                        let pair = DirectionPair::new(mu_i, mu_o.min(1.0), phi)?;
                        Some(eval_brdf(&pair, params, variant) * mu_i * irradiance)
                    }
                }
            });
        }
    }
    Ok(Image { size, pixels })
}

pub fn run(args: &RenderArgs) -> Result<Output> {
    if args.size == 0 {
        return Err(CliError::Usage("--size must be positive".into()));
    }
    let [x, y, z] = args.light_dir;
    let light = Vec3::new(x, y, z);
    if !(light.length() > 0.0 && light.length().is_finite()) {
        return Err(CliError::Usage("--light-dir must be a non-zero finite vector".into()));
    }
    if !(args.irradiance >= 0.0 && args.irradiance.is_finite()) {
        return Err(CliError::Usage("--irradiance must be finite and non-negative".into()));
    }
    let params = args.albedo.resolve(1.0)?;
    let variant: Variant = args.variant.into();
    let image = render(&params, light, variant, args.size, args.irradiance)?;

    let mut checks = vec![Check::info("limb_mean", image.limb_mean())];
    let mut m = Manifest::new("render-sphere");
    m.push("c", params.c().get());
    m.push("kd", params.kd());
    m.push("light_dir", format!("{x},{y},{z}"));
    m.push("variant", variant.name());
    m.push("size", args.size);
    m.push("irradiance", args.irradiance);
    if let Some(other) = args.compare {
        let other: Variant = other.into();
        let second = render(&params, light, other, args.size, args.irradiance)?;
        m.push("compare", other.name());
        checks.push(Check::info("compare_limb_mean", second.limb_mean()));
        checks.push(Check::info("rms_relative_diff", image.rms_relative_diff(&second)));
    }
    m.push_checks(&checks);
    Ok(Output { payload: image.to_ppm(), manifest: m, checks })
}
