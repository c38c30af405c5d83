//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lsphere::mcref::{Absorption, BinLayout};
use lsphere::{Albedo, BrdfParams};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Parser)]
#[command(name = "lsphere", version, about = "Lambert-sphere BRDF validation and rendering harness")]
pub struct Cli {
    /// Output path; the manifest is written beside it as `<PATH>.manifest`.
    /// Without it, data goes to stdout and the manifest to stderr.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for Monte Carlo runs (0 = all cores). Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Normalization, expansion and sampler checks of the phase function.
    ValidatePhase(PhaseArgs),
    /// Numeric versus fitted H-functions.
    ValidateH(HArgs),
    /// Monte Carlo reference versus the analytic BRDF.
    ValidateBrdf(BrdfArgs),
    /// Fitted constants, albedo mappings and Fourier modes for plotting.
    Tables(TablesArgs),
    /// Direct-lit orthographic sphere as a binary PPM.
    RenderSphere(RenderArgs),
    /// Evaluation throughput of the BRDF variants.
    Bench(BenchArgs),
}

/// Parses counts written either as integers or as `1e6`.
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 {
        Ok(x as u64)
    } else {
        Err(format!("'{s}' is not a non-negative integer"))
    }
}

/// Parses `MxN` into a bin layout of `M` cosine bins by `N` azimuth bins.
pub fn parse_bins(s: &str) -> std::result::Result<BinLayout, String> {
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(|| format!("'{s}' is not of the form MxN"))?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad cosine bin count in '{s}'"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad azimuth bin count in '{s}'"))?;
    BinLayout::new(m, n).map_err(|e| e.to_string())
}

/// Parses `x,y,z`.
pub fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("'{s}' is not of the form x,y,z"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|_| format!("bad component '{p}' in '{s}'"))?;
    }
    Ok(v)
}

/// The flag spelling of an enum value.
pub fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map_or_else(String::new, |p| p.get_name().to_owned())
}

/// Particle albedo `c` or diffuse color `kd`; at most one may be given.
#[derive(Debug, Clone, Copy, Default, Args)]
#[group(multiple = false)]
pub struct AlbedoArgs {
    /// Single-scattering albedo of the particles, in [0, 1].
    #[arg(long)]
    pub c: Option<f64>,
    /// Diffuse color (spherical albedo), in [0, 1]; mapped to c by the fitted inverse.
    #[arg(long)]
    pub kd: Option<f64>,
}

impl AlbedoArgs {
    pub fn with_c(c: f64) -> Self {
        Self { c: Some(c), kd: None }
    }

    pub fn resolve(&self, default_c: f64) -> Result<BrdfParams> {
        Ok(match (self.c, self.kd) {
            (Some(c), None) => BrdfParams::from_albedo(Albedo::new(c)?),
            (None, Some(kd)) => BrdfParams::from_kd(kd)?,
            (None, None) => BrdfParams::from_albedo(Albedo::new(default_c)?),
            (Some(_), Some(_)) => return Err(CliError::Usage("--c and --kd are mutually exclusive".into())),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    /// Legendre terms kept for the truncation-error scan.
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
    /// Points of the uniform cosine grid for the truncation scan.
    #[arg(long, default_value = "100001", value_parser = parse_count)]
    pub grid: u64,
    /// Points of the uniform grid in the random variate for the fast sampler.
    #[arg(long, default_value = "100000", value_parser = parse_count)]
    pub sampler_grid: u64,
    /// Samples for the exact-sampler KS and mean tests.
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_norm: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_legendre: f64,
    #[arg(long, default_value_t = 5e-4)]
    pub tol_fast: f64,
}

impl Default for PhaseArgs {
    fn default() -> Self {
        Self {
            terms: 3,
            grid: 100_001,
            sampler_grid: 100_000,
            samples: 1_000_000,
            seed: 42,
            tol_norm: 1e-10,
            tol_legendre: 1e-8,
            tol_fast: 5e-4,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct HArgs {
    /// Albedo grid points, uniform on [0, 1].
    #[arg(long, default_value_t = 32)]
    pub c_grid: usize,
    /// Cosine grid points, uniform on [0, 1].
    #[arg(long, default_value_t = 32)]
    pub mu_grid: usize,
    #[arg(long, default_value_t = 0.01)]
    pub tol_h0: f64,
    #[arg(long, default_value_t = 0.005)]
    pub tol_h1: f64,
    /// Relative agreement of the mode-0 limit at large argument.
    #[arg(long, default_value_t = 1e-3)]
    pub tol_h0_inf: f64,
    /// Relative tolerance of the numeric H quadrature.
    #[arg(long, default_value_t = 1e-10)]
    pub quad_rel_tol: f64,
}

impl Default for HArgs {
    fn default() -> Self {
        Self { c_grid: 32, mu_grid: 32, tol_h0: 0.01, tol_h1: 0.005, tol_h0_inf: 1e-3, quad_rel_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbsorptionArg {
    Weighting,
    Analog,
}

impl From<AbsorptionArg> for Absorption {
    fn from(a: AbsorptionArg) -> Self {
        match a {
            AbsorptionArg::Weighting => Absorption::Weighting,
            AbsorptionArg::Analog => Absorption::Analog,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    /// Single-collision tally against exact single scattering, per bin.
    Single,
    /// Multiple-scattering Fourier modes against the analytic modes, per cosine row.
    Modes,
    /// Albedo, conservation and weight balance.
    Energy,
    /// Swap of incidence and exit cosines, from two extra runs at bin centers.
    Reciprocity,
}

#[derive(Debug, Clone, Args)]
pub struct BrdfArgs {
    #[command(flatten)]
    pub albedo: AlbedoArgs,
    /// Incidence cosine.
    #[arg(long, default_value_t = 1.0)]
    pub mu_i: f64,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub paths: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Cosine by azimuth bins.
    #[arg(long, default_value = "64x64", value_parser = parse_bins)]
    pub bins: BinLayout,
    /// Collision cap per path (0 = none; paths at c = 1 then have unbounded mean length).
    #[arg(long, default_value = "1e5", value_parser = parse_count)]
    pub max_collisions: u64,
    #[arg(long, value_enum, default_value_t = AbsorptionArg::Weighting)]
    pub absorption: AbsorptionArg,
    /// Paths per independently seeded chunk; part of the reproducibility key.
    #[arg(long, default_value = "65536", value_parser = parse_count)]
    pub chunk_paths: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "single,modes,energy,reciprocity")]
    pub suites: Vec<Suite>,
    /// Second cosine for the reciprocity suite.
    #[arg(long, default_value_t = 0.5)]
    pub reciprocity_mu: f64,
    /// |z| limit for every statistical comparison.
    #[arg(long, default_value_t = 3.0)]
    pub tol_z: f64,
    #[arg(long, default_value_t = 0.99)]
    pub tol_single_rate: f64,
    #[arg(long, default_value_t = 0.95)]
    pub tol_mode_rate: f64,
    /// Relative fit-tolerance floor added in quadrature to the mode standard errors.
    #[arg(long, default_value_t = crate::commands::validate_brdf::DEFAULT_FIT_FLOOR)]
    pub tol_floor: f64,
    /// Bound on max|f2| / max f0 of the multiple-scattering tally (checked at c = 1).
    #[arg(long, default_value_t = 0.1)]
    pub tol_mode2: f64,
    /// Fit slack of the analytic directional albedo.
    #[arg(long, default_value_t = 0.02)]
    pub tol_albedo: f64,
}

impl Default for BrdfArgs {
    fn default() -> Self {
        Self {
            albedo: AlbedoArgs::default(),
            mu_i: 1.0,
            paths: 1_000_000,
            seed: 42,
            bins: BinLayout::default(),
            max_collisions: 100_000,
            absorption: AbsorptionArg::Weighting,
            chunk_paths: 65_536,
            suites: vec![Suite::Single, Suite::Modes, Suite::Energy, Suite::Reciprocity],
            reciprocity_mu: 0.5,
            tol_z: 3.0,
            tol_single_rate: 0.99,
            tol_mode_rate: 0.95,
            tol_floor: crate::commands::validate_brdf::DEFAULT_FIT_FLOOR,
            tol_mode2: 0.1,
            tol_albedo: 0.02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Fitted constants l, m, A..F and H-function limits over c.
    Constants,
    /// Diffuse color and particle albedo mappings over c.
    AlbedoMap,
    /// Analytic Fourier modes over (mu_i, mu_o) at one albedo.
    Modes,
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Points per axis.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// Albedo for `--quantity modes`.
    #[command(flatten)]
    pub albedo: AlbedoArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Accurate,
    Fast,
    Lambertian,
}

impl From<VariantArg> for lsphere::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Accurate => lsphere::Variant::Accurate,
            VariantArg::Fast => lsphere::Variant::Fast,
            VariantArg::Lambertian => lsphere::Variant::Lambertian,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub albedo: AlbedoArgs,
    /// Direction towards the light; the viewer looks down -z from +z.
    #[arg(long, default_value = "0,0,1", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub light_dir: [f64; 3],
    #[arg(long, value_enum, default_value_t = VariantArg::Accurate)]
    pub variant: VariantArg,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 256)]
    pub size: usize,
    /// Light irradiance at normal incidence; pi maps a white Lambertian to 1.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub irradiance: f64,
    /// Also render this variant and report the RMS relative difference.
    #[arg(long, value_enum)]
    pub compare: Option<VariantArg>,
}

impl Default for RenderArgs {
    fn default() -> Self {
        Self {
            albedo: AlbedoArgs::default(),
            light_dir: [0.0, 0.0, 1.0],
            variant: VariantArg::Accurate,
            size: 256,
            irradiance: std::f64::consts::PI,
            compare: None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Evaluations per variant.
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub evals: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub albedo: AlbedoArgs,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn parsers() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("12"), Ok(12));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert_eq!(parse_bins("32x16").unwrap(), BinLayout::new(32, 16).unwrap());
        assert!(parse_bins("0x4").is_err());
        assert!(parse_bins("44").is_err());
        assert_eq!(parse_vec3("0, -1,2.5"), Ok([0.0, -1.0, 2.5]));
        assert!(parse_vec3("1,2").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn c_and_kd_conflict() {
        let r = Cli::try_parse_from(["lsphere", "validate-brdf", "--c", "0.5", "--kd", "0.5"]);
        assert!(r.is_err());
        assert!(AlbedoArgs { c: Some(0.5), kd: Some(0.5) }.resolve(1.0).is_err());
        let p = AlbedoArgs { c: None, kd: Some(0.6) }.resolve(1.0).unwrap();
        assert!((p.kd() - 0.6).abs() < 1e-15);
    }
}
