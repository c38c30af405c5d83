//! Monte Carlo reference for a homogeneous half space of Lambertian spheres.
//!
//! Particles enter at `z = 0` and travel in `z < 0`; distances are in mean
//! free paths. Only depth and direction are tracked, since the half space is
//! invariant under lateral translation. A path escapes when an upward free
//! flight would cross `z = 0`, which is decided analytically per segment.
//!
//! Paths are split into fixed-size chunks, each driven by its own ChaCha
//! stream keyed by the chunk index, and chunk grids are merged in index order.
//! The result is therefore bit-identical for any number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::brdf::FourierModes;
use crate::error::{check_range, Error, Result};
use crate::geom::Vec3;
use crate::hfun::Albedo;
use crate::phase::sample_direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Absorption {
    /// Multiply the path weight by `c` at every collision.
    Weighting,
    /// Terminate the path with probability `1 - c` at every collision.
    Analog,
}

/// Uniform binning of escape directions in `mu_o` and `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinLayout {
    pub n_mu: usize,
    pub n_phi: usize,
}

impl Default for BinLayout {
    fn default() -> Self {
        Self { n_mu: 64, n_phi: 64 }
    }
}

impl BinLayout {
    pub fn new(n_mu: usize, n_phi: usize) -> Result<Self> {
        if n_mu == 0 || n_phi == 0 {
            return Err(Error::Config(format!("bin counts must be positive, got {n_mu}x{n_phi}")));
        }
        Ok(Self { n_mu, n_phi })
    }

    pub fn len(&self) -> usize {
        self.n_mu * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn d_mu(&self) -> f64 {
        1.0 / self.n_mu as f64
    }

    pub fn d_phi(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    pub fn mu_edges(&self) -> Vec<f64> {
        (0..=self.n_mu).map(|i| i as f64 * self.d_mu()).collect()
    }

    pub fn phi_edges(&self) -> Vec<f64> {
        (0..=self.n_phi).map(|j| -PI + j as f64 * self.d_phi()).collect()
    }

    pub fn mu_mid(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.d_mu()
    }

    pub fn phi_mid(&self, j: usize) -> f64 {
        -PI + (j as f64 + 0.5) * self.d_phi()
    }

    pub fn mu_range(&self, i: usize) -> (f64, f64) {
        (i as f64 * self.d_mu(), (i + 1) as f64 * self.d_mu())
    }

    pub fn phi_range(&self, j: usize) -> (f64, f64) {
        let lo = -PI + j as f64 * self.d_phi();
        (lo, lo + self.d_phi())
    }

    /// Flat index of the bin holding `(mu_o, phi)`, row-major in `mu`.
    #[inline]
    pub fn index(&self, mu_o: f64, phi: f64) -> usize {
        let i = ((mu_o * self.n_mu as f64) as usize).min(self.n_mu - 1);
        let j = (((phi + PI) / (2.0 * PI) * self.n_phi as f64) as usize).min(self.n_phi - 1);
        i * self.n_phi + j
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub n_paths: u64,
    pub seed: u64,
    /// Paths still inside after this many collisions are dropped; 0 disables the cap.
    pub max_collisions: u64,
    pub roulette_threshold: f64,
    pub roulette_survival: f64,
    pub absorption: Absorption,
    pub layout: BinLayout,
    /// Paths per independently seeded chunk; part of the reproducibility key.
    pub chunk_paths: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_paths: 1_000_000,
            seed: 42,
            max_collisions: 100_000,
            roulette_threshold: 1e-4,
            roulette_survival: 0.1,
            absorption: Absorption::Weighting,
            layout: BinLayout::default(),
            chunk_paths: 1 << 16,
            threads: 0,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::Config("n_paths must be at least 1".into()));
        }
        if !(self.roulette_survival > 0.0 && self.roulette_survival <= 1.0) {
            return Err(Error::Config(format!("roulette_survival must lie in (0, 1], got {}", self.roulette_survival)));
        }
        if !(self.roulette_threshold >= 0.0 && self.roulette_threshold.is_finite()) {
            return Err(Error::Config(format!(
                "roulette_threshold must be finite and non-negative, got {}",
                self.roulette_threshold
            )));
        }
        if self.chunk_paths == 0 {
            return Err(Error::Config("chunk_paths must be at least 1".into()));
        }
        BinLayout::new(self.layout.n_mu, self.layout.n_phi)?;
        Ok(())
    }
}

/// Escaped weight and squared weight per bin.
#[derive(Debug, Clone, PartialEq)]
pub struct Tally {
    pub weights: Vec<f64>,
    pub squared_weights: Vec<f64>,
}

impl Tally {
    fn new(len: usize) -> Self {
        Self { weights: vec![0.0; len], squared_weights: vec![0.0; len] }
    }

    #[inline]
    fn add(&mut self, bin: usize, w: f64) {
        self.weights[bin] += w;
        self.squared_weights[bin] += w * w;
    }

    fn merge(&mut self, o: &Tally) {
        for (a, b) in self.weights.iter_mut().zip(&o.weights) {
            *a += b;
        }
        for (a, b) in self.squared_weights.iter_mut().zip(&o.squared_weights) {
            *a += b;
        }
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn total_squared(&self) -> f64 {
        self.squared_weights.iter().sum()
    }
}

/// Weight bookkeeping; `escaped + absorbed + truncated + roulette_loss -
/// roulette_gain` equals the number of paths up to rounding.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub escaped: f64,
    pub absorbed: f64,
    pub roulette_loss: f64,
    pub roulette_gain: f64,
    pub truncated_weight: f64,
    pub truncated_paths: u64,
    pub collisions: u64,
    pub max_path_collisions: u64,
}

impl Diagnostics {
    fn merge(&mut self, o: &Diagnostics) {
        self.escaped += o.escaped;
        self.absorbed += o.absorbed;
        self.roulette_loss += o.roulette_loss;
        self.roulette_gain += o.roulette_gain;
        self.truncated_weight += o.truncated_weight;
        self.truncated_paths += o.truncated_paths;
        self.collisions += o.collisions;
        self.max_path_collisions = self.max_path_collisions.max(o.max_path_collisions);
    }

    pub fn balance(&self) -> f64 {
        self.escaped + self.absorbed + self.truncated_weight + self.roulette_loss - self.roulette_gain
    }
}

/// Which escape events an estimate is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// Exactly one collision before escape.
    Single,
    /// Two or more collisions.
    Multiple,
    Total,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Single => "single",
            Component::Multiple => "multiple",
            Component::Total => "total",
        }
    }
}

/// Accumulated escape statistics for one incidence direction.
#[derive(Debug, Clone, PartialEq)]
pub struct BinGrid {
    pub layout: BinLayout,
    pub n_paths: u64,
    pub single: Tally,
    pub multiple: Tally,
    pub diagnostics: Diagnostics,
}

impl BinGrid {
    pub fn new(layout: BinLayout) -> Self {
        Self {
            layout,
            n_paths: 0,
            single: Tally::new(layout.len()),
            multiple: Tally::new(layout.len()),
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn merge(&mut self, o: &BinGrid) {
        assert_eq!(self.layout, o.layout, "merging grids with different layouts");
        self.n_paths += o.n_paths;
        self.single.merge(&o.single);
        self.multiple.merge(&o.multiple);
        self.diagnostics.merge(&o.diagnostics);
    }

    pub fn mu_edges(&self) -> Vec<f64> {
        self.layout.mu_edges()
    }

    pub fn phi_edges(&self) -> Vec<f64> {
        self.layout.phi_edges()
    }

    /// Per-bin `(weights, squared_weights)` for a component.
    ///
    /// Each path escapes at most once, so the components' squared sums add.
    pub fn sums(&self, component: Component, bin: usize) -> (f64, f64) {
        match component {
            Component::Single => (self.single.weights[bin], self.single.squared_weights[bin]),
            Component::Multiple => (self.multiple.weights[bin], self.multiple.squared_weights[bin]),
            Component::Total => (
                self.single.weights[bin] + self.multiple.weights[bin],
                self.single.squared_weights[bin] + self.multiple.squared_weights[bin],
            ),
        }
    }

    pub fn mean_collisions(&self) -> f64 {
        self.diagnostics.collisions as f64 / self.n_paths as f64
    }
}

/// Launch direction of travel for incidence cosine `mu_i` at azimuth zero.
fn launch_direction(mu_i: f64) -> Vec3 {
    Vec3::new(-(1.0 - mu_i * mu_i).max(0.0).sqrt(), 0.0, -mu_i)
}

fn trace_path<R: Rng>(mu_i: f64, c: f64, cfg: &McConfig, rng: &mut R, grid: &mut BinGrid) {
    let diag = &mut grid.diagnostics;
    let mut dir = launch_direction(mu_i);
    let mut z = 0.0;
    let mut w = 1.0;
    let mut n = 0u64;
    loop {
        let step = -(1.0 - rng.random::<f64>()).ln();
        if dir.z > 0.0 && z + step * dir.z >= 0.0 {
            let bin = grid.layout.index(dir.z, dir.y.atan2(dir.x));
            if n == 1 {
                grid.single.add(bin, w);
            } else {
                grid.multiple.add(bin, w);
            }
            diag.escaped += w;
            break;
        }
        z += step * dir.z;
        if cfg.max_collisions > 0 && n == cfg.max_collisions {
            diag.truncated_weight += w;
            diag.truncated_paths += 1;
            break;
        }
        n += 1;
        diag.collisions += 1;
        match cfg.absorption {
            Absorption::Weighting => {
                diag.absorbed += w * (1.0 - c);
                w *= c;
                if w <= 0.0 {
                    break;
                }
            }
            Absorption::Analog => {
                if rng.random::<f64>() >= c {
                    diag.absorbed += w;
                    break;
                }
            }
        }
        dir = sample_direction(dir, rng);
        if w < cfg.roulette_threshold {
            if rng.random::<f64>() < cfg.roulette_survival {
                let boosted = w / cfg.roulette_survival;
                diag.roulette_gain += boosted - w;
                w = boosted;
            } else {
                diag.roulette_loss += w;
                break;
            }
        }
    }
    diag.max_path_collisions = diag.max_path_collisions.max(n);
}

fn run_chunk(mu_i: f64, c: f64, cfg: &McConfig, chunk: u64) -> BinGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chunk);
    let start = chunk * cfg.chunk_paths;
    let count = cfg.chunk_paths.min(cfg.n_paths - start);
    let mut grid = BinGrid::new(cfg.layout);
    grid.n_paths = count;
    for _ in 0..count {
        trace_path(mu_i, c, cfg, &mut rng, &mut grid);
    }
    grid
}

/// Traces `cfg.n_paths` particles incident with cosine `mu_i` and bins their
/// escape directions.
pub fn simulate_halfspace(mu_i: f64, c: Albedo, cfg: &McConfig) -> Result<BinGrid> {
    check_range("mu_i", mu_i, f64::MIN_POSITIVE, 1.0, "(0, 1]")?;
    cfg.validate()?;
    let c = c.get();
    let n_chunks = cfg.n_paths.div_ceil(cfg.chunk_paths);
    let body = || {
        let mut total = BinGrid::new(cfg.layout);
        // Bounded batches keep memory flat; merging runs in chunk order.
        let batch = (rayon::current_num_threads() as u64 * 4).max(1);
        let mut first = 0;
        while first < n_chunks {
            let last = (first + batch).min(n_chunks);
            let grids: Vec<BinGrid> = (first..last).into_par_iter().map(|k| run_chunk(mu_i, c, cfg, k)).collect();
            for g in &grids {
                total.merge(g);
            }
            first = last;
        }
        total
    };
    if cfg.threads == 0 {
        Ok(body())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        Ok(pool.install(body))
    }
}

/// Per-bin BRDF estimate in 1/sr, row-major in `mu_o`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrdfEstimate {
    pub layout: BinLayout,
    pub component: Component,
    pub value: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl BrdfEstimate {
    pub fn at(&self, i: usize, j: usize) -> (f64, f64) {
        let k = i * self.layout.n_phi + j;
        (self.value[k], self.stderr[k])
    }
}

/// Converts escaped energy into radiance per unit incident flux,
/// `sum(w) / (n_paths * mu_mid * d_mu * d_phi)`.
pub fn estimate_brdf(grid: &BinGrid, component: Component) -> BrdfEstimate {
    let l = grid.layout;
    let n = grid.n_paths as f64;
    let mut value = Vec::with_capacity(l.len());
    let mut stderr = Vec::with_capacity(l.len());
    for i in 0..l.n_mu {
        let scale = 1.0 / (l.mu_mid(i) * l.d_mu() * l.d_phi());
        for j in 0..l.n_phi {
            let (s1, s2) = grid.sums(component, i * l.n_phi + j);
            let mean = s1 / n;
            let var = (s2 / n - mean * mean).max(0.0) / n;
            value.push(scale * mean);
            stderr.push(scale * var.sqrt());
        }
    }
    BrdfEstimate { layout: l, component, value, stderr }
}

/// Fourier modes of one `mu_o` row together with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeEstimate {
    pub modes: FourierModes,
    pub stderr: FourierModes,
}

#[inline]
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Projection weights turning a row of azimuth-bin averages into the
/// coefficient of `cos(m phi)`.
///
/// The bin average of `cos(m phi)` is `cos(m phi_mid) sinc(m d_phi / 2)`, so
/// dividing by the sinc factor makes the projection exact for the first
/// `n_phi / 2` harmonics.
pub fn projection_weights(layout: &BinLayout, m: usize) -> Vec<f64> {
    let d = layout.d_phi();
    (0..layout.n_phi)
        .map(|j| {
            if m == 0 {
                d / (2.0 * PI)
            } else {
                let mf = m as f64;
                (mf * layout.phi_mid(j)).cos() * d / (PI * sinc(mf * d / 2.0))
            }
        })
        .collect()
}

/// Projects a row of azimuth-bin values onto modes 0, 1, 2.
pub fn fourier_project(layout: &BinLayout, row: &[f64]) -> FourierModes {
    assert_eq!(row.len(), layout.n_phi, "row length must match azimuth bins");
    let dot = |m| projection_weights(layout, m).iter().zip(row).map(|(a, b)| a * b).sum();
    FourierModes { f0: dot(0), f1: dot(1), f2: dot(2) }
}

/// Fourier modes per `mu_o` bin, with standard errors from the per-path
/// second moments.
pub fn fourier_project_grid(grid: &BinGrid, component: Component) -> Vec<ModeEstimate> {
    let l = grid.layout;
    let n = grid.n_paths as f64;
    let weights = [projection_weights(&l, 0), projection_weights(&l, 1), projection_weights(&l, 2)];
    (0..l.n_mu)
        .map(|i| {
            let scale = 1.0 / (l.mu_mid(i) * l.d_mu() * l.d_phi());
            let mut mean = [0.0; 3];
            let mut second = [0.0; 3];
            #[allow(clippy::needless_range_loop)]
            for j in 0..l.n_phi {
                let (s1, s2) = grid.sums(component, i * l.n_phi + j);
                for m in 0..3 {
                    let a = weights[m][j] * scale;
                    mean[m] += a * s1 / n;
                    second[m] += a * a * s2 / n;
                }
            }
            let se = |m: usize| ((second[m] - mean[m] * mean[m]).max(0.0) / n).sqrt();
            ModeEstimate {
                modes: FourierModes { f0: mean[0], f1: mean[1], f2: mean[2] },
                stderr: FourierModes { f0: se(0), f1: se(1), f2: se(2) },
            }
        })
        .collect()
}

/// Directional albedo estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct AlbedoEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Fraction of launched weight dropped at the collision cap.
    pub truncated_fraction: f64,
    pub mean_collisions: f64,
    pub diagnostics: Diagnostics,
}

pub fn albedo_from_grid(grid: &BinGrid) -> AlbedoEstimate {
    let n = grid.n_paths as f64;
    let s1 = grid.single.total() + grid.multiple.total();
    let s2 = grid.single.total_squared() + grid.multiple.total_squared();
    let mean = s1 / n;
    AlbedoEstimate {
        value: mean,
        stderr: ((s2 / n - mean * mean).max(0.0) / n).sqrt(),
        truncated_fraction: grid.diagnostics.truncated_weight / n,
        mean_collisions: grid.mean_collisions(),
        diagnostics: grid.diagnostics.clone(),
    }
}

pub fn albedo_mc(mu_i: f64, c: Albedo, cfg: &McConfig) -> Result<AlbedoEstimate> {
    Ok(albedo_from_grid(&simulate_halfspace(mu_i, c, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alb(c: f64) -> Albedo {
        Albedo::new(c).unwrap()
    }

    fn small(n: u64) -> McConfig {
        McConfig { n_paths: n, layout: BinLayout::new(8, 16).unwrap(), chunk_paths: 1000, ..McConfig::default() }
    }

    #[test]
    fn layout_indexing() {
        let l = BinLayout::new(4, 8).unwrap();
        assert_eq!(l.index(0.0, -PI), 0);
        assert_eq!(l.index(1.0, PI), l.len() - 1);
        assert_eq!(l.index(0.3, 0.01), 8 + 4);
        assert_eq!(l.mu_edges().len(), 5);
        assert!((l.phi_edges()[8] - PI).abs() < 1e-15);
        assert!(BinLayout::new(0, 3).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(McConfig { n_paths: 0, ..small(1) }.validate().is_err());
        assert!(McConfig { roulette_survival: 0.0, ..small(1) }.validate().is_err());
        assert!(McConfig { roulette_survival: 1.5, ..small(1) }.validate().is_err());
        assert!(simulate_halfspace(0.0, alb(0.5), &small(10)).is_err());
    }

    #[test]
    fn zero_albedo_reflects_nothing() {
        let g = simulate_halfspace(0.6, alb(0.0), &small(5000)).unwrap();
        assert_eq!(g.single.total() + g.multiple.total(), 0.0);
        assert!((g.diagnostics.absorbed - 5000.0).abs() < 1e-9);
        let a = albedo_from_grid(&g);
        assert_eq!(a.value, 0.0);
        assert_eq!(a.mean_collisions, 1.0);
    }

    #[test]
    fn weight_balance_holds() {
        for (c, abs) in [(0.7, Absorption::Weighting), (0.95, Absorption::Weighting), (0.8, Absorption::Analog)] {
            let cfg = McConfig { absorption: abs, roulette_threshold: 0.05, ..small(20_000) };
            let g = simulate_halfspace(0.4, alb(c), &cfg).unwrap();
            let d = &g.diagnostics;
            assert!((d.balance() - 20_000.0).abs() < 1e-7, "{d:?}");
            assert!((d.escaped - g.single.total() - g.multiple.total()).abs() < 1e-8);
            if abs == Absorption::Weighting {
                assert!(d.roulette_loss > 0.0 && d.roulette_gain > 0.0);
            }
        }
    }

    #[test]
    fn collision_cap_truncates() {
        let cfg = McConfig { max_collisions: 1, ..small(10_000) };
        let g = simulate_halfspace(0.5, alb(1.0), &cfg).unwrap();
        assert_eq!(g.multiple.total(), 0.0);
        assert_eq!(g.diagnostics.max_path_collisions, 1);
        assert!(g.diagnostics.truncated_paths > 0);
        assert!((g.diagnostics.balance() - 10_000.0).abs() < 1e-9);
    }

    #[test]
    fn absorption_modes_agree() {
        let w = albedo_mc(0.5, alb(0.8), &small(100_000)).unwrap();
        let a = albedo_mc(0.5, alb(0.8), &McConfig { absorption: Absorption::Analog, ..small(100_000) }).unwrap();
        let z = (w.value - a.value) / (w.stderr.hypot(a.stderr));
        assert!(z.abs() < 4.0, "{} vs {}", w.value, a.value);
    }

    #[test]
    fn deterministic_across_threads_and_repeats() {
        let base = small(7_777);
        let a = simulate_halfspace(0.3, alb(0.9), &McConfig { threads: 1, ..base.clone() }).unwrap();
        let b = simulate_halfspace(0.3, alb(0.9), &McConfig { threads: 3, ..base.clone() }).unwrap();
        let c = simulate_halfspace(0.3, alb(0.9), &base).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = simulate_halfspace(0.3, alb(0.9), &McConfig { seed: 43, ..base }).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn estimator_normalization() {
        let layout = BinLayout::new(4, 6).unwrap();
        let mut g = BinGrid::new(layout);
        g.n_paths = 100;
        for k in 0..layout.len() {
            g.multiple.weights[k] = 2.0;
            g.multiple.squared_weights[k] = 2.0;
        }
        let e = estimate_brdf(&g, Component::Total);
        for i in 0..4 {
            for j in 0..6 {
                let expect = 2.0 / (100.0 * layout.mu_mid(i) * layout.d_mu() * layout.d_phi());
                assert!((e.at(i, j).0 - expect).abs() < 1e-12);
            }
        }
        // Integrating value * mu over the bins returns the escaped fraction.
        let mut sum = 0.0;
        for i in 0..4 {
            for j in 0..6 {
                sum += e.at(i, j).0 * layout.mu_mid(i) * layout.d_mu() * layout.d_phi();
            }
        }
        assert!((sum - 2.0 * 24.0 / 100.0).abs() < 1e-12);
    }

    #[test]
    fn projection_of_synthetic_rows() {
        let l = BinLayout::new(1, 32).unwrap();
        let flat = vec![3.5; 32];
        let m = fourier_project(&l, &flat);
        assert!((m.f0 - 3.5).abs() < 1e-13 && m.f1.abs() < 1e-13 && m.f2.abs() < 1e-13);
        // Bin averages of cos(phi) and of cos(2 phi).
        let avg = |k: f64| -> Vec<f64> {
            (0..32)
                .map(|j| {
                    let (a, b) = l.phi_range(j);
                    ((k * b).sin() - (k * a).sin()) / (k * l.d_phi())
                })
                .collect()
        };
        let m1 = fourier_project(&l, &avg(1.0));
        assert!(m1.f0.abs() < 1e-13 && (m1.f1 - 1.0).abs() < 1e-12 && m1.f2.abs() < 1e-13);
        let m2 = fourier_project(&l, &avg(2.0));
        assert!(m2.f1.abs() < 1e-13 && (m2.f2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_collisions_increase_with_albedo() {
        let mut prev = 0.0;
        for c in [0.2, 0.5, 0.8, 0.95] {
            let a = albedo_mc(0.7, alb(c), &small(20_000)).unwrap();
            assert!(a.mean_collisions > prev, "c = {c}");
            prev = a.mean_collisions;
        }
    }
}
