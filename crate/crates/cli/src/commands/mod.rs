//! Subcommand implementations. Each returns its payload, manifest and checks
//! without touching the filesystem, so tests can drive them directly.

pub mod bench;
pub mod render_sphere;
pub mod tables;
pub mod validate_brdf;
pub mod validate_h;
pub mod validate_phase;

use crate::output::{all_pass, Check, Manifest, Table};

/// Result of one subcommand.
#[derive(Debug, Clone)]
pub struct Output {
    pub payload: Vec<u8>,
    pub manifest: Manifest,
    pub checks: Vec<Check>,
}

impl Output {
    pub fn from_table(table: &Table, mut manifest: Manifest, checks: Vec<Check>) -> crate::error::Result<Self> {
        manifest.push_checks(&checks);
        Ok(Self { payload: table.to_csv()?, manifest, checks })
    }

    pub fn passed(&self) -> bool {
        all_pass(&self.checks)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `n` points spread uniformly over `[lo, hi]`, endpoints included.
pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}
