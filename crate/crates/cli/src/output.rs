//! CSV tables, check rows and key=value run manifests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Result;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Text(String),
    Int(i64),
    Real(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u8> for Cell {
    fn from(i: u8) -> Self {
        Cell::Int(i64::from(i))
    }
}

/// A header plus rows, serialized as comma-separated text.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        w.into_inner().map_err(|e| e.into_error().into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported for reference only; never affects the exit code.
    Info,
}

impl Status {
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

/// One named validation result.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: Option<f64>,
    pub status: Status,
}

impl Check {
    /// Passes when `measured <= bound`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound: Some(bound), status: Status::from_pass(measured <= bound) }
    }

    /// Passes when `measured >= bound`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound: Some(bound), status: Status::from_pass(measured >= bound) }
    }

    pub fn info(name: impl Into<String>, measured: f64) -> Self {
        Self { name: name.into(), measured, bound: None, status: Status::Info }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

/// Plain `key=value` lines describing a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Manifest {
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        let mut m = Self::default();
        m.push("command", command);
        m.push("version", env!("CARGO_PKG_VERSION"));
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        m.push("timestamp_unix", now);
        m
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_owned(), value.to_string()));
    }

    pub fn push_checks(&mut self, checks: &[Check]) {
        for c in checks {
            self.push(&format!("check.{}", c.name), format!("{} {}", fmt_real(c.measured), c.status.name()));
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(k);
            s.push('=');
            s.push_str(v);
            s.push('\n');
        }
        s
    }
}

/// Sidecar path: the output path with `.manifest` appended.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s: OsString = out.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

/// Writes the payload to `out` (or stdout) and the manifest beside it (or to stderr).
pub fn emit(out: Option<&Path>, payload: &[u8], manifest: &Manifest) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, payload)?;
            fs::write(manifest_path(path), manifest.render())?;
        }
        None => {
            std::io::stdout().write_all(payload)?;
            eprint!("{}", manifest.render());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 12345.678, std::f64::consts::PI] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_real(f64::NAN), "nan");
        assert_eq!(fmt_real(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn table_serialization() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![Cell::from("x,y"), Cell::from(2usize), Cell::Empty]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "a,b,c\n\"x,y\",2,\n");
    }

    #[test]
    fn check_status() {
        assert!(Check::at_most("a", 1.0, 1.0).passed());
        assert!(!Check::at_most("a", 1.1, 1.0).passed());
        assert!(Check::at_least("a", 0.99, 0.99).passed());
        assert!(Check::info("a", 1e9).passed());
        assert!(!Check::at_most("a", f64::NAN, 1.0).passed());
    }

    #[test]
    fn manifest_layout() {
        let mut m = Manifest::new("demo");
        m.push("seed", 42);
        let r = m.render();
        assert!(r.starts_with("command=demo\nversion="));
        assert!(r.ends_with("seed=42\n"));
        assert_eq!(manifest_path(Path::new("out/run.csv")), PathBuf::from("out/run.csv.manifest"));
    }
}
