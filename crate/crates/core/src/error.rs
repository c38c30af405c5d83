use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain {domain}")]
    Domain { what: &'static str, value: f64, domain: &'static str },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error estimate {error_estimate})"
    )]
    NonConvergence { estimate: f64, error_estimate: f64, subdivisions: usize },

    #[error("truncated phase expansion supports at most 7 terms, got {0}")]
    UnsupportedTerms(usize),

    #[error("K^({mode})(t) = {value} at t = {t} is not positive; log undefined")]
    NonPositiveK { mode: u8, t: f64, value: f64 },

    #[error("H^(0)(inf) diverges for conservative scattering (c = 1)")]
    Divergence,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::Domain { what, value, domain })
    }
}
