//! Reflectance of porous media made of Lambertian spherical particles.
//!
//! - [`phase`]: the Lambert-sphere phase function, its expansion and samplers.
//! - [`hfun`]: Chandrasekhar H-functions, numeric and fitted.
//! - [`brdf`]: the analytic BRDF, its fast variant, and albedo mappings.
//! - [`mcref`]: a Monte Carlo half-space reference with Fourier extraction.
//! - [`compare`]: z-score comparisons between the two.

pub mod brdf;
pub mod compare;
pub mod error;
pub mod geom;
pub mod hfun;
pub mod mcref;
pub mod phase;
pub mod quad;

pub use brdf::{BrdfParams, DirectionPair, FourierModes, Variant};
pub use error::{Error, Result};
pub use geom::Vec3;
pub use hfun::{Albedo, HEvalSpec, HMode};
pub use mcref::{Absorption, BinGrid, BinLayout, BrdfEstimate, Component, McConfig};
pub use phase::DeflectionCosine;
