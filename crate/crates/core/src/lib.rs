//! Induced Ginibre random matrices.
//!
//! Samplers for the real and complex ensembles, exact finite-N densities and
//! correlation kernels, their large-N limits, complementary quantum channels,
//! and a seeded Monte Carlo harness that checks the analytics against simulation.

pub mod channels;
pub mod complex_analytics;
mod error;
pub mod harness;
pub mod linalg;
mod params;
pub mod quadrature;
pub mod real_analytics;
pub mod sampler;
pub mod specfun;
mod util;

pub use error::{Error, Result};
pub use params::{Beta, EnsembleParams};
