//! Monte Carlo harness: seeded parallel sampling, histograms, statistical
//! tests and the registered experiments behind the `indg` CLI.

pub mod experiments;
pub mod io;
pub mod runner;
pub mod stats;

pub use experiments::{run_mc, run_timed, Experiment, ExperimentReport, ExperimentRun, HistogramComparison};
pub use runner::{map_samples, resolve_workers};
pub use stats::{ks_two_sample, KsResult, RadialHistogram};
