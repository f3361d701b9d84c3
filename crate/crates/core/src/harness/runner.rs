//! Deterministic parallel fan-out over sample indices.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampler::{stream_rng, stream_seed};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "INDG_THREADS";

/// Worker count: the explicit flag if given, else `INDG_THREADS`, else all
/// cores; never below one.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .unwrap_or_else(rayon::current_num_threads)
        .max(1)
}

/// Applies `f` to every index in `0..n_samples` with its own RNG stream and
/// returns results in index order, so output is independent of `workers`.
///
/// The first failing index (by index, not by time) is reported with its seed.
pub fn map_samples<T, F>(master_seed: u64, n_samples: u64, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("cannot build worker pool: {e}")))?;
    let results: Vec<Result<T>> = pool.install(|| {
        (0..n_samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(master_seed, i);
                f(i, &mut rng)
            })
            .collect()
    });
    results
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Worker { index: i as u64, seed: stream_seed(master_seed, i as u64), source: Box::new(e) })
        })
        .collect()
}
