//! Histograms and the statistical tests used to compare simulation with theory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Beta;
use crate::specfun::upper_reg_gamma;

/// Binned empirical distribution of eigenvalue moduli.
///
/// Invariant: `counts.iter().sum() + out_of_range == values added`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialHistogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub out_of_range: u64,
    pub n_samples: u64,
    pub n: usize,
    pub l: f64,
    pub beta: Beta,
}

impl RadialHistogram {
    /// `bins` equal bins over `[0, rmax)`.
    pub fn new(bins: usize, rmax: f64, n: usize, l: f64, beta: Beta) -> Result<Self> {
        if bins == 0 || !(rmax > 0.0) || !rmax.is_finite() {
            return Err(Error::domain(format!("need bins >= 1 and finite rmax > 0, got {bins}, {rmax}")));
        }
        let edges = (0..=bins).map(|i| rmax * i as f64 / bins as f64).collect();
        Ok(Self { edges, counts: vec![0; bins], out_of_range: 0, n_samples: 0, n, l, beta })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn rmax(&self) -> f64 {
        *self.edges.last().expect("at least two edges")
    }

    pub fn add(&mut self, r: f64) {
        let bins = self.bins();
        let idx = (r / self.rmax() * bins as f64).floor();
        if r >= 0.0 && idx < bins as f64 {
            self.counts[idx as usize] += 1;
        } else {
            self.out_of_range += 1;
        }
    }

    /// Adds the moduli of one sample's eigenvalues.
    pub fn add_sample(&mut self, moduli: impl IntoIterator<Item = f64>) {
        for r in moduli {
            self.add(r);
        }
        self.n_samples += 1;
    }

    pub fn merge(&mut self, other: &RadialHistogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::Dimension("histograms have different bin edges".into()));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.out_of_range += other.out_of_range;
        self.n_samples += other.n_samples;
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.out_of_range
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

/// Two-sample Kolmogorov–Smirnov result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    /// `sup |F_a - F_b|`.
    pub statistic: f64,
    /// Asymptotic p-value from the Kolmogorov distribution.
    pub p_value: f64,
}

/// Two-sample KS test on sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("KS test needs two non-empty samples"));
    }
    if a.windows(2).any(|w| w[0] > w[1]) || b.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("KS test needs sorted samples"));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = na * nb / (na + nb);
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    Ok(KsResult { statistic: d, p_value: kolmogorov_survival(lambda) })
}

/// `P(K > λ) = 2 Σ_{k≥1} (-1)^{k-1} e^{-2k²λ²}`, clamped to `[0, 1]`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// Pearson chi-square against equal expected counts; returns `(χ², p)`.
pub fn chi_square_uniform(counts: &[u64]) -> Result<(f64, f64)> {
    if counts.len() < 2 {
        return Err(Error::domain("chi-square needs at least two bins"));
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = (counts.len() - 1) as f64;
    Ok((chi2, upper_reg_gamma(0.5 * dof, 0.5 * chi2)?))
}

/// Sample mean and its standard error.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Empirical quantile with linear interpolation on sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Sorts floats in place by `total_cmp`.
pub fn sort_f64(v: &mut [f64]) {
    v.sort_by(|a, b| a.total_cmp(b));
}
