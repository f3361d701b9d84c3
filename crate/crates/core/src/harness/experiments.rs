//! Registered Monte Carlo experiments, each comparing simulation (or a
//! finite-N formula) with an analytic value.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::runner::map_samples;
use super::stats::{ks_two_sample, mean_and_se, quantile, sort_f64, RadialHistogram};
use crate::channels::{non_leading, predicted_ring, predicted_squared_norm, quadratised_spectrum, random_complementary_map, ring_fraction};
use crate::complex_analytics;
use crate::error::{Error, Result};
use crate::params::{Beta, EnsembleParams};
use crate::quadrature::Rule;
use crate::real_analytics;
use crate::sampler::{sample_any, Route};

/// Default radial histogram: 64 bins over `[0, 1.2)` in units of `√(N+L)`.
pub const RADIAL_BINS: usize = 64;
pub const RADIAL_RMAX: f64 = 1.2;

/// The registered experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    RadialDensity,
    RealCount,
    HoleProb,
    SamplerEquiv,
    ChannelRing,
    EdgeProfile,
    RealDensity,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::RadialDensity,
        Experiment::RealCount,
        Experiment::HoleProb,
        Experiment::SamplerEquiv,
        Experiment::ChannelRing,
        Experiment::EdgeProfile,
        Experiment::RealDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::RadialDensity => "radial-density",
            Experiment::RealCount => "real-count",
            Experiment::HoleProb => "hole-prob",
            Experiment::SamplerEquiv => "sampler-equiv",
            Experiment::ChannelRing => "channel-ring",
            Experiment::EdgeProfile => "edge-profile",
            Experiment::RealDensity => "real-density",
        }
    }

    /// Samples (or channel realisations) per sub-run when none are given.
    pub fn default_samples(self) -> u64 {
        match self {
            Experiment::RadialDensity => 256,
            Experiment::RealCount => 2000,
            Experiment::HoleProb => 5000,
            Experiment::SamplerEquiv => 2000,
            Experiment::ChannelRing => 8,
            Experiment::EdgeProfile => 0,
            Experiment::RealDensity => 2000,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

/// One compared statistic.
///
/// Invariant: `pass == (|empirical - analytic| <= tolerance)`, false for NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub statistic: String,
    pub empirical: f64,
    pub analytic: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub n_samples: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ExperimentReport {
    fn new(ctx: &Ctx, params: BTreeMap<String, Value>, statistic: &str, empirical: f64, analytic: f64, tolerance: f64) -> Self {
        Self {
            experiment: ctx.experiment.name().to_string(),
            params,
            statistic: statistic.to_string(),
            empirical,
            analytic,
            tolerance,
            pass: (empirical - analytic).abs() <= tolerance,
            seed: ctx.seed,
            n_samples: ctx.n_samples,
            wall_time_s: None,
        }
    }
}

/// Binned counts next to their expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramComparison {
    /// Distinguishes several histograms of one run, e.g. `N128-L32`.
    pub label: String,
    pub histogram: RadialHistogram,
    /// Expected count per bin over all samples.
    pub expected: Vec<f64>,
}

impl HistogramComparison {
    /// Bins with `|observed - expected| ≤ 3√expected`.
    pub fn bins_within_3_sigma(&self) -> usize {
        self.histogram
            .counts
            .iter()
            .zip(&self.expected)
            .filter(|&(&o, &e)| (o as f64 - e).abs() <= 3.0 * e.sqrt())
            .count()
    }
}

/// Everything one `run_mc` call produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRun {
    pub experiment: Experiment,
    pub seed: u64,
    pub n_samples: u64,
    pub pass: bool,
    pub reports: Vec<ExperimentReport>,
    #[serde(skip)]
    pub histograms: Vec<HistogramComparison>,
}

impl ExperimentRun {
    /// Stamps every report with the elapsed wall time.
    pub fn with_wall_time(mut self, seconds: f64) -> Self {
        for r in &mut self.reports {
            r.wall_time_s = Some(seconds);
        }
        self
    }
}

struct Ctx {
    experiment: Experiment,
    seed: u64,
    n_samples: u64,
    workers: usize,
}

impl Ctx {
    /// Independent master seed for a sub-run.
    fn sub_seed(&self, tag: u64) -> u64 {
        self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

fn params_map(entries: &[(&str, Value)]) -> BTreeMap<String, Value> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn ensemble_params(p: &EnsembleParams) -> BTreeMap<String, Value> {
    params_map(&[("n", p.n().into()), ("l", p.l().into()), ("beta", p.beta().index().into())])
}

/// Runs one experiment. Output depends only on
/// `(experiment, master_seed, n_samples)`, never on `workers`.
pub fn run_mc(experiment: Experiment, master_seed: u64, n_samples: Option<u64>, workers: usize) -> Result<ExperimentRun> {
    let n_samples = n_samples.unwrap_or(experiment.default_samples());
    if n_samples == 0 && experiment != Experiment::EdgeProfile {
        return Err(Error::domain(format!("{experiment} needs at least one sample")));
    }
    let ctx = Ctx { experiment, seed: master_seed, n_samples, workers };
    let (reports, histograms) = match experiment {
        Experiment::RadialDensity => radial_density(&ctx)?,
        Experiment::RealCount => (real_count(&ctx)?, Vec::new()),
        Experiment::HoleProb => (hole_prob(&ctx)?, Vec::new()),
        Experiment::SamplerEquiv => (sampler_equiv(&ctx)?, Vec::new()),
        Experiment::ChannelRing => (channel_ring(&ctx)?, Vec::new()),
        Experiment::EdgeProfile => (edge_profile(&ctx)?, Vec::new()),
        Experiment::RealDensity => real_density(&ctx)?,
    };
    let pass = reports.iter().all(|r| r.pass);
    Ok(ExperimentRun { experiment, seed: master_seed, n_samples, pass, reports, histograms })
}

/// Spectra of `n_samples` matrices drawn by `route`.
fn spectra(ctx: &Ctx, p: &EnsembleParams, route: Route, tag: u64) -> Result<Vec<crate::linalg::Spectrum>> {
    map_samples(ctx.sub_seed(tag), ctx.n_samples, ctx.workers, |_, rng| sample_any(p, route, rng)?.spectrum())
}

/// `∫_a^b f` by 16-point Gauss–Legendre on `panels` panels.
fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    Rule::new(16).composite(a, b, panels, f)
}

fn radial_density(ctx: &Ctx) -> Result<(Vec<ExperimentReport>, Vec<HistogramComparison>)> {
    let p = EnsembleParams::complex(128, 32.0)?;
    let scale = ((p.n() as f64) + p.l()).sqrt();
    let spectra = spectra(ctx, &p, Route::Quadratise, 1)?;
    let mut hist = RadialHistogram::new(RADIAL_BINS, RADIAL_RMAX, p.n(), p.l(), p.beta())?;
    let mut moduli = Vec::with_capacity(spectra.len() * p.n());
    for s in &spectra {
        let m: Vec<f64> = s.moduli().into_iter().map(|r| r / scale).collect();
        moduli.extend_from_slice(&m);
        hist.add_sample(m);
    }
    sort_f64(&mut moduli);
    let mut expected = Vec::with_capacity(RADIAL_BINS);
    for w in hist.edges.windows(2) {
        let f = |r: f64| 2.0 * PI * r * complex_analytics::density(Complex64::new(r, 0.0), &p).expect("validated params");
        expected.push(ctx.n_samples as f64 * integrate(f, w[0] * scale, w[1] * scale, 2));
    }
    let cmp = HistogramComparison { label: format!("N{}-L{}", p.n(), p.l()), histogram: hist, expected };
    let params = ensemble_params(&p);
    let good = cmp.bins_within_3_sigma() as f64;
    let inner = (p.l() / ((p.n() as f64) + p.l())).sqrt();
    let reports = vec![
        ExperimentReport::new(ctx, params.clone(), "bins-within-3-sigma", good, RADIAL_BINS as f64, 4.0),
        ExperimentReport::new(ctx, params.clone(), "modulus-quantile-0.01", quantile(&moduli, 0.01), inner, 0.05),
        ExperimentReport::new(ctx, params, "modulus-quantile-0.99", quantile(&moduli, 0.99), 1.0, 0.05),
    ];
    Ok((reports, vec![cmp]))
}

fn real_count(ctx: &Ctx) -> Result<Vec<ExperimentReport>> {
    let mut reports = Vec::new();
    for (tag, l) in [(1, 32.0), (2, 0.0)] {
        let p = EnsembleParams::real(128, l)?;
        let counts: Vec<f64> = spectra(ctx, &p, Route::Quadratise, tag)?.iter().map(|s| s.real_count() as f64).collect();
        let (mean, se) = mean_and_se(&counts);
        let params = ensemble_params(&p);
        let exact = real_analytics::mean_real_count(&p)?;
        let limit = real_analytics::real_count_limit(p.n(), p.l());
        reports.push(ExperimentReport::new(ctx, params.clone(), "mean-real-count-vs-exact", mean, exact, 3.0 * se));
        reports.push(ExperimentReport::new(ctx, params, "mean-real-count-vs-leading-order", mean, limit, 3.0 * se));
    }
    Ok(reports)
}

fn hole_prob(ctx: &Ctx) -> Result<Vec<ExperimentReport>> {
    let p = EnsembleParams::complex(20, 2.0)?;
    let smallest: Vec<f64> = spectra(ctx, &p, Route::Quadratise, 1)?
        .iter()
        .map(|s| s.moduli().into_iter().fold(f64::INFINITY, f64::min))
        .collect();
    let mut reports = Vec::new();
    for s in [0.5, 1.0, 1.5] {
        let empty = smallest.iter().filter(|&&r| r > s).count() as f64 / smallest.len() as f64;
        let exact = complex_analytics::hole_probability(s, &p)?;
        let se = (exact * (1.0 - exact) / smallest.len() as f64).sqrt();
        let mut params = ensemble_params(&p);
        params.insert("s".into(), s.into());
        reports.push(ExperimentReport::new(ctx, params, "empty-disk-fraction", empty, exact, 3.0 * se));
    }
    Ok(reports)
}

/// KS acceptance: `p ≥ 0.001` written as `|p - 1| ≤ 0.999`.
const KS_SIGNIFICANCE: f64 = 0.001;

fn sampler_equiv(ctx: &Ctx) -> Result<Vec<ExperimentReport>> {
    let mut reports = Vec::new();
    for (tag, beta) in [(1, Beta::Real), (3, Beta::Complex)] {
        let p = EnsembleParams::new(50, 10.0, beta)?;
        let moduli = |route, tag| -> Result<Vec<f64>> {
            let mut v: Vec<f64> = spectra(ctx, &p, route, tag)?.iter().flat_map(|s| s.moduli()).collect();
            sort_f64(&mut v);
            Ok(v)
        };
        let polar = moduli(Route::Polar, tag)?;
        let quad = moduli(Route::Quadratise, tag + 1)?;
        let ks = ks_two_sample(&polar, &quad)?;
        let mut params = ensemble_params(&p);
        params.insert("ks_statistic".into(), ks.statistic.into());
        reports.push(ExperimentReport::new(ctx, params, "ks-p-value", ks.p_value, 1.0, 1.0 - KS_SIGNIFICANCE));
    }
    Ok(reports)
}

/// Annulus widening for ring containment.
pub const RING_DELTA: f64 = 0.05;

fn channel_ring(ctx: &Ctx) -> Result<Vec<ExperimentReport>> {
    let mut reports = Vec::new();
    for (tag, (d, k)) in [(1u64, (14usize, 10usize)), (2, (14, 14)), (3, (14, 18))] {
        let ring = predicted_ring(d, k)?;
        let runs = map_samples(ctx.sub_seed(tag), ctx.n_samples, ctx.workers, |_, rng| {
            let phi = random_complementary_map(d, k, rng)?;
            let v = non_leading(&quadratised_spectrum(&phi)?);
            Ok((ring_fraction(&v, ring, RING_DELTA) * v.len() as f64, v.len(), phi.squared_norm()))
        })?;
        let inside: f64 = runs.iter().map(|r| r.0).sum();
        let total: usize = runs.iter().map(|r| r.1).sum();
        let norms: Vec<f64> = runs.iter().map(|r| r.2).collect();
        let params = params_map(&[
            ("d", d.into()),
            ("k", k.into()),
            ("r_in", ring.inner.into()),
            ("r_out", ring.outer.into()),
            ("delta", RING_DELTA.into()),
        ]);
        reports.push(ExperimentReport::new(ctx, params.clone(), "fraction-in-ring", inside / total as f64, 1.0, 0.1));
        let want = predicted_squared_norm(d, k);
        reports.push(ExperimentReport::new(ctx, params, "mean-squared-norm", mean_and_se(&norms).0, want, 0.1 * want));
    }
    Ok(reports)
}

fn edge_profile(ctx: &Ctx) -> Result<Vec<ExperimentReport>> {
    let p = EnsembleParams::complex(1000, 500.0)?;
    let (r_in, r_out) = (p.l().sqrt(), ((p.n() as f64) + p.l()).sqrt());
    let mut reports = Vec::new();
    for (side, edge, sign) in [("outer", r_out, 1.0), ("inner", r_in, -1.0)] {
        for xi in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let rho = complex_analytics::density(Complex64::new(edge + sign * xi, 0.0), &p)?;
            let mut params = ensemble_params(&p);
            params.insert("edge".into(), side.into());
            params.insert("xi".into(), xi.into());
            let want = complex_analytics::density_edge_profile(xi);
            reports.push(ExperimentReport::new(ctx, params, "density", rho, want, 0.01 / PI));
        }
    }
    Ok(reports)
}

fn real_density(ctx: &Ctx) -> Result<(Vec<ExperimentReport>, Vec<HistogramComparison>)> {
    let p = EnsembleParams::real(32, 8.0)?;
    let top = ((p.n() as f64) + p.l()).sqrt() + 3.0;
    let bins = 48;
    let reals: Vec<Vec<f64>> = spectra(ctx, &p, Route::Quadratise, 1)?.iter().map(|s| s.real_eigs().to_vec()).collect();
    // Real eigenvalues shifted by `top` so the histogram's [0, 2·top) covers them.
    let mut hist = RadialHistogram::new(bins, 2.0 * top, p.n(), p.l(), p.beta())?;
    for r in &reals {
        hist.add_sample(r.iter().map(|x| x + top));
    }
    let mut expected = Vec::with_capacity(bins);
    for w in hist.edges.windows(2) {
        let f = |x: f64| real_analytics::density_real(x - top, &p).expect("validated params");
        expected.push(ctx.n_samples as f64 * integrate(f, w[0], w[1], 2));
    }
    let cmp = HistogramComparison { label: format!("N{}-L{}-real", p.n(), p.l()), histogram: hist, expected };
    let good = cmp.bins_within_3_sigma() as f64 / bins as f64;
    let mut params = ensemble_params(&p);
    params.insert("offset".into(), top.into());
    let reports = vec![ExperimentReport::new(ctx, params, "fraction-of-bins-within-3-sigma", good, 1.0, 0.1)];
    Ok((reports, vec![cmp]))
}

/// Runs `experiment` and stamps the reports with wall time.
pub fn run_timed(experiment: Experiment, master_seed: u64, n_samples: Option<u64>, workers: usize) -> Result<ExperimentRun> {
    let start = Instant::now();
    let run = run_mc(experiment, master_seed, n_samples, workers)?;
    Ok(run.with_wall_time(start.elapsed().as_secs_f64()))
}
