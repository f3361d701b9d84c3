//! `indg`: sampling, spectra, analytic densities and kernels, and seeded
//! verification experiments for induced Ginibre ensembles.
//!
//! Exit codes: 0 success or passing verification, 1 failing verification,
//! 2 usage or input error, 3 numerical failure.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use induced_ginibre::channels::{predicted_ring, quadratised_spectrum, random_complementary_map};
use induced_ginibre::harness::io::*;
use induced_ginibre::harness::{map_samples, resolve_workers, run_timed, Experiment};
use induced_ginibre::quadrature::Rule;
use induced_ginibre::real_analytics::{self, kernel_entries};
use induced_ginibre::sampler::{sample_any, Route};
use induced_ginibre::{complex_analytics, Beta, EnsembleParams, Error, Result};

#[derive(Parser)]
#[command(name = "indg", version, about = "Induced Ginibre ensembles: sampling, exact statistics and Monte Carlo checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Polar,
    Quadratise,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Polar => Route::Polar,
            RouteArg::Quadratise => Route::Quadratise,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw matrices; one CSV row per entry.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        beta: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "quadratise")]
        route: RouteArg,
        #[arg(long)]
        workers: Option<usize>,
        /// Output file; stdout when omitted or `-`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the matrices in a `sample` file.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Divide eigenvalues by √(N+L) for this L.
        #[arg(long)]
        rescale_l: Option<f64>,
    },
    /// Exact finite-N density along the positive real axis.
    ///
    /// For β=2 `rho` is ρ_N(r). For β=1 `rho` is the complex-eigenvalue
    /// density averaged over the circle |z| = r and `rho_real` is the
    /// real-eigenvalue density at x = r.
    Density {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        beta: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: f64,
        /// `start:stop:count`.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Real-ensemble kernel entries for every ordered pair of points.
    Kernel {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=1))]
        beta: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: f64,
        /// CSV with columns `re,im`; `im = 0` marks a real point.
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probability that no eigenvalue lies within radius s (β=2).
    Holeprob {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        smax: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a registered experiment; exit 0 iff every statistic passes.
    Verify {
        #[arg(long)]
        experiment: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per sub-run; the experiment's default when omitted.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for per-bin histogram CSVs.
        #[arg(long)]
        histograms: Option<PathBuf>,
        /// Include wall time in the report (breaks byte-reproducibility).
        #[arg(long)]
        timing: bool,
    },
    /// Spectra of quadratised random complementary maps with the predicted ring.
    Channel {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        realizations: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p.as_os_str() != "-" => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout())),
    })
}

fn input(path: &PathBuf) -> Result<Box<dyn Read>> {
    Ok(if path.as_os_str() == "-" { Box::new(io::stdin()) } else { Box::new(BufReader::new(File::open(path)?)) })
}

#[derive(Serialize)]
struct ChannelOutput {
    d: usize,
    k: usize,
    realizations: u64,
    seed: u64,
    r_in: f64,
    r_out: f64,
    squared_norms: Vec<f64>,
    /// `[re, im]` per eigenvalue, one list per realisation.
    eigenvalues: Vec<Vec<[f64; 2]>>,
}

/// Mean of the real-ensemble complex density over `|z| = r`, upper half
/// mirrored to the lower.
fn circle_mean_complex_density(r: f64, p: &EnsembleParams) -> Result<f64> {
    if r == 0.0 {
        return Ok(0.0);
    }
    let mut err = None;
    let v = Rule::new(32).composite(0.0, std::f64::consts::PI, 4, |t| {
        real_analytics::density_complex(Complex64::from_polar(r, t), p).unwrap_or_else(|e| {
            err.get_or_insert(e);
            f64::NAN
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(v / std::f64::consts::PI),
    }
}

/// Runs a command; `Ok(false)` is a failing verification.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample { beta, n, l, count, seed, route, workers, out } => {
            let p = EnsembleParams::new(n, l as f64, Beta::from_index(beta)?)?;
            let route = Route::from(route);
            let mats = map_samples(seed, count, resolve_workers(workers), |_, rng| sample_any(&p, route, rng))?;
            write_matrices(output(&out)?, &mats)?;
        }
        Command::Spectrum { input: path, out, rescale_l } => {
            let mats = read_matrices(input(&path)?)?;
            let mut spectra = Vec::with_capacity(mats.len());
            for m in &mats {
                spectra.push(m.spectrum()?);
            }
            match rescale_l {
                None => write_spectra(output(&out)?, &spectra)?,
                Some(l) => {
                    if !(l >= 0.0) || !l.is_finite() {
                        return Err(Error::Parse(format!("--rescale-l must be finite and >= 0, got {l}")));
                    }
                    let mut w = csv::Writer::from_writer(output(&out)?);
                    for (idx, s) in spectra.iter().enumerate() {
                        let scale = (s.source_dim() as f64 + l).sqrt();
                        for (z, is_real) in s.tagged_values() {
                            w.serialize(EigenRecord { sample_idx: idx as u64, re: z.re / scale, im: z.im / scale, is_real: u8::from(is_real) })?;
                        }
                    }
                    w.flush()?;
                }
            }
        }
        Command::Density { beta, n, l, grid, out } => {
            let p = EnsembleParams::new(n, l, Beta::from_index(beta)?)?;
            let r = parse_grid(&grid)?;
            if r.iter().any(|&x| x < 0.0) {
                return Err(Error::Parse("density grid must be non-negative radii".into()));
            }
            match p.beta() {
                Beta::Complex => {
                    let rho = r.iter().map(|&x| complex_analytics::density(Complex64::new(x, 0.0), &p)).collect::<Result<Vec<_>>>()?;
                    write_density(output(&out)?, &r, &rho, None)?;
                }
                Beta::Real => {
                    let rho = r.iter().map(|&x| circle_mean_complex_density(x, &p)).collect::<Result<Vec<_>>>()?;
                    let real = r.iter().map(|&x| real_analytics::density_real(x, &p)).collect::<Result<Vec<_>>>()?;
                    write_density(output(&out)?, &r, &rho, Some(&real))?;
                }
            }
        }
        Command::Kernel { beta, n, l, points, out } => {
            let p = EnsembleParams::new(n, l, Beta::from_index(beta)?)?;
            let pts = read_points(input(&points)?)?;
            let mut rows = Vec::with_capacity(pts.len() * pts.len());
            for (i, &a) in pts.iter().enumerate() {
                for (j, &b) in pts.iter().enumerate() {
                    rows.push((i, j, kernel_entries(a, b, &p)?));
                }
            }
            write_kernel(output(&out)?, &rows)?;
        }
        Command::Holeprob { n, l, smax, steps, out } => {
            let p = EnsembleParams::complex(n, l)?;
            if steps == 0 || !(smax >= 0.0) || !smax.is_finite() {
                return Err(Error::Parse(format!("need steps >= 1 and finite smax >= 0, got {steps}, {smax}")));
            }
            let rows = (0..=steps)
                .map(|i| {
                    let s = smax * i as f64 / steps as f64;
                    complex_analytics::hole_probability(s, &p).map(|a| (s, a))
                })
                .collect::<Result<Vec<_>>>()?;
            write_hole_probability(output(&out)?, &rows)?;
        }
        Command::Verify { experiment, seed, samples, workers, out, histograms, timing } => {
            let e: Experiment = experiment.parse()?;
            let mut run = run_timed(e, seed, samples, resolve_workers(workers))?;
            let wall = run.reports.first().and_then(|r| r.wall_time_s).unwrap_or(0.0);
            eprintln!("{e}: {} in {wall:.1}s", if run.pass { "pass" } else { "FAIL" });
            if !timing {
                for r in &mut run.reports {
                    r.wall_time_s = None;
                }
            }
            if let Some(dir) = &histograms {
                write_run_histograms(dir, &run)?;
            }
            let mut w = output(&out)?;
            w.write_all(to_json(&run)?.as_bytes())?;
            w.flush()?;
            return Ok(run.pass);
        }
        Command::Channel { d, k, realizations, seed, workers, out } => {
            let ring = predicted_ring(d, k)?;
            let runs = map_samples(seed, realizations, resolve_workers(workers), |_, rng| {
                let phi = random_complementary_map(d, k, rng)?;
                let values = quadratised_spectrum(&phi)?.values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
                Ok((phi.squared_norm(), values))
            })?;
            let (squared_norms, eigenvalues) = runs.into_iter().unzip();
            let report = ChannelOutput { d, k, realizations, seed, r_in: ring.inner, r_out: ring.outer, squared_norms, eigenvalues };
            let mut w = output(&out)?;
            w.write_all(to_json(&report)?.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("indg: {e}");
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}
