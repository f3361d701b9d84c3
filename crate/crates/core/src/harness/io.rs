//! CSV and JSON file formats of the CLI.
//!
//! Every writer takes a `Write` and every reader a `Read`, so the formats are
//! testable without touching the filesystem.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::experiments::{ExperimentRun, HistogramComparison};
use crate::error::{Error, Result};
use crate::linalg::{AnyMatrix, Spectrum};
use crate::params::Beta;
use crate::real_analytics::{Point, RealKernelEntries};

/// One matrix entry of a `sample` file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub sample_idx: u64,
    pub beta: u8,
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

pub fn write_matrices<W: Write>(w: W, matrices: &[AnyMatrix]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (idx, m) in matrices.iter().enumerate() {
        let (rows, cols) = m.shape();
        for row in 0..rows {
            for col in 0..cols {
                let z = m.entry(row, col);
                out.serialize(MatrixEntry { sample_idx: idx as u64, beta: m.beta().index(), row, col, re: z.re, im: z.im })?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads matrices written by [`write_matrices`]. Samples must appear in
/// ascending index order, each square, complete and of a single `β`; real
/// samples must have zero imaginary parts.
pub fn read_matrices<R: Read>(r: R) -> Result<Vec<AnyMatrix>> {
    let mut groups: BTreeMap<u64, Vec<MatrixEntry>> = BTreeMap::new();
    for rec in csv::Reader::from_reader(r).deserialize() {
        let e: MatrixEntry = rec?;
        groups.entry(e.sample_idx).or_default().push(e);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (expected_idx, (idx, entries)) in groups.into_iter().enumerate() {
        if idx != expected_idx as u64 {
            return Err(Error::Parse(format!("sample indices must be 0, 1, 2, ...; found {idx} at position {expected_idx}")));
        }
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Parse(format!("sample {idx} has {} entries, not a square count", entries.len())));
        }
        let beta = Beta::from_index(entries[0].beta)?;
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        let mut seen = vec![false; n * n];
        for e in &entries {
            if e.row >= n || e.col >= n || e.beta != entries[0].beta {
                return Err(Error::Parse(format!("sample {idx}: bad entry {e:?}")));
            }
            if std::mem::replace(&mut seen[e.row * n + e.col], true) {
                return Err(Error::Parse(format!("sample {idx}: duplicate entry ({}, {})", e.row, e.col)));
            }
            m[(e.row, e.col)] = Complex64::new(e.re, e.im);
        }
        out.push(match beta {
            Beta::Real => {
                if m.iter().any(|z| z.im != 0.0) {
                    return Err(Error::Parse(format!("sample {idx} is tagged real but has imaginary parts")));
                }
                AnyMatrix::Real(m.map(|z| z.re))
            }
            Beta::Complex => AnyMatrix::Complex(m),
        });
    }
    Ok(out)
}

/// One eigenvalue of a `spectrum` file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub sample_idx: u64,
    pub re: f64,
    pub im: f64,
    pub is_real: u8,
}

pub fn write_spectra<W: Write>(w: W, spectra: &[Spectrum]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (idx, s) in spectra.iter().enumerate() {
        for (z, is_real) in s.tagged_values() {
            out.serialize(EigenRecord { sample_idx: idx as u64, re: z.re, im: z.im, is_real: u8::from(is_real) })?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_spectra<R: Read>(r: R) -> Result<Vec<EigenRecord>> {
    csv::Reader::from_reader(r).deserialize().map(|rec| rec.map_err(Error::from)).collect()
}

/// Writes `r,rho` rows, plus `rho_real` when given.
pub fn write_density<W: Write>(w: W, r: &[f64], rho: &[f64], rho_real: Option<&[f64]>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    match rho_real {
        Some(real) => {
            out.write_record(["r", "rho", "rho_real"])?;
            for ((x, a), b) in r.iter().zip(rho).zip(real) {
                out.write_record([x.to_string(), a.to_string(), b.to_string()])?;
            }
        }
        None => {
            out.write_record(["r", "rho"])?;
            for (x, a) in r.iter().zip(rho) {
                out.write_record([x.to_string(), a.to_string()])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes `s,A(s)` rows.
pub fn write_hole_probability<W: Write>(w: W, rows: &[(f64, f64)]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["s", "A(s)"])?;
    for (s, a) in rows {
        out.write_record([s.to_string(), a.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Deserialize)]
struct PointRecord {
    re: f64,
    im: f64,
}

/// Reads `re,im` rows; `im = 0` is a real point, `im > 0` a complex one.
pub fn read_points<R: Read>(r: R) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for rec in csv::Reader::from_reader(r).deserialize() {
        let p: PointRecord = rec?;
        if !p.re.is_finite() || !p.im.is_finite() || p.im < 0.0 {
            return Err(Error::Parse(format!("points need finite re and im >= 0, got ({}, {})", p.re, p.im)));
        }
        out.push(if p.im == 0.0 { Point::Real(p.re) } else { Point::Complex(Complex64::new(p.re, p.im)) });
    }
    Ok(out)
}

/// One pair of a `kernel` file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelRecord {
    pub i: usize,
    pub j: usize,
    pub ds_re: f64,
    pub ds_im: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub is_re: f64,
    pub is_im: f64,
    pub eps: f64,
}

pub fn write_kernel<W: Write>(w: W, entries: &[(usize, usize, RealKernelEntries)]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for &(i, j, e) in entries {
        out.serialize(KernelRecord {
            i,
            j,
            ds_re: e.ds.re,
            ds_im: e.ds.im,
            s_re: e.s.re,
            s_im: e.s.im,
            is_re: e.is.re,
            is_im: e.is.im,
            eps: e.eps,
        })?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct HistogramRow<'a> {
    label: &'a str,
    bin_lo: f64,
    bin_hi: f64,
    count: u64,
    expected: f64,
    n: usize,
    l: f64,
    beta: u8,
    seed: u64,
    n_samples: u64,
}

/// One row per bin, each carrying the ensemble and seed.
pub fn write_histogram<W: Write>(w: W, cmp: &HistogramComparison, seed: u64) -> Result<()> {
    let h = &cmp.histogram;
    let mut out = csv::Writer::from_writer(w);
    for (i, e) in h.edges.windows(2).enumerate() {
        out.serialize(HistogramRow {
            label: &cmp.label,
            bin_lo: e[0],
            bin_hi: e[1],
            count: h.counts[i],
            expected: cmp.expected[i],
            n: h.n,
            l: h.l,
            beta: h.beta.index(),
            seed,
            n_samples: h.n_samples,
        })?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `<dir>/<experiment>-<label>.csv` for every histogram of a run.
pub fn write_run_histograms(dir: &Path, run: &ExperimentRun) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for cmp in &run.histograms {
        let file = std::fs::File::create(dir.join(format!("{}-{}.csv", run.experiment, cmp.label)))?;
        write_histogram(std::io::BufWriter::new(file), cmp, run.seed)?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Evenly spaced grid from `start:stop:count` (both ends included).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("grid must be start:stop:count, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() || (count == 1 && start != stop) {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect())
}
