//! Matrix primitives: Gaussian and Haar sampling, spectra with real/complex
//! classification, Hermitian square roots and Pfaffians.

use nalgebra::{ComplexField, DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::params::Beta;

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

/// Field of matrix entries, tied to its Dyson index.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Send + Sync {
    const BETA: Beta;

    /// One standard Gaussian entry: `N(0,1)` for reals; `N(0,1/2)` real and
    /// imaginary parts for complex, so `E|g|² = 1` in both cases.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn to_complex(self) -> Complex64;
}

impl Scalar for f64 {
    const BETA: Beta = Beta::Real;

    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    const BETA: Beta = Beta::Complex;

    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    }

    fn to_complex(self) -> Complex64 {
        self
    }
}

/// A real or complex dense matrix, for code paths chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Real(RealMatrix),
    Complex(ComplexMatrix),
}

impl AnyMatrix {
    pub fn beta(&self) -> Beta {
        match self {
            AnyMatrix::Real(_) => Beta::Real,
            AnyMatrix::Complex(_) => Beta::Complex,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Real(m) => m.shape(),
            AnyMatrix::Complex(m) => m.shape(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match self {
            AnyMatrix::Real(m) => Complex64::new(m[(i, j)], 0.0),
            AnyMatrix::Complex(m) => m[(i, j)],
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        match self {
            AnyMatrix::Real(m) => real_spectrum(m),
            AnyMatrix::Complex(m) => complex_spectrum(m),
        }
    }
}

/// `rows × cols` matrix of i.i.d. Gaussian entries.
pub fn sample_gaussian<T: Scalar, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<T> {
    // Column-major fill order is part of the reproducibility contract.
    DMatrix::from_fn(rows, cols, |_, _| T::gaussian(rng))
}

/// Runtime-`β` form of [`sample_gaussian`].
pub fn sample_gaussian_any<R: Rng + ?Sized>(rows: usize, cols: usize, beta: Beta, rng: &mut R) -> AnyMatrix {
    match beta {
        Beta::Real => AnyMatrix::Real(sample_gaussian(rows, cols, rng)),
        Beta::Complex => AnyMatrix::Complex(sample_gaussian(rows, cols, rng)),
    }
}

/// Haar-distributed orthogonal (`f64`) or unitary (`Complex64`) `n × n` matrix.
///
/// `Q` from the QR factorisation of a Gaussian matrix is right-multiplied by
/// `diag(R_ii/|R_ii|)`; this makes the factorisation unique and `Q` Haar.
pub fn sample_haar<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<T> {
    let g: DMatrix<T> = sample_gaussian(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.modulus();
        if m > 0.0 {
            let phase = d.unscale(m);
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Eigenvalues of one matrix.
///
/// For `β = 1` the real eigenvalues are listed in `real_eigs` (ascending) and
/// each conjugate pair `x ± iy` appears once in `complex_pairs` as `(x, y)`,
/// `y > 0`; then `|real_eigs| + 2|complex_pairs| = N`.
/// For `β = 2` `real_eigs` is empty and each eigenvalue `x + iy` is one entry
/// of `complex_pairs` with unrestricted sign of `y`; then `|complex_pairs| = N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    beta: Beta,
    real_eigs: Vec<f64>,
    complex_pairs: Vec<(f64, f64)>,
    source_dim: usize,
}

impl Spectrum {
    /// Spectrum of a real matrix; validates the pair invariants.
    pub fn real(mut real_eigs: Vec<f64>, complex_pairs: Vec<(f64, f64)>, source_dim: usize) -> Result<Self> {
        if real_eigs.len() + 2 * complex_pairs.len() != source_dim {
            return Err(Error::Dimension(format!(
                "{} real + 2×{} pairs does not match N={source_dim}",
                real_eigs.len(),
                complex_pairs.len()
            )));
        }
        if let Some(&(x, y)) = complex_pairs.iter().find(|p| !(p.1 > 0.0)) {
            return Err(Error::domain(format!("pair representative {x}+{y}i needs Im > 0")));
        }
        real_eigs.sort_by(f64::total_cmp);
        Ok(Self { beta: Beta::Real, real_eigs, complex_pairs, source_dim })
    }

    /// Spectrum of a complex matrix.
    pub fn complex(values: impl IntoIterator<Item = Complex64>) -> Self {
        let complex_pairs: Vec<(f64, f64)> = values.into_iter().map(|z| (z.re, z.im)).collect();
        Self { beta: Beta::Complex, real_eigs: Vec::new(), source_dim: complex_pairs.len(), complex_pairs }
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn real_eigs(&self) -> &[f64] {
        &self.real_eigs
    }

    pub fn complex_pairs(&self) -> &[(f64, f64)] {
        &self.complex_pairs
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// Number of real eigenvalues (always 0 for `β = 2`).
    pub fn real_count(&self) -> usize {
        self.real_eigs.len()
    }

    /// All `N` eigenvalues, conjugate partners included.
    pub fn values(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.source_dim);
        out.extend(self.real_eigs.iter().map(|&x| Complex64::new(x, 0.0)));
        for &(x, y) in &self.complex_pairs {
            out.push(Complex64::new(x, y));
            if self.beta == Beta::Real {
                out.push(Complex64::new(x, -y));
            }
        }
        out
    }

    /// `(value, is_real)` for every eigenvalue.
    pub fn tagged_values(&self) -> Vec<(Complex64, bool)> {
        let mut out: Vec<(Complex64, bool)> =
            self.real_eigs.iter().map(|&x| (Complex64::new(x, 0.0), true)).collect();
        for &(x, y) in &self.complex_pairs {
            out.push((Complex64::new(x, y), false));
            if self.beta == Beta::Real {
                out.push((Complex64::new(x, -y), false));
            }
        }
        out
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.values().iter().map(|z| z.norm()).collect()
    }

    pub fn sum(&self) -> Complex64 {
        self.values().iter().sum()
    }
}

/// Deflation thresholds tried in turn: the QR iteration without exceptional
/// shifts can cycle at one threshold and converge at a neighbouring one.
const SCHUR_EPS: [f64; 4] = [1e-15, f64::EPSILON, 1e-14, 4e-14];

fn schur_form<T: Scalar>(g: &DMatrix<T>) -> Result<DMatrix<T>> {
    SCHUR_EPS
        .iter()
        .find_map(|&eps| Schur::try_new(g.clone(), eps, schur_budget(g.nrows())))
        .map(|s| s.unpack().1)
        .ok_or(Error::NotConverged { seed: None })
        .and_then(|t| {
            if t.iter().all(|z| z.to_complex().re.is_finite() && z.to_complex().im.is_finite()) {
                Ok(t)
            } else {
                Err(Error::NonFinite { what: "Schur form" })
            }
        })
}

/// Total QR-sweep budget; exceeding it is reported as non-convergence.
fn schur_budget(n: usize) -> usize {
    (100 * n).max(1000)
}

/// Spectrum of a real square matrix from its real Schur form.
///
/// 1×1 diagonal blocks give real eigenvalues and 2×2 blocks conjugate pairs. A
/// 2×2 block that is not a rotation-like block (real discriminant) is split
/// into its two real eigenvalues.
pub fn real_spectrum(g: &RealMatrix) -> Result<Spectrum> {
    check_square(g.shape())?;
    check_finite(g.iter().copied())?;
    let n = g.nrows();
    let t = schur_form(g)?;
    let mut reals = Vec::new();
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != 0.0 {
            // Solved on the block scaled to unit max-norm, so h² + bc cannot overflow.
            let m = [t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]];
            let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            let [a, b, c, d] = m.map(|v| v / scale);
            let p = 0.5 * (a + d);
            let h = 0.5 * (a - d);
            let disc = h * h + b * c;
            if disc < 0.0 {
                pairs.push((scale * p, scale * (-disc).sqrt()));
            } else {
                let s = disc.sqrt();
                reals.push(scale * (p + s));
                reals.push(scale * (p - s));
            }
            i += 2;
        } else {
            reals.push(t[(i, i)]);
            i += 1;
        }
    }
    if reals.iter().chain(pairs.iter().flat_map(|(x, y)| [x, y])).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "eigenvalue" });
    }
    Spectrum::real(reals, pairs, n)
}

/// Spectrum of a complex square matrix from its complex Schur form.
pub fn complex_spectrum(g: &ComplexMatrix) -> Result<Spectrum> {
    check_square(g.shape())?;
    check_finite(g.iter().flat_map(|z| [z.re, z.im]))?;
    let t = schur_form(g)?;
    Ok(Spectrum::complex((0..t.nrows()).map(|i| t[(i, i)])))
}

/// Eigenvalues of a square matrix, dispatching on its field.
pub fn eigenvalues<T: Scalar>(g: &DMatrix<T>) -> Result<Spectrum> {
    match T::BETA {
        Beta::Real => real_spectrum(&g.map(|x| x.to_complex().re)),
        Beta::Complex => complex_spectrum(&g.map(|x| x.to_complex())),
    }
}

fn check_square(shape: (usize, usize)) -> Result<()> {
    if shape.0 != shape.1 || shape.0 == 0 {
        return Err(Error::Dimension(format!("expected a non-empty square matrix, got {}×{}", shape.0, shape.1)));
    }
    Ok(())
}

fn check_finite(mut it: impl Iterator<Item = f64>) -> Result<()> {
    if it.any(|v| !v.is_finite()) {
        return Err(Error::domain("matrix has non-finite entries"));
    }
    Ok(())
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Accepts `‖S - S†‖_F ≤ 1e-12·max(1, ‖S‖_F)`; eigenvalues in
/// `[-1e-8‖S‖, 0)` are clamped to zero.
pub fn psd_sqrt<T: Scalar>(s: &DMatrix<T>) -> Result<DMatrix<T>> {
    check_square(s.shape())?;
    let norm = s.norm();
    let asym = (s - s.adjoint()).norm();
    if asym > 1e-12 * norm.max(1.0) {
        return Err(Error::Structure { kind: "Hermitian", residual: asym });
    }
    let h = (s + s.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::new(h);
    let floor = -1e-8 * norm;
    if let Some(&lmin) = eig.eigenvalues.iter().find(|&&l| l < floor) {
        return Err(Error::Structure { kind: "positive semidefinite", residual: lmin });
    }
    Ok(spectral_map(eig, |l| l.max(0.0).sqrt()))
}

/// `(S)^{-1/2}` of a Hermitian positive definite matrix.
pub fn pd_inv_sqrt<T: Scalar>(s: &DMatrix<T>) -> Result<DMatrix<T>> {
    check_square(s.shape())?;
    let asym = (s - s.adjoint()).norm();
    if asym > 1e-12 * s.norm().max(1.0) {
        return Err(Error::Structure { kind: "Hermitian", residual: asym });
    }
    let eig = SymmetricEigen::new((s + s.adjoint()).unscale(2.0));
    if let Some(&lmin) = eig.eigenvalues.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::Structure { kind: "positive definite", residual: lmin });
    }
    Ok(spectral_map(eig, |l| 1.0 / l.sqrt()))
}

/// `V f(Λ) V†` from a Hermitian eigendecomposition.
fn spectral_map<T: Scalar>(eig: SymmetricEigen<T, nalgebra::Dyn>, f: impl Fn(f64) -> f64) -> DMatrix<T> {
    let v = eig.eigenvectors;
    let mut vf = v.clone();
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        vf.column_mut(j).scale_mut(f(l));
    }
    &vf * v.adjoint()
}

/// Pfaffian as `phase · exp(ln_abs)`; `phase` is `±1` for real input and has
/// unit modulus for complex input. A zero Pfaffian has `ln_abs = -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfaffianLog<T> {
    pub phase: T,
    pub ln_abs: f64,
    /// Plain running product of pivots; exact for small well-scaled input.
    product: T,
}

impl<T: Scalar> PfaffianLog<T> {
    pub fn value(&self) -> T {
        let m = self.product.modulus();
        if self.ln_abs == f64::NEG_INFINITY {
            T::zero()
        } else if m.is_finite() && m > 1e-280 {
            self.product
        } else {
            self.phase.scale(self.ln_abs.exp())
        }
    }
}

/// Pfaffian of an antisymmetric matrix (`Pf([[0,a],[-a,0]]) = a`).
pub fn pfaffian<T: Scalar>(a: &DMatrix<T>) -> Result<T> {
    pfaffian_log(a, 1e-10).map(|p| p.value())
}

/// Pfaffian by Parlett–Reid elimination with partial pivoting, in log form.
///
/// `tol` bounds the accepted antisymmetry residual `‖A + Aᵀ‖_F / max(1, ‖A‖_F)`.
pub fn pfaffian_log<T: Scalar>(a: &DMatrix<T>, tol: f64) -> Result<PfaffianLog<T>> {
    check_square(a.shape())?;
    let n = a.nrows();
    if n % 2 != 0 {
        return Err(Error::Dimension(format!("Pfaffian needs even dimension, got {n}")));
    }
    let residual = (a + a.transpose()).norm();
    if residual > tol * a.norm().max(1.0) {
        return Err(Error::Structure { kind: "antisymmetric", residual });
    }
    let mut m = (a - a.transpose()).unscale(2.0);
    let mut phase = T::one();
    let mut ln_abs = 0.0;
    let mut product = T::one();
    for k in (0..n - 1).step_by(2) {
        let (mut kp, mut best) = (k + 1, -1.0);
        for i in k + 1..n {
            let v = m[(i, k)].modulus();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            m.swap_rows(k + 1, kp);
            m.swap_columns(k + 1, kp);
            phase = -phase;
            product = -product;
        }
        let pivot = m[(k, k + 1)];
        let pm = pivot.modulus();
        if pm == 0.0 {
            return Ok(PfaffianLog { phase: T::zero(), ln_abs: f64::NEG_INFINITY, product: T::zero() });
        }
        phase *= pivot.unscale(pm);
        product *= pivot;
        ln_abs += pm.ln();
        if k + 2 < n {
            let tau: Vec<T> = (k + 2..n).map(|j| m[(k, j)] / pivot).collect();
            let col: Vec<T> = (k + 2..n).map(|i| m[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    m[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
    }
    Ok(PfaffianLog { phase, ln_abs, product })
}

/// `‖A‖_1` (maximum absolute column sum).
pub fn norm1<T: Scalar>(a: &DMatrix<T>) -> f64 {
    a.column_iter().map(|c| c.iter().map(|x| x.modulus()).sum::<f64>()).fold(0.0, f64::max)
}
