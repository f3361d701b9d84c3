//! Random complementary quantum maps and the spectra of their quadratised
//! superoperators.
//!
//! Bases: the composite space is `S ⊗ E` with index `n·k + a` for system
//! state `n < d` and environment state `a < k`; the environment starts in
//! `|0⟩`. Density matrices are vectorised row-major, `vec(ρ)_{n·d+n'} = ρ_{nn'}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complex_spectrum, sample_haar, ComplexMatrix, Spectrum};
use crate::sampler::quadratise;

/// Unitarity tolerance for the global interaction.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Input dimension `d`, environment dimension `k` and the global unitary
/// `U ∈ U(kd)`.
///
/// Invariant: `‖U†U - 1‖_F ≤ UNITARITY_TOLERANCE`.
#[derive(Debug, Clone)]
pub struct ChannelSpec {
    d: usize,
    k: usize,
    u: ComplexMatrix,
}

impl ChannelSpec {
    pub fn new(d: usize, k: usize, u: ComplexMatrix) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::domain(format!("dimensions must be positive, got d={d}, k={k}")));
        }
        if u.shape() != (d * k, d * k) {
            return Err(Error::Dimension(format!("U must be {0}×{0}, got {1:?}", d * k, u.shape())));
        }
        let residual = (u.adjoint() * &u - ComplexMatrix::identity(d * k, d * k)).norm();
        if !(residual <= UNITARITY_TOLERANCE) {
            return Err(Error::Structure { kind: "unitary", residual });
        }
        Ok(Self { d, k, u })
    }

    /// Haar-random interaction.
    pub fn random<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::domain(format!("dimensions must be positive, got d={d}, k={k}")));
        }
        Self::new(d, k, sample_haar(d * k, rng))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    /// Kraus operators of `ρ ↦ Tr_S[U(ρ ⊗ |0⟩⟨0|)U†]`: `d` matrices of size
    /// `k × d`, `(F_m)_{a,n} = U_{m·k+a, n·k}`.
    pub fn kraus_operators(&self) -> Vec<ComplexMatrix> {
        let (d, k) = (self.d, self.k);
        (0..d).map(|m| DMatrix::from_fn(k, d, |a, n| self.u[(m * k + a, n * k)])).collect()
    }
}

/// `Φ_c = Σ_m F_m ⊗ conj(F_m)`, the `k² × d²` matrix of a complementary map.
#[derive(Debug, Clone)]
pub struct Superoperator {
    matrix: ComplexMatrix,
    spec: ChannelSpec,
}

impl Superoperator {
    pub fn from_spec(spec: ChannelSpec) -> Self {
        let (d, k) = (spec.d, spec.k);
        let mut matrix = ComplexMatrix::zeros(k * k, d * d);
        for f in spec.kraus_operators() {
            matrix += f.kronecker(&f.map(|z| z.conj()));
        }
        Self { matrix, spec }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &ChannelSpec {
        &self.spec
    }

    /// Applies the map to a `d × d` matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (d, k) = (self.spec.d, self.spec.k);
        if rho.shape() != (d, d) {
            return Err(Error::Dimension(format!("expected {d}×{d} input, got {:?}", rho.shape())));
        }
        let v = DMatrix::from_fn(d * d, 1, |i, _| rho[(i / d, i % d)]);
        let out = &self.matrix * v;
        Ok(DMatrix::from_fn(k, k, |a, b| out[(a * k + b, 0)]))
    }

    /// `D_{(a,n),(b,n')} = Φ_{(a,b),(n,n')}`, a `kd × kd` Hermitian PSD matrix of
    /// rank at most `d`.
    pub fn dynamical_matrix(&self) -> ComplexMatrix {
        let (d, k) = (self.spec.d, self.spec.k);
        DMatrix::from_fn(k * d, k * d, |r, c| {
            let (a, n) = (r / d, r % d);
            let (b, n2) = (c / d, c % d);
            self.matrix[(a * k + b, n * d + n2)]
        })
    }

    /// `Tr Φ_c†Φ_c`.
    pub fn squared_norm(&self) -> f64 {
        self.matrix.norm_squared()
    }

    /// `‖Σ_m F_m†F_m - 1_d‖_F`.
    pub fn identity_resolution_residual(&self) -> f64 {
        let d = self.spec.d;
        let sum = self.spec.kraus_operators().iter().fold(ComplexMatrix::zeros(d, d), |acc, f| acc + f.adjoint() * f);
        (sum - ComplexMatrix::identity(d, d)).norm()
    }
}

/// Complementary map of a Haar-random interaction.
pub fn random_complementary_map<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Result<Superoperator> {
    check_dims(d, k)?;
    Ok(Superoperator::from_spec(ChannelSpec::random(d, k, rng)?))
}

fn check_dims(d: usize, k: usize) -> Result<()> {
    if d < 2 || k < 2 {
        return Err(Error::domain(format!("need d, k >= 2, got d={d}, k={k}")));
    }
    Ok(())
}

/// Eigenvalues of the square reduction of `Φ_c`: directly when `k = d`,
/// of the quadratisation of `Φ_c` when `k > d`, of `Φ_cᵀ` when `k < d`.
pub fn quadratised_spectrum(phi: &Superoperator) -> Result<Spectrum> {
    let m = phi.matrix();
    let square = match phi.spec.k.cmp(&phi.spec.d) {
        std::cmp::Ordering::Equal => m.clone(),
        std::cmp::Ordering::Greater => quadratise(m)?.g,
        std::cmp::Ordering::Less => quadratise(&m.transpose())?.g,
    };
    complex_spectrum(&square)
}

/// Predicted support `r_in ≤ |λ| ≤ r_out` of the non-leading eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    pub inner: f64,
    pub outer: f64,
}

impl Ring {
    /// Whether `r` lies in `[inner - delta, outer + delta]`.
    pub fn contains(&self, r: f64, delta: f64) -> bool {
        self.inner - delta <= r && r <= self.outer + delta
    }
}

/// Ring radii for a `d → k` complementary map, from matching `Φ_c` to a
/// Gaussian of squared norm `d`.
pub fn predicted_ring(d: usize, k: usize) -> Result<Ring> {
    check_dims(d, k)?;
    let (df, kf) = (d as f64, k as f64);
    Ok(if k >= d {
        let outer = 1.0 / df.sqrt();
        Ring { inner: outer * (1.0 - (df / kf).powi(2)).sqrt(), outer }
    } else {
        let outer = df.sqrt() / kf;
        Ring { inner: outer * (1.0 - (kf / df).powi(2)).sqrt(), outer }
    })
}

/// Eigenvalues with the largest-modulus one removed.
pub fn non_leading(spectrum: &Spectrum) -> Vec<Complex64> {
    let mut v = spectrum.values();
    if let Some(i) = (0..v.len()).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm())) {
        v.swap_remove(i);
    }
    v
}

/// Fraction of `values` whose modulus lies in the `delta`-widened ring.
pub fn ring_fraction(values: &[Complex64], ring: Ring, delta: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().filter(|z| ring.contains(z.norm(), delta)).count() as f64 / values.len() as f64
}

/// `d(k+1)/k`, the approximate mean of `Tr Φ_c†Φ_c`.
pub fn predicted_squared_norm(d: usize, k: usize) -> f64 {
    d as f64 * (k as f64 + 1.0) / k as f64
}
