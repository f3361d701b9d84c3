//! Exact and asymptotic spectral statistics of the complex induced Ginibre ensemble.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::params::{Beta, EnsembleParams};
use crate::specfun::{erfc_complex, lgamma, ln_upper_reg_gamma, p_difference};
use crate::util::{scaled_power_sum, series_terms};

/// Value of the Heaviside step at 0 in the ring law.
pub const HEAVISIDE_AT_ZERO: f64 = 0.5;

fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        HEAVISIDE_AT_ZERO
    }
}

fn check(p: &EnsembleParams) -> Result<()> {
    p.require_beta(Beta::Complex)
}

/// Correlation kernel
/// `K_N(z,w) = (1/π) e^{-|z|²/2-|w|²/2} z^L w̄^L Σ_{j<N} (z w̄)^j / Γ(j+L+1)`.
///
/// For integer `L` the prefactor `z^L w̄^L` equals `(z w̄)^L`; for real `L` it
/// is taken on the principal branch of each factor, which keeps `K_N`
/// Hermitian and reproducing. Terms are summed in log-magnitude form.
pub fn kernel_kn(z: Complex64, w: Complex64, p: &EnsembleParams) -> Result<Complex64> {
    check(p)?;
    Ok(kernel_unchecked(z, w, p.n(), p.l()))
}

pub(crate) fn kernel_unchecked(z: Complex64, w: Complex64, n: usize, l: f64) -> Complex64 {
    let (rz, rw) = (z.norm(), w.norm());
    let u = z * w.conj();
    if u.norm() == 0.0 {
        if l > 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = FRAC_1_PI * (-0.5 * (rz * rz + rw * rw)).exp();
        return Complex64::new(v, 0.0);
    }
    // e^{-|z|²/2-|w|²/2} |zw|^{L+j} = e^{-(|z|-|w|)²/2} · |u|^{L+j} e^{-|u|}.
    let extra = -0.5 * (rz - rw) * (rz - rw);
    let phase = l * (z.arg() - w.arg());
    scaled_power_sum(u, l, n, extra) * Complex64::from_polar(FRAC_1_PI, phase)
}

/// Mean eigenvalue density `ρ_N(z) = (1/π)[P(L,|z|²) - P(L+N,|z|²)]`, with
/// `P(0, ·) ≡ 1`.
pub fn density(z: Complex64, p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    Ok(density_unchecked(z.norm_sqr(), p.n(), p.l()))
}

/// The density as a function of `r² = |z|²`.
pub(crate) fn density_unchecked(r2: f64, n: usize, l: f64) -> f64 {
    FRAC_1_PI * p_difference(l, l + n as f64, r2).max(0.0)
}

/// Density from the kernel's truncated sum, `(1/π) e^{-r²} Σ_{l=L}^{L+N-1} r^{2l}/Γ(l+1)`.
pub fn density_sum_form(z: Complex64, p: &EnsembleParams) -> Result<f64> {
    Ok(kernel_kn(z, z, p)?.re)
}

/// `∫ K_N(z,z) d²z` by adaptive Gauss-Legendre in `r` on `[0, √(N+L)+8]`
/// with the angular factor `2π` exact; equals `N` up to quadrature error.
pub fn kernel_mass(p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    let (n, l) = (p.n(), p.l());
    let ring = (n as f64 + l).sqrt();
    let mut cuts = vec![0.0, l.sqrt(), ring, ring + 8.0];
    cuts.dedup();
    let f = |r: f64| 2.0 * PI * r * kernel_unchecked(Complex64::new(r, 0.0), Complex64::new(r, 0.0), n, l).re;
    Ok(cuts.windows(2).map(|w| crate::quadrature::adaptive(f, w[0], w[1], 1e-12)).sum())
}

/// `R_n = det[K_N(z_j, z_k)]`.
pub fn correlations_rn(points: &[Complex64], p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    if points.len() > p.n() {
        return Err(Error::domain(format!("{} points exceed N={}", points.len(), p.n())));
    }
    let k = DMatrix::from_fn(points.len(), points.len(), |a, b| kernel_unchecked(points[a], points[b], p.n(), p.l()));
    Ok(k.determinant().re)
}

/// Hole probability `A(s) = Π_{j=1}^{N} Q(j+L, s²)`, accumulated as a sum of logs.
pub fn hole_probability(s: f64, p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("radius must be finite and >= 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let x = s * s;
    let ln: f64 = (1..=p.n()).map(|j| ln_upper_reg_gamma(j as f64 + p.l(), x)).sum();
    Ok(ln.exp())
}

/// Almost-square expansion `1 - s^{2(L+1)}/(L+1)!` of the hole probability.
pub fn hole_probability_small_s(s: f64, l: f64) -> f64 {
    1.0 - ((2.0 * (l + 1.0)) * s.ln() - lgamma(l + 2.0)).exp()
}

/// Ring law `(1/π)[Θ(√(α+1) - |ζ|) - Θ(√α - |ζ|)]` with `Θ(0) = 1/2`.
pub fn density_ring_limit(zeta: Complex64, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::domain(format!("alpha must be >= 0, got {alpha}")));
    }
    let r = zeta.norm();
    Ok(FRAC_1_PI * (heaviside((alpha + 1.0).sqrt() - r) - heaviside(alpha.sqrt() - r)))
}

/// Edge profile `(1/2π) erfc(√2 ξ)`, valid at either edge with ξ measured outward.
pub fn density_edge_profile(xi: f64) -> f64 {
    0.5 * FRAC_1_PI * libm::erfc(SQRT_2 * xi)
}

/// Limit of `K_N` at fixed `L` as `N → ∞`:
/// `(1/π) e^{-|z|²/2-|w|²/2+z w̄} γ(L, z w̄)/Γ(L)`.
///
/// On the diagonal this is `(1/π) γ(L,|z|²)/Γ(L)`. Off the diagonal the weight
/// factor `e^{-|z|²/2-|w|²/2+z w̄}` is not a gauge and cannot be dropped; see
/// [`origin_kernel_bare`]. The incomplete gamma at complex argument is the
/// series `Σ_{j≥0} u^{j+L} e^{-u}/Γ(L+j+1)`, here with `e^{-u}` cancelled
/// against the weight, truncated once the tail is below `1e-14` relative.
pub fn origin_kernel(z: Complex64, w: Complex64, l: f64) -> Result<Complex64> {
    if !(l >= 1.0) {
        return Err(Error::domain(format!("origin kernel needs L >= 1, got {l}")));
    }
    let u = z * w.conj();
    let terms = series_terms(u.norm());
    Ok(kernel_unchecked(z, w, terms, l))
}

/// `(1/π) γ(L, z w̄)/Γ(L)` without the weight factor. Agrees with
/// [`origin_kernel`] for `z = w` only.
pub fn origin_kernel_bare(z: Complex64, w: Complex64, l: f64) -> Result<Complex64> {
    if !(l >= 1.0) {
        return Err(Error::domain(format!("origin kernel needs L >= 1, got {l}")));
    }
    let u = z * w.conj();
    if u.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // |u^{L+j} e^{-u}| = D(L+j, |u|) e^{|u| - Re u}.
    let s = scaled_power_sum(u, l, series_terms(u.norm()), u.norm() - u.re);
    Ok(s * Complex64::from_polar(FRAC_1_PI, l * u.arg() - u.im))
}

/// Scaling regime for the limiting complex correlation functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexRegime {
    /// Points `√N u + z_k` with `√α < |u| < √(α+1)`.
    Bulk,
    /// Points `√(N(α+1)) u + z_k` with `|u| = 1`.
    OuterEdge,
    /// Points `√(Nα) u - z_k` with `|u| = 1`.
    InnerEdge,
}

/// Limiting kernel entry between local coordinates `z`, `w`.
///
/// Bulk: `(1/π) exp(-|z|²/2 - |w|²/2 + z w̄)`; at an edge the same times
/// `½ erfc((z ū + w̄ u)/√2)`.
pub fn limit_kernel(z: Complex64, w: Complex64, u: Complex64, regime: ComplexRegime) -> Complex64 {
    let base = FRAC_1_PI * (-(0.5 * z.norm_sqr() + 0.5 * w.norm_sqr()) + z * w.conj()).exp();
    match regime {
        ComplexRegime::Bulk => base,
        ComplexRegime::OuterEdge | ComplexRegime::InnerEdge => {
            base * 0.5 * erfc_complex((z * u.conj() + w.conj() * u) / SQRT_2)
        }
    }
}

/// `det[limit_kernel(z_j, z_k)]` after validating `u` for the regime.
pub fn bulk_edge_limit_kernels(points: &[Complex64], u: Complex64, regime: ComplexRegime, alpha: f64) -> Result<f64> {
    validate_regime(u, regime, alpha)?;
    let k = DMatrix::from_fn(points.len(), points.len(), |a, b| limit_kernel(points[a], points[b], u, regime));
    Ok(k.determinant().re)
}

fn validate_regime(u: Complex64, regime: ComplexRegime, alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) {
        return Err(Error::domain(format!("alpha must be >= 0, got {alpha}")));
    }
    let r = u.norm();
    match regime {
        ComplexRegime::Bulk if !(r > alpha.sqrt() && r < (alpha + 1.0).sqrt()) => Err(Error::domain(format!(
            "bulk reference |u|={r} must lie strictly inside ({}, {})",
            alpha.sqrt(),
            (alpha + 1.0).sqrt()
        ))),
        ComplexRegime::OuterEdge | ComplexRegime::InnerEdge if (r - 1.0).abs() > 1e-12 => {
            Err(Error::domain(format!("edge direction needs |u| = 1, got {r}")))
        }
        _ => Ok(()),
    }
}

/// Global position of local coordinate `z` for a finite-`N` comparison.
pub fn scaled_point(z: Complex64, u: Complex64, regime: ComplexRegime, n: usize, alpha: f64) -> Complex64 {
    let nf = n as f64;
    match regime {
        ComplexRegime::Bulk => nf.sqrt() * u + z,
        ComplexRegime::OuterEdge => (nf * (alpha + 1.0)).sqrt() * u + z,
        ComplexRegime::InnerEdge => (nf * alpha).sqrt() * u - z,
    }
}

/// Unimodular gauge `e^{i c Im(ū z)}` relating finite-`N` kernels at the
/// scaled points to the limit kernel, where `c` is the reference radius.
pub fn gauge(z: Complex64, u: Complex64, regime: ComplexRegime, n: usize, alpha: f64) -> Complex64 {
    let nf = n as f64;
    let (c, zz) = match regime {
        ComplexRegime::Bulk => (nf.sqrt(), z),
        ComplexRegime::OuterEdge => ((nf * (alpha + 1.0)).sqrt(), z),
        ComplexRegime::InnerEdge => ((nf * alpha).sqrt(), -z),
    };
    Complex64::from_polar(1.0, c * (u.conj() * zz).im)
}

/// `ln` of the symmetrised eigenvalue density
/// `(1/(N! π^N)) Π_{j=1}^{N} Γ(j+L)^{-1} Π_{j<k}|λ_k-λ_j|² Π|λ_j|^{2L} e^{-Σ|λ_j|²}`.
pub fn log_jpdf_complex(lambdas: &[Complex64], p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    let n = p.n();
    if lambdas.len() != n {
        return Err(Error::Dimension(format!("expected {n} eigenvalues, got {}", lambdas.len())));
    }
    let l = p.l();
    let mut s = -lgamma(n as f64 + 1.0) - n as f64 * PI.ln();
    for j in 1..=n {
        s -= lgamma(j as f64 + l);
    }
    for (j, a) in lambdas.iter().enumerate() {
        for b in &lambdas[j + 1..] {
            s += 2.0 * (a - b).norm().ln();
        }
        let r2 = a.norm_sqr();
        if l > 0.0 {
            s += l * r2.ln();
        }
        s -= r2;
    }
    Ok(if s.is_nan() { f64::NEG_INFINITY } else { s })
}
