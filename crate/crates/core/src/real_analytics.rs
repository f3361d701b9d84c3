//! Exact and asymptotic spectral statistics of the real induced Ginibre ensemble.
//!
//! Correlations are Pfaffians of `2×2` blocks
//! `[[DS(a,b), S(a,b)], [-S(b,a), IS(a,b) + ε(a,b)]]` built from three scalar
//! pieces: the truncated exponential `s(z,w)`, the real-argument corrections
//! `r(x,z) + t(x,z)`, and `∫_x^y S(t,y) dt` for two real points. The
//! [`SkewKernel`] trait assembles the blocks from those pieces, so the finite-N
//! kernel and its large-N limits share one code path.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_PI, LN_2, PI, SQRT_2};

use crate::complex_analytics::{self, ComplexRegime};
use crate::error::{Error, Result};
use crate::linalg::pfaffian_log;
use crate::params::{Beta, EnsembleParams};
use crate::quadrature::{adaptive, Rule};
use crate::specfun::{
    erfc_complex, erfcx, lgamma, ln_gamma_prefactor, ln_lower_reg_gamma, ln_upper_reg_gamma,
    p_difference, reg_gamma_pair_unchecked,
};
use crate::util::{scaled_power_sum, series_terms, CompensatedSum};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Largest accepted `‖M + Mᵀ‖ / max(1, ‖M‖)` of an assembled kernel matrix.
pub const ASYMMETRY_TOLERANCE: f64 = 1e-8;

/// An eigenvalue location: on the real line or in the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Real(f64),
    Complex(Complex64),
}

impl Point {
    pub fn value(self) -> Complex64 {
        match self {
            Point::Real(x) => Complex64::new(x, 0.0),
            Point::Complex(z) => z,
        }
    }
}

/// Denominator of the `t` correction term.
///
/// `GammaL` reproduces the Ginibre real density at `L = 0` and the equal
/// inner and outer edge profiles; `GammaLPlusOne` is the alternative
/// normalisation kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TNormalization {
    #[default]
    GammaL,
    GammaLPlusOne,
}

/// One `2×2` kernel block, without the `-S(b,a)` entry which needs the
/// swapped arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealKernelEntries {
    pub ds: Complex64,
    pub s: Complex64,
    pub is: Complex64,
    /// `sgn(a - b)/2` for two real points, else 0.
    pub eps: f64,
}

/// Kernel pieces from which the Pfaffian blocks are assembled.
///
/// Implementors provide `s(z,w)` (symmetric), the real-argument correction
/// `rt(x,z) = r(x,z) + t(x,z)`, and `integrated(x,y) = ∫_x^y S(t,y) dt`.
pub trait SkewKernel {
    fn s(&self, z: Complex64, w: Complex64) -> Complex64;
    fn rt(&self, x: f64, z: Complex64) -> Complex64;
    fn integrated(&self, x: f64, y: f64) -> f64;

    fn entries(&self, a: Point, b: Point) -> RealKernelEntries {
        let i = Complex64::i();
        match (a, b) {
            (Point::Complex(z), Point::Complex(w)) => RealKernelEntries {
                ds: (w - z) * self.s(z, w),
                s: i * (w.conj() - z) * self.s(z, w.conj()),
                is: (z.conj() - w.conj()) * self.s(z.conj(), w.conj()),
                eps: 0.0,
            },
            (Point::Real(x), Point::Complex(z)) => {
                let xc = Complex64::new(x, 0.0);
                RealKernelEntries {
                    ds: (z - xc) * self.s(xc, z),
                    s: i * (z.conj() - xc) * self.s(xc, z.conj()),
                    is: -i * (self.s(xc, z.conj()) + self.rt(x, z.conj())),
                    eps: 0.0,
                }
            }
            (Point::Complex(z), Point::Real(x)) => {
                let xc = Complex64::new(x, 0.0);
                RealKernelEntries {
                    ds: (xc - z) * self.s(xc, z),
                    s: self.s(xc, z) + self.rt(x, z),
                    is: i * (self.s(xc, z.conj()) + self.rt(x, z.conj())),
                    eps: 0.0,
                }
            }
            (Point::Real(x), Point::Real(y)) => {
                let (xc, yc) = (Complex64::new(x, 0.0), Complex64::new(y, 0.0));
                let s = self.s(xc, yc);
                RealKernelEntries {
                    ds: (yc - xc) * s,
                    s: s + self.rt(y, xc),
                    is: Complex64::new(self.integrated(x, y), 0.0),
                    eps: 0.5 * sign(x - y),
                }
            }
        }
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `ln(x^a e^{-x}/Γ(a+1))` with `D(0, 0) = 1`.
fn ln_d(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if a == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    ln_gamma_prefactor(a, x)
}

fn d(a: f64, x: f64) -> f64 {
    ln_d(a, x).exp()
}

/// `P(a, x)` with `P(0, x) = 1`.
fn p_reg(a: f64, x: f64) -> f64 {
    if a == 0.0 { 1.0 } else { reg_gamma_pair_unchecked(a, x).0 }
}

/// `ln Γ(a+1) - ln Γ(a+½)`.
fn ln_half_ratio(a: f64) -> f64 {
    lgamma(a + 1.0) - lgamma(a + 0.5)
}

/// Argument used for the `w^L` factor: 0 on the real line, where the weight
/// is `|x|^L`, and the principal argument elsewhere.
fn arg_l(z: Complex64) -> f64 {
    if z.im == 0.0 { 0.0 } else { z.arg() }
}

/// `ln |ψ(z)| = -|z|²/2 + ½ ln erfcx(√2 |Im z|)`.
fn ln_psi_abs(z: Complex64) -> f64 {
    -0.5 * z.norm_sqr() + 0.5 * erfcx(SQRT_2 * z.im.abs()).ln()
}

/// `ψ(z) = e^{-z²/2} √erfc(√2 |Im z|)`.
///
/// The modulus of `Im z` makes `ψ(z) ψ(z̄)` equal to the complex-pair weight
/// `e^{y²-x²} erfc(√2 y)` for either representative of a conjugate pair.
pub fn psi(z: Complex64) -> Complex64 {
    Complex64::from_polar(ln_psi_abs(z).exp(), -z.re * z.im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Truncation {
    /// Degree `N`: `s` sums `N - 1` terms and `r` is present.
    Finite(usize),
    /// `N → ∞` at fixed `L`: the sums run to convergence and `r` vanishes.
    Unbounded,
}

/// The finite-N kernel, or its fixed-`L` limit at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealKernel {
    l: f64,
    truncation: Truncation,
    t_norm: TNormalization,
}

impl RealKernel {
    /// Kernel of the real ensemble; needs `β = 1` and even `N`.
    pub fn new(p: &EnsembleParams) -> Result<Self> {
        check(p)?;
        Ok(Self { l: p.l(), truncation: Truncation::Finite(p.n()), t_norm: TNormalization::default() })
    }

    /// `N → ∞` limit at fixed `L`, on the unscaled plane near the origin.
    pub fn origin(l: f64) -> Result<Self> {
        if !(l >= 0.0) || !l.is_finite() {
            return Err(Error::domain(format!("rectangularity L must be finite and >= 0, got {l}")));
        }
        Ok(Self { l, truncation: Truncation::Unbounded, t_norm: TNormalization::default() })
    }

    pub fn with_t_normalization(mut self, t_norm: TNormalization) -> Result<Self> {
        if t_norm == TNormalization::GammaLPlusOne && self.l == 0.0 {
            return Err(Error::domain("the Γ(L+1) normalisation of t needs L > 0"));
        }
        self.t_norm = t_norm;
        Ok(self)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    fn terms(&self, r: f64) -> usize {
        match self.truncation {
            Truncation::Finite(n) => n - 1,
            Truncation::Unbounded => series_terms(r),
        }
    }

    /// `s_N(z,w) = (1/√2π) ψ(z) ψ(w) z^L w^L Σ_{j=0}^{N-2} (zw)^j / Γ(L+j+1)`.
    pub fn s_n(&self, z: Complex64, w: Complex64) -> Complex64 {
        let u = z * w;
        let (rz, rw) = (z.norm(), w.norm());
        let extra = -0.5 * (rz - rw) * (rz - rw) + 0.5 * erfcx(SQRT_2 * z.im.abs()).ln()
            + 0.5 * erfcx(SQRT_2 * w.im.abs()).ln();
        let phase = -(z.re * z.im + w.re * w.im) + self.l * (arg_l(z) + arg_l(w));
        scaled_power_sum(u, self.l, self.terms(u.norm()), extra) * Complex64::from_polar(FRAC_1_SQRT_2PI, phase)
    }

    /// `r_N(x,z) = (1/√2π) ψ(z) sgn(x) 2^{(N+L-3)/2} z^L z^{N-1} γ((N+L-1)/2, x²/2) / Γ(N+L-1)`;
    /// zero in the unbounded limit.
    pub fn r_n(&self, x: f64, z: Complex64) -> Complex64 {
        let Truncation::Finite(n) = self.truncation else {
            return Complex64::new(0.0, 0.0);
        };
        if x == 0.0 || z.norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // By Legendre duplication the constants collapse to
        // (1/√2) Γ(a+1)/Γ(a+½) D(a, |z|²/2) √erfcx(√2|Im z|) P(a, x²/2).
        let a = 0.5 * (n as f64 + self.l - 1.0);
        let ln = -0.5 * LN_2 + ln_half_ratio(a) + ln_d(a, 0.5 * z.norm_sqr())
            + 0.5 * erfcx(SQRT_2 * z.im.abs()).ln()
            + ln_lower_reg_gamma(a, 0.5 * x * x);
        let mut phase = -z.re * z.im + self.l * arg_l(z) + (n - 1) as f64 * z.arg();
        if x < 0.0 {
            phase += PI;
        }
        Complex64::from_polar(ln.exp(), phase)
    }

    /// `t(x,z) = (1/√2π) ψ(z) 2^{L/2-1} z^L Γ(L/2, x²/2) / Γ(L)` (or `/Γ(L+1)`).
    ///
    /// The `Γ(L)` form vanishes identically at `L = 0` for `x ≠ 0`, which is the
    /// limit taken here at every `x`.
    pub fn t(&self, x: f64, z: Complex64) -> Complex64 {
        if self.l == 0.0 || z.norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let b = 0.5 * self.l;
        let mut ln = -0.5 * LN_2 + ln_half_ratio(b) + ln_d(b, 0.5 * z.norm_sqr())
            + 0.5 * erfcx(SQRT_2 * z.im.abs()).ln()
            + ln_upper_reg_gamma(b, 0.5 * x * x);
        if self.t_norm == TNormalization::GammaLPlusOne {
            ln -= self.l.ln();
        }
        Complex64::from_polar(ln.exp(), -z.re * z.im + self.l * arg_l(z))
    }

    fn t_scale(&self) -> f64 {
        match self.t_norm {
            TNormalization::GammaL => 1.0,
            TNormalization::GammaLPlusOne => 1.0 / self.l,
        }
    }
}

impl SkewKernel for RealKernel {
    fn s(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.s_n(z, w)
    }

    fn rt(&self, x: f64, z: Complex64) -> Complex64 {
        self.r_n(x, z) + self.t(x, z)
    }

    /// Each power `t^m` integrates to an incomplete gamma, and after Legendre
    /// duplication every term is a product of a Poisson weight and regularized
    /// gammas in `[0, 1]`, so the sum has no cancellation beyond sign changes.
    fn integrated(&self, x: f64, y: f64) -> f64 {
        let l = self.l;
        let (hx, hy) = (0.5 * x * x, 0.5 * y * y);
        let (sx, sy) = (sign(x), sign(y));
        let terms = match self.truncation {
            Truncation::Finite(n) => n - 1,
            Truncation::Unbounded => 2 * series_terms(hx.max(hy).max((x * y).abs())),
        };
        let mut acc = CompensatedSum::default();
        let (mut sy_j, mut sx_j1) = (1.0, sx);
        for j in 0..terms {
            let jf = j as f64;
            let c = 0.5 * (l + jf + 1.0);
            let dj = d(c - 0.5, hy);
            if dj > 0.0 {
                acc.add(0.5 * dj * (sy * p_reg(c, hy) - sy_j * sx_j1 * p_reg(c, hx)));
            } else if c - 0.5 > hy {
                break;
            }
            sy_j *= sy;
            sx_j1 *= sx;
        }
        if let Truncation::Finite(n) = self.truncation {
            let a = 0.5 * (n as f64 + l - 1.0);
            acc.add(0.5 * sy * p_reg(a, hy) * (p_reg(a + 0.5, hy) - p_reg(a + 0.5, hx)));
        }
        if l > 0.0 {
            let b = 0.5 * l;
            let q = reg_gamma_pair_unchecked(b, hy).1;
            acc.add(0.5 * self.t_scale() * q * (sy * p_reg(b + 0.5, hy) - sx * p_reg(b + 0.5, hx)));
        }
        acc.value()
    }
}

fn check(p: &EnsembleParams) -> Result<()> {
    p.require_beta(Beta::Real)?;
    p.require_even_n()
}

fn check_upper(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("complex points need finite Im > 0, got {z}")));
    }
    Ok(())
}

/// The `2×2` block entries at `(a, b)` of the finite-N kernel.
pub fn kernel_entries(a: Point, b: Point, p: &EnsembleParams) -> Result<RealKernelEntries> {
    let k = RealKernel::new(p)?;
    for pt in [a, b] {
        if let Point::Complex(z) = pt {
            check_upper(z)?;
        }
    }
    Ok(k.entries(a, b))
}

/// Mean density of complex eigenvalues in the upper half-plane,
/// `√(2/π) y erfc(√2 y) e^{2y²} [P(L, |z|²) - P(L+N-1, |z|²)]`.
pub fn density_complex(z: Complex64, p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    if z.im < 0.0 {
        return Err(Error::domain(format!("density_complex needs Im z >= 0, got {z}")));
    }
    let l = p.l();
    let y = z.im;
    Ok((2.0 * FRAC_1_PI).sqrt() * y * erfcx(SQRT_2 * y) * p_difference(l, l + p.n() as f64 - 1.0, z.norm_sqr()))
}

/// `S_N(z, z)` from the kernel's truncated sum; equals [`density_complex`].
pub fn density_complex_sum_form(z: Complex64, p: &EnsembleParams) -> Result<f64> {
    check_upper(z)?;
    let k = RealKernel::new(p)?;
    Ok(k.entries(Point::Complex(z), Point::Complex(z)).s.re)
}

/// Mean density of real eigenvalues,
/// `(1/√2π)[P(L, x²) - P(L+N-1, x²)] + t(x,x) + r_N(x,x)`.
pub fn density_real(x: f64, p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    Ok(density_real_unchecked(x, p.n(), p.l()))
}

pub(crate) fn density_real_unchecked(x: f64, n: usize, l: f64) -> f64 {
    let x2 = x * x;
    let h = 0.5 * x2;
    let mut v = FRAC_1_SQRT_2PI * p_difference(l, l + n as f64 - 1.0, x2);
    let a = 0.5 * (n as f64 + l - 1.0);
    if x != 0.0 {
        let (pa, _) = reg_gamma_pair_unchecked(a, h);
        v += FRAC_1_SQRT_2 * (ln_half_ratio(a) + ln_d(a, h)).exp() * pa;
    }
    if l > 0.0 && x != 0.0 {
        let b = 0.5 * l;
        let (_, qb) = reg_gamma_pair_unchecked(b, h);
        v += FRAC_1_SQRT_2 * (ln_half_ratio(b) + ln_d(b, h)).exp() * qb;
    }
    v
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `S_N(x, x)` from the kernel's pieces; equals [`density_real`].
pub fn density_real_sum_form(x: f64, p: &EnsembleParams) -> Result<f64> {
    let k = RealKernel::new(p)?;
    Ok(k.entries(Point::Real(x), Point::Real(x)).s.re)
}

/// Expected number of real eigenvalues, `∫ ρ_N^R`, by adaptive quadrature.
pub fn mean_real_count(p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    let (n, l) = (p.n(), p.l());
    let top = (n as f64 + l).sqrt() + 12.0;
    // Split at the ring radii where the density changes shape.
    let mut cuts = vec![0.0, l.sqrt(), (n as f64 + l).sqrt(), top];
    cuts.dedup();
    let half: f64 = cuts
        .windows(2)
        .map(|w| adaptive(|x| density_real_unchecked(x, n, l), w[0], w[1], 1e-13))
        .sum();
    Ok(2.0 * half)
}

/// `R_{K',L'}` as the Pfaffian of the assembled finite-N kernel matrix.
pub fn correlations_pfaffian(reals: &[f64], complexes: &[Complex64], p: &EnsembleParams) -> Result<f64> {
    let k = RealKernel::new(p)?;
    if reals.len() + complexes.len() > p.n() {
        return Err(Error::domain(format!(
            "{} points exceed N={}",
            reals.len() + complexes.len(),
            p.n()
        )));
    }
    pfaffian_correlation(reals, complexes, &k)
}

/// Pfaffian of the `2(K'+L')` matrix assembled from any [`SkewKernel`].
///
/// Block `(a, b)` is `[[DS(a,b), S(a,b)], [-S(b,a), IS(a,b) + ε(a,b)]]`; an
/// assembled matrix that is not antisymmetric within [`ASYMMETRY_TOLERANCE`]
/// is a hard error.
pub fn pfaffian_correlation<K: SkewKernel + ?Sized>(reals: &[f64], complexes: &[Complex64], kernel: &K) -> Result<f64> {
    for &z in complexes {
        check_upper(z)?;
    }
    if let Some(x) = reals.iter().find(|x| !x.is_finite()) {
        return Err(Error::domain(format!("real points must be finite, got {x}")));
    }
    let points: Vec<Point> =
        reals.iter().map(|&x| Point::Real(x)).chain(complexes.iter().map(|&z| Point::Complex(z))).collect();
    let m = points.len();
    if m == 0 {
        return Ok(1.0);
    }
    let mut mat = DMatrix::<Complex64>::zeros(2 * m, 2 * m);
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate() {
            let e = kernel.entries(a, b);
            let back = if i == j { e.s } else { kernel.entries(b, a).s };
            mat[(2 * i, 2 * j)] = e.ds;
            mat[(2 * i, 2 * j + 1)] = e.s;
            mat[(2 * i + 1, 2 * j)] = -back;
            mat[(2 * i + 1, 2 * j + 1)] = e.is + e.eps;
        }
    }
    let residual = (&mat + mat.transpose()).norm() / mat.norm().max(1.0);
    if !(residual <= ASYMMETRY_TOLERANCE) {
        return Err(Error::Structure { kind: "antisymmetric kernel", residual });
    }
    Ok(pfaffian_log(&mat, ASYMMETRY_TOLERANCE)?.value().re)
}

/// `ln P_{N,k,l}` for `k` real eigenvalues and `l` upper-half-plane
/// representatives of the conjugate pairs, on the ordered domain.
///
/// `P = 2^{l - N(N+1)/4 - NL/2} / Π_j Γ((L+j)/2) · |Δ| · Π |λ|^L e^{-λ²/2}
/// · Π |z|^{2L} e^{y²-x²} erfc(√2 y)`, with `Δ` the Vandermonde of the full
/// multiset including both members of each pair, so each pair contributes
/// its own `|z - z̄| = 2y`.
pub fn log_jpdf_real_partial(reals: &[f64], complexes: &[Complex64], p: &EnsembleParams) -> Result<f64> {
    check(p)?;
    for &z in complexes {
        check_upper(z)?;
    }
    let (k, pairs) = (reals.len(), complexes.len());
    if k + 2 * pairs != p.n() {
        return Err(Error::Dimension(format!("{k} reals and {pairs} pairs do not make N={}", p.n())));
    }
    let (n, l) = (p.n() as f64, p.l());
    let mut s = (pairs as f64 - 0.25 * n * (n + 1.0) - 0.5 * n * l) * LN_2;
    for j in 1..=p.n() {
        s -= lgamma(0.5 * (l + j as f64));
    }
    let all: Vec<Complex64> = reals
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(complexes.iter().flat_map(|&z| [z, z.conj()]))
        .collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            s += (all[i] - all[j]).norm().ln();
        }
    }
    for &x in reals {
        if l > 0.0 {
            s += l * x.abs().ln();
        }
        s -= 0.5 * x * x;
    }
    for &z in complexes {
        if l > 0.0 {
            s += l * z.norm_sqr().ln();
        }
        s += z.im * z.im - z.re * z.re + crate::specfun::ln_erfc(SQRT_2 * z.im);
    }
    Ok(s)
}

/// Coefficients (ascending powers) of the skew-orthogonal polynomial `q_k`:
/// `q_{2j} = w^{2j}`, `q_{2j+1} = w^{2j+1} - (2j+L) w^{2j-1}`, `q_1 = w`.
pub fn skew_poly(k: usize, l: f64) -> Vec<f64> {
    let mut c = vec![0.0; k + 1];
    c[k] = 1.0;
    if k % 2 == 1 && k >= 3 {
        c[k - 2] = -((k - 1) as f64 + l);
    }
    c
}

/// `r_j = (q_{2j}, q_{2j+1}) = 2√(2π) Γ(L+2j+1)`.
pub fn skew_poly_norm(j: usize, l: f64) -> f64 {
    2.0 * (2.0 * PI).sqrt() * lgamma(l + 2.0 * j as f64 + 1.0).exp()
}

fn poly_eval(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// The skew-symmetric inner product `(f,g) = (f,g)_ℝ + (f,g)_ℂ` evaluated by
/// tensor Gauss–Legendre quadrature on a truncated domain.
///
/// `(f,g)_ℝ = ∫∫ e^{-(x²+y²)/2} sgn(y-x) |xy|^L f(x) g(y)` and
/// `(f,g)_ℂ = 2i ∫_{y>0} e^{y²-x²} erfc(√2 y) |z|^{2L} [f(z)g(z̄) - g(z)f(z̄)]`.
#[derive(Debug, Clone)]
pub struct SkewInnerProduct {
    l: f64,
    line: Vec<(f64, f64)>,
    half_plane: Vec<(f64, f64)>,
}

impl SkewInnerProduct {
    pub fn new(l: f64) -> Self {
        let rule = Rule::new(40);
        // Both halves of the line separately so the |x|^L kink sits on a panel edge.
        let mut line = rule.nodes(-14.0, 0.0, 14);
        line.extend(rule.nodes(0.0, 14.0, 14));
        let half_plane = rule.nodes(0.0, 10.0, 10);
        Self { l, line, half_plane }
    }

    /// `(f, g)` for polynomials given by ascending coefficients.
    pub fn eval(&self, f: &[f64], g: &[f64]) -> f64 {
        let l = self.l;
        let weight = |x: f64| (-0.5 * x * x).exp() * if l > 0.0 { x.abs().powf(l) } else { 1.0 };
        // (f,g)_ℝ = ∫ g(y) w(y) [F(y) - (F(∞) - F(y))] dy with F(y) = ∫_{-∞}^y f w.
        let fw: Vec<f64> = self.line.iter().map(|&(x, wq)| wq * weight(x) * poly_eval(f, x.into()).re).collect();
        let total: f64 = fw.iter().sum();
        let mut below = 0.0;
        let mut real = 0.0;
        for (i, &(y, wq)) in self.line.iter().enumerate() {
            // Half of the node's own mass sits on each side of it.
            let mid = below + 0.5 * fw[i];
            real += wq * weight(y) * poly_eval(g, y.into()).re * (2.0 * mid - total);
            below += fw[i];
        }
        let mut cplx = Complex64::new(0.0, 0.0);
        for &(x, wx) in &self.line {
            for &(y, wy) in &self.half_plane {
                let z = Complex64::new(x, y);
                let w = (-x * x - y * y).exp() * erfcx(SQRT_2 * y) * z.norm_sqr().powf(l);
                let bracket = poly_eval(f, z) * poly_eval(g, z.conj()) - poly_eval(g, z) * poly_eval(f, z.conj());
                cplx += wx * wy * w * bracket;
            }
        }
        real + (2.0 * Complex64::i() * cplx).re
    }
}

// ---------------------------------------------------------------------------
// Large-N limits

/// Scaling regime for the limiting real-ensemble correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealRegime {
    /// Points `√N u + r` about a real `u` with `√α < |u| < √(α+1)`.
    Bulk,
    /// Complex points `√N u + s` about `u` off the real axis inside the ring.
    ComplexBulk,
    /// Points `u (√(N(α+1)) + r)` with `u = ±1`, `r` measured outward.
    OuterEdge,
    /// Points `u (√(Nα) - r)` with `u = ±1`, `r` measured outward (toward 0).
    InnerEdge,
}

/// Limiting kernel pieces in local coordinates about a real reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealLimitKernel {
    /// `s = (1/√2π) e^{-(a-b)²/2} √erfc(√2|Im a|) √erfc(√2|Im b|)`, no corrections.
    Bulk,
    /// Bulk `s` times `½ erfc((a+b)/√2)`, plus
    /// `rt(x, z) = (1/4√π) e^{-z²} erfc(-x) √erfc(√2|Im z|)`.
    Edge,
}

/// `ln √erfc(√2|Im z|)`, safe far from the real axis.
fn ln_sqrt_erfc_abs_im(z: Complex64) -> f64 {
    let y = z.im.abs();
    0.5 * (erfcx(SQRT_2 * y).ln() - 2.0 * y * y)
}

impl SkewKernel for RealLimitKernel {
    fn s(&self, z: Complex64, w: Complex64) -> Complex64 {
        // exp(-(z-w)²/2) and the √erfc weights over- and underflow together.
        let base = FRAC_1_SQRT_2PI * (-0.5 * (z - w) * (z - w) + ln_sqrt_erfc_abs_im(z) + ln_sqrt_erfc_abs_im(w)).exp();
        match self {
            RealLimitKernel::Bulk => base,
            RealLimitKernel::Edge => base * 0.5 * erfc_complex((z + w) / SQRT_2),
        }
    }

    fn rt(&self, x: f64, z: Complex64) -> Complex64 {
        match self {
            RealLimitKernel::Bulk => Complex64::new(0.0, 0.0),
            RealLimitKernel::Edge => {
                0.25 / PI.sqrt() * (-z * z + ln_sqrt_erfc_abs_im(z)).exp() * libm::erfc(-x)
            }
        }
    }

    fn integrated(&self, x: f64, y: f64) -> f64 {
        let gauss = 0.5 * libm::erf((y - x) / SQRT_2);
        match self {
            RealLimitKernel::Bulk => gauss,
            RealLimitKernel::Edge => {
                let f = |t: f64| FRAC_1_SQRT_2PI * (-0.5 * (t - y) * (t - y)).exp() * 0.5 * libm::erfc((t + y) / SQRT_2);
                let first = if x == y { 0.0 } else { adaptive(f, x, y, 1e-14) };
                first + 0.125 * libm::erfc(-y) * (libm::erf(y) - libm::erf(x))
            }
        }
    }
}

fn validate_regime(u: Complex64, regime: RealRegime, alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    let r = u.norm();
    let ok = match regime {
        RealRegime::Bulk => u.im == 0.0 && alpha.sqrt() < r && r < (alpha + 1.0).sqrt(),
        RealRegime::ComplexBulk => u.im > 0.0 && alpha.sqrt() < r && r < (alpha + 1.0).sqrt(),
        RealRegime::OuterEdge => u.im == 0.0 && r == 1.0,
        RealRegime::InnerEdge => u.im == 0.0 && r == 1.0 && alpha > 0.0,
    };
    if !ok {
        return Err(Error::domain(format!("reference point {u} is outside the {regime:?} regime (alpha={alpha})")));
    }
    Ok(())
}

/// Limiting `R_{K',L'}` about `u` in local coordinates: real offsets `reals`
/// and upper-half-plane offsets `complexes`.
///
/// The complex bulk carries only complex points and reduces to the Ginibre
/// determinant; the other regimes assemble Pfaffians of the limit kernels.
pub fn limit_kernels(reals: &[f64], complexes: &[Complex64], u: Complex64, regime: RealRegime, alpha: f64) -> Result<f64> {
    validate_regime(u, regime, alpha)?;
    match regime {
        RealRegime::ComplexBulk => {
            if !reals.is_empty() {
                return Err(Error::domain("the complex bulk has no real eigenvalues"));
            }
            complex_analytics::bulk_edge_limit_kernels(complexes, u, ComplexRegime::Bulk, alpha)
        }
        RealRegime::Bulk => pfaffian_correlation(reals, complexes, &RealLimitKernel::Bulk),
        RealRegime::OuterEdge | RealRegime::InnerEdge => pfaffian_correlation(reals, complexes, &RealLimitKernel::Edge),
    }
}

fn reference_radius(regime: RealRegime, n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    match regime {
        RealRegime::Bulk | RealRegime::ComplexBulk => nf.sqrt(),
        RealRegime::OuterEdge => (nf * (alpha + 1.0)).sqrt(),
        RealRegime::InnerEdge => (nf * alpha).sqrt(),
    }
}

/// Finite-N location of a real local offset.
pub fn scaled_real_point(r: f64, u: Complex64, regime: RealRegime, n: usize, alpha: f64) -> f64 {
    let c = reference_radius(regime, n, alpha);
    match regime {
        RealRegime::Bulk | RealRegime::ComplexBulk => c * u.re + r,
        RealRegime::OuterEdge => u.re * (c + r),
        RealRegime::InnerEdge => u.re * (c - r),
    }
}

/// Finite-N location of a complex local offset, returned as the
/// upper-half-plane representative of its conjugate pair.
pub fn scaled_complex_point(s: Complex64, u: Complex64, regime: RealRegime, n: usize, alpha: f64) -> Complex64 {
    let c = reference_radius(regime, n, alpha);
    let z = match regime {
        RealRegime::Bulk | RealRegime::ComplexBulk => c * u + s,
        RealRegime::OuterEdge => u * (c + s),
        RealRegime::InnerEdge => u * (c - s),
    };
    if z.im < 0.0 { z.conj() } else { z }
}

/// Ring law for real eigenvalues, `(1/√2π)[Θ(|x|-√α) - Θ(|x|-√(α+1))]`, in
/// the coordinate `x = λ/√N`.
pub fn real_ring_density(x: f64, alpha: f64) -> Result<f64> {
    let h = complex_analytics::density_ring_limit(Complex64::new(x, 0.0), alpha)?;
    Ok(h * PI * FRAC_1_SQRT_2PI)
}

/// Ring law for complex eigenvalues, `1/π` on `√α < |z| < √(α+1)`.
pub fn complex_ring_density(z: Complex64, alpha: f64) -> Result<f64> {
    complex_analytics::density_ring_limit(z, alpha)
}

/// Complex density at either circular edge away from the real axis,
/// `(1/2π) erfc(√2 ξ)`, with `ξ` measured outward.
pub fn complex_edge_density(xi: f64) -> f64 {
    complex_analytics::density_edge_profile(xi)
}

/// Real density at either edge of the real support, `ξ` measured outward:
/// `(1/√2π)[½ erfc(√2 ξ) + (1/(2√2)) e^{-ξ²} erfc(-ξ)]`.
///
/// Deep inside the support this tends to the plateau `1/√2π`.
pub fn real_edge_density(xi: f64) -> f64 {
    FRAC_1_SQRT_2PI * (0.5 * libm::erfc(SQRT_2 * xi) + 0.5 * FRAC_1_SQRT_2 * (-xi * xi).exp() * libm::erfc(-xi))
}

/// Complex density across the real axis inside the bulk,
/// `√(2/π) v erfc(√2 v) e^{2v²}`; tends to `1/π` as `v → ∞`.
pub fn crossover_density(v: f64) -> f64 {
    (2.0 * FRAC_1_PI).sqrt() * v * erfcx(SQRT_2 * v)
}

/// Fixed-`L` limit of the complex density near the origin,
/// `√(2/π) y erfc(√2 y) e^{2y²} P(L, |z|²)`.
pub fn origin_density_complex(z: Complex64, l: f64) -> f64 {
    crossover_density(z.im) * p_reg(l, z.norm_sqr())
}

/// Fixed-`L` limit of the real density near the origin,
/// `(1/√2π)[P(L, x²) + e^{-x²/2} |x|^L 2^{L/2-1} Γ(L/2, x²/2)/Γ(L)]`.
pub fn origin_density_real(x: f64, l: f64) -> f64 {
    let h = 0.5 * x * x;
    let mut v = FRAC_1_SQRT_2PI * p_reg(l, x * x);
    if l > 0.0 && x != 0.0 {
        let b = 0.5 * l;
        v += FRAC_1_SQRT_2 * (ln_half_ratio(b) + ln_d(b, h)).exp() * reg_gamma_pair_unchecked(b, h).1;
    }
    v
}

/// Leading-order expected number of real eigenvalues, `√(2/π)(√(L+N) - √L)`.
pub fn real_count_limit(n: usize, l: f64) -> f64 {
    (2.0 * FRAC_1_PI).sqrt() * ((l + n as f64).sqrt() - l.sqrt())
}
