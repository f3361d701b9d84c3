//! Log-gamma and the regularized incomplete gamma functions P(a, x), Q(a, x).

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Shapes above this use the uniform asymptotic expansion near the transition
/// region `x ≈ a`. Below it the series and continued fraction are exact to
/// rounding with the log-space prefactor.
pub const TEMME_THRESHOLD: f64 = 1.0e4;

/// Largest `a·η²/2` for which the uniform expansion is used, so that neither
/// `exp(-aη²/2)` nor the erfc term comes close to underflow.
const TEMME_EXPONENT_CAP: f64 = 1200.0;

const EPS: f64 = 1.0e-17;
const TINY: f64 = 1.0e-300;
const MAX_ITER: usize = 200_000;

fn check_args(a: f64, x: f64) -> Result<()> {
    if !a.is_finite() || !x.is_finite() {
        return Err(Error::domain(format!("non-finite argument (a={a}, x={x})")));
    }
    if a <= 0.0 {
        return Err(Error::domain(format!("shape must be positive, got a={a}")));
    }
    if x < 0.0 {
        return Err(Error::domain(format!("argument must be non-negative, got x={x}")));
    }
    Ok(())
}

/// `ln Γ(a)` for `a > 0`.
pub fn log_gamma(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::domain(format!("log_gamma needs finite a > 0, got {a}")));
    }
    Ok(lgamma(a))
}

#[inline]
pub(crate) fn lgamma(a: f64) -> f64 {
    libm::lgamma(a)
}

/// Regularized lower incomplete gamma `P(a, x) = γ(a, x)/Γ(a)`.
///
/// ```
/// use induced_ginibre::specfun::lower_reg_gamma;
/// let p = lower_reg_gamma(1.0, 0.5).unwrap();
/// assert!((p - (1.0 - (-0.5f64).exp())).abs() < 1e-15);
/// ```
pub fn lower_reg_gamma(a: f64, x: f64) -> Result<f64> {
    check_args(a, x)?;
    Ok(reg_gamma_pair_unchecked(a, x).0)
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x)/Γ(a)`.
pub fn upper_reg_gamma(a: f64, x: f64) -> Result<f64> {
    check_args(a, x)?;
    Ok(reg_gamma_pair_unchecked(a, x).1)
}

/// Both `(P, Q)`; the smaller one is computed directly, the other as its complement.
pub fn reg_gamma_pair(a: f64, x: f64) -> Result<(f64, f64)> {
    check_args(a, x)?;
    Ok(reg_gamma_pair_unchecked(a, x))
}

/// `ln(1 + t) - t`, accurate for small `t`.
pub(crate) fn log1pmx(t: f64) -> f64 {
    if t.abs() < 0.25 {
        // -t²/2 + t³/3 - ...
        let mut term = -t;
        let mut sum = 0.0;
        for n in 2..200 {
            term *= -t;
            let c = -term / n as f64;
            sum += c;
            if c.abs() <= EPS * sum.abs() {
                break;
            }
        }
        sum
    } else {
        t.ln_1p() - t
    }
}

/// `lgamma(a+1) - (a+1/2) ln a + a - ln(2π)/2`.
fn stirlerr(a: f64) -> f64 {
    if a < 10.0 {
        return lgamma(a + 1.0) - (a + 0.5) * a.ln() + a - 0.5 * (2.0 * PI).ln();
    }
    let r = 1.0 / a;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * 691.0 / 360360.0)))))
}

/// `ln(x^a e^{-x} / Γ(a+1))` without overflow or cancellation for large `a`.
pub(crate) fn ln_gamma_prefactor(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    if a < 10.0 {
        a * x.ln() - x - lgamma(a + 1.0)
    } else {
        a * log1pmx((x - a) / a) - 0.5 * (2.0 * PI * a).ln() - stirlerr(a)
    }
}

/// Sum `1 + x/(a+1) + x²/((a+1)(a+2)) + ...`, so that `P = prefactor · sum`.
fn lower_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term < sum * EPS {
            break;
        }
    }
    sum
}

/// Continued fraction for `Q · Γ(a) e^{x} x^{-a}` (modified Lentz).
fn upper_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

enum Branch {
    Temme(f64),
    Series,
    Fraction,
}

fn branch(a: f64, x: f64) -> Branch {
    if a > TEMME_THRESHOLD {
        let eta = temme_eta(a, x);
        if eta.abs() <= 1.0 && 0.5 * a * eta * eta <= TEMME_EXPONENT_CAP {
            return Branch::Temme(eta);
        }
    }
    if x < a + 1.0 {
        Branch::Series
    } else {
        Branch::Fraction
    }
}

/// `(P, Q)` for already validated arguments.
pub(crate) fn reg_gamma_pair_unchecked(a: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    match branch(a, x) {
        Branch::Temme(eta) => temme_pq(a, eta),
        Branch::Series => {
            let p = (ln_gamma_prefactor(a, x)).exp() * lower_series(a, x);
            let p = p.min(1.0);
            (p, 1.0 - p)
        }
        Branch::Fraction => {
            let q = (ln_gamma_prefactor(a, x) + a.ln()).exp() * upper_cf(a, x);
            let q = q.min(1.0);
            (1.0 - q, q)
        }
    }
}

/// `ln P(a, x)`, finite even where `P` underflows.
pub(crate) fn ln_lower_reg_gamma(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    match branch(a, x) {
        Branch::Series => ln_gamma_prefactor(a, x) + lower_series(a, x).ln(),
        _ => {
            let (p, q) = reg_gamma_pair_unchecked(a, x);
            if p > 0.5 { (-q).ln_1p() } else { p.ln() }
        }
    }
}

/// `ln Q(a, x)`, finite even where `Q` underflows.
pub(crate) fn ln_upper_reg_gamma(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    match branch(a, x) {
        Branch::Fraction => ln_gamma_prefactor(a, x) + a.ln() + upper_cf(a, x).ln(),
        _ => {
            let (p, q) = reg_gamma_pair_unchecked(a, x);
            if q > 0.5 { (-p).ln_1p() } else { q.ln() }
        }
    }
}

// ---------------------------------------------------------------------------
// Uniform asymptotic expansion
//
// Q(a, x) = ½ erfc(η √(a/2)) + e^{-aη²/2}/√(2πa) · Σ_k C_k(η) a^{-k},
// η = sgn(λ-1) √(2(λ - 1 - ln λ)), λ = x/a.
// The C_k are regular at η = 0; their Taylor coefficients are generated once by
// power-series reversion of η(μ) with μ = λ - 1.

const TEMME_TERMS: usize = 4;
const SERIES_LEN: usize = 44;

/// Coefficients of Γ(a) ~ √(2π/a) (a/e)^a Σ γ_k a^{-k}.
const STIRLING_GAMMA: [f64; 5] = [
    1.0,
    1.0 / 12.0,
    1.0 / 288.0,
    -139.0 / 51840.0,
    -571.0 / 2488320.0,
];

fn temme_eta(a: f64, x: f64) -> f64 {
    let mu = (x - a) / a;
    let v = -log1pmx(mu);
    let eta = (2.0 * v.max(0.0)).sqrt();
    if mu < 0.0 { -eta } else { eta }
}

fn series_mul(p: &[f64], q: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &pi) in p.iter().enumerate().take(len) {
        if pi == 0.0 {
            continue;
        }
        for (j, &qj) in q.iter().enumerate().take(len - i) {
            out[i + j] += pi * qj;
        }
    }
    out
}

fn series_recip(p: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    out[0] = 1.0 / p[0];
    for n in 1..len {
        let s: f64 = (1..=n.min(p.len() - 1)).map(|k| p[k] * out[n - k]).sum();
        out[n] = -s / p[0];
    }
    out
}

/// Taylor coefficients of `C_0 .. C_{TEMME_TERMS-1}` about η = 0.
fn temme_coefficients() -> &'static Vec<Vec<f64>> {
    static COEFFS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let len = SERIES_LEN;
        // g(μ)² = 2(μ - ln(1+μ))/μ² = Σ 2(-1)^n μ^n/(n+2).
        let g2: Vec<f64> = (0..len)
            .map(|n| 2.0 * if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64 + 2.0))
            .collect();
        let mut g = vec![0.0; len];
        g[0] = 1.0;
        for n in 1..len {
            let s: f64 = (1..n).map(|k| g[k] * g[n - k]).sum();
            g[n] = (g2[n] - s) / 2.0;
        }
        // η = μ g(μ); write μ = η v(η) and iterate v = 1/g(η v).
        let mut v = vec![0.0; len];
        v[0] = 1.0;
        for _ in 0..len {
            // η v as a series in η.
            let mut ev = vec![0.0; len];
            ev[1..len].copy_from_slice(&v[..len - 1]);
            // Horner: g(ev) = g0 + ev (g1 + ev (g2 + ...)).
            let mut acc = vec![0.0; len];
            acc[0] = g[len - 1];
            for k in (0..len - 1).rev() {
                acc = series_mul(&acc, &ev, len);
                acc[0] += g[k];
            }
            v = series_recip(&acc, len);
        }
        let w = series_recip(&v, len);

        let mut out = Vec::with_capacity(TEMME_TERMS);
        // C_0 = 1/μ - 1/η = (w - 1)/η.
        let c0: Vec<f64> = w[1..].to_vec();
        out.push(c0);
        for k in 1..TEMME_TERMS {
            let prev: &Vec<f64> = &out[k - 1];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let gk = sign * STIRLING_GAMMA[k];
            let n = prev.len() - 2;
            let ck: Vec<f64> = (0..n)
                .map(|m| (m as f64 + 2.0) * prev[m + 2] + gk * w[m + 1])
                .collect();
            out.push(ck);
        }
        out
    })
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Value of `C_k(η)` from its Taylor series; valid for `|η| ≤ 1`.
pub(crate) fn temme_ck(k: usize, eta: f64) -> f64 {
    horner(&temme_coefficients()[k], eta)
}

/// Uniform expansion with `terms` coefficients.
pub(crate) fn temme_expansion(a: f64, eta: f64, terms: usize) -> (f64, f64) {
    let y = eta * (0.5 * a).sqrt();
    let mut sum = 0.0;
    let mut apow = 1.0;
    for k in 0..terms.min(TEMME_TERMS) {
        sum += temme_ck(k, eta) * apow;
        apow /= a;
    }
    let r = (-0.5 * a * eta * eta).exp() / (2.0 * PI * a).sqrt() * sum;
    let q = 0.5 * libm::erfc(y) + r;
    let p = 0.5 * libm::erfc(-y) - r;
    (p, q)
}

fn temme_pq(a: f64, eta: f64) -> (f64, f64) {
    temme_expansion(a, eta, TEMME_TERMS)
}
