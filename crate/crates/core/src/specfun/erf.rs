//! Complementary error function: real, scaled, and complex argument.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::quadrature::Rule;

use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// `erfc(x)` for finite real `x`.
pub fn erfc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("erfc needs a finite argument, got {x}")));
    }
    Ok(libm::erfc(x))
}

/// Scaled complement `e^{x²} erfc(x)`; finite for all `x ≥ -26`.
pub fn erfcx(x: f64) -> f64 {
    if x < 2.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // e^{x²} erfc(x) = (1/√π) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..2000 {
        let an = n as f64 * 0.5;
        d = x + an * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}

/// `ln erfc(x)`, finite far into the right tail.
pub fn ln_erfc(x: f64) -> f64 {
    if x < 2.0 {
        libm::erfc(x).ln()
    } else {
        erfcx(x).ln() - x * x
    }
}

/// `erfc(z)` for complex `z`.
///
/// For `|Im z| ≤ 4` the value is `erfc(Re z)` plus a Gauss–Legendre integral of
/// `e^{-t²}` along the vertical segment to `z`; this keeps full relative accuracy
/// near the real axis. Elsewhere a positive-coefficient series (`|z| < 3`) or the
/// Laplace continued fraction is used. `erfc(-z) = 2 - erfc(z)` maps `Re z < 0`.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(libm::erfc(z.re), 0.0);
    }
    if z.re < 0.0 {
        return Complex64::new(2.0, 0.0) - erfc_complex(-z);
    }
    if z.im.abs() <= 4.0 {
        erfc_vertical(z)
    } else if z.norm() < 3.0 {
        Complex64::new(1.0, 0.0) - erf_series(z)
    } else {
        erfc_fraction(z)
    }
}

/// `erfc(x+iy) = erfc(x) - (2i/√π) e^{-x²} ∫_0^y e^{s² - 2ixs} ds`.
fn erfc_vertical(z: Complex64) -> Complex64 {
    static RULE: OnceLock<Rule> = OnceLock::new();
    let rule = RULE.get_or_init(|| Rule::new(20));
    let (x, y) = (z.re, z.im);
    let panels = 2 + (x * y.abs()).ceil() as usize;
    let re = rule.composite(0.0, y, panels, |s| (s * s - x * x).exp() * (2.0 * x * s).cos());
    let im = rule.composite(0.0, y, panels, |s| -(s * s - x * x).exp() * (2.0 * x * s).sin());
    let integral = Complex64::new(re, im);
    Complex64::new(libm::erfc(x), 0.0) - Complex64::new(0.0, 2.0 * FRAC_1_SQRT_PI) * integral
}

/// `erf(z) = (2/√π) e^{-z²} Σ 2^n z^{2n+1} / (2n+1)!!`.
fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..400 {
        term *= z2 * (2.0 / (2 * n + 1) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (-z2).exp() * (2.0 * FRAC_1_SQRT_PI)
}

/// `erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + ...)))` for `Re z ≥ 0`.
fn erfc_fraction(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z;
    let mut c = z;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..20_000 {
        let an = n as f64 * 0.5;
        d = z + d * an;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = z + c.inv() * an;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() * FRAC_1_SQRT_PI / f
}

/// `√N w e^{2Nw²} erfc(√(2N) w)`; tends to `1/√(2π)` as `N → ∞` for fixed `w > 0`.
pub fn erfc_limit_probe(n: f64, w: f64) -> f64 {
    let arg = (2.0 * n).sqrt() * w;
    n.sqrt() * w * erfcx(arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_matches_direct_in_overlap() {
        for &x in &[2.0f64, 2.5, 3.0, 5.0, 10.0] {
            let direct = (x * x).exp() * libm::erfc(x);
            assert!((erfcx(x) - direct).abs() < 1e-13 * direct, "x={x}");
        }
    }

    #[test]
    fn complex_branches_agree_on_reals() {
        for &x in &[0.3, 1.7, 2.9, 3.1, 4.5] {
            let z = Complex64::new(x, 1e-300);
            let v = erfc_complex(z);
            assert!((v.re - libm::erfc(x)).abs() < 1e-13 * libm::erfc(x));
        }
    }
}
