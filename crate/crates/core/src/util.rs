//! Small numerical helpers shared by the analytic modules.

use num_complex::Complex64;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Compensated complex sum, componentwise.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub(crate) fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `exp(extra) · Σ_{j<terms} e^{ijθ} D(a+j, |u|)` with `θ = arg u` and
/// `D(b, x) = x^b e^{-x} / Γ(b+1)`.
///
/// Each `D` is evaluated by the cancellation-free prefactor of the incomplete
/// gamma routines, so the terms stay accurate to a few ulps even when `|u|`
/// and `j` are in the thousands.
pub(crate) fn scaled_power_sum(u: Complex64, a: f64, terms: usize, extra: f64) -> Complex64 {
    let mut acc = CompensatedComplexSum::default();
    if terms == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = u.norm();
    if r == 0.0 {
        // Only the j = 0 term survives, and only for a = 0.
        let v = if a == 0.0 { extra.exp() } else { 0.0 };
        return Complex64::new(v, 0.0);
    }
    let theta = u.arg();
    for j in 0..terms {
        let jf = j as f64;
        let ln_mag = extra + crate::specfun::ln_gamma_prefactor(a + jf, r);
        if ln_mag < -745.0 && a + jf > r {
            // Past the peak of the terms; the rest underflow.
            break;
        }
        acc.add(Complex64::from_polar(ln_mag.exp(), jf * theta));
    }
    acc.value()
}

/// Number of terms after which `Σ r^j/j!` has fallen below `1e-17` of its peak.
pub(crate) fn series_terms(r: f64) -> usize {
    (2.0 * r + 60.0).ceil() as usize
}
