//! Gauss–Legendre quadrature: fixed composite panels and adaptive bisection.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// A Gauss–Legendre rule of fixed degree, reusable across integrals.
pub struct Rule {
    inner: GaussLegendre,
}

impl Rule {
    pub fn new(degree: usize) -> Self {
        let degree = NonZeroUsize::new(degree.max(2)).expect("degree is at least 2");
        Self { inner: GaussLegendre::new(degree) }
    }

    /// `∫_a^b f` with this rule on one panel.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.inner.integrate(a, b, f)
    }

    /// `∫_a^b f` split into `panels` equal panels.
    pub fn composite<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + h * i as f64;
                self.inner.integrate(lo, lo + h, &mut f)
            })
            .sum()
    }

    /// Nodes and weights of the composite rule on `[a, b]`, for tensor-product
    /// integrals.
    pub fn nodes(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut out = Vec::new();
        for i in 0..panels {
            let lo = a + h * i as f64;
            for (x, w) in self.inner.iter() {
                out.push((lo + 0.5 * h * (x + 1.0), 0.5 * h * w));
            }
        }
        out
    }
}

/// Adaptive `∫_a^b f`: a panel is accepted when the degree-`n` and degree-`2n`
/// rules agree to `tol` (absolute, scaled by the panel's share of `b - a`).
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let coarse = Rule::new(15);
    let fine = Rule::new(30);
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let c = coarse.integrate(lo, hi, &mut f);
        let v = fine.integrate(lo, hi, &mut f);
        let share = ((hi - lo).abs() / width).max(1e-6);
        if (v - c).abs() <= tol * share || depth >= 40 {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    total
}
