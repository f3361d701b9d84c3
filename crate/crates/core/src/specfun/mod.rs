//! Special functions: log-gamma, regularized incomplete gamma, erfc.
//!
//! All routines are pure. Checked entry points return [`crate::Error::Domain`]
//! on invalid input; crate-internal callers use the unchecked forms.

mod erf;
mod gamma;

pub use erf::{erfc, erfc_complex, erfc_limit_probe, erfcx, ln_erfc};
pub use gamma::{log_gamma, lower_reg_gamma, reg_gamma_pair, upper_reg_gamma, TEMME_THRESHOLD};

pub(crate) use gamma::{
    lgamma, ln_gamma_prefactor, ln_lower_reg_gamma, ln_upper_reg_gamma, reg_gamma_pair_unchecked,
};

/// `P(a, x) - P(b, x)` for `a < b`, via whichever complement avoids cancellation.
pub(crate) fn p_difference(a: f64, b: f64, x: f64) -> f64 {
    if a == 0.0 {
        return reg_gamma_pair_unchecked(b, x).1;
    }
    let (pa, qa) = reg_gamma_pair_unchecked(a, x);
    let (pb, qb) = reg_gamma_pair_unchecked(b, x);
    if pa < 0.5 { pa - pb } else { qb - qa }
}
