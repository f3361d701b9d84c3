//! Induced Ginibre samplers and quadratisation of standing rectangular matrices.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{pd_inv_sqrt, psd_sqrt, sample_gaussian, sample_haar, Scalar};
pub use crate::params::{Beta, EnsembleParams};
use crate::specfun::lgamma;

/// Above this condition estimate of the top block the symmetric square-root
/// form is used.
pub const SYMMETRIC_FORM_CONDITION: f64 = 1e3;
/// Above this condition estimate quadratisation is refused.
pub const MAX_CONDITION: f64 = 1e12;
/// Fresh Gaussian draws allowed after an ill-conditioned one.
pub const QUADRATISE_RETRIES: usize = 3;

/// Result of quadratising an `M × N` matrix `X = [Y; Z]`.
#[derive(Debug, Clone)]
pub struct Quadratisation<T: Scalar> {
    /// `N × N` square matrix with `W†X = [G; 0]`.
    pub g: DMatrix<T>,
    /// `M × M` unitary `[[(1-CC†)^{1/2}, C], [-C†, (1-C†C)^{1/2}]]`.
    pub w: DMatrix<T>,
    /// 2-norm condition number of `Y`.
    pub condition: f64,
}

/// Deterministic per-sample generator: stream `index` of the master seed.
pub fn stream_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Seed recorded for a per-sample stream, for error reports.
pub fn stream_seed(master_seed: u64, index: u64) -> u64 {
    master_seed ^ index.rotate_left(32)
}

/// `V diag(f(σ)) W` for a diagonal given as a real vector.
fn scale_between<T: Scalar>(v: &DMatrix<T>, d: &nalgebra::DVector<f64>, w: &DMatrix<T>, f: impl Fn(f64) -> f64) -> DMatrix<T> {
    let mut vd = v.clone();
    for (j, &s) in d.iter().enumerate() {
        vd.column_mut(j).scale_mut(f(s));
    }
    vd * w
}

/// Unitary reduction of a standing matrix (`M > N`) to a square one.
///
/// `G = (1 + Y^{-†} Z†Z Y^{-1})^{1/2} Y`, evaluated directly while the
/// 2-norm condition of `Y` is at most [`SYMMETRIC_FORM_CONDITION`] (the
/// direct form loses about `ε·cond²`). Above it the equal symmetric form
/// `G = Y P^{-1} (1 + P^{-1} Z†Z P^{-1})^{1/2} P`, `P = (Y†Y)^{1/2}`, is
/// evaluated through factorisations that never square `Y`:
/// with `Y = U Σ V†`, `X = Q R`, `T = R V Σ^{-1} = A Λ B†` (all `Λ ≥ 1`) and
/// `Ω = B A†`, one has `G = U Ω R`, `(1 - CC†)^{1/2} = U B Λ^{-1} B† U†`,
/// `C = -U Ω Q_Z†`, `(1 - C†C)^{1/2} = (P_Z P_Z†)^{1/2}` where `[Q P]` is
/// the full unitary factor and the `_Z` blocks are its bottom `M - N` rows.
pub fn quadratise<T: Scalar>(x: &DMatrix<T>) -> Result<Quadratisation<T>> {
    let (m, n) = x.shape();
    if m <= n {
        return Err(Error::Dimension(format!("quadratise needs M > N, got {m}×{n}")));
    }
    let k = m - n;
    let y = x.rows(0, n).into_owned();
    let z = x.rows(n, k).into_owned();
    let svd = y.clone().svd(true, true);
    let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let sigma = svd.singular_values;
    let (smax, smin) = (sigma.max(), sigma.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let mut w = DMatrix::<T>::zeros(m, m);
    let g;
    if condition <= SYMMETRIC_FORM_CONDITION {
        let y_inv = scale_between(&v_t.adjoint(), &sigma, &u.adjoint(), |s| 1.0 / s);
        let eye_n = DMatrix::<T>::identity(n, n);
        let inner = hermitian_part(&(&eye_n + y_inv.adjoint() * z.adjoint() * &z * &y_inv));
        g = psd_sqrt(&inner)? * &y;
        let g_inv = g.clone().try_inverse().ok_or(Error::IllConditioned { condition })?;
        // (1 - CC†)^{1/2} = Y G^{-1},  C = -G^{-†} Z†,
        // (1 - C†C)^{1/2} = (1 + K K†)^{-1/2} with K = Z Y^{-1}.
        let c = -(g_inv.adjoint() * z.adjoint());
        let kk = &z * &y_inv;
        let eye_k = DMatrix::<T>::identity(k, k);
        w.view_mut((0, 0), (n, n)).copy_from(&(&y * &g_inv));
        w.view_mut((0, n), (n, k)).copy_from(&c);
        w.view_mut((n, 0), (k, n)).copy_from(&(-c.adjoint()));
        w.view_mut((n, n), (k, k)).copy_from(&pd_inv_sqrt(&hermitian_part(&(&eye_k + &kk * kk.adjoint())))?);
    } else {
        // [X | (0; 1)] is invertible iff Y is; its unitary factor extends Q.
        let mut aug = DMatrix::<T>::zeros(m, m);
        aug.view_mut((0, 0), (m, n)).copy_from(x);
        aug.view_mut((n, n), (k, k)).fill_with_identity();
        let qr = aug.qr();
        let (q_full, r_full) = (qr.q(), qr.r());
        let r = r_full.view((0, 0), (n, n)).into_owned();
        let t = scale_between(&(&r * v_t.adjoint()), &sigma, &DMatrix::<T>::identity(n, n), |s| 1.0 / s);
        let tsvd = t.svd(true, true);
        let (a, b_t) = (tsvd.u.expect("requested"), tsvd.v_t.expect("requested"));
        let b = b_t.adjoint();
        let omega = &b * a.adjoint();
        g = &u * &omega * &r;
        let top_left = &u * scale_between(&b, &tsvd.singular_values, &b_t, |l| 1.0 / l) * u.adjoint();
        let q_z = q_full.view((n, 0), (k, n)).into_owned();
        let c = -(&u * &omega * q_z.adjoint());
        let p_z = q_full.view((n, n), (k, k)).into_owned();
        let psvd = p_z.svd(true, false);
        let a2 = psvd.u.expect("requested");
        let bottom_right = scale_between(&a2, &psvd.singular_values, &a2.adjoint(), |s| s);
        w.view_mut((0, 0), (n, n)).copy_from(&hermitian_part(&top_left));
        w.view_mut((0, n), (n, k)).copy_from(&c);
        w.view_mut((n, 0), (k, n)).copy_from(&(-c.adjoint()));
        w.view_mut((n, n), (k, k)).copy_from(&hermitian_part(&bottom_right));
    }
    Ok(Quadratisation { g, w, condition })
}

fn hermitian_part<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    (a + a.adjoint()).unscale(2.0)
}

/// `U (X†X)^{1/2}` with `X` an `(N+L) × N` Gaussian and `U` Haar.
pub fn sample_induced_polar<T: Scalar, R: Rng + ?Sized>(p: &EnsembleParams, rng: &mut R) -> Result<DMatrix<T>> {
    check_field::<T>(p)?;
    let (n, l) = (p.n(), p.integer_l()?);
    let x: DMatrix<T> = sample_gaussian(n + l, n, rng);
    let u: DMatrix<T> = sample_haar(n, rng);
    Ok(u * psd_sqrt(&hermitian_part(&(x.adjoint() * &x)))?)
}

/// Quadratisation of an `(N+L) × N` Gaussian, redrawn up to
/// [`QUADRATISE_RETRIES`] times if the top block is ill-conditioned.
///
/// For `L = 0` the Gaussian is already square and is returned as is.
pub fn sample_induced_quadratise<T: Scalar, R: Rng + ?Sized>(p: &EnsembleParams, rng: &mut R) -> Result<DMatrix<T>> {
    check_field::<T>(p)?;
    let (n, l) = (p.n(), p.integer_l()?);
    if l == 0 {
        return Ok(sample_gaussian(n, n, rng));
    }
    let mut last = None;
    for _ in 0..=QUADRATISE_RETRIES {
        let x: DMatrix<T> = sample_gaussian(n + l, n, rng);
        match quadratise(&x) {
            Ok(q) => return Ok(q.g),
            Err(e @ Error::IllConditioned { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn check_field<T: Scalar>(p: &EnsembleParams) -> Result<()> {
    p.require_beta(T::BETA)
}

/// `ln C_L` of the induced Ginibre density.
///
/// `C_L = π^{-βN²/2} (β/2)^{(N² + NL)/2} Π_{j=1}^{N} Γ(βj/2) / Γ(β(j+L)/2)`.
pub fn log_normalization(p: &EnsembleParams) -> f64 {
    let beta = p.beta().as_f64();
    let n = p.n() as f64;
    let l = p.l();
    let mut s = -0.5 * beta * n * n * PI.ln() + 0.5 * (n * n + n * l) * (0.5 * beta).ln();
    for j in 1..=p.n() {
        let j = j as f64;
        s += lgamma(0.5 * beta * j) - lgamma(0.5 * beta * (j + l));
    }
    s
}

/// `ln p(G) = ln C_L + (βL/2) ln det(G†G) - (β/2) Tr G†G`.
pub fn log_density<T: Scalar>(g: &DMatrix<T>, p: &EnsembleParams) -> Result<f64> {
    check_field::<T>(p)?;
    if g.shape() != (p.n(), p.n()) {
        return Err(Error::Dimension(format!("expected {0}×{0}, got {1:?}", p.n(), g.shape())));
    }
    let beta = p.beta().as_f64();
    let trace: f64 = g.iter().map(|v| v.modulus_squared()).sum();
    let mut s = log_normalization(p) - 0.5 * beta * trace;
    if p.l() > 0.0 {
        let lu = g.clone().lu();
        let u = lu.u();
        let ln_abs_det: f64 = (0..p.n()).map(|i| u[(i, i)].modulus().ln()).sum();
        if ln_abs_det == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        s += beta * p.l() * ln_abs_det;
    }
    Ok(s)
}

/// Sampling route for induced Ginibre matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Polar,
    Quadratise,
}

/// One sample by the given route; the field is chosen from `p.beta()`.
pub fn sample_any<R: Rng + ?Sized>(p: &EnsembleParams, route: Route, rng: &mut R) -> Result<crate::linalg::AnyMatrix> {
    use crate::linalg::AnyMatrix;
    Ok(match (p.beta(), route) {
        (Beta::Real, Route::Polar) => AnyMatrix::Real(sample_induced_polar(p, rng)?),
        (Beta::Real, Route::Quadratise) => AnyMatrix::Real(sample_induced_quadratise(p, rng)?),
        (Beta::Complex, Route::Polar) => AnyMatrix::Complex(sample_induced_polar(p, rng)?),
        (Beta::Complex, Route::Quadratise) => AnyMatrix::Complex(sample_induced_quadratise(p, rng)?),
    })
}
