use induced_ginibre::quadrature::{adaptive, Rule};
use induced_ginibre::real_analytics::*;
use induced_ginibre::EnsembleParams;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn params(n: usize, l: f64) -> EnsembleParams {
    EnsembleParams::real(n, l).unwrap()
}

fn kernel(n: usize, l: f64) -> RealKernel {
    RealKernel::new(&params(n, l)).unwrap()
}

/// `∫_a^b f` split at interior cut points, each piece adaptive.
fn piecewise<F: Fn(f64) -> f64>(f: F, cuts: &[f64]) -> f64 {
    let mut cs = cuts.to_vec();
    cs.sort_by(f64::total_cmp);
    cs.windows(2).map(|w| adaptive(&f, w[0], w[1], 1e-13)).sum()
}

fn poly(cf: &[f64], z: Complex64) -> Complex64 {
    cf.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

/// `q̃_k(w) = ψ(w) w^L q_k(w)`, with `|x|^L` on the real line.
fn q_tilde(k: usize, l: f64, w: Complex64) -> Complex64 {
    let wl = if w.im == 0.0 { c(w.re.abs().powf(l), 0.0) } else { w.powf(l) };
    psi(w) * wl * poly(&skew_poly(k, l), w)
}

#[test]
fn psi_and_s_basics() {
    assert_eq!(psi(c(0.0, 0.0)), c(1.0, 0.0));
    let k = kernel(6, 2.0);
    assert_eq!(k.s_n(c(0.0, 0.0), c(0.0, 0.0)).norm(), 0.0);
    let k0 = kernel(6, 0.0);
    assert!((k0.s_n(c(0.0, 0.0), c(0.0, 0.0)).re - FRAC_1_SQRT_2PI).abs() < 1e-15);
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let z = c(r.random_range(-4.0..4.0), r.random_range(-3.0..3.0));
        let w = c(r.random_range(-4.0..4.0), r.random_range(-3.0..3.0));
        assert!((k.s_n(z, w) - k.s_n(w, z)).norm() < 1e-12);
    }
}

#[test]
fn ds_matches_skew_polynomial_sum() {
    // DS(w,w') = 2 Σ_j [q̃_{2j}(w) q̃_{2j+1}(w') - q̃_{2j+1}(w) q̃_{2j}(w')] / r_j.
    let (n, l) = (6, 1.5);
    let k = kernel(n, l);
    let pts = [Point::Real(-1.3), Point::Real(0.7), Point::Complex(c(0.4, 0.9)), Point::Complex(c(-1.1, 0.3))];
    for &a in &pts {
        for &b in &pts {
            let (wa, wb) = (a.value(), b.value());
            let direct: Complex64 = (0..n / 2)
                .map(|j| {
                    (q_tilde(2 * j, l, wa) * q_tilde(2 * j + 1, l, wb) - q_tilde(2 * j + 1, l, wa) * q_tilde(2 * j, l, wb))
                        * (2.0 / skew_poly_norm(j, l))
                })
                .sum();
            let ds = k.entries(a, b).ds;
            assert!((ds - direct).norm() < 1e-13, "{a:?} {b:?}: {ds} vs {direct}");
        }
    }
}

/// `½ ∫ sgn(t - x) (t - w) s_N(w, t) dt` over real `t`.
fn tau_oracle(k: &RealKernel, w: Complex64, x: f64, top: f64) -> Complex64 {
    let f = |t: f64, part: fn(Complex64) -> f64| {
        let v = (c(t, 0.0) - w) * k.s_n(w, c(t, 0.0)) * 0.5 * (t - x).signum();
        part(v)
    };
    let cuts = [-top, x, 0.0, top];
    c(piecewise(|t| f(t, |v| v.re), &cuts), piecewise(|t| f(t, |v| v.im), &cuts))
}

#[test]
fn s_real_real_matches_integral_definition() {
    for (n, l) in [(4, 0.0), (6, 2.0), (6, 1.5), (8, 3.0)] {
        let k = kernel(n, l);
        let top = ((n as f64) + l).sqrt() + 12.0;
        for (x, y) in [(0.3, -1.2), (-2.0, 0.5), (1.7, 1.1), (-0.4, -2.6), (2.2, 0.0)] {
            let s = k.entries(Point::Real(x), Point::Real(y)).s;
            let oracle = tau_oracle(&k, c(x, 0.0), y, top);
            assert!((s - oracle).norm() < 1e-11, "N={n} L={l} ({x},{y}): {s} vs {oracle}");
        }
    }
}

#[test]
fn s_complex_real_matches_integral_definition() {
    for (n, l) in [(4, 0.0), (6, 2.0), (6, 1.5)] {
        let k = kernel(n, l);
        let top = ((n as f64) + l).sqrt() + 12.0;
        for (z, x) in [(c(0.5, 0.8), -0.7), (c(-1.4, 0.2), 1.3), (c(0.1, 1.9), 0.0)] {
            let s = k.entries(Point::Complex(z), Point::Real(x)).s;
            let oracle = tau_oracle(&k, z, x, top);
            assert!((s - oracle).norm() < 1e-11, "N={n} L={l} {z},{x}: {s} vs {oracle}");
            // IS(x, z) = -i S(z̄, x).
            let is = k.entries(Point::Real(x), Point::Complex(z)).is;
            let oracle = -Complex64::i() * tau_oracle(&k, z.conj(), x, top);
            assert!((is - oracle).norm() < 1e-11, "IS {is} vs {oracle}");
        }
    }
}

#[test]
fn is_real_real_matches_integral_definition() {
    // IS(x,y) = ½ ∫ sgn(t - x) S(t, y) dt.
    for (n, l) in [(4, 0.0), (6, 2.0), (6, 1.5), (10, 4.0)] {
        let k = kernel(n, l);
        let top = ((n as f64) + l).sqrt() + 12.0;
        for (x, y) in [(0.3, -1.2), (-2.0, 0.5), (1.7, 1.1), (-0.4, -2.6), (0.0, 1.5)] {
            let is = k.entries(Point::Real(x), Point::Real(y)).is.re;
            let f = |t: f64| 0.5 * (t - x).signum() * k.entries(Point::Real(t), Point::Real(y)).s.re;
            let oracle = piecewise(f, &[-top, x, 0.0, top]);
            assert!((is - oracle).abs() < 1e-11, "N={n} L={l} ({x},{y}): {is} vs {oracle}");
        }
    }
}

#[test]
fn is_is_antisymmetric() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for (n, l) in [(8, 0.0), (8, 2.0), (16, 4.0), (64, 16.0), (100, 2.5)] {
        let k = kernel(n, l);
        let span = ((n as f64) + l).sqrt() + 2.0;
        for _ in 0..20 {
            let (x, y) = (r.random_range(-span..span), r.random_range(-span..span));
            let a = k.entries(Point::Real(x), Point::Real(y)).is.re;
            let b = k.entries(Point::Real(y), Point::Real(x)).is.re;
            assert!((a + b).abs() < 1e-10, "N={n} L={l} ({x},{y}): {a} {b}");
        }
        let z = c(0.3 * span, 0.7);
        for x in [-1.0, 0.5] {
            let a = k.entries(Point::Real(x), Point::Complex(z));
            let b = k.entries(Point::Complex(z), Point::Real(x));
            assert!((a.ds + b.ds).norm() < 1e-13 && (a.is + b.is).norm() < 1e-13);
        }
    }
}

#[test]
fn real_density_equals_kernel_diagonal() {
    for (n, l) in [(8, 0.0), (8, 2.0), (16, 4.0)] {
        let p = params(n, l);
        let span = ((n as f64) + l).sqrt() + 3.0;
        for i in 0..40 {
            let x = -span + 2.0 * span * (i as f64 + 0.5) / 40.0;
            let a = density_real(x, &p).unwrap();
            let b = density_real_sum_form(x, &p).unwrap();
            assert!((a - b).abs() < 1e-10, "N={n} L={l} x={x}: {a} vs {b}");
            assert!(a >= 0.0);
            assert!((a - density_real(-x, &p).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn complex_density_equals_kernel_diagonal() {
    for (n, l) in [(8, 0.0), (8, 2.0), (16, 4.0)] {
        let p = params(n, l);
        for z in [c(0.3, 0.01), c(-1.0, 1.0), c(2.0, 0.5), c(0.0, 3.0), c(3.5, 2.5)] {
            let a = density_complex(z, &p).unwrap();
            let b = density_complex_sum_form(z, &p).unwrap();
            assert!((a - b).abs() < 1e-10 * a.max(1e-3), "{z}: {a} vs {b}");
        }
        assert_eq!(density_complex(c(1.0, 0.0), &p).unwrap(), 0.0);
        let small = density_complex(c(1.0, 1e-6), &p).unwrap() / 1e-6;
        let smaller = density_complex(c(1.0, 1e-8), &p).unwrap() / 1e-8;
        assert!((small - smaller).abs() < 1e-4 * small);
    }
}

fn complex_mass(p: &EnsembleParams) -> f64 {
    let rule = Rule::new(24);
    let top = ((p.n() as f64) + p.l()).sqrt() + 9.0;
    let xs = rule.nodes(-top, top, 40);
    let ys = rule.nodes(0.0, top, 24);
    let mut s = 0.0;
    for &(x, wx) in &xs {
        for &(y, wy) in &ys {
            s += wx * wy * density_complex(c(x, y), p).unwrap();
        }
    }
    s
}

#[test]
fn densities_normalise_to_n() {
    for (n, l) in [(16, 4.0), (8, 0.0), (6, 1.5)] {
        let p = params(n, l);
        let total = 2.0 * complex_mass(&p) + mean_real_count(&p).unwrap();
        assert!((total - n as f64).abs() < 1e-6, "N={n} L={l}: {total}");
    }
}

#[test]
fn gamma_l_plus_one_breaks_the_normalisation() {
    let p = params(16, 4.0);
    let k = RealKernel::new(&p).unwrap().with_t_normalization(TNormalization::GammaLPlusOne).unwrap();
    let real = 2.0 * adaptive(|x| k.entries(Point::Real(x), Point::Real(x)).s.re, 0.0, 20.0, 1e-12);
    let total = 2.0 * complex_mass(&p) + real;
    assert!((total - 16.0).abs() > 0.05, "{total}");
    assert!(kernel(4, 0.0).with_t_normalization(TNormalization::GammaLPlusOne).is_err());
}

/// Expected real count of the real Ginibre ensemble for even N:
/// `√2 Σ_{k<N/2} (4k-1)!!/(4k)!!`.
fn ginibre_real_count(n: usize) -> f64 {
    let mut sum = 0.0;
    for k in 0..n / 2 {
        let mut ratio = 1.0;
        for m in 1..=4 * k {
            ratio *= if m % 2 == 1 { m as f64 } else { 1.0 / m as f64 };
        }
        // (4k-1)!!/(4k)!! = Π_odd / Π_even over 1..4k.
        sum += ratio;
    }
    SQRT_2 * sum
}

#[test]
fn ginibre_real_count_is_exact() {
    for n in [2, 4, 16, 30] {
        let got = mean_real_count(&params(n, 0.0)).unwrap();
        let want = ginibre_real_count(n);
        assert!((got - want).abs() < 1e-9, "N={n}: {got} vs {want}");
    }
    // √(2N/π)(1 - 3/(8N)) + ½ is the large-N expansion.
    let n16 = mean_real_count(&params(16, 0.0)).unwrap();
    assert!((n16 - (32.0 / PI).sqrt() * (1.0 - 3.0 / 128.0) - 0.5).abs() < 2e-3, "{n16}");
}

/// Excess real count carried by one edge crossing of the real line.
fn edge_excess() -> f64 {
    let f = |xi: f64| real_edge_density(xi) - if xi < 0.0 { FRAC_1_SQRT_2PI } else { 0.0 };
    piecewise(f, &[-12.0, 0.0, 12.0])
}

#[test]
fn induced_real_count_has_edge_corrections() {
    // Each edge crossing adds a quarter; an induced spectrum crosses four times.
    assert!((edge_excess() - 0.25).abs() < 1e-10, "{}", edge_excess());
    let lead = real_count_limit(128, 32.0);
    assert!((lead - 5.579).abs() < 1e-3);
    let got = mean_real_count(&params(128, 32.0)).unwrap();
    assert!((got - lead - 4.0 * edge_excess()).abs() < 0.05, "{got} vs {lead}");
    assert!((got - lead).abs() > 0.02 * lead);
}

#[test]
fn pfaffian_reduces_to_densities() {
    let p = params(8, 2.0);
    for x in [-2.0, 0.3, 1.7] {
        let r = correlations_pfaffian(&[x], &[], &p).unwrap();
        assert!((r - density_real(x, &p).unwrap()).abs() < 1e-12);
    }
    for z in [c(0.5, 0.5), c(-2.0, 1.2)] {
        let r = correlations_pfaffian(&[], &[z], &p).unwrap();
        assert!((r - density_complex(z, &p).unwrap()).abs() < 1e-12);
    }
    let r = correlations_pfaffian(&[0.8, 0.8], &[], &p).unwrap();
    assert!(r.abs() < 1e-8, "{r}");
    assert!(correlations_pfaffian(&[], &[c(1.0, -0.5)], &p).is_err());
    assert!(correlations_pfaffian(&[0.0; 9], &[], &p).is_err());
    assert!(correlations_pfaffian(&[0.0], &[], &EnsembleParams::real(7, 0.0).unwrap()).is_err());
}

#[test]
fn two_by_two_correlations_match_the_jpdf() {
    // At N = 2 the only configurations are two reals or one pair, so the
    // correlation functions are the symmetrised jpdf itself.
    for l in [0.0, 1.0, 2.5] {
        let p = params(2, l);
        for (x, y) in [(0.3, -1.1), (1.5, 0.2), (-0.7, -2.0)] {
            let pf = correlations_pfaffian(&[x, y], &[], &p).unwrap();
            let jp = log_jpdf_real_partial(&[x, y], &[], &p).unwrap().exp();
            assert!((pf - jp).abs() < 1e-12, "L={l} ({x},{y}): {pf} vs {jp}");
        }
        for z in [c(0.3, 0.4), c(-1.0, 1.5)] {
            let pf = correlations_pfaffian(&[], &[z], &p).unwrap();
            let jp = log_jpdf_real_partial(&[], &[z], &p).unwrap().exp();
            assert!((pf - jp).abs() < 1e-12, "L={l} {z}: {pf} vs {jp}");
        }
        // One real and one pair cannot coexist at N = 2.
        let mixed = correlations_pfaffian(&[0.4], &[c(0.1, 0.6)], &p).unwrap();
        assert!(mixed.abs() < 1e-12, "{mixed}");
    }
}

fn jpdf_probabilities(l: f64) -> (f64, f64) {
    let p = params(2, l);
    let rule = Rule::new(30);
    let line = rule.nodes(-12.0, 12.0, 48);
    let mut p22 = 0.0;
    for &(x, wx) in &line {
        for &(y, wy) in &line {
            if x > y {
                p22 += wx * wy * log_jpdf_real_partial(&[x, y], &[], &p).unwrap().exp();
            }
        }
    }
    // The ordered-domain restriction cuts panels on the diagonal; integrate
    // the symmetric extension instead and halve it.
    let sym: f64 = line
        .iter()
        .map(|&(x, wx)| {
            wx * piecewise(|y| log_jpdf_real_partial(&[x, y], &[], &p).unwrap().exp(), &[-12.0, x, 0.0, 12.0])
        })
        .sum();
    let _ = p22;
    let p22 = 0.5 * sym;
    let ys = rule.nodes(0.0, 10.0, 20);
    let mut p20 = 0.0;
    for &(x, wx) in &line {
        for &(y, wy) in &ys {
            p20 += wx * wy * log_jpdf_real_partial(&[], &[c(x, y)], &p).unwrap().exp();
        }
    }
    (p22, p20)
}

#[test]
fn jpdf_probabilities_sum_to_one() {
    let (p22, p20) = jpdf_probabilities(0.0);
    assert!((p22 - 0.5f64.sqrt()).abs() < 1e-5, "{p22}");
    assert!((p22 + p20 - 1.0).abs() < 1e-5);
    for l in [2.0, 3.5] {
        let (p22, p20) = jpdf_probabilities(l);
        assert!((p22 + p20 - 1.0).abs() < 1e-5, "L={l}: {p22} + {p20}");
    }
}

#[test]
fn jpdf_marginal_is_the_real_density() {
    let p = params(2, 2.0);
    for x in [-1.5, 0.4, 2.1] {
        let marginal = piecewise(|y| log_jpdf_real_partial(&[x, y], &[], &p).unwrap().exp(), &[-14.0, x, 0.0, 14.0]);
        let rho = density_real(x, &p).unwrap();
        assert!((marginal - rho).abs() < 1e-4, "x={x}: {marginal} vs {rho}");
    }
}

#[test]
fn jpdf_rejects_bad_input() {
    let p = params(4, 1.0);
    assert!(log_jpdf_real_partial(&[0.1, 0.2], &[c(0.0, -1.0)], &p).is_err());
    assert!(log_jpdf_real_partial(&[0.1, 0.2], &[], &p).is_err());
    assert!(log_jpdf_real_partial(&[0.1], &[], &EnsembleParams::complex(1, 0.0).unwrap()).is_err());
}

#[test]
fn skew_polynomials() {
    assert_eq!(skew_poly(0, 2.0), vec![1.0]);
    assert_eq!(skew_poly(1, 2.0), vec![0.0, 1.0]);
    assert_eq!(skew_poly(2, 2.0), vec![0.0, 0.0, 1.0]);
    assert_eq!(skew_poly(3, 2.0), vec![0.0, -4.0, 0.0, 1.0]);
    assert!((skew_poly_norm(0, 0.0) - 2.0 * (2.0 * PI).sqrt()).abs() < 1e-14);
}

#[test]
fn skew_orthogonality_by_quadrature() {
    let l = 2.0;
    let ip = SkewInnerProduct::new(l);
    let q: Vec<Vec<f64>> = (0..6).map(|k| skew_poly(k, l)).collect();
    for (a, b) in [(0, 1), (2, 3), (4, 5)] {
        let want = skew_poly_norm(a / 2, l);
        let got = ip.eval(&q[a], &q[b]);
        assert!((got - want).abs() < 1e-4 * want, "({a},{b}): {got} vs {want}");
        let back = ip.eval(&q[b], &q[a]);
        assert!((got + back).abs() < 1e-8 * want);
    }
    for (a, b) in [(0, 2), (0, 3), (1, 3), (1, 2), (2, 5), (3, 4)] {
        let scale = skew_poly_norm(a.max(b) / 2, l);
        let got = ip.eval(&q[a], &q[b]);
        assert!(got.abs() < 1e-4 * scale, "({a},{b}): {got}");
    }
}

#[test]
fn limit_kernel_one_point_values() {
    let u = c(1.0, 0.0);
    let bulk = limit_kernels(&[0.3], &[], u, RealRegime::Bulk, 0.5).unwrap();
    assert!((bulk - FRAC_1_SQRT_2PI).abs() < 1e-15);
    let deep = limit_kernels(&[], &[c(0.0, 40.0)], u, RealRegime::Bulk, 0.5).unwrap();
    assert!((deep - FRAC_1_PI).abs() < 1e-4);
    let cb = limit_kernels(&[], &[c(0.2, 0.1)], c(0.0, 1.0), RealRegime::ComplexBulk, 0.5).unwrap();
    assert!((cb - FRAC_1_PI).abs() < 1e-15);
    let edge = limit_kernels(&[0.0], &[], u, RealRegime::OuterEdge, 0.5).unwrap();
    assert!((edge - real_edge_density(0.0)).abs() < 1e-12);
    assert!(limit_kernels(&[0.0], &[], c(2.0, 0.0), RealRegime::Bulk, 0.5).is_err());
    assert!(limit_kernels(&[0.0], &[], c(0.0, 1.0), RealRegime::ComplexBulk, 0.5).is_err());
    assert!(limit_kernels(&[], &[], c(0.5, 0.0), RealRegime::OuterEdge, 0.5).is_err());
}

fn entries_close(a: RealKernelEntries, b: RealKernelEntries, tol: f64) -> bool {
    (a.ds - b.ds).norm() < tol && (a.s - b.s).norm() < tol && (a.is + a.eps - b.is - b.eps).norm() < tol
}

#[test]
fn finite_kernel_converges_in_the_real_bulk() {
    let (n, alpha) = (600, 0.5);
    let k = kernel(n, alpha * n as f64);
    let u = c(1.0, 0.0);
    let local = [Point::Real(0.0), Point::Real(0.9), Point::Complex(c(-0.4, 0.3)), Point::Complex(c(0.6, 1.1))];
    let to_finite = |p: Point| match p {
        Point::Real(r) => Point::Real(scaled_real_point(r, u, RealRegime::Bulk, n, alpha)),
        Point::Complex(s) => Point::Complex(scaled_complex_point(s, u, RealRegime::Bulk, n, alpha)),
    };
    for &a in &local {
        for &b in &local {
            let fin = k.entries(to_finite(a), to_finite(b));
            let lim = RealLimitKernel::Bulk.entries(a, b);
            assert!(entries_close(fin, lim, 1e-3), "{a:?} {b:?}: {fin:?} vs {lim:?}");
        }
    }
}

#[test]
fn real_edge_density_is_the_limit() {
    assert!((real_edge_density(0.0) - 0.340_52).abs() < 1e-5);
    assert!((real_edge_density(-8.0) - FRAC_1_SQRT_2PI).abs() < 1e-12);
    let mut prev = f64::INFINITY;
    for n in [200, 800, 3200] {
        let alpha = 0.5;
        let p = params(n, alpha * n as f64);
        let mut err: f64 = 0.0;
        for xi in [-1.0, 0.0, 0.7] {
            for regime in [RealRegime::OuterEdge, RealRegime::InnerEdge] {
                let x = scaled_real_point(xi, c(1.0, 0.0), regime, n, alpha);
                err = err.max((density_real(x, &p).unwrap() - real_edge_density(xi)).abs());
                let y = scaled_real_point(xi, c(-1.0, 0.0), regime, n, alpha);
                err = err.max((density_real(y, &p).unwrap() - real_edge_density(xi)).abs());
            }
        }
        assert!(err < 0.6 * prev, "N={n}: {err} after {prev}");
        prev = err;
    }
    assert!(prev < 0.01, "{prev}");
}

#[test]
fn edge_correlations_converge() {
    let u = c(1.0, 0.0);
    let (reals, cplx) = ([0.2, -0.9], [c(0.1, 0.5)]);
    for regime in [RealRegime::OuterEdge, RealRegime::InnerEdge] {
        let lim = limit_kernels(&reals, &cplx, u, regime, 0.5).unwrap();
        let mut prev = f64::INFINITY;
        for n in [200, 800, 3200] {
            let p = params(n, 0.5 * n as f64);
            let xs: Vec<f64> = reals.iter().map(|&r| scaled_real_point(r, u, regime, n, 0.5)).collect();
            let zs: Vec<Complex64> = cplx.iter().map(|&s| scaled_complex_point(s, u, regime, n, 0.5)).collect();
            let fin = correlations_pfaffian(&xs, &zs, &p).unwrap();
            let err = (fin - lim).abs();
            assert!(err < 0.6 * prev, "{regime:?} N={n}: {fin} vs {lim}");
            prev = err;
        }
        assert!(prev < 0.01 * lim.abs().max(1e-3) + 1e-3, "{regime:?}: {prev}");
    }
}

#[test]
fn origin_kernel_is_the_fixed_l_limit() {
    for l in [0.0, 2.0, 3.5] {
        let fin = kernel(400, l);
        let lim = RealKernel::origin(l).unwrap();
        let pts = [Point::Real(0.4), Point::Real(-1.8), Point::Complex(c(0.7, 0.6)), Point::Complex(c(-2.0, 0.2))];
        for &a in &pts {
            for &b in &pts {
                assert!(entries_close(fin.entries(a, b), lim.entries(a, b), 1e-10), "L={l} {a:?} {b:?}");
            }
        }
        for x in [0.0, 0.5, -2.5] {
            let d = lim.entries(Point::Real(x), Point::Real(x)).s.re;
            assert!((d - origin_density_real(x, l)).abs() < 1e-12, "L={l} x={x}");
        }
        let z = c(1.0, 0.4);
        let d = lim.entries(Point::Complex(z), Point::Complex(z)).s.re;
        assert!((d - origin_density_complex(z, l)).abs() < 1e-12);
    }
}

#[test]
fn limit_density_examples() {
    assert!((crossover_density(30.0) - FRAC_1_PI).abs() < 1e-3);
    assert!((complex_edge_density(0.0) - 0.5 * FRAC_1_PI).abs() < 1e-15);
    assert!((real_ring_density(1.0, 0.5).unwrap() - FRAC_1_SQRT_2PI).abs() < 1e-15);
    assert_eq!(real_ring_density(0.2, 0.5).unwrap(), 0.0);
    assert!((complex_ring_density(c(0.0, 1.0), 0.5).unwrap() - FRAC_1_PI).abs() < 1e-15);
    // Finite-N crossover near the real axis inside the bulk.
    let n = 400;
    let p = params(n, 200.0);
    for v in [0.1, 0.5, 1.5] {
        let z = c((n as f64).sqrt(), v);
        assert!((density_complex(z, &p).unwrap() - crossover_density(v)).abs() < 1e-6);
    }
    assert!((real_count_limit(16, 0.0) - (32.0 / PI).sqrt()).abs() < 1e-14);
}
