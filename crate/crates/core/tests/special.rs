#[path = "oracle/special.rs"]
mod oracle;

use oracle::*;
use proptest::prelude::*;
use sharp_ineq::special::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

#[test]
fn gamma_family_matches_reference_to_1e13() {
    for &(x, g, lg, psi) in SPECIAL_ORACLE.iter() {
        if g != 0.0 {
            let got = gamma(x).unwrap();
            assert!(rel(got, g) <= 1e-13, "gamma({x}) = {got}, want {g}, rel {:e}", rel(got, g));
        } else {
            assert!(gamma(x).unwrap().is_infinite());
        }
        let got = log_gamma(x).unwrap();
        assert!(rel(got, lg) <= 1e-13, "log_gamma({x}) = {got}, want {lg}, rel {:e}", rel(got, lg));
        let got = digamma(x).unwrap();
        assert!(rel(got, psi) <= 1e-13, "digamma({x}) = {got}, want {psi}, rel {:e}", rel(got, psi));
    }
}

#[test]
fn documented_gamma_examples() {
    assert_eq!(gamma(1.0).unwrap(), 1.0);
    assert!((digamma(2.0).unwrap() - digamma(1.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
    assert!(gamma(-0.0).is_err());
}

#[test]
fn zeta_and_beta_match_reference() {
    for &(sigma, z, b) in ZETA_ORACLE.iter() {
        assert!(rel(zeta(sigma).unwrap(), z) < 1e-13, "zeta({sigma})");
        assert!(rel(dirichlet_beta(sigma).unwrap(), b) < 1e-13, "beta({sigma})");
    }
}

#[test]
fn sobolev_constant_and_eigenvalues_match_reference() {
    for &(n, s, sc, g0, g1, g7, g250) in CONSTANT_ORACLE.iter() {
        let p = Params::new(n, s).unwrap();
        assert!(rel(sobolev_constant(&p), sc) < 1e-12, "S({n},{s})");
        for (k, want) in [(0, g0), (1, g1), (7, g7), (250, g250)] {
            assert!(rel(gamma_k(&p, k), want) < 1e-12, "gamma_{k}({n},{s})");
        }
    }
}

#[test]
fn hls_constants_match_reference() {
    for &(n, l, h, b) in HLS_ORACLE.iter() {
        assert!(rel(hls_constant(n, l).unwrap(), h) < 1e-13);
        assert!(rel(sphere_hls_constant(n, l).unwrap(), b) < 1e-13);
    }
    assert!(hls_constant(3, 3.0).is_err());
    assert!(sphere_hls_constant(3, 0.0).is_err());
}

#[test]
fn log_kernel_mean_matches_reference() {
    for &(n, a) in LOG_MEAN_ORACLE.iter() {
        assert!((log_kernel_mean(n).unwrap() - a).abs() < 1e-14, "A({n})");
    }
    assert!((log_kernel_mean(2).unwrap() - (4f64.ln() - 1.0)).abs() < 1e-15);
    assert!(log_kernel_mean(1).unwrap().abs() < 1e-15);
}

#[test]
fn sobolev_constant_examples() {
    let p = Params::new(2, 0.5).unwrap();
    assert!(rel(sobolev_constant(&p), 1.0 / PI.sqrt()) < 1e-14);
    let p = Params::new(3, 1.0).unwrap();
    let want = (4.0 / PI.sqrt()).powf(2.0 / 3.0) / (3.0 * PI);
    assert!(rel(sobolev_constant(&p), want) < 1e-14);
    for n in 1..=8 {
        let p = Params::new(n, 1e-6).unwrap();
        assert!((sobolev_constant(&p) - 1.0).abs() < 1e-5);
    }
}

#[test]
fn hls_examples() {
    assert!(rel(hls_constant(2, 1.0).unwrap(), 2.0 * PI.sqrt()) < 1e-14);
    assert!((sphere_hls_constant(2, 1.0).unwrap() - 1.0).abs() < 1e-14);
    for n in 1..=8 {
        assert!((hls_constant(n, 1e-8).unwrap() - 1.0).abs() < 1e-7);
        assert!((sphere_hls_constant(n, 1e-8).unwrap() - 1.0).abs() < 1e-7);
    }
}

// The Sobolev constant is the HLS constant for λ = n − 2s once the kernel
// carries the Green's-function normalization of (−Δ)^{−s}.
#[test]
fn hls_duality_on_parameter_grid() {
    let grid = [
        (1, 0.1), (1, 0.3), (1, 0.45), (2, 0.2), (2, 0.5), (2, 0.9),
        (3, 0.5), (3, 1.0), (3, 1.4), (4, 0.75), (4, 1.5), (5, 0.3),
        (5, 2.0), (6, 1.0), (6, 2.9), (7, 0.5), (7, 3.2), (8, 1.0), (8, 2.5), (8, 3.9),
    ];
    for &(n, s) in grid.iter() {
        let p = Params::new(n, s).unwrap();
        let dual = riesz_constant(&p) * hls_constant(n, p.lambda()).unwrap();
        assert!(rel(dual, sobolev_constant(&p)) < 1e-12, "({n},{s})");
    }
}

// B_λ relates to the Euclidean constant through |S^n|^{λ/n}.
#[test]
fn sphere_and_euclidean_hls_constants_are_conformally_related() {
    for n in 1..=8 {
        for &frac in &[0.1, 0.5, 0.77] {
            let l = frac * n as f64;
            let b = sphere_hls_constant(n, l).unwrap();
            let h = hls_constant(n, l).unwrap();
            assert!(rel(b, h * sphere_area(n).powf(-l / n as f64)) < 1e-13);
        }
    }
}

#[test]
fn gamma_k_examples_and_monotonicity() {
    let p = Params::new(2, 0.5).unwrap();
    assert!(rel(gamma_k(&p, 0), 2.0) < 1e-15);
    assert!(rel(gamma_k(&p, 1), 2.0 / 3.0) < 1e-15);
    for &(n, s) in &[(2, 0.5), (3, 0.3), (5, 2.4), (8, 0.05), (1, 0.2)] {
        let p = Params::new(n, s).unwrap();
        for k in 0..500 {
            assert!(gamma_k(&p, k + 1) < gamma_k(&p, k), "({n},{s}) k={k}");
        }
    }
}

#[test]
fn beta_over_alpha_peaks_at_two() {
    let p = Params::new(2, 0.5).unwrap();
    let r2 = beta_k(&p, 2).unwrap() / alpha_k(&p, 2).unwrap();
    assert!((r2 - 4.0 / 15.0).abs() < 1e-12);
    for &(n, s) in &[(2, 0.5), (2, 0.1), (3, 1.0), (3, 1.45), (4, 0.75), (5, 2.0), (6, 0.3), (7, 3.0), (8, 1.1), (8, 3.95)] {
        let p = Params::new(n, s).unwrap();
        let r2 = beta_k(&p, 2).unwrap() / alpha_k(&p, 2).unwrap();
        let closed = (p.nf() - 2.0 * s + 2.0) / (p.nf() + 2.0 * s + 2.0) * gamma_k(&p, 1).powi(2);
        assert!(rel(r2, closed) < 1e-12);
        for k in 3..=200 {
            assert!(alpha_k(&p, k).unwrap() > 0.0 && beta_k(&p, k).unwrap() > 0.0);
            let rk = beta_k(&p, k).unwrap() / alpha_k(&p, k).unwrap();
            assert!(rk < r2, "({n},{s}) k={k}");
        }
    }
    assert!(beta_k(&p, 1).is_err());
}

#[test]
fn log_path_agrees_with_direct_path() {
    for i in 1..400 {
        let x = 0.37 * i as f64;
        if x > 170.0 {
            break;
        }
        let direct = gamma(x).unwrap().ln();
        let lg = log_gamma(x).unwrap();
        assert!((lg - direct).abs() <= 1e-12 * lg.abs().max(1.0), "x={x}");
        let y = x + 0.61;
        if y < 170.0 {
            let ratio = gamma_ratio(x, y).unwrap();
            assert!(rel(ratio, gamma(x).unwrap() / gamma(y).unwrap()) < 1e-12);
        }
    }
}

proptest! {
    // dyadic arguments keep x + 1 exact
    #[test]
    fn gamma_recurrence(x in (10u32..174_000).prop_map(|k| k as f64 / 1024.0)) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(rel(lhs, rhs) < 3e-14);
    }

    #[test]
    fn digamma_recurrence(x in (10u32..194_000).prop_map(|k| k as f64 / 1024.0)) {
        let lhs = digamma(x + 1.0).unwrap();
        let rhs = digamma(x).unwrap() + 1.0 / x;
        prop_assert!((lhs - rhs).abs() < 1e-13 * lhs.abs().max(1.0));
    }

    #[test]
    fn duplication_formula(x in 0.05f64..80.0) {
        let lhs = log_gamma(2.0 * x).unwrap();
        let rhs = (2.0 * x - 1.0) * 2f64.ln() - 0.5 * PI.ln()
            + log_gamma(x).unwrap() + log_gamma(x + 0.5).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-13 * lhs.abs().max(1.0));
    }

    #[test]
    fn gamma_k_ratio_is_rational(n in 1usize..=8, frac in 0.01f64..0.99, k in 0usize..600) {
        let p = Params::new(n, frac * 0.5 * n as f64).unwrap();
        let ratio = gamma_k(&p, k + 1) / gamma_k(&p, k);
        let want = (k as f64 + p.a()) / (k as f64 + p.b());
        prop_assert!(rel(ratio, want) < 1e-12);
    }

    #[test]
    fn constants_are_finite_and_positive(n in 1usize..=8, frac in 0.001f64..0.999) {
        let p = Params::new(n, frac * 0.5 * n as f64).unwrap();
        for v in [sobolev_constant(&p), riesz_constant(&p), euler_lagrange_constant(&p),
                  hls_constant(n, p.lambda()).unwrap(), sphere_hls_constant(n, p.lambda()).unwrap()] {
            prop_assert!(v.is_finite() && v > 0.0);
        }
    }
}
