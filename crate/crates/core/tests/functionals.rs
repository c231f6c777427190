use proptest::prelude::*;
use sharp_ineq::corpus::sobolev_corpus;
use sharp_ineq::functionals::*;
use sharp_ineq::special::*;
use sharp_ineq::sphere::*;
use sharp_ineq::Error;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn mode(p: &Params, k: usize, amp: f64) -> ZonalFunction {
    ZonalFunction::mode(p.n(), Some(p.s()), k, amp).unwrap()
}

const GRID: &[(usize, f64)] = &[(1, 0.3), (2, 0.5), (3, 1.0), (4, 0.75), (5, 2.2), (8, 3.5)];

#[test]
fn extremal_profile_and_mass() {
    let p = Params::new(2, 0.5).unwrap();
    let u = aubin_talenti(&p);
    assert_eq!(u.eval(0.0), 1.0);
    assert!(rel(u.mass(), PI) < 1e-15);
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let grid = ZonalGrid::new(n, 200, 64).unwrap();
        let f = aubin_talenti(&p).lift(&grid, 64).unwrap();
        assert!(rel(f.coeff(0), 2f64.powf(-p.a())) < 1e-14);
        assert!(f.coeffs()[1..].iter().all(|c| c.abs() < 5e-14), "n={n}");
    }
}

// ‖u_*‖_s² = ∫u_*(−Δ)^s u_* = κ∫u_*^q by the Euler–Lagrange equation.
#[test]
fn sobolev_norm_of_extremal_matches_euler_lagrange_pairing() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let f = aubin_talenti(&p).lift(fx.grid(), 64).unwrap();
        let want = euler_lagrange_constant(&p) * extremal_mass(n);
        assert!(rel(fx.sobolev_norm_sq(&f).unwrap(), want) < 1e-10, "n={n} s={s}");
    }
}

#[test]
fn sobolev_norm_of_single_modes() {
    let p = Params::new(3, 0.7).unwrap();
    let fx = Functionals::new(p).unwrap();
    assert_eq!(fx.sobolev_norm_sq(&ZonalFunction::zero(3, Some(0.7), 10).unwrap()).unwrap(), 0.0);
    let mut prev = 0.0;
    for k in [1, 2, 4, 8, 16, 32] {
        let v = fx.sobolev_norm_sq(&mode(&p, k, 1.0)).unwrap();
        assert!(rel(v, sphere_area(3) / gamma_k(&p, k)) < 1e-14);
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn rough_lift_is_rejected() {
    let p = Params::new(2, 0.5).unwrap();
    let fx = Functionals::new(p).unwrap();
    let f = mode(&p, 3, 1.0).with_tail(1e-2);
    assert!(matches!(fx.sobolev_norm_sq(&f), Err(Error::Regularity(_))));
}

// (−Δ)^{−s}u_*^r = Γ((n−2s)/2)/(2^{2s}Γ((n+2s)/2)) u_*, paired with u_*^r.
#[test]
fn hls_energy_of_extremal_power() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let g = fx.power_lift(&aubin_talenti(&p).lift_exact(4)).unwrap();
        let want = extremal_mass(n) / euler_lagrange_constant(&p);
        assert!(rel(fx.hls_energy(&g).unwrap(), want) < 1e-10, "n={n} s={s}");
        // the p-lift of u_*^r is the constant 2^{−(n+2s)/2}
        assert!(rel(g.coeff(0), 2f64.powf(-p.b())) < 1e-13);
        let direct = lift(|r| aubin_talenti(&p).eval(r).powf(p.r()), &p, LiftMode::P, fx.grid(), 8).unwrap();
        assert!(rel(direct.coeff(0), g.coeff(0)) < 1e-13);
    }
}

#[test]
fn hls_energy_spectral_bound() {
    let p = Params::new(4, 1.1).unwrap();
    let fx = Functionals::new(p).unwrap();
    assert_eq!(fx.hls_energy(&ZonalFunction::zero(4, None, 6).unwrap()).unwrap(), 0.0);
    let g = ZonalFunction::new(4, None, vec![0.0, 0.0, 0.7, -0.2, 1.1, 0.05]).unwrap();
    let e = fx.hls_energy(&g).unwrap();
    assert!(e <= gamma_k(&p, 2) * sphere_area(4) * g.l2_norm_sq());
    assert!(e > 0.0);
}

#[test]
fn extremal_deficits_vanish_at_band_64() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let f = aubin_talenti(&p).lift(fx.grid(), 64).unwrap();
        let rep = fx.deficit_report(&f).unwrap();
        assert!(rep.f_value.abs() <= 1e-9 * rep.f_scale, "n={n} s={s}: {}", rep.f_value);
        assert!(rep.g_value.abs() <= 1e-9 * rep.g_scale, "n={n} s={s}: {}", rep.g_value);
        assert_eq!(rep.band_limit, 64);
    }
}

#[test]
fn main_inequality_holds_at_sobolev_constant_on_corpus() {
    for &(n, s) in &[(2, 0.5), (3, 1.0), (5, 0.4)] {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        for f in sobolev_corpus(&p, 100, 12, 2024).unwrap() {
            let chk = fx.verify_main_inequality(&f, fx.sobolev(), 1e-9).unwrap();
            assert!(chk.holds, "n={n} s={s}: margin {:e}", chk.relative_margin());
            let rep = fx.deficit_report(&f).unwrap();
            assert!(rep.f_value >= -1e-9 * rep.f_scale);
            assert!(rep.g_value >= -1e-9 * rep.g_scale);
        }
    }
}

#[test]
fn main_margin_is_scale_invariant() {
    let p = Params::new(3, 0.6).unwrap();
    let fx = Functionals::new(p).unwrap();
    for f in sobolev_corpus(&p, 20, 10, 5).unwrap() {
        let a = fx.verify_main_inequality(&f, fx.sobolev(), 1e-9).unwrap();
        let b = fx.verify_main_inequality(&f.scaled(2.0), fx.sobolev(), 1e-9).unwrap();
        assert!((a.relative_margin() - b.relative_margin()).abs() < 1e-12);
        // both sides are homogeneous of degree 2r
        assert!(rel(b.margin, a.margin * 2f64.powf(2.0 * p.r())) < 1e-9);
    }
}

#[test]
fn deficits_are_quadratic_under_scaling() {
    let p = Params::new(2, 0.3).unwrap();
    let fx = Functionals::new(p).unwrap();
    let f = &sobolev_corpus(&p, 1, 8, 9).unwrap()[0];
    let c = 1.7;
    assert!(rel(fx.f_deficit(&f.scaled(c)).unwrap(), c * c * fx.f_deficit(f).unwrap()) < 1e-10);
    let g = fx.power_lift(f).unwrap();
    assert!(rel(fx.g_deficit(&g.scaled(c)).unwrap(), c * c * fx.g_deficit(&g).unwrap()) < 1e-10);
}

#[test]
fn main_margin_is_dilation_invariant() {
    let p = Params::new(2, 0.5).unwrap();
    let fx = Functionals::with_sizes(p, 150, 400).unwrap();
    for f in sobolev_corpus(&p, 5, 6, 77).unwrap() {
        let base = fx.verify_main_inequality(&f, fx.sobolev(), 1e-9).unwrap();
        for t in [0.7, 1.4] {
            let g = dilate(&p, fx.grid(), &f, t, 150).unwrap();
            let chk = fx.verify_main_inequality(&g, fx.sobolev(), 1e-9).unwrap();
            assert!(
                (chk.relative_margin() - base.relative_margin()).abs() < 1e-8,
                "t={t}: {} vs {}",
                chk.relative_margin(),
                base.relative_margin()
            );
            assert!(rel(chk.margin, base.margin) < 1e-7);
        }
    }
}

#[test]
fn square_identity_on_corpus() {
    for &(n, s) in &[(2, 0.5), (3, 1.0), (6, 2.5)] {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        for f in sobolev_corpus(&p, 100, 12, 11).unwrap() {
            let sq = fx.verify_square_identity(&f).unwrap();
            assert!(sq.residual <= 1e-9, "n={n}: {}", sq.residual);
            assert!(sq.square >= -1e-12 * sq.scale);
        }
    }
}

#[test]
fn square_identity_on_extremal() {
    let p = Params::new(3, 1.0).unwrap();
    let fx = Functionals::new(p).unwrap();
    let sq = fx.verify_square_identity(&aubin_talenti(&p).lift_exact(64)).unwrap();
    assert!(sq.residual <= 1e-9);
    assert!(sq.square.abs() <= 1e-9 * sq.scale);
}

#[test]
fn square_equals_main_margin_at_sobolev_constant() {
    let p = Params::new(4, 0.9).unwrap();
    let fx = Functionals::new(p).unwrap();
    for f in sobolev_corpus(&p, 10, 8, 3).unwrap() {
        let sq = fx.verify_square_identity(&f).unwrap();
        let m = fx.verify_main_inequality(&f, fx.sobolev(), 0.0).unwrap();
        assert!((sq.square - m.margin).abs() < 1e-10 * sq.scale);
    }
}

#[test]
fn negative_lift_is_a_positivity_error() {
    let p = Params::new(2, 0.5).unwrap();
    let fx = Functionals::new(p).unwrap();
    let f = ZonalFunction::new(2, Some(0.5), vec![0.1, 1.0]).unwrap();
    assert!(matches!(fx.deficit_report(&f), Err(Error::Positivity(_))));
}

#[test]
fn linearized_ratio_on_degree_two_is_extremal() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let f2 = mode(&p, 2, 0.8);
        let ratio = fx.linearized_g(&f2).unwrap() / fx.linearized_f(&f2).unwrap();
        let g = gamma_ratio(p.a() + 1.0, p.b() + 1.0).unwrap();
        let want = 2f64.powf(-4.0 * s) * (p.nf() - 2.0 * s + 2.0) / (p.nf() + 2.0 * s + 2.0) * g * g;
        assert!(rel(ratio, want) < 1e-12, "n={n} s={s}");
        let f3 = mode(&p, 3, 0.8);
        let r3 = fx.linearized_g(&f3).unwrap() / fx.linearized_f(&f3).unwrap();
        assert!(r3 < ratio);
        // and the spectral form: β_k/α_k scaled by 2^{−4s}
        assert!(rel(r3, 2f64.powf(-4.0 * s) * beta_alpha_ratio(&p, 3).unwrap()) < 1e-12);
    }
}

#[test]
fn linearized_f_vanishes_on_coordinate_functions() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let u = aubin_talenti(&p);
        let fi = lift(|r| u.eval(r) * (r * r - 1.0) / (r * r + 1.0), &p, LiftMode::Q, fx.grid(), 64).unwrap();
        let exact = u.lift_last_coordinate(64);
        for k in 0..=64 {
            assert!((fi.coeff(k) - exact.coeff(k)).abs() < 1e-13, "n={n} k={k}");
        }
        let scale = fx.sobolev_norm_sq(&fi).unwrap();
        assert!(fx.linearized_f(&fi).unwrap().abs() < 1e-12 * scale);
        assert_eq!(fx.linearized_g(&exact).unwrap(), 0.0);
    }
}

#[test]
fn linearization_requires_orthogonality_to_extremal() {
    let p = Params::new(3, 1.0).unwrap();
    let fx = Functionals::new(p).unwrap();
    let f = ZonalFunction::new(3, Some(1.0), vec![1e-3, 0.0, 1.0]).unwrap();
    assert!(matches!(fx.linearized_f(&f), Err(Error::Precondition(_))));
    assert!(matches!(fx.linearized_g(&f), Err(Error::Precondition(_))));
}

#[test]
fn poincare_inequality() {
    for &(n, s) in GRID {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let eq = fx.poincare_check(&mode(&p, 2, 1.3), 1e-10).unwrap();
        assert!(eq.holds);
        assert!(eq.gap.abs() <= 1e-10 * eq.norm_sq);
        let strict = fx.poincare_check(&mode(&p, 5, 1.0), 1e-10).unwrap();
        let want_gap = sphere_area(n) * (1.0 / gamma_k(&p, 5) - 1.0 / gamma_k(&p, 2));
        assert!(strict.gap > 0.0);
        assert!(rel(strict.gap, want_gap) < 1e-12);
        // the bound in Euclidean form
        let weighted = fx.weighted_l2_sq(&mode(&p, 5, 1.0));
        let bound = 2f64.powf(2.0 * s) * gamma_ratio(p.b() + 2.0, p.a() + 2.0).unwrap() * weighted;
        assert!(rel(strict.bound, bound) < 1e-13);
    }
    let p = Params::new(2, 0.5).unwrap();
    let fx = Functionals::new(p).unwrap();
    let f1 = aubin_talenti(&p).lift_last_coordinate(8);
    assert!(matches!(fx.poincare_check(&f1, 1e-10), Err(Error::Precondition(_))));
}

#[test]
fn eigen_relations_for_coordinate_functions() {
    for &(n, s) in &[(2, 0.5), (3, 0.9), (5, 1.7)] {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let u = aubin_talenti(&p);
        let f0 = u.lift(fx.grid(), 8).unwrap();
        let fl = lift(|r| u.eval(r) * (r * r - 1.0) / (r * r + 1.0), &p, LiftMode::Q, fx.grid(), 8).unwrap();
        let kappa0 = euler_lagrange_constant(&p);
        let kappa1 = 2f64.powf(2.0 * s) * gamma_ratio(p.b() + 1.0, p.a() + 1.0).unwrap();
        for (f, kappa, k) in [(f0, kappa0, 0usize), (fl, kappa1, 1)] {
            let lhs = fx.apply_fractional_laplacian(&f).unwrap();
            let rhs = fx.apply_weight(&f).scaled(kappa);
            assert!(rel(lhs.coeff(k), rhs.coeff(k)) < 1e-10, "n={n} k={k}");
            // same multiplier from the numerically diagonalized Riesz kernel
            let mu = funk_hecke_eigen(&Kernel::normalized_riesz(&p), n, k, 200).unwrap();
            assert!(rel(2f64.powf(2.0 * s) / mu, kappa) < 1e-10);
        }
    }
}

#[test]
fn coordinate_functions_are_orthogonal() {
    for n in 1..=8 {
        let p = Params::new(n, 0.4).unwrap();
        let g = orthogonality_gram(&p).unwrap();
        for i in 0..n + 2 {
            for j in 0..n + 2 {
                if i != j {
                    assert!(g[i][j].abs() < 1e-11 * g[i][i].max(g[j][j]), "n={n} ({i},{j})");
                }
            }
        }
        // and the diagonal matches the lifted norms
        let w = 2f64.powf(-2.0 * p.s() - 2.0 * p.a()) * sphere_area(n);
        assert!(rel(g[0][0], w) < 1e-13);
        assert!(rel(g[n + 1][n + 1], w / (n as f64 + 1.0)) < 1e-13);
    }
}

#[test]
fn quotient_limit_reaches_lower_bound_on_degree_two() {
    for &(n, s) in &[(2, 0.5), (3, 1.0), (4, 0.75)] {
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::new(p).unwrap();
        let (lower, upper) = best_constant_bracket(&p);
        let q2 = quotient_lower_bound(&fx, &mode(&p, 2, 1.0), &[0.04, 0.02, 0.01, 0.005]).unwrap();
        assert!(rel(q2.limit, lower) < 0.01, "n={n}: {} vs {lower}", q2.limit);
        assert!(q2.limit < upper);
        let q3 = quotient_lower_bound(&fx, &mode(&p, 3, 1.0), &[0.04, 0.02, 0.01, 0.005]).unwrap();
        assert!(q3.limit < q2.limit);
    }
}

#[test]
fn quotient_error_shrinks_linearly() {
    let p = Params::new(3, 1.0).unwrap();
    let fx = Functionals::new(p).unwrap();
    let (lower, _) = best_constant_bracket(&p);
    let q = quotient_lower_bound(&fx, &mode(&p, 2, 1.0), &[0.02, 0.01, 0.005, 0.0025]).unwrap();
    let errs: Vec<f64> = q.values.iter().map(|v| (v - lower).abs()).collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.6..2.4).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn quotient_rejects_large_or_unorthogonal_perturbations() {
    let p = Params::new(4, 0.75).unwrap();
    let fx = Functionals::new(p).unwrap();
    let r = quotient_lower_bound(&fx, &mode(&p, 3, 1.0), &[0.5, 0.25, 0.1]);
    assert!(matches!(r, Err(Error::Range(_))));
    let p = Params::new(8, 3.5).unwrap();
    let fx = Functionals::new(p).unwrap();
    let r = quotient_lower_bound(&fx, &mode(&p, 2, 1.0), &[0.08, 0.04, 0.02, 0.01]);
    assert!(matches!(r, Err(Error::Range(_))));
    let bad = ZonalFunction::new(8, Some(3.5), vec![0.1, 0.0, 1.0]).unwrap();
    assert!(matches!(quotient_lower_bound(&fx, &bad, &[0.01, 0.005]), Err(Error::Precondition(_))));
}

#[test]
fn report_serializes_flat() {
    let p = Params::new(2, 0.5).unwrap();
    let fx = Functionals::new(p).unwrap();
    let rep = fx.deficit_report(&sobolev_corpus(&p, 1, 4, 0).unwrap()[0]).unwrap();
    let rec = rep.to_record();
    for key in ["sobolev_norm_sq", "lq_norm", "F_value", "hls_energy", "lp_norm", "G_value", "quotient", "band_limit"] {
        assert!(rec.get(key).is_some(), "{key}");
    }
    assert_eq!(rec.num("F_value"), Some(rep.f_value));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deficits_nonnegative_for_positive_lifts(
        n in 1usize..=6,
        s_frac in 0.05f64..0.95,
        seed in any::<u64>(),
    ) {
        let s = s_frac * n as f64 / 2.0;
        let p = Params::new(n, s).unwrap();
        let fx = Functionals::with_sizes(p, 10, 120).unwrap();
        let f = &sobolev_corpus(&p, 1, 10, seed).unwrap()[0];
        let rep = fx.deficit_report(f).unwrap();
        prop_assert!(rep.f_value >= -1e-9 * rep.f_scale);
        prop_assert!(rep.g_value >= -1e-9 * rep.g_scale);
        prop_assert!(fx.verify_main_inequality(f, fx.sobolev(), 1e-9).unwrap().holds);
    }

    #[test]
    fn linearized_ratio_never_exceeds_degree_two(
        coeffs in prop::collection::vec(-1.0f64..1.0, 2..=20),
    ) {
        let p = Params::new(3, 0.8).unwrap();
        let fx = Functionals::new(p).unwrap();
        let mut c = vec![0.0, 0.0];
        c.extend(coeffs);
        let f = ZonalFunction::new(3, Some(0.8), c).unwrap();
        let lf = fx.linearized_f(&f).unwrap();
        prop_assume!(lf > 1e-12);
        let bound = 2f64.powf(-3.2) * beta_alpha_ratio(&p, 2).unwrap();
        prop_assert!(fx.linearized_g(&f).unwrap() <= bound * lf * (1.0 + 1e-12));
    }
}
