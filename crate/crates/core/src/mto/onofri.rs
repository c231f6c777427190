//! Euclidean Onofri and logarithmic HLS functionals on R² for radial f = F∘𝒮.
//!
//! Integrals run over |x| in the variable t = (|x|²−1)/(|x|²+1), where
//! dx = 2π/(1−t)² dt, with a tanh–sinh rule that absorbs the logarithmic
//! behaviour at t = ±1. The log-kernel energy uses Newton's theorem:
//! for radial h, ∫h(y) log|x−y| dy = log|x|·∫_{|y|<|x|}h + ∫_{|y|>|x|}h log|y|.

use crate::error::{Error, Result};
use crate::report::Record;
use crate::sphere::quadrature::tanh_sinh_at_level;
use crate::sphere::{JacobiRecurrence, ZonalFunction};
use std::f64::consts::{LN_2, PI};

/// Outer and inner tanh–sinh level; step 2^{−LEVEL}.
const LEVEL: u32 = 6;

/// Terms of the improved Euclidean Onofri inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct OnofriTerms {
    pub constant: f64,
    /// ∫e^f dμ.
    pub exp_integral: f64,
    /// ∫f dμ.
    pub mean: f64,
    /// ‖∇f‖²/(16π).
    pub dirichlet: f64,
    /// ∫ g log g dx for g = e^f μ/∫e^f dμ.
    pub entropy: f64,
    /// ∬ e^f μ(x) log|x−y| e^f μ(y) dx dy.
    pub log_energy: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl OnofriTerms {
    pub fn to_record(&self) -> Record {
        Record::new()
            .with("C_2", self.constant)
            .with("exp_integral", self.exp_integral)
            .with("mean", self.mean)
            .with("dirichlet", self.dirichlet)
            .with("entropy", self.entropy)
            .with("log_energy", self.log_energy)
            .with("lhs", self.lhs)
            .with("rhs", self.rhs)
            .with("margin", self.margin)
    }
}

/// Radial profile evaluated from a zonal function on S².
struct Radial {
    rec: JacobiRecurrence,
    coeffs: Vec<f64>,
}

impl Radial {
    fn new(f: &ZonalFunction) -> Result<Self> {
        if f.n() != 2 {
            return Err(Error::Domain(format!("the Euclidean forms live on R², got S^{}", f.n())));
        }
        Ok(Self { rec: JacobiRecurrence::sphere(2, f.band_limit().max(1)), coeffs: f.coeffs().to_vec() })
    }

    fn value(&self, t: f64) -> f64 {
        let mut b = vec![0.0; self.coeffs.len()];
        self.rec.eval_into(t, &mut b);
        b.iter().zip(&self.coeffs).map(|(x, c)| x * c).sum()
    }

    fn derivative(&self, t: f64) -> f64 {
        let mut b = vec![0.0; self.coeffs.len()];
        let mut d = vec![0.0; self.coeffs.len()];
        self.rec.eval_with_derivatives_into(t, &mut b, &mut d);
        d.iter().zip(&self.coeffs).map(|(x, c)| x * c).sum()
    }
}

/// log|x| from (1−t, 1+t).
fn log_radius(omt: f64, opt: f64) -> f64 {
    0.5 * (opt.ln() - omt.ln())
}

/// log μ(x) = −log π − 2 log(1+|x|²), with 1+|x|² = 2/(1−t).
fn log_mu(omt: f64) -> f64 {
    -PI.ln() - 2.0 * (LN_2 - omt.ln())
}

/// dx/dt for radial integrands.
fn area_element(omt: f64) -> f64 {
    2.0 * PI / (omt * omt)
}

/// ∫_{R²} φ(|x|) dx with φ given in terms of (t, 1−t, 1+t).
fn radial_integral(phi: impl Fn(f64, f64, f64) -> f64) -> f64 {
    tanh_sinh_at_level(|t, omt, opt| phi(t, omt, opt) * area_element(omt), LEVEL)
}

/// ∫ φ over the t-interval [lo, hi] given accurate 1−hi and 1+lo.
fn sub_integral(lo: f64, hi: f64, omt_hi: f64, opt_lo: f64, phi: &impl Fn(f64, f64, f64) -> f64) -> f64 {
    let half = 0.5 * (hi - lo);
    if half <= 0.0 {
        return 0.0;
    }
    half * tanh_sinh_at_level(
        |_, omv, opv| {
            let t = lo + half * opv;
            phi(t, omt_hi + half * omv, opt_lo + half * opv)
        },
        LEVEL,
    )
}

/// ∬ h(x) log|x−y| h(y) dx dy for radial h, with w(t) = h·dx/dt.
fn newton_log_energy(w: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let w_log = |t: f64, omt: f64, opt: f64| w(t, omt, opt) * log_radius(omt, opt);
    tanh_sinh_at_level(
        |t, omt, opt| {
            let inside = sub_integral(-1.0, t, omt, 0.0, &w);
            let outside = sub_integral(t, 1.0, 0.0, opt, &w_log);
            w(t, omt, opt) * (log_radius(omt, opt) * inside + outside)
        },
        LEVEL,
    )
}

/// Every term of the improved Euclidean Onofri inequality for f = F∘𝒮.
pub fn onofri_euclidean_terms(f: &ZonalFunction, c_2: f64) -> Result<OnofriTerms> {
    let prof = Radial::new(f)?;
    let mu = |omt: f64| omt * omt / (4.0 * PI);
    let z = radial_integral(|t, omt, _| prof.value(t).exp() * mu(omt));
    let mean = radial_integral(|t, omt, _| prof.value(t) * mu(omt));
    // |∇f| = |F'(t)|·dt/d|x| with dt/d|x| = |x|(1−t)²
    let grad_sq = radial_integral(|t, omt, opt| {
        let d = prof.derivative(t) * (opt / omt).sqrt() * omt * omt;
        d * d
    });
    let dirichlet = grad_sq / (16.0 * PI);
    let entropy = radial_integral(|t, omt, _| {
        let fv = prof.value(t);
        let g = fv.exp() * mu(omt) / z;
        g * (fv + log_mu(omt) - z.ln())
    });
    let log_energy = newton_log_energy(|t, omt, _| prof.value(t).exp() * mu(omt) * area_element(omt));
    if ![z, mean, dirichlet, entropy, log_energy].iter().all(|v| v.is_finite()) {
        return Err(Error::Domain("e^f overflows on R²".into()));
    }
    let lhs = c_2 * z * z * (dirichlet + mean - z.ln());
    // −4π∫h(−Δ)^{−1}h = 2∬h log|x−y| h for the Green's function −log|x|/(2π)
    let rhs = z * z * (1.0 + PI.ln() + entropy) + 2.0 * log_energy;
    Ok(OnofriTerms { constant: c_2, exp_integral: z, mean, dirichlet, entropy, log_energy, lhs, rhs, margin: lhs - rhs })
}

/// LHS − RHS of the improved Euclidean Onofri inequality at constant `c_2`.
pub fn onofri_euclidean_margin(f: &ZonalFunction, c_2: f64) -> Result<f64> {
    Ok(onofri_euclidean_terms(f, c_2)?.margin)
}

/// ∫ρ log ρ dx + 2∬ρ log|x−y| ρ + 1 + log π for the density ρ = G∘𝒮·μ, ∫G dσ = 1.
pub fn euclidean_log_hls_deficit(g: &ZonalFunction) -> Result<f64> {
    let prof = Radial::new(g)?;
    let mass = g.mean();
    if (mass - 1.0).abs() > super::MEAN_TOL {
        return Err(Error::Precondition(format!("density must have unit mass, got {mass}")));
    }
    let mu = |omt: f64| omt * omt / (4.0 * PI);
    let negative = std::cell::Cell::new(false);
    let ent = radial_integral(|t, omt, _| {
        let gv = prof.value(t);
        if gv < 0.0 {
            negative.set(true);
        }
        if gv > 0.0 {
            gv * mu(omt) * (gv.ln() + log_mu(omt))
        } else {
            0.0
        }
    });
    if negative.get() {
        return Err(Error::Precondition("density is negative somewhere".into()));
    }
    let log_energy = newton_log_energy(|t, omt, _| prof.value(t) * mu(omt) * area_element(omt));
    Ok(ent + 2.0 * log_energy + 1.0 + PI.ln())
}
