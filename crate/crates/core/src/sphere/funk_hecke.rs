//! Funk–Hecke diagonalization of zonal kernels K(⟨ξ,η⟩) on S^n.
//!
//! For Y in 𝓗_k, ∫ K(⟨ξ,η⟩) Y(η) dσ(η) = μ_k Y(ξ) with
//! μ_k = ∫ K(t) Ĉ_k(t) dσ / Ĉ_k(1). Kernels are parameterized by the squared
//! chordal distance |ξ−η|² = 2(1−t).

use crate::error::{Error, Result};
use crate::special::{gamma_ratio, riesz_constant, sphere_area, Params};
use crate::sphere::quadrature::{gauss_jacobi, jacobi_mass, tanh_sinh_at_level, JacobiRecurrence};
use crate::sphere::zonal::ZonalFunction;
use std::fmt;
use std::sync::Arc;

/// Default Gauss size and the cap for the doubling check.
pub const DEFAULT_Q: usize = 200;
pub const MAX_Q: usize = 6400;
/// Relative change allowed between Q and 2Q.
pub const STABILITY_TOL: f64 = 1e-11;

#[derive(Clone)]
pub enum Kernel {
    /// coef · |ξ−η|^{−exponent}, exponent < n.
    ChordalPower { coef: f64, exponent: f64 },
    /// log |ξ−η|².
    LogChordSq,
    Constant(f64),
    /// Any integrable function of |ξ−η|².
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::ChordalPower { coef, exponent } => write!(f, "ChordalPower({coef}, {exponent})"),
            Kernel::LogChordSq => write!(f, "LogChordSq"),
            Kernel::Constant(c) => write!(f, "Constant({c})"),
            Kernel::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl Kernel {
    /// c_{n,s}|S^n| |ξ−η|^{−(n−2s)}: the Riesz kernel acting on dσ, whose
    /// eigenvalues are γ_k.
    pub fn normalized_riesz(p: &Params) -> Self {
        Kernel::ChordalPower { coef: riesz_constant(p) * sphere_area(p.n()), exponent: p.lambda() }
    }

    pub fn eval_chord_sq(&self, d2: f64) -> f64 {
        match self {
            Kernel::ChordalPower { coef, exponent } => coef * d2.powf(-0.5 * exponent),
            Kernel::LogChordSq => d2.ln(),
            Kernel::Constant(c) => *c,
            Kernel::Custom(f) => f(d2),
        }
    }
}

/// μ_k with automatic doubling from `q` until two successive estimates agree.
pub fn funk_hecke_eigen(kernel: &Kernel, n: usize, k: usize, q: usize) -> Result<f64> {
    let mut q = q.max(k / 2 + 1);
    let (mut prev, magnitude) = eigen_at(kernel, n, k, q)?;
    loop {
        let next_q = 2 * q;
        if next_q > MAX_Q {
            return Err(Error::Accuracy { what: format!("Funk-Hecke eigenvalue k={k} unstable up to Q={q}"), estimate: prev });
        }
        let (cur, _) = eigen_at(kernel, n, k, next_q)?;
        // eigenvalues that vanish are judged against the size of the integrand
        let scale = cur.abs().max(prev.abs()).max(1e-4 * magnitude).max(1e-300);
        if (cur - prev).abs() <= STABILITY_TOL * scale {
            return Ok(cur);
        }
        prev = cur;
        q = next_q;
    }
}

/// All μ_0..μ_K at once; same stability rule.
pub fn funk_hecke_spectrum(kernel: &Kernel, n: usize, kmax: usize, q: usize) -> Result<Vec<f64>> {
    (0..=kmax).map(|k| funk_hecke_eigen(kernel, n, k, q)).collect()
}

/// Apply the kernel operator to a zonal function (coefficient-wise).
pub fn funk_hecke_apply(kernel: &Kernel, f: &ZonalFunction, q: usize) -> Result<ZonalFunction> {
    let mu = funk_hecke_spectrum(kernel, f.n(), f.band_limit(), q)?;
    Ok(f.map_coeffs(|k, c| mu[k] * c))
}

// (μ_k, ∫|K Ĉ_k| dσ / Ĉ_k(1))
fn eigen_at(kernel: &Kernel, n: usize, k: usize, q: usize) -> Result<(f64, f64)> {
    let alpha = 0.5 * (n as f64 - 2.0);
    let rec = JacobiRecurrence::sphere(n, k.max(1));
    let mut basis = vec![0.0; k + 1];
    rec.eval_into(1.0, &mut basis);
    let at_pole = basis[k];
    match kernel {
        Kernel::Constant(c) => Ok((if k == 0 { *c } else { 0.0 }, c.abs())),
        Kernel::ChordalPower { coef, exponent } => {
            if *exponent >= n as f64 {
                return Err(Error::Domain(format!("kernel |ξ−η|^-{exponent} is not integrable on S^{n}")));
            }
            // (2(1−t))^σ folded into a Gauss–Jacobi weight (1−t)^{α+σ}(1+t)^α
            let sigma = -0.5 * exponent;
            let rule = gauss_jacobi(q, alpha + sigma, alpha)?;
            let mass_ratio = gamma_ratio(alpha + sigma + 1.0, alpha + 1.0)? * gamma_ratio(2.0 * alpha + 2.0, 2.0 * alpha + sigma + 2.0)?;
            let (mut integral, mut magnitude) = (0.0, 0.0);
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                rec.eval_into(t, &mut basis);
                integral += w * basis[k];
                magnitude += w * basis[k].abs();
            }
            let factor = coef * 2f64.powf(2.0 * sigma) * mass_ratio / at_pole;
            Ok((factor * integral, (factor * magnitude).abs()))
        }
        Kernel::LogChordSq | Kernel::Custom(_) => {
            // q = 200 maps to tanh-sinh level 7; each doubling of q refines h by half
            let level = 7 + (q as f64 / DEFAULT_Q as f64).log2().round().max(0.0) as u32;
            let mass = jacobi_mass(alpha, alpha)?;
            let integrand = |t: f64, omt: f64, opt: f64| {
                let mut b = vec![0.0; k + 1];
                rec.eval_into(t, &mut b);
                kernel.eval_chord_sq(2.0 * omt) * b[k] * (omt * opt).powf(alpha)
            };
            let integral = tanh_sinh_at_level(integrand, level);
            let magnitude = tanh_sinh_at_level(|t, omt, opt| integrand(t, omt, opt).abs(), level);
            Ok((integral / mass / at_pole, (magnitude / mass / at_pole).abs()))
        }
    }
}
