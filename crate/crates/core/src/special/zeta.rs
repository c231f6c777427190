//! Riemann zeta and Dirichlet beta on the real line.
//!
//! Both are alternating Dirichlet series for σ > 0, summed with the
//! Cohen–Villegas–Zagier acceleration; σ < 0 goes through the functional
//! equation. Only needed for lattice-sum corrections and Taylor tables.

use crate::error::{Error, Result};
use crate::special::gamma::gamma_unchecked;
use std::f64::consts::PI;
use std::sync::OnceLock;

const CVZ_TERMS: usize = 42;

// Σ_{k≥0} (-1)^k a(k) for completely monotone a.
fn alternating_sum(a: impl Fn(f64) -> f64) -> f64 {
    let n = CVZ_TERMS as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..CVZ_TERMS {
        let kf = k as f64;
        c = b - c;
        s += c * a(kf);
        b *= (kf + n) * (kf - n) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// Riemann ζ(σ) for real σ ≠ 1.
pub fn zeta(sigma: f64) -> Result<f64> {
    if !sigma.is_finite() || sigma == 1.0 {
        return Err(Error::Domain(format!("zeta has a pole at 1, got {sigma}")));
    }
    Ok(zeta_unchecked(sigma))
}

fn zeta_unchecked(sigma: f64) -> f64 {
    if sigma < 0.0 {
        let one_minus = 1.0 - sigma;
        return 2f64.powf(sigma)
            * PI.powf(sigma - 1.0)
            * (0.5 * PI * sigma).sin()
            * gamma_unchecked(one_minus)
            * zeta_unchecked(one_minus);
    }
    if sigma > 40.0 {
        return 1.0 + 2f64.powf(-sigma) + 3f64.powf(-sigma);
    }
    let eta = alternating_sum(|k| (k + 1.0).powf(-sigma));
    // 1 − 2^{1−σ} without cancellation near σ = 1
    eta / -(((1.0 - sigma) * std::f64::consts::LN_2).exp_m1())
}

/// Dirichlet β(σ) = Σ_{k≥0} (−1)^k (2k+1)^{−σ}, analytically continued.
pub fn dirichlet_beta(sigma: f64) -> Result<f64> {
    if !sigma.is_finite() {
        return Err(Error::Domain(format!("dirichlet_beta needs a finite argument, got {sigma}")));
    }
    Ok(dirichlet_beta_unchecked(sigma))
}

fn dirichlet_beta_unchecked(sigma: f64) -> f64 {
    if sigma < 0.0 {
        let one_minus = 1.0 - sigma;
        return (2.0 / PI).powf(one_minus)
            * (0.5 * PI * sigma).cos()
            * gamma_unchecked(one_minus)
            * dirichlet_beta_unchecked(one_minus);
    }
    alternating_sum(|k| (2.0 * k + 1.0).powf(-sigma))
}

/// ζ(k) for integer k ≥ 2, tabulated once.
pub(crate) fn zeta_int(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..64)
            .map(|j| if j < 2 { f64::NAN } else { zeta_unchecked(j as f64) })
            .collect()
    });
    table.get(k).copied().unwrap_or_else(|| zeta_unchecked(k as f64))
}
