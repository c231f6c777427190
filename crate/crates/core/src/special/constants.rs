//! Exponents and closed-form constants of the fractional Sobolev/HLS family.

use crate::error::{Error, Result};
use crate::special::gamma::{digamma_unchecked, gamma_ratio_unchecked, gamma_unchecked};
use std::f64::consts::{LN_2, PI};

/// Largest dimension supported anywhere in the crate.
pub const MAX_DIM: usize = 8;

/// Dimension `n` and order `s` with every derived exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    n: usize,
    s: f64,
}

impl Params {
    /// Validates 1 ≤ n ≤ 8 and 0 < s < n/2.
    pub fn new(n: usize, s: f64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIM}, got {n}")));
        }
        if !(s.is_finite() && s > 0.0 && s < 0.5 * n as f64) {
            return Err(Error::Domain(format!("order s must satisfy 0 < s < n/2 = {}, got {s}", 0.5 * n as f64)));
        }
        Ok(Self { n, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Sobolev exponent q = 2n/(n−2s).
    pub fn q(&self) -> f64 {
        2.0 * self.nf() / (self.nf() - 2.0 * self.s)
    }

    /// Dual exponent p = 2n/(n+2s).
    pub fn p(&self) -> f64 {
        2.0 * self.nf() / (self.nf() + 2.0 * self.s)
    }

    /// r = (n+2s)/(n−2s) = q − 1.
    pub fn r(&self) -> f64 {
        (self.nf() + 2.0 * self.s) / (self.nf() - 2.0 * self.s)
    }

    /// Fast-diffusion exponent m = 1/r.
    pub fn m(&self) -> f64 {
        (self.nf() - 2.0 * self.s) / (self.nf() + 2.0 * self.s)
    }

    /// Riesz exponent λ = n − 2s.
    pub fn lambda(&self) -> f64 {
        self.nf() - 2.0 * self.s
    }

    /// (n−2s)/2, the decay exponent of the extremal.
    pub fn a(&self) -> f64 {
        0.5 * (self.nf() - 2.0 * self.s)
    }

    /// (n+2s)/2.
    pub fn b(&self) -> f64 {
        0.5 * (self.nf() + 2.0 * self.s)
    }
}

/// |S^n| = 2π^{(n+1)/2}/Γ((n+1)/2), the unnormalized surface area.
pub fn sphere_area(n: usize) -> f64 {
    let h = 0.5 * (n as f64 + 1.0);
    2.0 * PI.powf(h) / gamma_unchecked(h)
}

/// ∫ u_*^q dx = π^{n/2}Γ(n/2)/Γ(n), independent of s.
pub fn extremal_mass(n: usize) -> f64 {
    let nf = n as f64;
    PI.powf(0.5 * nf) * gamma_unchecked(0.5 * nf) / gamma_unchecked(nf)
}

/// Sharp constant S_{n,s}.
pub fn sobolev_constant(p: &Params) -> f64 {
    let nf = p.nf();
    let s = p.s();
    gamma_ratio_unchecked(p.a(), p.b()) / (2f64.powf(2.0 * s) * PI.powf(s))
        * gamma_ratio_unchecked(nf, 0.5 * nf).powf(2.0 * s / nf)
}

fn check_lambda(n: usize, lambda: f64) -> Result<()> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIM}, got {n}")));
    }
    if !(lambda > 0.0 && lambda < n as f64) {
        return Err(Error::Domain(format!("HLS exponent must satisfy 0 < λ < n, got {lambda}")));
    }
    Ok(())
}

/// Sharp constant of ∬ f(x)f(y)|x−y|^{−λ} ≤ C‖f‖_p², p = 2n/(2n−λ).
pub fn hls_constant(n: usize, lambda: f64) -> Result<f64> {
    check_lambda(n, lambda)?;
    let nf = n as f64;
    Ok(PI.powf(0.5 * lambda)
        * gamma_ratio_unchecked(0.5 * (nf - lambda), nf - 0.5 * lambda)
        * gamma_ratio_unchecked(nf, 0.5 * nf).powf(1.0 - lambda / nf))
}

/// Sharp constant B_λ of the same inequality on S^n with the normalized measure.
pub fn sphere_hls_constant(n: usize, lambda: f64) -> Result<f64> {
    check_lambda(n, lambda)?;
    let nf = n as f64;
    Ok(2f64.powf(-lambda)
        * gamma_ratio_unchecked(0.5 * (nf - lambda), nf - 0.5 * lambda)
        * gamma_ratio_unchecked(nf, 0.5 * nf))
}

/// Normalization of the Green's function of (−Δ)^s: c_{n,s}|x|^{−(n−2s)}.
pub fn riesz_constant(p: &Params) -> f64 {
    gamma_unchecked(p.a()) / (2f64.powf(2.0 * p.s()) * PI.powf(0.5 * p.nf()) * gamma_unchecked(p.s()))
}

/// κ with (−Δ)^s u_* = κ u_*^r, i.e. 2^{2s}Γ((n+2s)/2)/Γ((n−2s)/2).
pub fn euler_lagrange_constant(p: &Params) -> f64 {
    2f64.powf(2.0 * p.s()) * gamma_ratio_unchecked(p.b(), p.a())
}

/// Eigenvalue γ_k = Γ(k+(n−2s)/2)/Γ(k+(n+2s)/2) of the normalized Riesz operator on S^n.
pub fn gamma_k(p: &Params, k: usize) -> f64 {
    let kf = k as f64;
    gamma_ratio_unchecked(kf + p.a(), kf + p.b())
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("mode index must be at least 2, got {k}")));
    }
    Ok(())
}

/// α_k = 1/γ_k − 1/γ_1 (> 0 for k ≥ 2).
pub fn alpha_k(p: &Params, k: usize) -> Result<f64> {
    check_k(k)?;
    let kf = k as f64;
    Ok(gamma_ratio_unchecked(kf + p.b(), kf + p.a()) - gamma_ratio_unchecked(1.0 + p.b(), 1.0 + p.a()))
}

/// β_k = γ_1 − γ_k (> 0 for k ≥ 2).
pub fn beta_k(p: &Params, k: usize) -> Result<f64> {
    check_k(k)?;
    Ok(gamma_k(p, 1) - gamma_k(p, k))
}

/// β_k/α_k, which simplifies to γ_1γ_k and so avoids the cancellation in both factors.
pub fn beta_alpha_ratio(p: &Params, k: usize) -> Result<f64> {
    check_k(k)?;
    Ok(gamma_k(p, 1) * gamma_k(p, k))
}

/// Lower end (n−2s+2)/(n+2s+2)·S and upper end S of the best-constant bracket.
pub fn best_constant_bracket(p: &Params) -> (f64, f64) {
    let s = sobolev_constant(p);
    ((p.nf() - 2.0 * p.s() + 2.0) / (p.nf() + 2.0 * p.s() + 2.0) * s, s)
}

/// A(n) = −(ψ(n) − ψ(n/2) − log 4), the mean of log|ξ−η|² over S^n.
pub fn log_kernel_mean(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let nf = n as f64;
    Ok(-(digamma_unchecked(nf) - digamma_unchecked(0.5 * nf) - 2.0 * LN_2))
}

/// Eigenvalue of the kernel log|ξ−η|² on 𝓗_k: A(n) at k = 0, −Γ(n)Γ(k)/Γ(n+k) after.
pub fn log_kernel_eigenvalue(n: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return log_kernel_mean(n);
    }
    let nf = n as f64;
    let kf = k as f64;
    Ok(-gamma_unchecked(nf) * gamma_ratio_unchecked(kf, nf + kf))
}
