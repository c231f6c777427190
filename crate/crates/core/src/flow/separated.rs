//! Self-similar solution v = A(t)·u_*^r(x/λ) of the flow.
//!
//! Since (−Δ)^s[u_*(·/λ)] = κλ^{−2s}u_*^r(·/λ), the amplitude solves
//! A′ = −κλ^{−2s}A^m, so A(t) = (κ(1−m)λ^{−2s}(T−t))^{1/(1−m)} with
//! 1/(1−m) = (n+2s)/(4s), and J(t) ∝ (T−t)^{n/(2s)}.

use super::{FlowOperator, GridField};
use crate::error::{Error, Result};
use crate::special::{euler_lagrange_constant, gamma, Params};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatedSolution {
    params: Params,
    scale: f64,
    extinction_time: f64,
}

impl SeparatedSolution {
    /// Profile width λ > 0 and extinction time T > 0.
    pub fn new(params: Params, scale: f64, extinction_time: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Domain(format!("profile width must be positive, got {scale}")));
        }
        if !(extinction_time.is_finite() && extinction_time > 0.0) {
            return Err(Error::Domain(format!("extinction time must be positive, got {extinction_time}")));
        }
        Ok(Self { params, scale, extinction_time })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn extinction_time(&self) -> f64 {
        self.extinction_time
    }

    /// n/(2s), the exponent of J in T − t.
    pub fn j_exponent(&self) -> f64 {
        self.params.nf() / (2.0 * self.params.s())
    }

    fn rate(&self) -> f64 {
        euler_lagrange_constant(&self.params) * self.scale.powf(-2.0 * self.params.s())
    }

    fn remaining(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t < self.extinction_time) {
            return Err(Error::Range(format!("t must be below the extinction time {}, got {t}", self.extinction_time)));
        }
        Ok(self.extinction_time - t)
    }

    pub fn amplitude(&self, t: f64) -> Result<f64> {
        let m = self.params.m();
        Ok((self.rate() * (1.0 - m) * self.remaining(t)?).powf(1.0 / (1.0 - m)))
    }

    /// A′(t) = −κλ^{−2s}A^m.
    pub fn amplitude_rate(&self, t: f64) -> Result<f64> {
        Ok(-self.rate() * self.amplitude(t)?.powf(self.params.m()))
    }

    fn profile(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|c| c * c).sum::<f64>() / (self.scale * self.scale);
        (1.0 + r2).powf(-0.5 * (self.params.nf() + 2.0 * self.params.s()))
    }

    /// v(t, ·) on the grid (the grid dimension is n).
    pub fn field(&self, t: f64, half_width: f64, size: usize) -> Result<GridField> {
        let a = self.amplitude(t)?;
        GridField::from_fn(self.params.n(), half_width, size, |x| a * self.profile(x))
    }

    /// ∂_t v(t, ·) on the grid.
    pub fn time_derivative(&self, t: f64, half_width: f64, size: usize) -> Result<GridField> {
        let a = self.amplitude_rate(t)?;
        GridField::from_fn(self.params.n(), half_width, size, |x| a * self.profile(x))
    }

    /// J(t) = A^p λ^n ∫u_*^q.
    pub fn j(&self, t: f64) -> Result<f64> {
        let n = self.params.nf();
        let mass = PI.powf(0.5 * n) * gamma(0.5 * n)? / gamma(n)?;
        Ok(self.amplitude(t)?.powf(self.params.p()) * self.scale.powf(n) * mass)
    }

    /// J′/J = −(n/(2s))/(T − t).
    pub fn j_log_derivative(&self, t: f64) -> Result<f64> {
        Ok(-self.j_exponent() / self.remaining(t)?)
    }

    /// ‖∂_t v + (−Δ)^s v^m‖₂ / ‖∂_t v‖₂ on the operator's grid.
    pub fn pde_residual(&self, op: &FlowOperator, t: f64) -> Result<f64> {
        let g = op.geometry();
        let v = self.field(t, g.half_width(), g.size())?;
        let vt = self.time_derivative(t, g.half_width(), g.size())?;
        let rhs = op.rhs(v.values());
        let num: f64 = vt.values().iter().zip(&rhs).map(|(a, b)| (a - b) * (a - b)).sum();
        let den: f64 = vt.values().iter().map(|a| a * a).sum();
        Ok((num / den).sqrt())
    }
}

/// u_*^r·(1 + a·e^{−(|x|−3)²}): extremal far field with a radial bump.
pub fn perturbed_extremal(params: &Params, half_width: f64, size: usize, amplitude: f64) -> Result<GridField> {
    if !(amplitude.is_finite() && amplitude > -1.0) {
        return Err(Error::Domain(format!("bump amplitude must exceed −1, got {amplitude}")));
    }
    let e = -0.5 * (params.nf() + 2.0 * params.s());
    GridField::from_fn(params.n(), half_width, size, |x| {
        let r2: f64 = x.iter().map(|c| c * c).sum();
        let bump = (-(r2.sqrt() - 3.0).powi(2)).exp();
        (1.0 + r2).powf(e) * (1.0 + amplitude * bump)
    })
}
