//! Far-field corrected operators for the fast-diffusion flow.
//!
//! Flow solutions carry the algebraic tails of the extremal: u = v^m ~ β u_*
//! and v ~ β' u_*^r, which a box of half-width L truncates badly. Each field
//! is split into a multiple of the reference profile, fitted by least
//! squares on the outer ring, plus a remainder that decays fast:
//!
//! * (−Δ)^s u = βκu_*^r + (−Δ)^s w, with the periodic multiplier on w. The
//!   periodic operator has zero mean, while the true (−Δ)^s w has the tail
//!   −C_{n,s}(∫w)|x|^{−n−2s} outside the box; the mass of that tail is
//!   restored as a uniform offset.
//! * (−Δ)^{−s}v = β'u_*/κ + (−Δ)^{−s}z, with the free-space convolution on z.
//! * Integrals of u^q, u(−Δ)^s u and v(−Δ)^{−s}v add the reference tail
//!   outside the box in closed form.

use super::grid::GridField;
use super::spectral::SpectralOps;
use crate::error::{Error, Result};
use crate::special::{euler_lagrange_constant, gamma, sobolev_constant, Params};
use std::f64::consts::PI;

/// Outer ring width, in samples, for the far-field fit.
const RING_WIDTH: usize = 2;

/// How the operators treat the region outside the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FarField {
    /// Fit and subtract the extremal tail (free space).
    Reference,
    /// Plain periodic multiplier, no tail terms (the torus).
    Periodic,
}

/// Energies of one flow state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energies {
    /// J = ∫v^p = ∫u^q.
    pub j: f64,
    /// ‖u‖_s² = ∫u(−Δ)^s u.
    pub sobolev_norm_sq: f64,
    /// ∫v(−Δ)^{−s}v.
    pub hls_energy: f64,
    /// Tail coefficient of u.
    pub beta: f64,
}

/// Operators of the flow for one (n, s) on one grid.
#[derive(Clone)]
pub struct FlowOperator {
    ops: SpectralOps,
    far_field: FarField,
    geometry: GridField,
    kappa: f64,
    sobolev: f64,
    /// u_* and u_*^r on the grid.
    reference: Vec<f64>,
    reference_r: Vec<f64>,
    ring: Vec<usize>,
    ring_norm: f64,
    ring_norm_r: f64,
    /// ∫u_*^q over R^n and its part outside the box.
    mass_q: f64,
    outside_q: f64,
    /// Uniform offset per unit ∫w that restores the far tail of (−Δ)^s w.
    offset_per_mass: f64,
}

impl FlowOperator {
    pub fn new(params: Params, half_width: f64, size: usize, far_field: FarField) -> Result<Self> {
        let n = params.n();
        if !(n == 1 || n == 2) {
            return Err(Error::Domain(format!("the flow runs in dimension 1 or 2, got {n}")));
        }
        if params.s() >= 1.0 {
            return Err(Error::Domain(format!("the flow requires 0 < s < 1, got {}", params.s())));
        }
        let ops = SpectralOps::new(n, half_width, size, params.s())?;
        let a = params.a();
        let r = params.r();
        let reference_field = GridField::from_fn(n, half_width, size, |x| {
            (1.0 + x.iter().map(|c| c * c).sum::<f64>()).powf(-a)
        })?;
        let reference: Vec<f64> = reference_field.values().to_vec();
        let reference_r: Vec<f64> = reference.iter().map(|u| u.powf(r)).collect();
        let ring = reference_field.boundary_ring(RING_WIDTH);
        let ring_norm = ring.iter().map(|&k| reference[k] * reference[k]).sum();
        let ring_norm_r = ring.iter().map(|&k| reference_r[k] * reference_r[k]).sum();
        let nf = n as f64;
        let hn = reference_field.cell_volume();
        let half_n = PI.powf(0.5 * nf);
        let q = params.q();
        let mass_q = half_n * gamma(0.5 * nf)? / gamma(nf)?;
        let outside_q = mass_q - hn * reference.iter().map(|u| u.powf(q)).sum::<f64>();
        let mass_r = half_n * gamma(params.s())? / gamma(params.b())?;
        let outside_r = mass_r - hn * reference_r.iter().sum::<f64>();
        let s = params.s();
        let tail_constant = s * 2f64.powf(2.0 * s) * gamma(params.b())? / (half_n * gamma(1.0 - s)?);
        let offset_per_mass = tail_constant * outside_r / (2.0 * half_width).powi(n as i32);
        Ok(Self {
            ops,
            far_field,
            geometry: reference_field.with_values(vec![0.0; reference.len()])?,
            kappa: euler_lagrange_constant(&params),
            sobolev: sobolev_constant(&params),
            reference,
            reference_r,
            ring,
            ring_norm,
            ring_norm_r,
            mass_q,
            outside_q,
            offset_per_mass,
        })
    }

    pub fn params(&self) -> &Params {
        self.ops.params()
    }

    pub fn far_field(&self) -> FarField {
        self.far_field
    }

    /// A zero field with the operator's geometry.
    pub fn geometry(&self) -> &GridField {
        &self.geometry
    }

    pub fn spectral(&self) -> &SpectralOps {
        &self.ops
    }

    pub fn check(&self, field: &GridField) -> Result<()> {
        let g = &self.geometry;
        if field.dim() != g.dim() || field.size() != g.size() || field.half_width() != g.half_width() {
            return Err(Error::Domain("field geometry does not match the flow grid".into()));
        }
        Ok(())
    }

    /// Least-squares coefficient of `reference` in `values` on the outer ring.
    fn ring_fit(&self, values: &[f64], reference: &[f64], norm: f64) -> f64 {
        match self.far_field {
            FarField::Periodic => 0.0,
            FarField::Reference => self.ring.iter().map(|&k| values[k] * reference[k]).sum::<f64>() / norm,
        }
    }

    fn hn(&self) -> f64 {
        self.geometry.cell_volume()
    }

    /// (−Δ)^s w with the far-tail offset, for w decaying inside the box.
    fn remainder_laplacian(&self, w: &[f64]) -> Vec<f64> {
        let mut lw = self.ops.frac_laplacian_values(w);
        if self.far_field == FarField::Reference {
            let offset = self.offset_per_mass * self.hn() * w.iter().sum::<f64>();
            lw.iter_mut().for_each(|x| *x += offset);
        }
        lw
    }

    /// u = βu_* + w.
    fn split(&self, u: &[f64]) -> (f64, Vec<f64>) {
        let beta = self.ring_fit(u, &self.reference, self.ring_norm);
        let w = u.iter().zip(&self.reference).map(|(u, r)| u - beta * r).collect();
        (beta, w)
    }

    /// (−Δ)^s u for u = v^m.
    pub fn frac_laplacian(&self, u: &[f64]) -> Vec<f64> {
        let (beta, w) = self.split(u);
        let mut lu = self.remainder_laplacian(&w);
        for (l, r) in lu.iter_mut().zip(&self.reference_r) {
            *l += beta * self.kappa * r;
        }
        lu
    }

    /// (−Δ)^{−s} v.
    pub fn riesz_potential(&self, v: &[f64]) -> Vec<f64> {
        let beta = self.ring_fit(v, &self.reference_r, self.ring_norm_r);
        let z: Vec<f64> = v.iter().zip(&self.reference_r).map(|(v, r)| v - beta * r).collect();
        let mut rz = self.ops.riesz_values(&z);
        for (x, r) in rz.iter_mut().zip(&self.reference) {
            *x += beta * r / self.kappa;
        }
        rz
    }

    /// ∂_t v = −(−Δ)^s v^m.
    pub fn rhs(&self, v: &[f64]) -> Vec<f64> {
        let m = self.params().m();
        let u: Vec<f64> = v.iter().map(|x| x.powf(m)).collect();
        self.frac_laplacian(&u).into_iter().map(|x| -x).collect()
    }

    /// J, ‖u‖_s² and ∫v(−Δ)^{−s}v, with the reference tail outside the box.
    pub fn energies(&self, v: &[f64]) -> Energies {
        let p = self.params();
        let hn = self.hn();
        let u: Vec<f64> = v.iter().map(|x| x.powf(p.m())).collect();
        let (beta, w) = self.split(&u);
        let q = p.q();
        let tails = self.far_field == FarField::Reference;
        let mut j = hn * u.iter().map(|x| x.powf(q)).sum::<f64>();
        let lw = self.remainder_laplacian(&w);
        let dot = |a: &[f64], b: &[f64]| hn * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut sobolev_norm_sq = dot(&w, &lw);
        let bv = self.ring_fit(v, &self.reference_r, self.ring_norm_r);
        let z: Vec<f64> = v.iter().zip(&self.reference_r).map(|(v, r)| v - bv * r).collect();
        let mut hls_energy = dot(&z, &self.ops.riesz_values(&z));
        if tails {
            j += beta.abs().powf(q) * self.outside_q;
            sobolev_norm_sq +=
                beta * beta * self.kappa * self.mass_q + 2.0 * beta * self.kappa * dot(&w, &self.reference_r);
            hls_energy += bv * bv * self.mass_q / self.kappa + 2.0 * bv * dot(&z, &self.reference) / self.kappa;
        }
        Energies { j, sobolev_norm_sq, hls_energy, beta }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn sobolev(&self) -> f64 {
        self.sobolev
    }
}
