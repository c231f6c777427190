//! (−Δ)^s as a periodic Fourier multiplier and (−Δ)^{−s} as a free-space
//! convolution, on [−L, L)^dim.
//!
//! The convolution samples c|x|^{−(n−2s)} on a zero-padded grid of twice the
//! size. The singular cell uses the lattice-zeta correction: for the
//! punctured lattice sum h^nΣ'|jh|^{−γ}f(jh) the quadrature error is
//! −Z(γ)h^{n−γ}f(0) − Z(γ−2)h^{n−γ+2}Δf(0)/(2n) + O(h^{n−γ+4}), with
//! Z(σ) = Σ'|j|^{−σ} continued analytically. Z is 2ζ(σ) on Z and
//! 4ζ(σ/2)β(σ/2) on Z². The Laplacian uses the 2n-point stencil.

use super::grid::GridField;
use crate::error::{Error, Result};
use crate::special::{dirichlet_beta, riesz_constant, zeta, Params};
use num_complex::Complex64;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// Boundary tail (relative to the peak) above which a truncation warning is logged.
pub const TAIL_WARNING: f64 = 1e-3;

/// Real-to-complex transform on an n^dim periodic grid.
///
/// For dim = 2 the half spectrum is stored column-major: entry (j, i) sits at
/// j·n + i, where j < n/2 + 1 indexes the second axis and i the first.
#[derive(Clone)]
struct RealFft {
    dim: usize,
    n: usize,
    r2c: Arc<dyn RealToComplex<f64>>,
    c2r: Arc<dyn ComplexToReal<f64>>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl RealFft {
    fn new(dim: usize, n: usize) -> Self {
        let mut real = RealFftPlanner::<f64>::new();
        let mut cplx = FftPlanner::<f64>::new();
        Self {
            dim,
            n,
            r2c: real.plan_fft_forward(n),
            c2r: real.plan_fft_inverse(n),
            fwd: cplx.plan_fft_forward(n),
            inv: cplx.plan_fft_inverse(n),
        }
    }

    fn half(&self) -> usize {
        self.n / 2 + 1
    }

    fn spectrum_len(&self) -> usize {
        match self.dim {
            1 => self.half(),
            _ => self.half() * self.n,
        }
    }

    /// Signed wavenumber indices of spectral entry `idx`.
    fn wavenumbers(&self, idx: usize) -> (f64, f64) {
        let signed = |i: usize| if i <= self.n / 2 { i as f64 } else { i as f64 - self.n as f64 };
        match self.dim {
            1 => (idx as f64, 0.0),
            _ => (signed(idx % self.n), (idx / self.n) as f64),
        }
    }

    fn forward(&self, x: &[f64]) -> Vec<Complex64> {
        let (n, m) = (self.n, self.half());
        let mut row = vec![0.0; n];
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        if self.dim == 1 {
            row.copy_from_slice(x);
            self.r2c.process(&mut row, &mut out).expect("lengths match the plan");
            return out;
        }
        let mut spec = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..n {
            row.copy_from_slice(&x[i * n..(i + 1) * n]);
            self.r2c.process(&mut row, &mut out).expect("lengths match the plan");
            for (j, c) in out.iter().enumerate() {
                spec[j * n + i] = *c;
            }
        }
        self.fwd.process(&mut spec);
        spec
    }

    /// Inverse transform, normalized so that inverse(forward(x)) = x.
    fn inverse(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        let (n, m) = (self.n, self.half());
        let scale = 1.0 / (n as f64).powi(self.dim as i32);
        let mut out = vec![0.0; n.pow(self.dim as u32)];
        let mut row = vec![Complex64::new(0.0, 0.0); m];
        let mut real = vec![0.0; n];
        let mut finish = |row: &mut [Complex64], dest: &mut [f64]| {
            row[0].im = 0.0;
            row[m - 1].im = 0.0;
            self.c2r.process(row, &mut real).expect("lengths match the plan");
            for (d, r) in dest.iter_mut().zip(&real) {
                *d = r * scale;
            }
        };
        if self.dim == 1 {
            finish(&mut spec, &mut out);
            return out;
        }
        self.inv.process(&mut spec);
        for i in 0..n {
            for (j, r) in row.iter_mut().enumerate() {
                *r = spec[j * n + i];
            }
            finish(&mut row, &mut out[i * n..(i + 1) * n]);
        }
        out
    }
}

/// Σ'|j|^{−σ} over the punctured lattice Z^dim, analytically continued.
pub fn lattice_zeta(dim: usize, sigma: f64) -> Result<f64> {
    match dim {
        1 => Ok(2.0 * zeta(sigma)?),
        2 => Ok(4.0 * zeta(0.5 * sigma)? * dirichlet_beta(0.5 * sigma)?),
        _ => Err(Error::Domain(format!("lattice sums are tabulated for dimension 1 or 2, got {dim}"))),
    }
}

/// Cached transforms and symbols for one grid and one order s.
#[derive(Clone)]
pub struct SpectralOps {
    params: Params,
    half_width: f64,
    size: usize,
    fft: RealFft,
    padded: RealFft,
    /// |ξ|^{2s} on the half spectrum.
    symbol: Vec<f64>,
    /// Transform of the corrected kernel on the padded grid, times h^n.
    kernel_hat: Vec<Complex64>,
}

impl SpectralOps {
    /// Operators of order s on the grid of `dim`, L, N. Requires 0 < s < dim/2.
    pub fn new(dim: usize, half_width: f64, size: usize, s: f64) -> Result<Self> {
        let params = Params::new(dim, s)?;
        let probe = GridField::new(dim, half_width, size, vec![0.0; size.pow(dim as u32)])?;
        let h = probe.spacing();
        let fft = RealFft::new(dim, size);
        let padded = RealFft::new(dim, 2 * size);
        let k0 = PI / half_width;
        let symbol = (0..fft.spectrum_len())
            .map(|idx| {
                let (a, b) = fft.wavenumbers(idx);
                (k0 * k0 * (a * a + b * b)).powf(s)
            })
            .collect();
        let kernel = riesz_kernel(&params, h, 2 * size)?;
        let hn = h.powi(dim as i32);
        let kernel_hat = padded.forward(&kernel).into_iter().map(|c| c * hn).collect();
        Ok(Self { params, half_width, size, fft, padded, symbol, kernel_hat })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn s(&self) -> f64 {
        self.params.s()
    }

    pub fn dim(&self) -> usize {
        self.params.n()
    }

    fn check(&self, field: &GridField) -> Result<()> {
        if field.dim() != self.dim() || field.size() != self.size || field.half_width() != self.half_width {
            return Err(Error::Domain(format!(
                "field geometry (dim {}, L {}, N {}) does not match the operator (dim {}, L {}, N {})",
                field.dim(),
                field.half_width(),
                field.size(),
                self.dim(),
                self.half_width,
                self.size
            )));
        }
        Ok(())
    }

    fn monitor_tail(field: &GridField, what: &str) {
        let tail = field.boundary_tail();
        if tail > TAIL_WARNING {
            log::warn!("{what}: boundary tail {tail:.2e} of the peak, expect truncation error");
        }
    }

    /// Periodic (−Δ)^s on raw samples.
    pub(crate) fn frac_laplacian_values(&self, values: &[f64]) -> Vec<f64> {
        let mut spec = self.fft.forward(values);
        for (c, m) in spec.iter_mut().zip(&self.symbol) {
            *c *= m;
        }
        self.fft.inverse(spec)
    }

    /// Free-space (−Δ)^{−s} of samples extended by zero outside the box.
    pub(crate) fn riesz_values(&self, values: &[f64]) -> Vec<f64> {
        let n = self.size;
        let big = 2 * n;
        let mut padded = vec![0.0; big.pow(self.dim() as u32)];
        match self.dim() {
            1 => padded[..n].copy_from_slice(values),
            _ => {
                for i in 0..n {
                    padded[i * big..i * big + n].copy_from_slice(&values[i * n..(i + 1) * n]);
                }
            }
        }
        let mut spec = self.padded.forward(&padded);
        for (c, k) in spec.iter_mut().zip(&self.kernel_hat) {
            *c *= k;
        }
        let full = self.padded.inverse(spec);
        match self.dim() {
            1 => full[..n].to_vec(),
            _ => (0..n).flat_map(|i| full[i * big..i * big + n].iter().copied()).collect(),
        }
    }

    /// (−Δ)^s through the multiplier |ξ|^{2s} on the periodic grid.
    pub fn frac_laplacian(&self, field: &GridField) -> Result<GridField> {
        self.check(field)?;
        Self::monitor_tail(field, "fractional Laplacian");
        field.with_values(self.frac_laplacian_values(field.values()))
    }

    /// (−Δ)^{−s} by free-space convolution with c_{n,s}|x|^{−(n−2s)}.
    pub fn riesz_potential(&self, field: &GridField) -> Result<GridField> {
        self.check(field)?;
        Self::monitor_tail(field, "Riesz potential");
        field.with_values(self.riesz_values(field.values()))
    }
}

/// Kernel samples on the padded grid of side `big`, wrapped so that index 0 is the origin.
fn riesz_kernel(params: &Params, h: f64, big: usize) -> Result<Vec<f64>> {
    let dim = params.n();
    let nf = dim as f64;
    let gamma = params.lambda();
    let c = riesz_constant(params);
    let z0 = lattice_zeta(dim, gamma)?;
    let z1 = lattice_zeta(dim, gamma - 2.0)?;
    let signed = |i: usize| if i < big / 2 { i as f64 } else { i as f64 - big as f64 };
    let radius: Vec<f64> = match dim {
        1 => (0..big).map(|i| signed(i).abs()).collect(),
        _ => (0..big * big).map(|idx| signed(idx / big).hypot(signed(idx % big))).collect(),
    };
    let mut k: Vec<f64> = radius.into_iter().map(|r| if r > 0.0 { c * (r * h).powf(-gamma) } else { 0.0 }).collect();
    // stencil weight per neighbour, in kernel units (the sum is scaled by h^n later)
    let w2 = -c * z1 / (2.0 * nf) * h.powf(-gamma);
    k[0] = -c * z0 * h.powf(-gamma) - 2.0 * nf * w2;
    let neighbours: Vec<usize> = match dim {
        1 => vec![1, big - 1],
        _ => vec![big, (big - 1) * big, 1, big - 1],
    };
    for j in neighbours {
        k[j] += w2;
    }
    Ok(k)
}

/// (−Δ)^s of `field` on its periodic grid.
pub fn frac_laplacian(field: &GridField, s: f64) -> Result<GridField> {
    SpectralOps::new(field.dim(), field.half_width(), field.size(), s)?.frac_laplacian(field)
}

/// (−Δ)^{−s} of `field` as a free-space convolution.
pub fn riesz_potential(field: &GridField, s: f64) -> Result<GridField> {
    SpectralOps::new(field.dim(), field.half_width(), field.size(), s)?.riesz_potential(field)
}
