//! Zonal harmonic calculus on S^n.
//!
//! A zonal function depends on ω only through t = ω_{n+1}. Its expansion
//! uses Ĉ_k, the degree-k Gegenbauer polynomial rescaled to be orthonormal
//! in L²(S^n, dσ), with dσ the normalized surface measure. On zonal
//! integrands dσ reduces to ∝ (1−t²)^{(n−2)/2} dt.

use crate::error::{Error, Result};
use crate::special::{Params, MAX_DIM};
use crate::sphere::quadrature::{gauss_jacobi, JacobiRecurrence, Quadrature};
use crate::sphere::stereographic::radius_of;

/// Gauss rule for the zonal weight together with a table of Ĉ_0..Ĉ_K at its nodes.
#[derive(Debug, Clone)]
pub struct ZonalGrid {
    n: usize,
    rule: Quadrature,
    kmax: usize,
    table: Vec<f64>,
    rec: JacobiRecurrence,
}

impl ZonalGrid {
    /// `q` nodes, basis tabulated to degree `kmax`. Projection is exact for
    /// band-limited inputs when `kmax` plus their degree stays below 2q.
    pub fn new(n: usize, q: usize, kmax: usize) -> Result<Self> {
        check_dim(n)?;
        let alpha = 0.5 * (n as f64 - 2.0);
        let rule = gauss_jacobi(q, alpha, alpha)?;
        let rec = JacobiRecurrence::sphere(n, kmax.max(1));
        let width = kmax + 1;
        let mut table = vec![0.0; q * width];
        for (i, &t) in rule.nodes.iter().enumerate() {
            rec.eval_into(t, &mut table[i * width..(i + 1) * width]);
        }
        Ok(Self { n, rule, kmax, table, rec })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rule.is_empty()
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn nodes(&self) -> &[f64] {
        &self.rule.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }

    pub fn rule(&self) -> &Quadrature {
        &self.rule
    }

    pub fn recurrence(&self) -> &JacobiRecurrence {
        &self.rec
    }

    /// Ĉ_0..Ĉ_kmax at node i.
    pub fn basis_row(&self, i: usize) -> &[f64] {
        let w = self.kmax + 1;
        &self.table[i * w..(i + 1) * w]
    }

    /// ∫ v dσ for values at the nodes.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.rule.dot(values)
    }

    /// Coefficients c_0..c_k of node values, k ≤ kmax.
    pub fn project(&self, values: &[f64], k: usize) -> Vec<f64> {
        let k = k.min(self.kmax);
        let mut c = vec![0.0; k + 1];
        for (i, (&v, &w)) in values.iter().zip(&self.rule.weights).enumerate() {
            let row = self.basis_row(i);
            let wv = w * v;
            for (cj, bj) in c.iter_mut().zip(row) {
                *cj += wv * bj;
            }
        }
        c
    }

    /// Node values of Σ c_k Ĉ_k.
    pub fn synthesize(&self, coeffs: &[f64]) -> Vec<f64> {
        assert!(coeffs.len() <= self.kmax + 1, "band limit exceeds the tabulated basis");
        (0..self.len())
            .map(|i| self.basis_row(i).iter().zip(coeffs).map(|(b, c)| b * c).sum())
            .collect()
    }
}

fn check_dim(n: usize) -> Result<()> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIM}, got {n}")));
    }
    Ok(())
}

/// Band-limited zonal function F = Σ_{k≤K} c_k Ĉ_k on S^n.
///
/// `s` records the order the function was built for, if any; `tail` is the
/// L²(dσ) mass discarded when the function was projected.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalFunction {
    n: usize,
    s: Option<f64>,
    coeffs: Vec<f64>,
    tail: f64,
}

impl ZonalFunction {
    pub fn new(n: usize, s: Option<f64>, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.is_empty() {
            return Err(Error::Domain("a zonal function needs at least c_0".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        Ok(Self { n, s, coeffs, tail: 0.0 })
    }

    pub fn zero(n: usize, s: Option<f64>, band_limit: usize) -> Result<Self> {
        Self::new(n, s, vec![0.0; band_limit + 1])
    }

    /// amplitude · Ĉ_k.
    pub fn mode(n: usize, s: Option<f64>, k: usize, amplitude: f64) -> Result<Self> {
        let mut c = vec![0.0; k + 1];
        c[k] = amplitude;
        Self::new(n, s, c)
    }

    pub fn with_tail(mut self, tail: f64) -> Self {
        self.tail = tail;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> Option<f64> {
        self.s
    }

    pub fn band_limit(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// c_k, zero past the band limit.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0]
    }

    /// ∫ F² dσ = Σ c_k².
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let rec = JacobiRecurrence::sphere(self.n, self.band_limit().max(1));
        let mut basis = vec![0.0; self.coeffs.len()];
        rec.eval_into(t, &mut basis);
        basis.iter().zip(&self.coeffs).map(|(b, c)| b * c).sum()
    }

    /// (F(t), F'(t)).
    pub fn eval_with_derivative(&self, t: f64) -> (f64, f64) {
        let rec = JacobiRecurrence::sphere(self.n, self.band_limit().max(1));
        let mut vals = vec![0.0; self.coeffs.len()];
        let mut ders = vec![0.0; self.coeffs.len()];
        rec.eval_with_derivatives_into(t, &mut vals, &mut ders);
        self.coeffs.iter().zip(vals.iter().zip(&ders)).fold((0.0, 0.0), |(f, d), (c, (v, dv))| (f + c * v, d + c * dv))
    }

    /// Node values on a grid of the same dimension.
    pub fn values_on(&self, grid: &ZonalGrid) -> Result<Vec<f64>> {
        if grid.n() != self.n {
            return Err(Error::Domain(format!("grid is for S^{}, function for S^{}", grid.n(), self.n)));
        }
        if self.band_limit() > grid.kmax() {
            return Err(Error::Domain(format!(
                "band limit {} exceeds grid basis degree {}",
                self.band_limit(),
                grid.kmax()
            )));
        }
        Ok(grid.synthesize(&self.coeffs))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|v| v * c).collect(), tail: self.tail * c * c, ..self.clone() }
    }

    /// Coefficient-wise a·self + b·other; the band limit is the larger of the two.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::Domain("cannot combine zonal functions on different spheres".into()));
        }
        let k = self.band_limit().max(other.band_limit());
        let coeffs = (0..=k).map(|j| a * self.coeff(j) + b * other.coeff(j)).collect();
        Ok(Self { n: self.n, s: self.s.or(other.s), coeffs, tail: 0.0 })
    }

    /// Apply a diagonal multiplier c_k ↦ μ_k c_k.
    pub fn map_coeffs(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect(), ..self.clone() }
    }

    /// Plain-text form: header `n s K`, then K+1 coefficients with 17 significant digits.
    pub fn to_text(&self) -> String {
        let s = self.s.map_or_else(|| "-".to_string(), |v| format!("{v:.16e}"));
        let mut out = format!("{} {} {}\n", self.n, s, self.band_limit());
        for c in &self.coeffs {
            out.push_str(&format!("{c:.16e}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty zonal function file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("header must read `n s K`, got `{header}`")));
        }
        let n: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad dimension `{}`", fields[0])))?;
        let s = match fields[1] {
            "-" => None,
            v => Some(v.parse::<f64>().map_err(|_| Error::Parse(format!("bad order `{v}`")))?),
        };
        let k: usize = fields[2].parse().map_err(|_| Error::Parse(format!("bad band limit `{}`", fields[2])))?;
        let coeffs = lines
            .map(|l| l.parse::<f64>().map_err(|_| Error::Parse(format!("bad coefficient `{l}`"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != k + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, found {}", k + 1, coeffs.len())));
        }
        Self::new(n, s, coeffs)
    }
}

/// Which power of the Jacobian a lift carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    /// F = u∘𝒮⁻¹ · J_{𝒮⁻¹}^{1/q}; for functions measured in L^q.
    Q,
    /// G = v∘𝒮⁻¹ · J_{𝒮⁻¹}^{1/p}; for their duals in L^p.
    P,
}

impl LiftMode {
    /// Exponent e in F(t) = u(ρ)·(1−t)^{−e}: n/q = (n−2s)/2 or n/p = (n+2s)/2.
    pub fn exponent(self, p: &Params) -> f64 {
        match self {
            LiftMode::Q => p.a(),
            LiftMode::P => p.b(),
        }
    }
}

/// Value of the lift at the zonal coordinate t from the profile value u(ρ(t)).
pub fn lift_value(u_at_rho: f64, t: f64, p: &Params, mode: LiftMode) -> f64 {
    u_at_rho * (1.0 - t).powf(-mode.exponent(p))
}

/// Inverse of [`lift_value`]: the Euclidean profile value at ρ(t).
pub fn unlift_value(lifted: f64, t: f64, p: &Params, mode: LiftMode) -> f64 {
    lifted * (1.0 - t).powf(mode.exponent(p))
}

/// Lift a radial profile u(|x|) to S^n and project it onto Ĉ_0..Ĉ_K.
pub fn lift(
    u: impl Fn(f64) -> f64,
    p: &Params,
    mode: LiftMode,
    grid: &ZonalGrid,
    band_limit: usize,
) -> Result<ZonalFunction> {
    if grid.n() != p.n() {
        return Err(Error::Domain("grid dimension differs from Params".into()));
    }
    let values: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&t| lift_value(u(radius_of(t)), t, p, mode))
        .collect();
    if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::LiftUnbounded(format!("non-finite lift at node t = {}", grid.nodes()[bad])));
    }
    check_pole_growth(&u, p, mode, &values)?;
    let coeffs = grid.project(&values, band_limit);
    let total = grid.integrate(&values.iter().map(|v| v * v).collect::<Vec<_>>());
    let kept: f64 = coeffs.iter().map(|c| c * c).sum();
    Ok(ZonalFunction::new(p.n(), Some(p.s()), coeffs)?.with_tail((total - kept).max(0.0)))
}

// A lift that keeps growing as t → 1 means u decays slower than |x|^{−2e}.
fn check_pole_growth(u: &impl Fn(f64) -> f64, p: &Params, mode: LiftMode, nodes: &[f64]) -> Result<()> {
    let scale = nodes.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let probe = |j: i32| {
        let omt = 10f64.powi(-j);
        u(((2.0 - omt) / omt).sqrt()) * omt.powf(-mode.exponent(p))
    };
    let (f9, f12) = (probe(9), probe(12));
    if !f12.is_finite() || !f9.is_finite() {
        return Err(Error::LiftUnbounded("lift is non-finite near the pole".into()));
    }
    if f12.abs() > 10.0 * f9.abs().max(1e-300) && f12.abs() > 10.0 * scale.max(1e-300) {
        return Err(Error::LiftUnbounded(format!(
            "lift grows from {f9:.3e} to {f12:.3e} approaching the pole; the profile decays too slowly"
        )));
    }
    Ok(())
}
