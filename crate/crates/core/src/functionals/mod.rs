//! Sobolev and HLS deficit functionals evaluated on stereographic lifts.
//!
//! A positive radial u on R^n is represented by its q-lift
//! F(ω) = u(𝒮⁻¹ω)·J_{𝒮⁻¹}(ω)^{1/q}. With dω = |S^n| dσ and c_k the
//! coefficients of F:
//!
//! * ‖u‖_s² = |S^n| Σ c_k²/γ_k
//! * ∫u^q dx = |S^n| ∫F^q dσ
//! * the p-lift of v = u^r is F^r pointwise, and ∫v(−Δ)^{−s}v = |S^n| Σ γ_k g_k²
//!   with g_k the coefficients of F^r
//! * ∫f²(1+|x|²)^{−2s} dx = 2^{−2s}|S^n| Σ c_k²
//!
//! so every quadratic form is a diagonal sum and the only quadrature is
//! the one for the nonlinear powers.

mod linear;

pub use linear::{
    aubin_talenti, dilate, extrapolate_to_zero, orthogonality_gram, quotient_lower_bound, AubinTalenti,
    QuotientLimit,
};

use crate::error::{Error, Result};
use crate::report::Record;
use crate::special::{gamma_k, sobolev_constant, sphere_area, Params};
use crate::sphere::{ZonalFunction, ZonalGrid};

/// Default band limit for lifts.
pub const DEFAULT_BAND: usize = 64;
/// Default Gauss size for the nonlinear powers.
pub const DEFAULT_NODES: usize = 200;
/// Relative tolerance for the orthogonality preconditions.
pub const ORTHO_TOL: f64 = 1e-10;
/// Sobolev mass beyond the band limit, relative to the total, that counts as divergent.
pub const REGULARITY_TOL: f64 = 1e-6;
/// Projection tails below this fraction of ‖F‖² are rounding.
const TAIL_FLOOR: f64 = 1e-13;

/// Evaluator for one (n, s): quadrature, spectrum and constants.
#[derive(Debug, Clone)]
pub struct Functionals {
    params: Params,
    grid: ZonalGrid,
    band: usize,
    power_band: usize,
    gamma: Vec<f64>,
    sobolev: f64,
    area: f64,
}

/// Everything 𝓕[u] and 𝓖[u^r] are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct DeficitReport {
    pub params: Params,
    pub band_limit: usize,
    pub nodes: usize,
    pub power_band: usize,
    pub sobolev_norm_sq: f64,
    pub lq_norm: f64,
    pub f_value: f64,
    pub hls_energy: f64,
    pub lp_norm: f64,
    pub g_value: f64,
    /// 𝓖[u^r] / (‖u‖_q^{8s/(n−2s)} 𝓕[u]); NaN when 𝓕 vanishes.
    pub quotient: f64,
    /// L²(dσ) mass of F^r left beyond `power_band`.
    pub power_tail: f64,
    /// S‖u‖_s², the natural size of 𝓕.
    pub f_scale: f64,
    /// S‖u^r‖_p², the natural size of 𝓖.
    pub g_scale: f64,
}

impl DeficitReport {
    /// ‖u‖_q^{8s/(n−2s)} = (∫u^q)^{4s/n}.
    pub fn weight(&self) -> f64 {
        self.lq_norm.powf(8.0 * self.params.s() / self.params.lambda())
    }

    pub fn to_record(&self) -> Record {
        Record::new()
            .with("n", self.params.n())
            .with("s", self.params.s())
            .with("band_limit", self.band_limit)
            .with("nodes", self.nodes)
            .with("power_band", self.power_band)
            .with("sobolev_norm_sq", self.sobolev_norm_sq)
            .with("lq_norm", self.lq_norm)
            .with("F_value", self.f_value)
            .with("hls_energy", self.hls_energy)
            .with("lp_norm", self.lp_norm)
            .with("G_value", self.g_value)
            .with("quotient", self.quotient)
            .with("power_tail", self.power_tail)
    }
}

/// Outcome of checking 𝓖[u^r] ≤ C‖u‖_q^{8s/(n−2s)}𝓕[u].
#[derive(Debug, Clone, PartialEq)]
pub struct MainCheck {
    pub constant: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs − lhs.
    pub margin: f64,
    /// Size of the terms that cancel in the margin.
    pub scale: f64,
    pub holds: bool,
}

impl MainCheck {
    pub fn relative_margin(&self) -> f64 {
        self.margin / self.scale
    }
}

/// Both sides of the completed square.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareCheck {
    /// S²‖u‖_q^{8s/(n−2s)}‖u‖_s² − 2S‖u‖_q^{4s/(n−2s)}∫u^q + ∫u^r(−Δ)^{−s}u^r.
    pub expanded: f64,
    /// ∫|S‖u‖_q^{4s/(n−2s)}∇(−Δ)^{(s−1)/2}u − ∇(−Δ)^{−(1+s)/2}u^r|², summed mode by mode.
    pub square: f64,
    pub scale: f64,
    /// |expanded − square| / scale.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareCheck {
    pub norm_sq: f64,
    /// 2^{2s}Γ((n+2s+4)/2)/Γ((n−2s+4)/2) ∫f²(1+|x|²)^{−2s}.
    pub bound: f64,
    pub gap: f64,
    pub holds: bool,
}

impl Functionals {
    pub fn new(params: Params) -> Result<Self> {
        Self::with_sizes(params, DEFAULT_BAND, DEFAULT_NODES)
    }

    /// Lifts of band limit up to `band`; nonlinear powers use `nodes` Gauss
    /// points and are projected to degree `nodes / 2`.
    pub fn with_sizes(params: Params, band: usize, nodes: usize) -> Result<Self> {
        if nodes < band + 1 {
            return Err(Error::Domain(format!("{nodes} nodes cannot resolve band limit {band}")));
        }
        let power_band = (nodes / 2).max(band);
        let grid = ZonalGrid::new(params.n(), nodes, power_band)?;
        let gamma = (0..=power_band).map(|k| gamma_k(&params, k)).collect();
        Ok(Self {
            params,
            grid,
            band,
            power_band,
            gamma,
            sobolev: sobolev_constant(&params),
            area: sphere_area(params.n()),
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn grid(&self) -> &ZonalGrid {
        &self.grid
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn power_band(&self) -> usize {
        self.power_band
    }

    pub fn sobolev(&self) -> f64 {
        self.sobolev
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn gamma(&self, k: usize) -> f64 {
        self.gamma.get(k).copied().unwrap_or_else(|| gamma_k(&self.params, k))
    }

    fn check(&self, f: &ZonalFunction) -> Result<()> {
        if f.n() != self.params.n() {
            return Err(Error::Domain(format!("function lives on S^{}, evaluator on S^{}", f.n(), self.params.n())));
        }
        if f.band_limit() > self.power_band {
            return Err(Error::Domain(format!(
                "band limit {} exceeds the tabulated degree {}",
                f.band_limit(),
                self.power_band
            )));
        }
        if let Some(c) = f.coeffs().iter().find(|c| !c.is_finite()) {
            return Err(Error::Regularity(format!("non-finite coefficient {c}")));
        }
        Ok(())
    }

    /// Node values of a lift, or a positivity error if any is ≤ 0.
    pub fn positive_values(&self, f: &ZonalFunction) -> Result<Vec<f64>> {
        self.check(f)?;
        let vals = self.grid.synthesize(f.coeffs());
        if let Some(i) = vals.iter().position(|v| *v <= 0.0) {
            return Err(Error::Positivity(format!(
                "lift takes the value {:.3e} at t = {:.6}",
                vals[i],
                self.grid.nodes()[i]
            )));
        }
        Ok(vals)
    }

    /// ‖f‖_s² from the q-lift.
    pub fn sobolev_norm_sq(&self, f: &ZonalFunction) -> Result<f64> {
        self.check(f)?;
        let body: f64 = f.coeffs().iter().enumerate().map(|(k, c)| c * c / self.gamma(k)).sum();
        let value = self.area * body;
        // the discarded mass costs at least tail/γ_{K+1}; a tail at the
        // rounding level of the projection is no evidence of roughness
        let raw = if f.tail() > TAIL_FLOOR * f.l2_norm_sq() { f.tail() } else { 0.0 };
        let tail = self.area * raw / self.gamma(f.band_limit() + 1);
        if tail > REGULARITY_TOL * value.max(f64::MIN_POSITIVE) {
            return Err(Error::Regularity(format!(
                "Sobolev mass beyond degree {} is at least {tail:.3e} against {value:.3e}",
                f.band_limit()
            )));
        }
        Ok(value)
    }

    /// ∫f²(1+|x|²)^{−2s} dx.
    pub fn weighted_l2_sq(&self, f: &ZonalFunction) -> f64 {
        2f64.powf(-2.0 * self.params.s()) * self.area * f.l2_norm_sq()
    }

    /// ∫u^q dx from the q-lift; u must be positive.
    pub fn lq_power(&self, f: &ZonalFunction) -> Result<f64> {
        let vals = self.positive_values(f)?;
        Ok(self.lq_power_of_values(&vals))
    }

    fn lq_power_of_values(&self, vals: &[f64]) -> f64 {
        let q = self.params.q();
        self.area * self.grid.integrate(&vals.iter().map(|v| v.powf(q)).collect::<Vec<_>>())
    }

    pub fn lq_norm(&self, f: &ZonalFunction) -> Result<f64> {
        Ok(self.lq_power(f)?.powf(1.0 / self.params.q()))
    }

    /// p-lift of u^r, which is F^r pointwise, projected to `power_band`.
    pub fn power_lift(&self, f: &ZonalFunction) -> Result<ZonalFunction> {
        let vals = self.positive_values(f)?;
        Ok(self.power_lift_of_values(&vals))
    }

    fn power_lift_of_values(&self, vals: &[f64]) -> ZonalFunction {
        let r = self.params.r();
        let g: Vec<f64> = vals.iter().map(|v| v.powf(r)).collect();
        let coeffs = self.grid.project(&g, self.power_band);
        let total = self.grid.integrate(&g.iter().map(|v| v * v).collect::<Vec<_>>());
        let kept: f64 = coeffs.iter().map(|c| c * c).sum();
        ZonalFunction::new(self.params.n(), Some(self.params.s()), coeffs)
            .expect("dimension already validated")
            .with_tail((total - kept).max(0.0))
    }

    /// ∫g(−Δ)^{−s}g dx from the p-lift of g.
    pub fn hls_energy(&self, g: &ZonalFunction) -> Result<f64> {
        self.check(g)?;
        Ok(self.area * g.coeffs().iter().enumerate().map(|(k, c)| self.gamma(k) * c * c).sum::<f64>())
    }

    /// ‖g‖_p from the p-lift.
    pub fn lp_norm(&self, g: &ZonalFunction) -> Result<f64> {
        self.check(g)?;
        let p = self.params.p();
        let vals = self.grid.synthesize(g.coeffs());
        let integral = self.area * self.grid.integrate(&vals.iter().map(|v| v.abs().powf(p)).collect::<Vec<_>>());
        Ok(integral.powf(1.0 / p))
    }

    /// 𝓕[u] = S‖u‖_s² − ‖u‖_q².
    pub fn f_deficit(&self, f: &ZonalFunction) -> Result<f64> {
        Ok(self.sobolev * self.sobolev_norm_sq(f)? - self.lq_norm(f)?.powi(2))
    }

    /// 𝓖[v] = S‖v‖_p² − ∫v(−Δ)^{−s}v for v given by its p-lift.
    pub fn g_deficit(&self, g: &ZonalFunction) -> Result<f64> {
        Ok(self.sobolev * self.lp_norm(g)?.powi(2) - self.hls_energy(g)?)
    }

    /// Evaluate 𝓕[u], 𝓖[u^r] and their quotient for the q-lift of u.
    pub fn deficit_report(&self, f: &ZonalFunction) -> Result<DeficitReport> {
        let vals = self.positive_values(f)?;
        let ns = self.sobolev_norm_sq(f)?;
        let mass = self.lq_power_of_values(&vals);
        let lq_norm = mass.powf(1.0 / self.params.q());
        let g = self.power_lift_of_values(&vals);
        let hls = self.hls_energy(&g)?;
        // ‖u^r‖_p^p = ∫u^q, exactly
        let lp_norm = mass.powf(1.0 / self.params.p());
        let f_value = self.sobolev * ns - lq_norm * lq_norm;
        let g_value = self.sobolev * lp_norm * lp_norm - hls;
        let weight = lq_norm.powf(8.0 * self.params.s() / self.params.lambda());
        let quotient = if f_value > 0.0 { g_value / (weight * f_value) } else { f64::NAN };
        Ok(DeficitReport {
            params: self.params,
            band_limit: f.band_limit(),
            nodes: self.grid.len(),
            power_band: self.power_band,
            sobolev_norm_sq: ns,
            lq_norm,
            f_value,
            hls_energy: hls,
            lp_norm,
            g_value,
            quotient,
            power_tail: g.tail(),
            f_scale: self.sobolev * ns,
            g_scale: self.sobolev * lp_norm * lp_norm,
        })
    }

    /// Check 𝓖[u^r] ≤ C‖u‖_q^{8s/(n−2s)}𝓕[u] with relative slack `tol`.
    pub fn verify_main_inequality(&self, f: &ZonalFunction, constant: f64, tol: f64) -> Result<MainCheck> {
        let rep = self.deficit_report(f)?;
        Ok(main_check(&rep, constant, tol))
    }

    /// Expand the square both ways and compare.
    pub fn verify_square_identity(&self, f: &ZonalFunction) -> Result<SquareCheck> {
        let vals = self.positive_values(f)?;
        let ns = self.sobolev_norm_sq(f)?;
        let mass = self.lq_power_of_values(&vals);
        let g = self.power_lift_of_values(&vals);
        let hls = self.hls_energy(&g)?;
        let s = self.params.s();
        let lam = self.params.lambda();
        let lq = mass.powf(1.0 / self.params.q());
        let amp = self.sobolev * lq.powf(4.0 * s / lam);
        let expanded = amp * amp * ns - 2.0 * amp * mass + hls;
        // ∇(−Δ)^{(s−1)/2}u and ∇(−Δ)^{−(1+s)/2}v pair like (−Δ)^{s/2}u and
        // (−Δ)^{−s/2}v; on the sphere these are c_k/√γ_k and √γ_k g_k.
        let square = self.area
            * g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, gk)| {
                    let gam = self.gamma(k);
                    let d = amp * f.coeff(k) / gam.sqrt() - gam.sqrt() * gk;
                    d * d
                })
                .sum::<f64>();
        let scale = (amp * amp * ns).max(hls).max(f64::MIN_POSITIVE);
        Ok(SquareCheck { expanded, square, scale, residual: (expanded - square).abs() / scale })
    }

    fn orthogonality_error(&self, f: &ZonalFunction, upto: usize) -> Result<()> {
        let norm = f.l2_norm_sq().sqrt();
        for k in 0..=upto {
            if f.coeff(k).abs() > ORTHO_TOL * norm.max(f64::MIN_POSITIVE) {
                return Err(Error::Precondition(format!(
                    "weighted pairing with the degree-{k} modes is {:.3e}, norm {norm:.3e}",
                    f.coeff(k)
                )));
            }
        }
        Ok(())
    }

    /// Second variation of 𝓕/S around u_*: ‖f‖_s² − 2^{2s}Γ((n+2s+2)/2)/Γ((n−2s+2)/2)∫f²(1+|x|²)^{−2s}.
    ///
    /// `f` is the q-lift of the perturbation and must be orthogonal to u_*.
    pub fn linearized_f(&self, f: &ZonalFunction) -> Result<f64> {
        self.check(f)?;
        self.orthogonality_error(f, 0)?;
        let g1 = self.gamma(1);
        Ok(self.area * f.coeffs().iter().enumerate().skip(1).map(|(k, c)| (1.0 / self.gamma(k) - 1.0 / g1) * c * c).sum::<f64>())
    }

    /// Second variation of 𝓖 around u_*^r, divided by r².
    pub fn linearized_g(&self, f: &ZonalFunction) -> Result<f64> {
        self.check(f)?;
        self.orthogonality_error(f, 0)?;
        let g1 = self.gamma(1);
        // degree 1 carries the multiplier γ_1 − γ_1, so the sum starts at 2
        debug_assert_eq!(g1 - self.gamma(1), 0.0);
        let body: f64 = f.coeffs().iter().enumerate().skip(2).map(|(k, c)| (g1 - self.gamma(k)) * c * c).sum();
        Ok(2f64.powf(-4.0 * self.params.s()) * self.area * body)
    }

    /// ‖f‖_s² against 2^{2s}Γ((n+2s+4)/2)/Γ((n−2s+4)/2)∫f²(1+|x|²)^{−2s}
    /// for f orthogonal to f_0..f_{n+1}.
    pub fn poincare_check(&self, f: &ZonalFunction, tol: f64) -> Result<PoincareCheck> {
        self.check(f)?;
        self.orthogonality_error(f, 1)?;
        let norm_sq = self.sobolev_norm_sq(f)?;
        let bound = self.area * f.l2_norm_sq() / self.gamma(2);
        let gap = norm_sq - bound;
        Ok(PoincareCheck { norm_sq, bound, gap, holds: gap >= -tol * norm_sq.max(f64::MIN_POSITIVE) })
    }

    /// p-lift of (−Δ)^s f: the coefficients c_k/γ_k.
    pub fn apply_fractional_laplacian(&self, f: &ZonalFunction) -> Result<ZonalFunction> {
        self.check(f)?;
        Ok(f.map_coeffs(|k, c| c / self.gamma(k)))
    }

    /// p-lift of f(1+|x|²)^{−2s}: the q-lift times 2^{−2s}.
    pub fn apply_weight(&self, f: &ZonalFunction) -> ZonalFunction {
        f.scaled(2f64.powf(-2.0 * self.params.s()))
    }

    /// 𝓖[u^r]/(‖u‖_q^{8s/(n−2s)}𝓕[u]).
    pub fn quotient(&self, f: &ZonalFunction) -> Result<f64> {
        Ok(self.deficit_report(f)?.quotient)
    }
}

/// Margin of the main inequality from an existing report.
pub fn main_check(rep: &DeficitReport, constant: f64, tol: f64) -> MainCheck {
    let weight = rep.weight();
    let rhs = constant * weight * rep.f_value;
    let lhs = rep.g_value;
    let margin = rhs - lhs;
    let scale = (constant * weight * rep.f_scale).max(rep.g_scale).max(f64::MIN_POSITIVE);
    MainCheck { constant, lhs, rhs, margin, scale, holds: margin >= -tol * scale }
}
