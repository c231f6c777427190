//! Moser–Trudinger–Onofri and logarithmic HLS functionals on S^n.
//!
//! Everything is zonal. The log kernel log|ξ−η|² is diagonal on 𝓗_k with
//! eigenvalue A(n) at k = 0 and −Γ(n)Γ(k)/Γ(n+k) after, so double integrals
//! against it reduce to sums over the zonal coefficients of e^F.

mod endpoint;
mod onofri;

pub use endpoint::{endpoint_limit_check, endpoint_limits, EndpointLimits, EndpointTables};
pub use onofri::{euclidean_log_hls_deficit, onofri_euclidean_margin, onofri_euclidean_terms, OnofriTerms};

use crate::error::{Error, Result};
use crate::functionals::{extrapolate_to_zero, QuotientLimit};
use crate::report::Record;
use crate::special::{gamma, gamma_ratio, log_kernel_eigenvalue, MAX_DIM};
use crate::sphere::quadrature::compensated_sum;
use crate::sphere::{ZonalFunction, ZonalGrid};

pub const DEFAULT_NODES: usize = 400;
/// Largest degree scanned when maximizing the critical ratio.
pub const RATIO_SCAN_DEGREE: usize = 500;
/// Relative size of ∫F dσ below which F counts as mean-zero.
pub const MEAN_TOL: f64 = 1e-12;
/// Allowed truncation error of the log-kernel energy relative to Z².
const ENERGY_TOL: f64 = 1e-11;

/// Zonal quadrature and kernel tables for S^n.
#[derive(Debug, Clone)]
pub struct Mto {
    n: usize,
    grid: ZonalGrid,
    band: usize,
    log_eigs: Vec<f64>,
    dirichlet: Vec<f64>,
}

/// Zonal data of e^F.
#[derive(Debug, Clone)]
struct ExpData {
    z: f64,
    f_exp: f64,
    coeffs: Vec<f64>,
    tail: f64,
}

/// Terms of the improved inequality at a given constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MtoReport {
    pub n: usize,
    pub constant: f64,
    /// Σ_{k≥1} Γ(k+n)/(Γ(n)Γ(k)) ∫F_k² dσ.
    pub dirichlet_term: f64,
    pub mean: f64,
    pub exp_integral: f64,
    pub log_integral: f64,
    pub entropy: f64,
    /// ∬ e^F log|ξ−η| e^F dσdσ.
    pub log_kernel_energy: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub scale: f64,
    /// L²(dσ) mass of e^F beyond the expansion band.
    pub expansion_tail: f64,
}

impl MtoReport {
    /// Bracket multiplying C_n(∫e^F)² on the left.
    pub fn mto_deficit(&self) -> f64 {
        self.dirichlet_term / (2.0 * self.n as f64) + self.mean - self.log_integral
    }

    pub fn relative_margin(&self) -> f64 {
        self.margin / self.scale
    }

    pub fn to_record(&self) -> Record {
        Record::new()
            .with("n", self.n)
            .with("C_n", self.constant)
            .with("dirichlet_term", self.dirichlet_term)
            .with("mean", self.mean)
            .with("exp_integral", self.exp_integral)
            .with("log_integral", self.log_integral)
            .with("entropy", self.entropy)
            .with("log_kernel_energy", self.log_kernel_energy)
            .with("lhs", self.lhs)
            .with("rhs", self.rhs)
            .with("margin", self.margin)
            .with("scale", self.scale)
            .with("expansion_tail", self.expansion_tail)
    }
}

impl Mto {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_nodes(n, DEFAULT_NODES)
    }

    /// `nodes` Gauss points; e^F is expanded to degree nodes/2.
    pub fn with_nodes(n: usize, nodes: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIM}, got {n}")));
        }
        if nodes < 8 {
            return Err(Error::Domain(format!("need at least 8 nodes, got {nodes}")));
        }
        let band = nodes / 2;
        let grid = ZonalGrid::new(n, nodes, band)?;
        let log_eigs = (0..=band + 1).map(|k| log_kernel_eigenvalue(n, k)).collect::<Result<Vec<_>>>()?;
        let gn = gamma(n as f64)?;
        let mut dirichlet = vec![0.0];
        for k in 1..=band {
            dirichlet.push(gamma_ratio((k + n) as f64, k as f64)? / gn);
        }
        Ok(Self { n, grid, band, log_eigs, dirichlet })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &ZonalGrid {
        &self.grid
    }

    /// Highest degree kept in the expansion of e^F.
    pub fn band(&self) -> usize {
        self.band
    }

    /// Γ(k+n)/(Γ(n)Γ(k)), zero at k = 0.
    pub fn dirichlet_weight(&self, k: usize) -> f64 {
        self.dirichlet[k]
    }

    fn check(&self, f: &ZonalFunction) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::Domain(format!("function lives on S^{}, solver on S^{}", f.n(), self.n)));
        }
        if f.band_limit() > self.band {
            return Err(Error::Domain(format!("band limit {} exceeds {}", f.band_limit(), self.band)));
        }
        Ok(())
    }

    /// Σ_{k≥1} Γ(k+n)/(Γ(n)Γ(k)) c_k².
    pub fn dirichlet_term(&self, f: &ZonalFunction) -> Result<f64> {
        self.check(f)?;
        Ok(f.coeffs().iter().enumerate().skip(1).map(|(k, c)| self.dirichlet[k] * c * c).sum())
    }

    fn exp_data(&self, f: &ZonalFunction) -> Result<ExpData> {
        self.check(f)?;
        let vals = f.values_on(&self.grid)?;
        let e: Vec<f64> = vals.iter().map(|v| v.exp()).collect();
        if e.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("e^F overflows".into()));
        }
        let mut coeffs = self.grid.project(&e, self.band);
        let z = compensated_sum(&self.grid.weights().iter().zip(&e).map(|(w, x)| w * x).collect::<Vec<_>>());
        coeffs[0] = z;
        let f_exp = self.grid.integrate(&vals.iter().zip(&e).map(|(v, x)| v * x).collect::<Vec<_>>());
        let total = self.grid.integrate(&e.iter().map(|x| x * x).collect::<Vec<_>>());
        let kept: f64 = coeffs.iter().map(|c| c * c).sum();
        let tail = (total - kept).max(0.0);
        // |Σ_{k>K} μ_k E_k²| ≤ |μ_{K+1}| · tail
        let bound = self.log_eigs[self.band + 1].abs() * tail;
        if bound > ENERGY_TOL * z * z {
            return Err(Error::Accuracy { what: "expansion of e^F is under-resolved".into(), estimate: bound / (z * z) });
        }
        Ok(ExpData { z, f_exp, coeffs, tail })
    }

    /// Σ_{k≥1} μ_k E_k², the non-constant part of ∬ e^F log|ξ−η|² e^F.
    fn log_energy_fluctuation(&self, coeffs: &[f64]) -> f64 {
        coeffs.iter().enumerate().skip(1).map(|(k, c)| self.log_eigs[k] * c * c).sum()
    }

    /// (1/2n)Σ_{k≥1}Γ(n+k)/(Γ(n)Γ(k))∫F_k² + ∫F − log∫e^F.
    pub fn mto_deficit(&self, f: &ZonalFunction) -> Result<f64> {
        let d = self.dirichlet_term(f)?;
        let ex = self.exp_data(f)?;
        Ok(d / (2.0 * self.n as f64) + f.mean() - ex.z.ln())
    }

    /// (n/2)(ψ(n)−ψ(n/2)−log 4) + ∫G log G + n∬G log|ξ−η| G for a density G with ∫G dσ = 1.
    pub fn log_hls_deficit(&self, g: &ZonalFunction) -> Result<f64> {
        self.check(g)?;
        let c0 = g.mean();
        if (c0 - 1.0).abs() > MEAN_TOL {
            return Err(Error::Precondition(format!("density must have unit mean, got {c0}")));
        }
        let vals = g.values_on(&self.grid)?;
        if let Some(v) = vals.iter().find(|v| **v < 0.0) {
            return Err(Error::Precondition(format!("density is negative at a node: {v}")));
        }
        let glogg = self.grid.integrate(&vals.iter().map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 }).collect::<Vec<_>>());
        let nh = 0.5 * self.n as f64;
        // −(n/2)A + (n/2)A c_0² splits off so that F ≡ 1 gives 0 exactly
        Ok(nh * self.log_eigs[0] * (c0 * c0 - 1.0) + glogg + nh * self.log_energy_fluctuation(g.coeffs()))
    }

    /// All terms of the improved inequality at constant `c_n`.
    pub fn report(&self, f: &ZonalFunction, c_n: f64) -> Result<MtoReport> {
        let d = self.dirichlet_term(f)?;
        let ex = self.exp_data(f)?;
        let n = self.n as f64;
        let z = ex.z;
        let log_z = z.ln();
        let mean = f.mean();
        let entropy = ex.f_exp - z * log_z;
        let fluct = self.log_energy_fluctuation(&ex.coeffs);
        let a = self.log_eigs[0];
        let log_kernel_energy = 0.5 * (a * z * z + fluct);
        let bracket = d / (2.0 * n) + mean - log_z;
        let lhs = c_n * z * z * bracket;
        // n∬ e^F log|ξ−η| e^F − (n/2)A Z² + Z·Ent, with the A terms cancelled
        let rhs = 0.5 * n * fluct + z * entropy;
        let scale = (c_n.abs() * z * z * (d / (2.0 * n) + mean.abs() + log_z.abs()))
            .max(0.5 * n * fluct.abs() + z * entropy.abs())
            .max(f64::MIN_POSITIVE);
        Ok(MtoReport {
            n: self.n,
            constant: c_n,
            dirichlet_term: d,
            mean,
            exp_integral: z,
            log_integral: log_z,
            entropy,
            log_kernel_energy,
            lhs,
            rhs,
            margin: lhs - rhs,
            scale,
            expansion_tail: ex.tail,
        })
    }

    /// LHS − RHS of the improved inequality at constant `c_n`.
    pub fn improved_mto_margin(&self, f: &ZonalFunction, c_n: f64) -> Result<f64> {
        Ok(self.report(f, c_n)?.margin)
    }

    /// Smallest C_n for which the improved inequality holds at F.
    pub fn critical_constant(&self, f: &ZonalFunction) -> Result<f64> {
        let rep = self.report(f, 1.0)?;
        let bracket = rep.mto_deficit();
        if !(bracket > 0.0) {
            return Err(Error::Range(format!("MTO deficit is not positive ({bracket:e}); F is an equality case")));
        }
        Ok(rep.rhs / (rep.exp_integral * rep.exp_integral * bracket))
    }

    /// Critical constant along εF extrapolated to ε = 0.
    ///
    /// `direction` must be mean-zero with some mass in degree ≥ 2.
    pub fn expansion_lower_bound(&self, direction: &ZonalFunction, eps: &[f64]) -> Result<QuotientLimit> {
        self.check(direction)?;
        let norm = direction.l2_norm_sq().sqrt();
        if direction.mean().abs() > MEAN_TOL * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::Precondition("direction must have zero mean".into()));
        }
        if direction.coeffs().iter().skip(2).all(|c| *c == 0.0) {
            return Err(Error::Precondition("direction has no component of degree two or more".into()));
        }
        if eps.len() < 2 {
            return Err(Error::InsufficientData("need at least two ε values".into()));
        }
        let mut e_sorted = eps.to_vec();
        e_sorted.sort_by(|a, b| b.total_cmp(a));
        if let Some(e) = e_sorted.iter().find(|e| !(**e > 0.0)) {
            return Err(Error::Range(format!("ε must be positive, got {e}")));
        }
        let values = e_sorted.iter().map(|&e| self.critical_constant(&direction.scaled(e))).collect::<Result<Vec<_>>>()?;
        let limit = extrapolate_to_zero(&e_sorted, &values)?;
        Ok(QuotientLimit { eps: e_sorted, values, limit })
    }
}

/// Γ(n+k)/(Γ(n+1)Γ(k)).
pub fn harmonic_growth(n: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    Ok(gamma_ratio((n + k) as f64, k as f64)? / gamma((n + 1) as f64)?)
}

/// Critical constant for a pure 𝓗_k direction, (1 − 1/G_k)/(G_k − 1) = 1/G_k.
pub fn critical_ratio(n: usize, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain("critical ratio needs k ≥ 2".into()));
    }
    let g = harmonic_growth(n, k)?;
    Ok((1.0 - 1.0 / g) / (g - 1.0))
}

/// sup_{k≥2} of the critical ratio, scanned over 2..=RATIO_SCAN_DEGREE.
pub fn mto_constant_lower_bound(n: usize) -> Result<f64> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::Domain(format!("dimension must lie in 2..={MAX_DIM}, got {n}")));
    }
    (2..=RATIO_SCAN_DEGREE).map(|k| critical_ratio(n, k)).try_fold(f64::NEG_INFINITY, |m, r| Ok(m.max(r?)))
}

/// mto_deficit with the default quadrature.
pub fn mto_deficit(f: &ZonalFunction) -> Result<f64> {
    Mto::new(f.n())?.mto_deficit(f)
}

/// log_hls_deficit with the default quadrature.
pub fn log_hls_deficit(g: &ZonalFunction) -> Result<f64> {
    Mto::new(g.n())?.log_hls_deficit(g)
}

/// improved_mto_margin with the default quadrature.
pub fn improved_mto_margin(f: &ZonalFunction, c_n: f64) -> Result<f64> {
    Mto::new(f.n())?.improved_mto_margin(f, c_n)
}
