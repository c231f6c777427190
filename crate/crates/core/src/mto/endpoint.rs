//! Endpoint differentiation s → n/2.
//!
//! With t = (n−2s)/(2n), the function u whose q-lift is 1 + tF turns the
//! Sobolev-side quantity S‖u‖_q^{8s/(n−2s)}𝓕[u] and the HLS-side 𝓖[u^r]
//! into MTO and log-HLS expressions in the limit t → 0.

use super::Mto;
use crate::error::{Error, Result};
use crate::functionals::Functionals;
use crate::report::Table;
use crate::special::{gamma, sphere_area, Params};
use crate::sphere::ZonalFunction;

pub const COLUMNS: [&str; 5] = ["t", "s", "lhs", "limit", "abs_error"];

/// Convergence tables for the two endpoint limits.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointTables {
    /// S‖u‖_q^{8s/(n−2s)}𝓕[u] against its limit.
    pub sobolev: Table,
    /// 𝓖[u^r] against its limit.
    pub hls: Table,
}

impl EndpointTables {
    /// Ratios of successive abs_error entries, per table.
    pub fn error_ratios(&self) -> (Vec<f64>, Vec<f64>) {
        let ratios = |t: &Table| {
            let e = t.column("abs_error").expect("column exists");
            e.windows(2).map(|w| w[0] / w[1]).collect()
        };
        (ratios(&self.sobolev), ratios(&self.hls))
    }
}

/// Limits of the two endpoint quantities as t → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointLimits {
    pub sobolev: f64,
    pub hls: f64,
}

/// Closed-form limits for mean-zero F, with Z = ∫e^F dσ and D the Dirichlet term:
/// |S^n|/Γ(n)·Z²(D/n² − (2/n) log Z) and
/// |S^n|/Γ(n)·((2/n)Z·Ent(e^F) + ∬e^F log|ξ−η|² e^F − A(n)Z²).
pub fn endpoint_limits(mto: &Mto, f: &ZonalFunction) -> Result<EndpointLimits> {
    let rep = mto.report(f, 1.0)?;
    let n = mto.n() as f64;
    let pref = sphere_area(mto.n()) / gamma(n)?;
    let z = rep.exp_integral;
    let sobolev = pref * z * z * (rep.dirichlet_term / n - 2.0 * rep.log_integral) / n;
    // report.rhs = (n/2)Σ_{k≥1}μ_kE_k² + Z·Ent, so this is the fluctuation sum plus (2/n)Z·Ent
    let hls = pref * 2.0 * rep.rhs / n;
    Ok(EndpointLimits { sobolev, hls })
}

/// Finite-t quantities next to their limits, one row per t.
pub fn endpoint_limit_check(f: &ZonalFunction, ts: &[f64]) -> Result<EndpointTables> {
    let n = f.n();
    let norm = f.l2_norm_sq().sqrt();
    if f.mean().abs() > super::MEAN_TOL * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::Precondition(format!("F must have zero mean, got {:e}", f.mean())));
    }
    if ts.is_empty() {
        return Err(Error::InsufficientData("need at least one t".into()));
    }
    let mto = Mto::new(n)?;
    let lim = endpoint_limits(&mto, f)?;
    let mut sobolev = Table::new(&COLUMNS);
    let mut hls = Table::new(&COLUMNS);
    for &t in ts {
        if !(t > 0.0 && t < 0.5) {
            return Err(Error::Range(format!("t must lie in (0, 1/2), got {t}")));
        }
        let s = n as f64 * (1.0 - 2.0 * t) / 2.0;
        let p = Params::new(n, s)?;
        let fx = Functionals::with_sizes(p, f.band_limit().max(1), crate::functionals::DEFAULT_NODES)?;
        let mut c = f.coeffs().iter().map(|v| t * v).collect::<Vec<_>>();
        c[0] = 1.0;
        let lifted = ZonalFunction::new(n, Some(s), c)?;
        let rep = fx.deficit_report(&lifted)?;
        let x = fx.sobolev() * rep.weight() * rep.f_value;
        let v = rep.g_value;
        sobolev.push(vec![t, s, x, lim.sobolev, (x - lim.sobolev).abs()]);
        hls.push(vec![t, s, v, lim.hls, (v - lim.hls).abs()]);
    }
    Ok(EndpointTables { sobolev, hls })
}
