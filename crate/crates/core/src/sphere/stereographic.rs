//! Stereographic projection 𝒮: R^n → S^n ∖ {north pole}.
//!
//! 𝒮(x) = (2x/(1+|x|²), (|x|²−1)/(1+|x|²)). Radial functions become zonal
//! ones in the last coordinate t = ω_{n+1}, with 1 − t = 2/(1+|x|²).

use crate::error::{Error, Result};

pub fn stereographic(x: &[f64]) -> Vec<f64> {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let d = 1.0 + r2;
    let mut w: Vec<f64> = x.iter().map(|v| 2.0 * v / d).collect();
    w.push((r2 - 1.0) / d);
    w
}

pub fn stereographic_inv(w: &[f64]) -> Result<Vec<f64>> {
    let (last, head) = w.split_last().ok_or_else(|| Error::Domain("empty point".into()))?;
    let den = 1.0 - last;
    if den <= 0.0 {
        return Err(Error::Singularity("inverse stereographic projection at the north pole".into()));
    }
    Ok(head.iter().map(|v| v / den).collect())
}

/// J_𝒮(x) = (2/(1+|x|²))^n.
pub fn jacobian_s(x: &[f64]) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (2.0 / (1.0 + r2)).powi(x.len() as i32)
}

/// J_{𝒮⁻¹}(ω) = (1−ω_{n+1})^{−n}, n = dim(ω) − 1.
pub fn jacobian_sinv(w: &[f64]) -> Result<f64> {
    let last = *w.last().ok_or_else(|| Error::Domain("empty point".into()))?;
    let den = 1.0 - last;
    if den <= 0.0 {
        return Err(Error::Singularity("Jacobian of the inverse projection at the north pole".into()));
    }
    Ok(den.powi(-(w.len() as i32 - 1)))
}

/// |ξ − η|².
pub fn chordal_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// Last coordinate of 𝒮(x) for |x| = ρ.
pub fn zonal_coordinate(rho: f64) -> f64 {
    let r2 = rho * rho;
    (r2 - 1.0) / (r2 + 1.0)
}

/// |x| of the preimage of a point with last coordinate t, t < 1.
pub fn radius_of(t: f64) -> f64 {
    ((1.0 + t) / (1.0 - t)).sqrt()
}
