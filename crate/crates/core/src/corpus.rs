//! Seeded random zonal functions for the corpus checks.
//!
//! All draws come from ChaCha8 seeded with a `u64`, so a seed fixes the
//! corpus on every platform.

use crate::error::{Error, Result};
use crate::special::{Params, MAX_DIM};
use crate::sphere::ZonalFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Floor of a positive lift relative to its constant term.
const POSITIVITY_FLOOR: f64 = 0.2;
const PROBES: usize = 512;

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::Domain("corpus size must be at least 1".into()));
    }
    Ok(())
}

/// Minimum of Σ_{k≥1} c_k Ĉ_k over a Chebyshev–Lobatto probe set including t = ±1.
fn perturbation_min(f: &ZonalFunction) -> f64 {
    (0..=PROBES)
        .map(|j| {
            let t = (std::f64::consts::PI * j as f64 / PROBES as f64).cos();
            f.eval(t) - f.coeff(0)
        })
        .fold(f64::INFINITY, f64::min)
}

/// q-lifts of positive functions u = u_* + perturbation.
///
/// c_0 = 2^{−(n−2s)/2}e^{ξ} with ξ ∈ [−1, 1]; c_k = σ c_0 ξ_k/(1+k) for
/// 1 ≤ k ≤ band with σ ∈ [0.05, 0.6]. The perturbation is shrunk if needed so
/// that F ≥ 0.2 c_0 on S^n.
pub fn sobolev_corpus(p: &Params, size: usize, band: usize, seed: u64) -> Result<Vec<ZonalFunction>> {
    check_size(size)?;
    if band == 0 {
        return Err(Error::Domain("band limit must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let c0 = 2f64.powf(-p.a()) * rng.gen_range(-1.0f64..=1.0).exp();
            let sigma = rng.gen_range(0.05..=0.6);
            let mut c = vec![c0];
            c.extend((1..=band).map(|k| sigma * c0 * rng.gen_range(-1.0..=1.0) / (1.0 + k as f64)));
            let f = ZonalFunction::new(p.n(), Some(p.s()), c)?;
            let low = perturbation_min(&f);
            let limit = -(1.0 - POSITIVITY_FLOOR) * c0;
            if low < limit {
                let shrink = limit / low;
                Ok(f.map_coeffs(|k, v| if k == 0 { v } else { v * shrink }))
            } else {
                Ok(f)
            }
        })
        .collect()
}

/// Bounded zonal F for the Onofri-type checks: c_0 ∈ [−1, 1],
/// c_k = σ ξ_k/(1+k) with σ ∈ (0, 1] and ξ_k ∈ [−1, 1].
pub fn mto_corpus(n: usize, size: usize, band: usize, seed: u64) -> Result<Vec<ZonalFunction>> {
    check_size(size)?;
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::Domain(format!("dimension must lie in 1..={MAX_DIM}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let sigma: f64 = 1.0 - rng.gen_range(0.0..1.0);
            let mut c = vec![rng.gen_range(-1.0..=1.0)];
            c.extend((1..=band).map(|k| sigma * rng.gen_range(-1.0..=1.0) / (1.0 + k as f64)));
            ZonalFunction::new(n, None, c)
        })
        .collect()
}
