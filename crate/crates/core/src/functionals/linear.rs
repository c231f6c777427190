//! The extremal u_*, the linearization around it and the limit of the
//! deficit quotient along a fixed direction.

use super::Functionals;
use crate::error::{Error, Result};
use crate::special::{extremal_mass, sphere_area, Params};
use crate::sphere::{lift, radius_of, zonal_coordinate, LiftMode, ZonalFunction, ZonalGrid};

/// u_*(x) = (1+|x|²)^{−(n−2s)/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AubinTalenti {
    params: Params,
}

pub fn aubin_talenti(p: &Params) -> AubinTalenti {
    AubinTalenti { params: *p }
}

impl AubinTalenti {
    pub fn eval(&self, rho: f64) -> f64 {
        (1.0 + rho * rho).powf(-self.params.a())
    }

    /// ∫u_*^q dx = π^{n/2}Γ(n/2)/Γ(n).
    pub fn mass(&self) -> f64 {
        extremal_mass(self.params.n())
    }

    /// q-lift by quadrature; equals 2^{−(n−2s)/2} up to rounding.
    pub fn lift(&self, grid: &ZonalGrid, band: usize) -> Result<ZonalFunction> {
        lift(|r| self.eval(r), &self.params, LiftMode::Q, grid, band)
    }

    /// Exact q-lift: the constant 2^{−(n−2s)/2}.
    pub fn lift_exact(&self, band: usize) -> ZonalFunction {
        let mut c = vec![0.0; band + 1];
        c[0] = 2f64.powf(-self.params.a());
        ZonalFunction::new(self.params.n(), Some(self.params.s()), c).expect("valid dimension")
    }

    /// Exact q-lift of f_{n+1} = u_*·(|x|²−1)/(1+|x|²), which is 2^{−(n−2s)/2}ω_{n+1}.
    pub fn lift_last_coordinate(&self, band: usize) -> ZonalFunction {
        let mut c = vec![0.0; band.max(1) + 1];
        c[1] = 2f64.powf(-self.params.a()) / (self.params.nf() + 1.0).sqrt();
        ZonalFunction::new(self.params.n(), Some(self.params.s()), c).expect("valid dimension")
    }
}

/// q-lift of x ↦ t^{(n−2s)/2}u(tx), sampled on `grid` and projected to `band`.
pub fn dilate(p: &Params, grid: &ZonalGrid, f: &ZonalFunction, t: f64, band: usize) -> Result<ZonalFunction> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("dilation factor must be positive, got {t}")));
    }
    let a = p.a();
    let vals: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&tau| {
            let rho = radius_of(tau);
            let rho2 = rho * rho;
            f.eval(zonal_coordinate(t * rho)) * (t * (1.0 + rho2) / (1.0 + t * t * rho2)).powf(a)
        })
        .collect();
    let coeffs = grid.project(&vals, band);
    let total = grid.integrate(&vals.iter().map(|v| v * v).collect::<Vec<_>>());
    let kept: f64 = coeffs.iter().map(|c| c * c).sum();
    Ok(ZonalFunction::new(p.n(), Some(p.s()), coeffs)?.with_tail((total - kept).max(0.0)))
}

/// Value at ε = 0 of the interpolating polynomial through (ε_i, y_i) (Neville).
pub fn extrapolate_to_zero(eps: &[f64], values: &[f64]) -> Result<f64> {
    if eps.len() != values.len() || eps.is_empty() {
        return Err(Error::InsufficientData("need matching, nonempty ε and value lists".into()));
    }
    let mut p = values.to_vec();
    let m = eps.len();
    for level in 1..m {
        for i in 0..m - level {
            let (ei, ej) = (eps[i], eps[i + level]);
            if ei == ej {
                return Err(Error::Domain("repeated ε".into()));
            }
            p[i] = (ej * p[i] - ei * p[i + 1]) / (ej - ei);
        }
    }
    Ok(p[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientLimit {
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub limit: f64,
}

/// Quotient 𝓖[u_ε^r]/(‖u_ε‖_q^{8s/(n−2s)}𝓕[u_ε]) for u_ε = u_* + εf, extrapolated to ε = 0.
///
/// `direction` is the q-lift of f. The sequence must be monotone in ε;
/// otherwise the ε are too large for the expansion and a range error is returned.
pub fn quotient_lower_bound(fx: &Functionals, direction: &ZonalFunction, eps: &[f64]) -> Result<QuotientLimit> {
    let p = fx.params();
    let norm = direction.l2_norm_sq().sqrt();
    if norm == 0.0 {
        return Err(Error::Precondition("zero perturbation direction".into()));
    }
    if direction.coeff(0).abs() > super::ORTHO_TOL * norm {
        return Err(Error::Precondition("direction is not orthogonal to u_*".into()));
    }
    if eps.len() < 2 {
        return Err(Error::InsufficientData("need at least two ε values".into()));
    }
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&i, &j| eps[j].total_cmp(&eps[i]));
    let base = aubin_talenti(p).lift_exact(direction.band_limit());
    let mut e_sorted = Vec::with_capacity(eps.len());
    let mut values = Vec::with_capacity(eps.len());
    for &i in &order {
        let e = eps[i];
        if !(e > 0.0) {
            return Err(Error::Range(format!("ε must be positive, got {e}")));
        }
        let u = base.combine(1.0, direction, e)?;
        let q = match fx.quotient(&u) {
            Ok(q) => q,
            Err(Error::Positivity(msg)) => return Err(Error::Range(format!("ε = {e} leaves the positive cone: {msg}"))),
            Err(other) => return Err(other),
        };
        if !q.is_finite() {
            return Err(Error::Range(format!("quotient undefined at ε = {e}")));
        }
        e_sorted.push(e);
        values.push(q);
    }
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if !(diffs.iter().all(|d| *d > 0.0) || diffs.iter().all(|d| *d < 0.0)) {
        return Err(Error::Range(format!("quotient is not monotone in ε: {values:?}")));
    }
    let limit = extrapolate_to_zero(&e_sorted, &values)?;
    Ok(QuotientLimit { eps: e_sorted, values, limit })
}

// Points and weights on S^n exact for polynomials of degree ≤ 5:
// ω = (√(1−t²)θ, t) with Gauss–Gegenbauer in t and recursion in θ.
fn sphere_product_rule(n: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    if n == 1 {
        let m = 6;
        return Ok((0..m)
            .map(|j| {
                let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
                (vec![th.cos(), th.sin()], 1.0 / m as f64)
            })
            .collect());
    }
    let lower = sphere_product_rule(n - 1)?;
    let alpha = 0.5 * (n as f64 - 2.0);
    let rule = crate::sphere::gauss_jacobi(3, alpha, alpha)?;
    let mut out = Vec::with_capacity(lower.len() * 3);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rad = (1.0 - t * t).sqrt();
        for (theta, v) in &lower {
            let mut pt: Vec<f64> = theta.iter().map(|x| rad * x).collect();
            pt.push(t);
            out.push((pt, w * v));
        }
    }
    Ok(out)
}

/// Gram matrix ∫f_i f_j (1+|x|²)^{−2s} dx for i, j ∈ {0..n+1}.
///
/// Uses the lifts 2^{−(n−2s)/2}·{1, ω_1, …, ω_{n+1}} and a product rule on S^n.
pub fn orthogonality_gram(p: &Params) -> Result<Vec<Vec<f64>>> {
    let n = p.n();
    let pts = sphere_product_rule(n)?;
    let c = 2f64.powf(-p.a());
    let lift_of = |i: usize, w: &[f64]| if i == 0 { c } else { c * w[i - 1] };
    let pref = 2f64.powf(-2.0 * p.s()) * sphere_area(n);
    Ok((0..n + 2)
        .map(|i| {
            (0..n + 2)
                .map(|j| pref * pts.iter().map(|(w, wt)| wt * lift_of(i, w) * lift_of(j, w)).sum::<f64>())
                .collect()
        })
        .collect())
}
