//! Gauss–Jacobi and tanh–sinh rules on [−1, 1].
//!
//! Gauss rules come from the Jacobi matrix (Golub–Welsch), with every node
//! polished by Newton on the orthonormal three-term recurrence and weights
//! recomputed by the Christoffel formula, so small endpoint weights keep
//! full relative accuracy.

use crate::error::{Error, Result};
use crate::special::gamma_ratio;

/// Three-term recurrence of the orthonormal Jacobi polynomials for the
/// probability measure ∝ (1−t)^α (1+t)^β dt.
#[derive(Debug, Clone)]
pub struct JacobiRecurrence {
    alpha: f64,
    beta: f64,
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl JacobiRecurrence {
    /// Coefficients up to degree `kmax`; requires α, β > −1.
    pub fn new(alpha: f64, beta: f64, kmax: usize) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::Domain(format!("Jacobi exponents must exceed -1, got ({alpha}, {beta})")));
        }
        let mut rec = Self { alpha, beta, diag: Vec::new(), off: Vec::new() };
        rec.extend(kmax);
        Ok(rec)
    }

    /// Symmetric case α = β = (n−2)/2, the zonal weight of S^n.
    pub fn sphere(n: usize, kmax: usize) -> Self {
        let a = 0.5 * (n as f64 - 2.0);
        Self::new(a, a, kmax).expect("sphere exponent is above -1")
    }

    fn extend(&mut self, kmax: usize) {
        let (a, b) = (self.alpha, self.beta);
        let ab = a + b;
        for k in self.diag.len()..=kmax {
            let kf = k as f64;
            let d = if k == 0 {
                (b - a) / (ab + 2.0)
            } else if a == b {
                0.0
            } else {
                (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
            };
            self.diag.push(d);
            // off[k] couples degree k and k+1
            let j = kf + 1.0;
            let sq = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                let t = 2.0 * j + ab;
                4.0 * j * (j + a) * (j + b) * (j + ab) / (t * t * (t + 1.0) * (t - 1.0))
            };
            self.off.push(sq.sqrt());
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_degree(&self) -> usize {
        self.diag.len() - 1
    }

    /// Values p_0(t) … p_K(t) into `out` (length K+1 ≤ max_degree+1).
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = (t - self.diag[0]) / self.off[0];
        for k in 1..out.len() - 1 {
            out[k + 1] = ((t - self.diag[k]) * out[k] - self.off[k - 1] * out[k - 1]) / self.off[k];
        }
    }

    /// Values and first derivatives of p_0 … p_K at t.
    pub fn eval_with_derivatives_into(&self, t: f64, vals: &mut [f64], ders: &mut [f64]) {
        assert_eq!(vals.len(), ders.len(), "value and derivative buffers differ in length");
        if vals.is_empty() {
            return;
        }
        vals[0] = 1.0;
        ders[0] = 0.0;
        if vals.len() == 1 {
            return;
        }
        vals[1] = (t - self.diag[0]) / self.off[0];
        ders[1] = 1.0 / self.off[0];
        for k in 1..vals.len() - 1 {
            vals[k + 1] = ((t - self.diag[k]) * vals[k] - self.off[k - 1] * vals[k - 1]) / self.off[k];
            ders[k + 1] = ((t - self.diag[k]) * ders[k] + vals[k] - self.off[k - 1] * ders[k - 1]) / self.off[k];
        }
    }

    pub fn eval_all(&self, t: f64, kmax: usize) -> Vec<f64> {
        let mut out = vec![0.0; kmax + 1];
        self.eval_into(t, &mut out);
        out
    }

    // (p_q(t), p_q'(t)) and Σ_{k<q} p_k(t)²
    fn eval_with_derivative(&self, t: f64, q: usize) -> (f64, f64, f64) {
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        let mut christoffel = 0.0;
        for k in 0..q {
            christoffel += p * p;
            let off_prev = if k == 0 { 0.0 } else { self.off[k - 1] };
            let p_next = ((t - self.diag[k]) * p - off_prev * p_prev) / self.off[k];
            let d_next = ((t - self.diag[k]) * d + p - off_prev * d_prev) / self.off[k];
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d, christoffel)
    }
}

/// A quadrature rule on [−1, 1] for a probability measure; Σ w_i = 1.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    pub fn dot(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }
}

/// Q-point Gauss rule for ∝ (1−t)^α (1+t)^β dt, exact to degree 2Q−1.
pub fn gauss_jacobi(q: usize, alpha: f64, beta: f64) -> Result<Quadrature> {
    if q == 0 {
        return Err(Error::Domain("quadrature needs at least one node".into()));
    }
    let rec = JacobiRecurrence::new(alpha, beta, q)?;
    let mut diag = rec.diag[..q].to_vec();
    let mut off = rec.off[..q].to_vec();
    off[q - 1] = 0.0;
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut weights = Vec::with_capacity(q);
    for t in diag.iter_mut() {
        let mut c = 0.0;
        for _ in 0..4 {
            let (p, dp, chr) = rec.eval_with_derivative(*t, q);
            c = chr;
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            let next = (*t - step).clamp(-1.0, 1.0);
            let done = step.abs() <= 4.0 * f64::EPSILON * t.abs().max(1e-300);
            *t = next;
            if done {
                break;
            }
        }
        let (_, _, chr) = rec.eval_with_derivative(*t, q);
        weights.push(1.0 / if chr.is_finite() { chr } else { c });
    }
    let total = compensated_sum(&weights);
    for w in weights.iter_mut() {
        *w /= total;
    }
    Ok(Quadrature { nodes: diag, weights })
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

// Implicit QL with Wilkinson shifts; `off[i]` couples rows i and i+1.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Accuracy { what: "tridiagonal QL did not converge".into(), estimate: e[l].abs() });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// ∫_{−1}^{1} (1−t)^α (1+t)^β dt.
pub fn jacobi_mass(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::Domain(format!("Jacobi exponents must exceed -1, got ({alpha}, {beta})")));
    }
    Ok(2f64.powf(alpha + beta + 1.0) * crate::special::gamma(alpha + 1.0)? * gamma_ratio(beta + 1.0, alpha + beta + 2.0)?)
}

/// Double-exponential rule on [−1, 1] that tolerates endpoint singularities.
///
/// The integrand receives (t, 1−t, 1+t) with the complements computed
/// without cancellation.
pub fn tanh_sinh(f: impl Fn(f64, f64, f64) -> f64, tol: f64, max_level: u32) -> Result<f64> {
    let mut prev = tanh_sinh_at_level(&f, 3);
    for level in 4..=max_level {
        let cur = tanh_sinh_at_level(&f, level);
        let diff = (cur - prev).abs();
        if diff <= tol * cur.abs().max(1e-300) || diff < 1e-300 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy { what: "tanh-sinh quadrature did not settle".into(), estimate: prev.abs() })
}

/// One tanh–sinh sum with step 2^{−level}.
pub fn tanh_sinh_at_level(f: impl Fn(f64, f64, f64) -> f64, level: u32) -> f64 {
    let h = 2f64.powi(-(level as i32));
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    let jmax = (6.6 / h) as i64;
    for j in -jmax..=jmax {
        let x = j as f64 * h;
        let u = half_pi * x.sinh();
        let (omt, opt) = if u >= 0.0 {
            let e = (-2.0 * u).exp();
            (2.0 * e / (1.0 + e), 2.0 / (1.0 + e))
        } else {
            let e = (2.0 * u).exp();
            (2.0 / (1.0 + e), 2.0 * e / (1.0 + e))
        };
        if omt == 0.0 || opt == 0.0 {
            continue;
        }
        let t = if u >= 0.0 { 1.0 - omt } else { opt - 1.0 };
        // dt = (π/2) cosh(x) sech²(u) dx and sech²(u) = (1−t)(1+t)
        let w = h * half_pi * x.cosh() * omt * opt;
        let v = f(t, omt, opt);
        if v.is_finite() {
            sum += w * v;
        }
    }
    sum
}
