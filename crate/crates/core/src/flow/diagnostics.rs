//! Post-processing of flow histories: derivatives, the comparison lemma,
//! the bound −𝓖′ ≤ κ₀J and the extinction exponent.

use super::{FlowState, GridField, HistoryRecord};
use crate::error::{Error, Result};
use crate::report::{Record, Table};
use crate::special::sobolev_constant;

pub const TRAJECTORY_COLUMNS: [&str; 6] = ["t", "J", "F_u", "G_v", "minus_dGdt", "residual"];

/// Safety factor on the estimated differencing error.
const FD_SAFETY: f64 = 4.0;

/// Derivative at `at` of the parabola through three points.
fn parabola_derivative(t: [f64; 3], y: [f64; 3], at: f64) -> f64 {
    let [t0, t1, t2] = t;
    y[0] * ((at - t1) + (at - t2)) / ((t0 - t1) * (t0 - t2))
        + y[1] * ((at - t0) + (at - t2)) / ((t1 - t0) * (t1 - t2))
        + y[2] * ((at - t0) + (at - t1)) / ((t2 - t0) * (t2 - t1))
}

/// Second derivative of the parabola through three points.
fn parabola_second(t: [f64; 3], y: [f64; 3]) -> f64 {
    let [t0, t1, t2] = t;
    2.0 * (y[0] / ((t0 - t1) * (t0 - t2)) + y[1] / ((t1 - t0) * (t1 - t2)) + y[2] / ((t2 - t0) * (t2 - t1)))
}

/// Second-order finite-difference derivative of samples y(t): centred inside,
/// one-sided at the ends.
pub fn finite_difference(t: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let n = t.len();
    if n < 3 || y.len() != n {
        return Err(Error::InsufficientData(format!("need at least 3 samples, got {n}")));
    }
    Ok((0..n)
        .map(|i| {
            let c = i.clamp(1, n - 2);
            parabola_derivative([t[c - 1], t[c], t[c + 1]], [y[c - 1], y[c], y[c + 1]], t[i])
        })
        .collect())
}

fn column(history: &[HistoryRecord], f: impl Fn(&HistoryRecord) -> f64) -> Vec<f64> {
    history.iter().map(f).collect()
}

/// −d𝓖/dt by finite differences of the recorded 𝓖.
fn minus_dg_dt(history: &[HistoryRecord]) -> Result<Vec<f64>> {
    let t = column(history, |h| h.t);
    let g = column(history, |h| h.g_v);
    Ok(finite_difference(&t, &g)?.into_iter().map(|d| -d).collect())
}

/// Diagnostics at the latest sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowDiagnostics {
    pub t: f64,
    pub j: f64,
    pub j_prime: f64,
    pub f_u: f64,
    pub g_v: f64,
    /// 𝓖′ from −𝓖′ = 2J^{2s/n}𝓕[u].
    pub g_prime: f64,
    /// 𝓖′ by finite differences of the history.
    pub g_prime_fd: f64,
    /// κ₀ = −𝓖′(0)/J₀.
    pub kappa0: f64,
    pub lambda: f64,
    pub k: f64,
    pub clipped_mass: f64,
}

impl FlowDiagnostics {
    pub fn to_record(&self) -> Record {
        Record::new()
            .with("t", self.t)
            .with("J", self.j)
            .with("J_prime", self.j_prime)
            .with("F_u", self.f_u)
            .with("G_v", self.g_v)
            .with("G_prime", self.g_prime)
            .with("G_prime_fd", self.g_prime_fd)
            .with("kappa0", self.kappa0)
            .with("Lambda", self.lambda)
            .with("K", self.k)
            .with("clipped_mass", self.clipped_mass)
    }
}

/// J, J′, 𝓕, 𝓖, 𝓖′, κ₀, Λ and 𝖪 at the latest sample of a run.
pub fn flow_diagnostics(state: &FlowState) -> Result<FlowDiagnostics> {
    let h = state.history();
    if h.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "finite-difference 𝓖′ needs at least 3 samples, history has {}",
            h.len()
        )));
    }
    let last = h[h.len() - 1];
    let g_prime_fd = -*minus_dg_dt(h)?.last().expect("nonempty");
    Ok(FlowDiagnostics {
        t: last.t,
        j: last.j,
        j_prime: last.j_prime,
        f_u: last.f_u,
        g_v: last.g_v,
        g_prime: last.g_prime,
        g_prime_fd,
        kappa0: h[0].kappa_estimate,
        lambda: last.lambda,
        k: last.k,
        clipped_mass: last.clipped_mass,
    })
}

/// Trajectory with columns t, J, F_u, G_v, minus_dGdt, residual, where
/// minus_dGdt is −d𝓖/dt by finite differences and residual is
/// minus_dGdt − 2J^{2s/n}𝓕[u].
pub fn trajectory_table(state: &FlowState) -> Result<Table> {
    let h = state.history();
    let p = state.params();
    let mdg = minus_dg_dt(h)?;
    let mut table = Table::new(&TRAJECTORY_COLUMNS);
    for (rec, d) in h.iter().zip(mdg) {
        let analytic = 2.0 * rec.j.powf(2.0 * p.s() / p.nf()) * rec.f_u;
        table.push(vec![rec.t, rec.j, rec.f_u, rec.g_v, d, d - analytic]);
    }
    Ok(table)
}

/// |−d𝓖/dt − 2J^{2s/n}𝓕[u]| / (2J^{2s/n}𝓕[u]) at sample `index`.
pub fn identity_residual(state: &FlowState, index: usize) -> Result<f64> {
    let table = trajectory_table(state)?;
    let row = table
        .rows()
        .get(index)
        .ok_or_else(|| Error::InsufficientData(format!("no sample {index} in a history of {}", table.rows().len())))?;
    let analytic = row[4] - row[5];
    Ok((row[5] / analytic).abs())
}

/// Outcome of the comparison lemma 𝓖″/𝓖′ ≤ J′/J, checked as
/// 𝓖″ − (J′/J)𝓖′ ≥ −tol, which is the same statement while 𝓖′ < 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCheck {
    pub times: Vec<f64>,
    /// 𝓖″/𝓖′.
    pub lhs: Vec<f64>,
    /// J′/J.
    pub rhs: Vec<f64>,
    /// 𝓖″ − (J′/J)𝓖′.
    pub margins: Vec<f64>,
    /// Differencing error bound for each margin.
    pub tolerances: Vec<f64>,
    /// No margin below −tolerance.
    pub holds: bool,
    /// Differencing noise comparable to the terms at some time.
    pub inconclusive: bool,
}

impl ComparisonCheck {
    pub fn to_record(&self) -> Record {
        let worst = self
            .margins
            .iter()
            .zip(&self.tolerances)
            .map(|(m, t)| m + t)
            .fold(f64::INFINITY, f64::min);
        Record::new()
            .with("samples", self.times.len())
            .with("holds", self.holds)
            .with("inconclusive", self.inconclusive)
            .with("worst_margin_plus_tolerance", worst)
    }
}

/// Check the comparison lemma at the interior samples of a run.
///
/// 𝓖′ and 𝓖″ are centred differences of the recorded 𝓖; J′/J is analytic.
/// The tolerance is the gap between the stencils of spacing Δ and 2Δ, which
/// estimates the truncation error, plus a rounding floor.
pub fn verify_comparison_lemma(state: &FlowState) -> Result<ComparisonCheck> {
    let p = state.params();
    if p.s() >= 1.0 {
        return Err(Error::Domain(format!("the comparison lemma assumes 0 < s < 1, got {}", p.s())));
    }
    let h = state.history();
    if h.len() < 5 {
        return Err(Error::InsufficientData(format!("need at least 5 samples, history has {}", h.len())));
    }
    let t = column(h, |r| r.t);
    let g = column(h, |r| r.g_v);
    let sob = sobolev_constant(p);
    let mut out = ComparisonCheck {
        times: vec![],
        lhs: vec![],
        rhs: vec![],
        margins: vec![],
        tolerances: vec![],
        holds: true,
        inconclusive: false,
    };
    for i in 2..h.len() - 2 {
        let near = [t[i - 1], t[i], t[i + 1]];
        let wide = [t[i - 2], t[i], t[i + 2]];
        let gn = [g[i - 1], g[i], g[i + 1]];
        let gw = [g[i - 2], g[i], g[i + 2]];
        let d1 = parabola_derivative(near, gn, t[i]);
        let d2 = parabola_second(near, gn);
        let e1 = (d1 - parabola_derivative(wide, gw, t[i])).abs() / 3.0;
        let e2 = (d2 - parabola_second(wide, gw)).abs() / 3.0;
        let ratio = h[i].j_prime / h[i].j;
        let step = (t[i + 1] - t[i]).min(t[i] - t[i - 1]);
        // 𝓖 is a difference of terms of size S‖v‖_p² and ∫v(−Δ)^{−s}v
        let size = sob * h[i].j.powf(2.0 / p.p()) + h[i].hls_energy.abs();
        let floor = 16.0 * f64::EPSILON * size * (1.0 / (step * step) + ratio.abs() / step);
        let tol = FD_SAFETY * (e2 + ratio.abs() * e1) + floor;
        let margin = d2 - ratio * d1;
        out.holds &= margin >= -tol;
        out.inconclusive |= tol >= 0.5 * (ratio * d1).abs();
        out.times.push(t[i]);
        out.lhs.push(d2 / d1);
        out.rhs.push(ratio);
        out.margins.push(margin);
        out.tolerances.push(tol);
    }
    Ok(out)
}

/// −𝓖′ ≤ κ₀J along a run, with 𝓖′ analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct YBoundCheck {
    pub kappa0: f64,
    /// max over samples of −𝓖′/(κ₀J).
    pub max_ratio: f64,
    pub holds: bool,
}

pub fn verify_y_bound(state: &FlowState, rel_tol: f64) -> Result<YBoundCheck> {
    let h = state.history();
    let first = h.first().ok_or_else(|| Error::InsufficientData("empty history".into()))?;
    let kappa0 = first.kappa_estimate;
    let scale = kappa0.abs().max(f64::MIN_POSITIVE);
    let max_ratio = h.iter().map(|r| -r.g_prime / (scale * r.j)).fold(f64::NEG_INFINITY, f64::max);
    let holds = h.iter().all(|r| -r.g_prime <= kappa0 * r.j + rel_tol * scale * r.j);
    Ok(YBoundCheck { kappa0, max_ratio, holds })
}

/// Monotonicity of J and −𝓖 along the history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monotonicity {
    /// Largest increase of J between consecutive samples, relative to J.
    pub worst_j_increase: f64,
    /// Largest increase of 𝓖 between consecutive samples, relative to S‖v‖_p².
    pub worst_g_increase: f64,
    pub holds: bool,
}

/// J nonincreasing and −𝓖 nondecreasing, up to `rel_tol`.
pub fn monotonicity(state: &FlowState, rel_tol: f64) -> Monotonicity {
    let p = state.params();
    let sob = sobolev_constant(p);
    let h = state.history();
    let mut wj = f64::NEG_INFINITY;
    let mut wg = f64::NEG_INFINITY;
    for w in h.windows(2) {
        wj = wj.max((w[1].j - w[0].j) / w[0].j);
        wg = wg.max((w[1].g_v - w[0].g_v) / (sob * w[0].j.powf(2.0 / p.p())));
    }
    Monotonicity { worst_j_increase: wj, worst_g_increase: wg, holds: wj <= rel_tol && wg <= rel_tol }
}

/// Fitted J ∝ (T − t)^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub exponent: f64,
    pub extinction_time: f64,
    /// Largest relative deviation of J/J′ from the fitted line.
    pub max_residual: f64,
}

/// Fit J/J′ = (t − T)/α by least squares; exact for a pure power law and
/// independent of T.
pub fn fit_extinction_exponent(history: &[HistoryRecord]) -> Result<ExponentFit> {
    if history.len() < 3 {
        return Err(Error::InsufficientData(format!("need at least 3 samples, got {}", history.len())));
    }
    if let Some(r) = history.iter().find(|r| !(r.j_prime < 0.0)) {
        return Err(Error::Precondition(format!("J must be strictly decreasing, J′ = {} at t = {}", r.j_prime, r.t)));
    }
    let t = column(history, |r| r.t);
    let y = column(history, |r| r.j / r.j_prime);
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let sxy: f64 = t.iter().zip(&y).map(|(a, b)| (a - tm) * (b - ym)).sum();
    let sxx: f64 = t.iter().map(|a| (a - tm) * (a - tm)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * tm;
    let max_residual = t
        .iter()
        .zip(&y)
        .map(|(a, b)| ((slope * a + intercept - b) / b).abs())
        .fold(0.0, f64::max);
    Ok(ExponentFit { exponent: 1.0 / slope, extinction_time: -intercept / slope, max_residual })
}

/// max |v/v(0) − v₀/v₀(0)|: drift of the normalized profile.
pub fn profile_shape_error(initial: &GridField, current: &GridField) -> Result<f64> {
    if initial.len() != current.len() {
        return Err(Error::Domain("profiles live on different grids".into()));
    }
    let (a0, b0) = (initial.at_origin(), current.at_origin());
    Ok(initial
        .values()
        .iter()
        .zip(current.values())
        .map(|(a, b)| (b / b0 - a / a0).abs())
        .fold(0.0, f64::max))
}
