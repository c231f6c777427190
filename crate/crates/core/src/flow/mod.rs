//! Fractional fast diffusion ∂_t v + (−Δ)^s v^m = 0 on a grid, with the
//! monotone quantities that drive the improved inequality.
//!
//! Stepping is explicit RK4 with dt ≤ c·h^{2s}/max(m v^{m−1}), a positivity
//! guard that halves rejected steps, and stops at a final time, at extinction
//! approach (min v < 10^{−8} max v) or when J falls below a floor. Each sample
//! time records J, 𝓕[u], 𝓖[v] and the analytic derivatives.

mod diagnostics;
mod grid;
mod operator;
mod phi;
mod separated;
mod spectral;

pub use diagnostics::{
    finite_difference, fit_extinction_exponent, flow_diagnostics, identity_residual, monotonicity,
    profile_shape_error, trajectory_table, verify_comparison_lemma, verify_y_bound, ComparisonCheck, ExponentFit,
    FlowDiagnostics, Monotonicity, YBoundCheck, TRAJECTORY_COLUMNS,
};
pub use grid::GridField;
pub use operator::{Energies, FarField, FlowOperator};
pub use phi::{phi, verify_improved_nonlinear, NonlinearCheck, PhiGain};
pub use separated::{perturbed_extremal, SeparatedSolution};
pub use spectral::{frac_laplacian, lattice_zeta, riesz_potential, SpectralOps, TAIL_WARNING};

use crate::error::{Error, Result};
use crate::report::Record;
use crate::special::Params;
use rayon::prelude::*;

/// Safety factor in the step bound.
pub const C_SAFE: f64 = 0.4;
/// Runs stop once min v falls below this fraction of max v.
pub const EXTINCTION_RATIO: f64 = 1e-8;
/// 𝖪's weight v^{m−1} is dropped where v is below this value.
pub const K_CLIP: f64 = 1e-12;
/// Halvings of a rejected step before the run is stopped.
const MAX_HALVINGS: u32 = 12;

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Reached the requested final time.
    Completed,
    /// min v dropped below `EXTINCTION_RATIO`·max v.
    ExtinctionApproach,
    /// A step lost positivity even after repeated halving.
    PositivityLoss,
    /// J dropped below the configured floor.
    JFloor,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Completed => "completed",
            StopReason::ExtinctionApproach => "extinction_approach",
            StopReason::PositivityLoss => "positivity_loss",
            StopReason::JFloor => "j_floor",
        }
    }
}

/// Run controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    pub t_end: f64,
    /// Spacing of the uniform history samples.
    pub sample_interval: f64,
    /// Stop once J falls below this value.
    pub j_floor: Option<f64>,
    pub c_safe: f64,
    pub max_steps: usize,
}

impl FlowConfig {
    pub fn new(t_end: f64, samples: usize) -> Self {
        Self { t_end, sample_interval: t_end / samples.max(1) as f64, j_floor: None, c_safe: C_SAFE, max_steps: 2_000_000 }
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::Domain(format!("final time must be positive, got {}", self.t_end)));
        }
        if !(self.sample_interval > 0.0 && self.sample_interval <= self.t_end) {
            return Err(Error::Domain(format!("sample interval must lie in (0, t_end], got {}", self.sample_interval)));
        }
        if !(self.c_safe > 0.0 && self.c_safe <= C_SAFE) {
            return Err(Error::Domain(format!("step safety factor must lie in (0, {C_SAFE}], got {}", self.c_safe)));
        }
        Ok(())
    }
}

/// Quantities recorded at one sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRecord {
    pub t: f64,
    /// J = ∫v^p.
    pub j: f64,
    /// J′ = −p‖u‖_s².
    pub j_prime: f64,
    /// 𝓕[u] = S‖u‖_s² − ‖u‖_q².
    pub f_u: f64,
    /// 𝓖[v] = S‖v‖_p² − ∫v(−Δ)^{−s}v.
    pub g_v: f64,
    /// 𝓖′ = −2J^{2s/n}𝓕[u].
    pub g_prime: f64,
    /// −𝓖′/J.
    pub kappa_estimate: f64,
    /// Λ = −(n+2s)/(2n)·J′/J.
    pub lambda: f64,
    /// 𝖪 = ∫v^{m−1}|(−Δ)^s v^m − Λv|².
    pub k: f64,
    /// ∫v over the cells dropped from 𝖪.
    pub clipped_mass: f64,
    pub sobolev_norm_sq: f64,
    pub hls_energy: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl HistoryRecord {
    pub fn to_record(&self) -> Record {
        Record::new()
            .with("t", self.t)
            .with("J", self.j)
            .with("J_prime", self.j_prime)
            .with("F_u", self.f_u)
            .with("G_v", self.g_v)
            .with("G_prime", self.g_prime)
            .with("kappa_estimate", self.kappa_estimate)
            .with("Lambda", self.lambda)
            .with("K", self.k)
            .with("clipped_mass", self.clipped_mass)
            .with("v_min", self.v_min)
            .with("v_max", self.v_max)
    }
}

/// A field, its time and the history of sampled diagnostics.
#[derive(Debug, Clone)]
pub struct FlowState {
    params: Params,
    field: GridField,
    t: f64,
    steps: usize,
    history: Vec<HistoryRecord>,
    stop: Option<StopReason>,
}

impl FlowState {
    /// State at time `t` with an empty history.
    pub fn new(params: Params, field: GridField, t: f64) -> Result<Self> {
        if field.dim() != params.n() {
            return Err(Error::Domain(format!("field dimension {} differs from n = {}", field.dim(), params.n())));
        }
        Ok(Self { params, field, t, steps: 0, history: Vec::new(), stop: None })
    }

    /// State with a given history, for diagnostics on recorded data.
    pub fn with_history(params: Params, field: GridField, history: Vec<HistoryRecord>) -> Result<Self> {
        let t = history.last().map_or(0.0, |h| h.t);
        let mut state = Self::new(params, field, t)?;
        state.history = history;
        Ok(state)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn field(&self) -> &GridField {
        &self.field
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn history(&self) -> &[HistoryRecord] {
        &self.history
    }

    pub fn stop_reason(&self) -> Option<StopReason> {
        self.stop
    }
}

/// Integrator for one (n, s) on one grid.
#[derive(Clone)]
pub struct FlowSolver {
    op: FlowOperator,
}

impl FlowSolver {
    /// Requires n ∈ {1, 2} and 0 < s < min(1, n/2).
    pub fn new(params: Params, half_width: f64, size: usize) -> Result<Self> {
        Self::with_far_field(params, half_width, size, FarField::Reference)
    }

    pub fn with_far_field(params: Params, half_width: f64, size: usize, far_field: FarField) -> Result<Self> {
        Ok(Self { op: FlowOperator::new(params, half_width, size, far_field)? })
    }

    pub fn operator(&self) -> &FlowOperator {
        &self.op
    }

    pub fn params(&self) -> &Params {
        self.op.params()
    }

    /// ∂_t v = −(−Δ)^s v^m.
    pub fn rhs(&self, field: &GridField) -> Result<GridField> {
        self.op.check(field)?;
        check_positive(field)?;
        field.with_values(self.op.rhs(field.values()))
    }

    /// Largest admissible step c·h^{2s}/max(m v^{m−1}).
    pub fn stable_dt(&self, field: &GridField, c_safe: f64) -> f64 {
        let p = self.params();
        let m = p.m();
        let vmin = field.min();
        c_safe * field.spacing().powf(2.0 * p.s()) / (m * vmin.powf(m - 1.0))
    }

    fn rk4(&self, v: &[f64], dt: f64) -> Vec<f64> {
        let stage = |base: &[f64], k: &[f64], c: f64| -> Vec<f64> { base.iter().zip(k).map(|(b, k)| b + c * k).collect() };
        let k1 = self.op.rhs(v);
        let k2 = self.op.rhs(&stage(v, &k1, 0.5 * dt));
        let k3 = self.op.rhs(&stage(v, &k2, 0.5 * dt));
        let k4 = self.op.rhs(&stage(v, &k3, dt));
        (0..v.len()).map(|i| v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect()
    }

    /// One RK4 step of size at most `dt`, halved until the result stays positive.
    ///
    /// Returns the new state and the step actually taken, or `None` if
    /// positivity could not be kept.
    fn guarded_step(&self, v: &[f64], dt: f64) -> Option<(Vec<f64>, f64)> {
        let mut dt = dt;
        for _ in 0..=MAX_HALVINGS {
            let next = self.rk4(v, dt);
            if next.iter().all(|x| x.is_finite() && *x > 0.0) {
                return Some((next, dt));
            }
            dt *= 0.5;
        }
        None
    }

    /// One step of size `dt` without history bookkeeping.
    pub fn step(&self, state: &FlowState, dt: f64) -> Result<FlowState> {
        self.op.check(&state.field)?;
        check_positive(&state.field)?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Domain(format!("time step must be positive, got {dt}")));
        }
        let mut next = state.clone();
        match self.guarded_step(state.field.values(), dt) {
            Some((v, taken)) => {
                next.field = state.field.with_values(v)?;
                next.t += taken;
                next.steps += 1;
            }
            None => next.stop = Some(StopReason::PositivityLoss),
        }
        Ok(next)
    }

    /// Diagnostics of `field` at time `t`.
    pub fn sample(&self, field: &GridField, t: f64) -> Result<HistoryRecord> {
        self.op.check(field)?;
        check_positive(field)?;
        let p = self.params();
        let (n, s) = (p.nf(), p.s());
        let v = field.values();
        let e = self.op.energies(v);
        let sob = self.op.sobolev();
        let f_u = sob * e.sobolev_norm_sq - e.j.powf(2.0 / p.q());
        let g_v = sob * e.j.powf(2.0 / p.p()) - e.hls_energy;
        let j_prime = -p.p() * e.sobolev_norm_sq;
        let g_prime = -2.0 * e.j.powf(2.0 * s / n) * f_u;
        let lambda = -(n + 2.0 * s) / (2.0 * n) * j_prime / e.j;
        let m = p.m();
        let u: Vec<f64> = v.iter().map(|x| x.powf(m)).collect();
        let lu = self.op.frac_laplacian(&u);
        let hn = field.cell_volume();
        let (mut k, mut clipped) = (0.0, 0.0);
        for (x, l) in v.iter().zip(&lu) {
            if *x < K_CLIP {
                clipped += x;
            } else {
                let d = l - lambda * x;
                k += x.powf(m - 1.0) * d * d;
            }
        }
        Ok(HistoryRecord {
            t,
            j: e.j,
            j_prime,
            f_u,
            g_v,
            g_prime,
            kappa_estimate: -g_prime / e.j,
            lambda,
            k: k * hn,
            clipped_mass: clipped * hn,
            sobolev_norm_sq: e.sobolev_norm_sq,
            hls_energy: e.hls_energy,
            v_min: field.min(),
            v_max: field.max(),
        })
    }

    /// Integrate from `v0` at t = 0, sampling at uniform times.
    pub fn run(&self, v0: GridField, config: &FlowConfig) -> Result<FlowState> {
        config.validate()?;
        self.op.check(&v0)?;
        check_positive(&v0)?;
        let mut state = FlowState::new(*self.params(), v0, 0.0)?;
        state.history.push(self.sample(&state.field, 0.0)?);
        let samples = (config.t_end / config.sample_interval).round().max(1.0) as usize;
        'outer: for i in 1..=samples {
            let target = (i as f64 * config.sample_interval).min(config.t_end);
            while state.t < target {
                let dt_max = self.stable_dt(&state.field, config.c_safe);
                if !(dt_max.is_finite() && dt_max > f64::EPSILON * state.t.max(1.0)) {
                    return Err(Error::Stiffness(format!("step bound collapsed to {dt_max:e} at t = {}", state.t)));
                }
                if state.steps >= config.max_steps {
                    return Err(Error::Stiffness(format!("{} steps did not reach t = {target}", config.max_steps)));
                }
                let dt = dt_max.min(target - state.t);
                let Some((v, taken)) = self.guarded_step(state.field.values(), dt) else {
                    state.stop = Some(StopReason::PositivityLoss);
                    break 'outer;
                };
                state.field = state.field.with_values(v)?;
                state.t = if taken == target - state.t { target } else { state.t + taken };
                state.steps += 1;
                if state.field.min() < EXTINCTION_RATIO * state.field.max() {
                    state.stop = Some(StopReason::ExtinctionApproach);
                    break 'outer;
                }
            }
            let rec = self.sample(&state.field, state.t)?;
            state.history.push(rec);
            if config.j_floor.is_some_and(|f| rec.j < f) {
                state.stop = Some(StopReason::JFloor);
                break;
            }
        }
        if state.stop.is_none() {
            state.stop = Some(StopReason::Completed);
        }
        log::info!(
            "flow n={} s={} stopped at t={} after {} steps: {}",
            self.params().n(),
            self.params().s(),
            state.t,
            state.steps,
            state.stop.map_or("", |s| s.as_str())
        );
        Ok(state)
    }
}

fn check_positive(field: &GridField) -> Result<()> {
    let low = field.min();
    if low <= 0.0 {
        return Err(Error::Positivity(format!("flow data must be positive, minimum is {low:e}")));
    }
    Ok(())
}

/// ∂_t v for the flow of order s = P.s() from the far-field corrected operator.
pub fn fde_rhs(field: &GridField, params: &Params) -> Result<GridField> {
    FlowSolver::new(*params, field.half_width(), field.size())?.rhs(field)
}

/// Single RK4 step of the flow.
pub fn fde_step(state: &FlowState, dt: f64) -> Result<FlowState> {
    let f = state.field();
    FlowSolver::new(*state.params(), f.half_width(), f.size())?.step(state, dt)
}

/// Run the flow from `v0`.
pub fn fde_run(v0: GridField, params: &Params, config: &FlowConfig) -> Result<FlowState> {
    FlowSolver::new(*params, v0.half_width(), v0.size())?.run(v0, config)
}

/// Independent runs in parallel, results in input order.
pub fn fde_run_many(jobs: Vec<(GridField, Params, FlowConfig)>) -> Vec<Result<FlowState>> {
    jobs.into_par_iter().map(|(v0, p, c)| fde_run(v0, &p, &c)).collect()
}
