//! The four commands. Each builds a `Report` whose suites decide the exit code.

use crate::config::{Profile, RunConfig};
use crate::report::{CliError, Report, Status, Suite};
use rayon::prelude::*;
use sharp_ineq::corpus::{mto_corpus, sobolev_corpus};
use sharp_ineq::flow::{
    fit_extinction_exponent, identity_residual, monotonicity, perturbed_extremal, profile_shape_error,
    trajectory_table, verify_comparison_lemma, verify_improved_nonlinear, verify_y_bound, FlowConfig, FlowSolver,
    SeparatedSolution, StopReason,
};
use sharp_ineq::functionals::{aubin_talenti, quotient_lower_bound, Functionals};
use sharp_ineq::mto::{endpoint_limit_check, mto_constant_lower_bound, Mto};
use sharp_ineq::report::{Record, Table};
use sharp_ineq::special::*;
use sharp_ineq::sphere::ZonalFunction;

/// ε values of the linearization probes, largest first.
const PROBE_EPS: [f64; 4] = [0.04, 0.02, 0.01, 0.005];
/// Relative accuracy required of extrapolated lower bounds.
const LIMIT_TOL: f64 = 0.01;
/// Accepted range for the ratio of successive endpoint errors when t halves.
const HALVING_RANGE: (f64, f64) = (1.6, 2.4);
const ENDPOINT_T: [f64; 3] = [0.02, 0.01, 0.005];
const PROFILE_TOL: f64 = 1e-3;
const EXPONENT_TOL: f64 = 0.02;
const POINCARE_TOL: f64 = 1e-10;
/// Increments of 𝓖 below this fraction of S‖v‖_p² count as discretization noise.
const FLOW_NOISE: f64 = 1e-6;
const Y_BOUND_TOL: f64 = 1e-9;
const PHI_TOL: f64 = 1e-8;

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate().map_err(CliError::Usage)?;
    match config.command.as_str() {
        "constants" => constants(config),
        "verify" => verify(config),
        "mto" => mto(config),
        "flow" => flow(config),
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

fn params(config: &RunConfig) -> Result<Params, CliError> {
    Ok(Params::new(config.n, config.s)?)
}

/// Run a suite; accuracy-type failures become an inconclusive suite instead of aborting.
fn guarded(name: &str, body: impl FnOnce() -> Result<Suite, CliError>) -> Result<Suite, CliError> {
    match body() {
        Err(CliError::Inconclusive(msg)) => {
            Ok(Suite::new(name, Status::Inconclusive, Record::new().with("reason", msg)))
        }
        other => other,
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn constants(config: &RunConfig) -> Result<Report, CliError> {
    let p = params(config)?;
    let mut rep = Report::new(config);
    let (lower, upper) = best_constant_bracket(&p);
    rep.results = Record::new()
        .with("q", p.q())
        .with("p", p.p())
        .with("S", sobolev_constant(&p))
        .with("hls_constant", hls_constant(p.n(), p.lambda())?)
        .with("B_lambda", sphere_hls_constant(p.n(), p.lambda())?)
        .with("riesz_constant", riesz_constant(&p))
        .with("kappa", euler_lagrange_constant(&p))
        .with("A_n", log_kernel_mean(p.n())?)
        .with("bracket_lower", lower)
        .with("bracket_upper", upper);
    let kmax = config.band.max(2);
    let mut gam = Table::new(&["k", "gamma_k"]);
    for k in 0..=kmax {
        gam.push(vec![k as f64, gamma_k(&p, k)]);
    }
    let mut ratios = Table::new(&["k", "alpha_k", "beta_k", "beta_over_alpha"]);
    for k in 2..=kmax {
        ratios.push(vec![k as f64, alpha_k(&p, k)?, beta_k(&p, k)?, beta_alpha_ratio(&p, k)?]);
    }
    let top = beta_alpha_ratio(&p, 2)?;
    let worst = (3..=kmax).map(|k| beta_alpha_ratio(&p, k)).try_fold(f64::NEG_INFINITY, |m, r| r.map(|r| m.max(r)))?;
    rep.suites.push(Suite::new(
        "ratio_maximum",
        verdict(worst < top),
        Record::new().with("beta2_over_alpha2", top).with("max_higher_ratio", worst),
    ));
    rep.tables.push(("gamma_k".into(), gam));
    rep.tables.push(("ratios".into(), ratios));
    Ok(rep)
}

fn verify(config: &RunConfig) -> Result<Report, CliError> {
    let p = params(config)?;
    let fx = Functionals::with_sizes(p, config.band, config.nodes)?;
    let corpus = sobolev_corpus(&p, config.corpus_size, config.corpus_band.min(config.band), config.seed)?;
    let constant = config.constant * fx.sobolev();
    let mut rep = Report::new(config);
    rep.tolerances = Record::new()
        .with("main_relative", config.tol)
        .with("square_relative", config.tol)
        .with("poincare_relative", POINCARE_TOL)
        .with("limit_relative", LIMIT_TOL)
        .with("phi_relative", PHI_TOL);
    rep.results = Record::new().with("S", fx.sobolev()).with("constant", constant);

    // Theorem-1 margins on the corpus and along u_* + εf with f in degree 2
    let base = aubin_talenti(&p).lift_exact(config.band);
    let direction = ZonalFunction::mode(p.n(), Some(p.s()), 2, 1.0)?;
    let mut inputs: Vec<(String, ZonalFunction)> =
        corpus.iter().enumerate().map(|(i, f)| (format!("corpus[{i}]"), f.clone())).collect();
    for e in PROBE_EPS {
        inputs.push((format!("probe[eps={e}]"), base.combine(1.0, &direction, e)?));
    }
    let checks = inputs
        .par_iter()
        .map(|(_, f)| fx.verify_main_inequality(f, constant, config.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["index", "lhs", "rhs", "margin", "relative_margin"]);
    let mut violations = Vec::new();
    for (i, ((name, _), c)) in inputs.iter().zip(&checks).enumerate() {
        table.push(vec![i as f64, c.lhs, c.rhs, c.margin, c.relative_margin()]);
        if !c.holds {
            violations.push(name.clone());
        }
    }
    let min_rel = checks.iter().map(|c| c.relative_margin()).fold(f64::INFINITY, f64::min);
    rep.suites.push(Suite::new(
        "main_inequality",
        verdict(violations.is_empty()),
        Record::new()
            .with("checked", checks.len())
            .with("violations", violations.len())
            .with("violating_inputs", violations.join(";"))
            .with("min_relative_margin", min_rel),
    ));
    rep.tables.push(("main_inequality".into(), table));

    rep.suites.push(guarded("square_identity", || {
        let sq = corpus.par_iter().map(|f| fx.verify_square_identity(f)).collect::<Result<Vec<_>, _>>()?;
        let worst = sq.iter().map(|c| c.residual).fold(0.0, f64::max);
        let negative = sq.iter().filter(|c| c.square < -1e-12 * c.scale).count();
        Ok(Suite::new(
            "square_identity",
            verdict(worst <= config.tol && negative == 0),
            Record::new().with("max_residual", worst).with("negative_squares", negative),
        ))
    })?);

    rep.suites.push(guarded("poincare", || {
        let two = fx.poincare_check(&ZonalFunction::mode(p.n(), Some(p.s()), 2, 1.0)?, POINCARE_TOL)?;
        let five = fx.poincare_check(&ZonalFunction::mode(p.n(), Some(p.s()), 5, 1.0)?, POINCARE_TOL)?;
        let equality = two.gap.abs() <= POINCARE_TOL * two.norm_sq;
        Ok(Suite::new(
            "poincare",
            verdict(equality && two.holds && five.holds && five.gap > 0.0),
            Record::new().with("degree2_gap", two.gap).with("degree5_gap", five.gap),
        ))
    })?);

    rep.suites.push(guarded("linearization", || {
        let (lower, _) = best_constant_bracket(&p);
        let q2 = quotient_lower_bound(&fx, &direction, &PROBE_EPS)?;
        let q3 = quotient_lower_bound(&fx, &ZonalFunction::mode(p.n(), Some(p.s()), 3, 1.0)?, &PROBE_EPS)?;
        let err = (q2.limit / lower - 1.0).abs();
        Ok(Suite::new(
            "linearization",
            verdict(err <= LIMIT_TOL && q3.limit < q2.limit),
            Record::new()
                .with("expected", lower)
                .with("degree2_limit", q2.limit)
                .with("degree3_limit", q3.limit)
                .with("relative_error", err),
        ))
    })?);

    rep.suites.push(guarded("improved_nonlinear", || {
        let checks = corpus.par_iter().map(|f| verify_improved_nonlinear(&fx, f, 1.0)).collect::<Result<Vec<_>, _>>()?;
        let min_rel = checks.iter().map(|c| c.relative_margin()).fold(f64::INFINITY, f64::min);
        Ok(Suite::new(
            "improved_nonlinear",
            verdict(min_rel >= -PHI_TOL),
            Record::new().with("C", 1.0).with("min_relative_margin", min_rel),
        ))
    })?);
    Ok(rep)
}

fn mto(config: &RunConfig) -> Result<Report, CliError> {
    let n = config.n;
    let solver = Mto::with_nodes(n, config.nodes)?;
    let corpus = mto_corpus(n, config.corpus_size, config.corpus_band, config.seed)?;
    let mut rep = Report::new(config);
    rep.tolerances = Record::new()
        .with("margin_relative", config.tol)
        .with("limit_relative", LIMIT_TOL)
        .with("halving_low", HALVING_RANGE.0)
        .with("halving_high", HALVING_RANGE.1);
    let expected = 1.0 / (n as f64 + 1.0);
    rep.results = Record::new().with("C_n", config.constant).with("expected_lower_bound", expected);

    let reports = corpus.par_iter().map(|f| solver.report(f, config.constant)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["index", "lhs", "rhs", "margin", "relative_margin"]);
    for (i, r) in reports.iter().enumerate() {
        table.push(vec![i as f64, r.lhs, r.rhs, r.margin, r.relative_margin()]);
    }
    let violations = reports.iter().filter(|r| r.relative_margin() < -config.tol).count();
    let min_rel = reports.iter().map(|r| r.relative_margin()).fold(f64::INFINITY, f64::min);
    rep.suites.push(Suite::new(
        "improved_mto",
        verdict(violations == 0),
        Record::new().with("checked", reports.len()).with("violations", violations).with("min_relative_margin", min_rel),
    ));
    rep.tables.push(("margins".into(), table));

    rep.suites.push(guarded("lower_bound", || {
        let direction = ZonalFunction::mode(n, None, 2, 1.0)?;
        let q = solver.expansion_lower_bound(&direction, &PROBE_EPS)?;
        let scan = mto_constant_lower_bound(n)?;
        let err = (q.limit / expected - 1.0).abs();
        Ok(Suite::new(
            "lower_bound",
            verdict(err <= LIMIT_TOL),
            Record::new()
                .with("expansion_limit", q.limit)
                .with("relative_error", err)
                .with("degree_scan_maximum", scan),
        ))
    })?);

    let endpoint = guarded("endpoint", || {
        let tabs = endpoint_limit_check(&ZonalFunction::mode(n, None, 2, 1.0)?, &ENDPOINT_T)?;
        let (a, b) = tabs.error_ratios();
        let ok = a.iter().chain(&b).all(|r| (HALVING_RANGE.0..=HALVING_RANGE.1).contains(r));
        let mut summary = Record::new();
        for (i, r) in a.iter().enumerate() {
            summary.set(format!("sobolev_ratio_{i}"), *r);
        }
        for (i, r) in b.iter().enumerate() {
            summary.set(format!("hls_ratio_{i}"), *r);
        }
        rep.tables.push(("endpoint_sobolev".into(), tabs.sobolev));
        rep.tables.push(("endpoint_hls".into(), tabs.hls));
        Ok(Suite::new("endpoint", verdict(ok), summary))
    })?;
    rep.suites.push(endpoint);
    Ok(rep)
}

fn flow(config: &RunConfig) -> Result<Report, CliError> {
    let p = params(config)?;
    if p.s() >= 1.0 {
        return Err(CliError::Usage(format!("the flow requires 0 < s < 1, got {}", p.s())));
    }
    let solver = FlowSolver::new(p, config.half_width, config.grid)?;
    let (v0, separated) = match config.profile {
        Profile::Separated => {
            let sep = SeparatedSolution::new(p, config.scale, 1.0)?;
            (sep.field(0.0, config.half_width, config.grid)?, Some(sep))
        }
        Profile::Perturbed => (perturbed_extremal(&p, config.half_width, config.grid, config.amplitude)?, None),
    };
    let mut run_config = FlowConfig::new(config.t_end, config.samples);
    run_config.max_steps = usize::MAX;
    let state = solver.run(v0.clone(), &run_config)?;
    let hist = state.history();
    let stop = state.stop_reason().unwrap_or(StopReason::Completed);

    let mut rep = Report::new(config);
    rep.tolerances = Record::new()
        .with("profile_shape", PROFILE_TOL)
        .with("exponent_relative", EXPONENT_TOL)
        .with("identity_relative", config.tol)
        .with("noise_floor", FLOW_NOISE)
        .with("y_bound_relative", Y_BOUND_TOL);
    rep.results = Record::new()
        .with("steps", state.steps())
        .with("final_time", state.t())
        .with("samples_recorded", hist.len())
        .with("stop_reason", stop.as_str());
    rep.suites.push(Suite::new(
        "integration",
        if stop == StopReason::PositivityLoss { Status::Inconclusive } else { Status::Pass },
        Record::new().with("stop_reason", stop.as_str()),
    ));

    let expected = p.nf() / (2.0 * p.s());
    rep.suites.push(guarded("extinction_exponent", || {
        let fit = fit_extinction_exponent(hist)?;
        let err = (fit.exponent / expected - 1.0).abs();
        let summary = Record::new()
            .with("expected", expected)
            .with("exponent", fit.exponent)
            .with("extinction_time", fit.extinction_time)
            .with("max_residual", fit.max_residual)
            .with("relative_error", err);
        // only the separated profile is a pure power law over the whole run
        let status = if separated.is_some() { verdict(err <= EXPONENT_TOL) } else { Status::Pass };
        Ok(Suite::new("extinction_exponent", status, summary))
    })?);

    let lemma = guarded("comparison_lemma", || {
        let c = verify_comparison_lemma(&state)?;
        let min_margin = c.margins.iter().zip(&c.tolerances).map(|(m, t)| m + t).fold(f64::INFINITY, f64::min);
        let summary = Record::new()
            .with("holds", c.holds)
            .with("inconclusive", c.inconclusive)
            .with("checked_times", c.times.len())
            .with("min_margin_plus_tolerance", min_margin);
        let status = if separated.is_some() {
            // 𝓖 vanishes on this profile, so the lemma reduces to 0 ≥ 0
            Status::Pass
        } else if c.inconclusive {
            Status::Inconclusive
        } else {
            verdict(c.holds)
        };
        Ok(Suite::new("comparison_lemma", status, summary.with("degenerate", separated.is_some())))
    })?;
    rep.suites.push(lemma);

    let mono = monotonicity(&state, if separated.is_some() { FLOW_NOISE } else { 0.0 });
    rep.suites.push(Suite::new(
        "monotonicity",
        verdict(mono.holds),
        Record::new().with("worst_j_increase", mono.worst_j_increase).with("worst_g_increase", mono.worst_g_increase),
    ));

    if separated.is_some() {
        let err = profile_shape_error(&v0, state.field())?;
        rep.suites.push(Suite::new("profile_shape", verdict(err <= PROFILE_TOL), Record::new().with("error", err)));
    } else {
        rep.suites.push(guarded("identity", || {
            let mid = hist.len() / 2;
            let err = identity_residual(&state, mid)?;
            Ok(Suite::new(
                "identity",
                verdict(err <= config.tol),
                Record::new().with("sample", mid).with("time", hist[mid].t).with("relative_error", err),
            ))
        })?);
        rep.suites.push(guarded("y_bound", || {
            let y = verify_y_bound(&state, Y_BOUND_TOL)?;
            Ok(Suite::new("y_bound", verdict(y.holds), Record::new().with("max_ratio", y.max_ratio)))
        })?);
    }
    rep.tables.push(("trajectory".into(), trajectory_table(&state)?));
    Ok(rep)
}
