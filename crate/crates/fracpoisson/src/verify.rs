//! The oracle matrix: every analytic result checked against an independent
//! route, at the tolerances the library promises.
//!
//! The suite is a list of independent tasks so a caller can run them on as
//! many threads as it likes; results come back in task order. Quick mode
//! drops everything that simulates.
//!
//! [`Fault::WrongGamma`] perturbs Γ in the closed-form references by one
//! part in a thousand, as a negative control: a suite that still passes
//! with it is not testing anything.

use crate::error::{Error, Result};
use crate::frac_ops::{rl_fractional_integral, verify_fractional_ode_system, GridFunction};
use crate::gamma::gamma;
use crate::laplace::{counting_probs_by_inversion, verify_pair, TransformPair};
use crate::limits::{
    convergence_sweep, erlang_limit, erlang_limit_laplace, erlang_rescaled_transform, extrapolated_erlang,
    extrapolated_sojourn, rescaled_transform, sojourn_limit, ScalingPair, SWEEP_PATHS, SWEEP_SEED, SWEEP_TAUS,
};
use crate::montecarlo::{
    count_histogram, empirical_counting_pmf, empirical_erlang, ks_statistic, sample_waiting_times, simulate_counting,
    tail_slope, KS_CRITICAL_1PCT, KS_MAX_EVALS,
};
use crate::processes::{FractionalPoisson, ProcessKind, WrightProcess};
use crate::renewal::{erlang, renewal_equation_residual, WaitingTimeLaw};
use crate::report::{nan_max, Check, Report};
use crate::rng::RngStream;
use crate::specfun::{ml_deriv_scaled, Order};
use crate::stable::{inverse_subordinator_pdf, stable_cdf, subordinator_pdf};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    WrongGamma,
}

impl Fault {
    fn gamma(self, x: f64) -> f64 {
        match self {
            Fault::None => gamma(x),
            Fault::WrongGamma => gamma(x) * 1.001,
        }
    }
}

impl FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Fault> {
        match s {
            "none" => Ok(Fault::None),
            "wrong-gamma" => Ok(Fault::WrongGamma),
            _ => Err(Error::Domain(format!("unknown fault {s:?}"))),
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fault::None => "none",
            Fault::WrongGamma => "wrong-gamma",
        })
    }
}

pub const DEFAULT_BETAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub betas: Vec<f64>,
    pub quick: bool,
    pub seed: u64,
    pub fault: Fault,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { betas: DEFAULT_BETAS.to_vec(), quick: false, seed: 42, fault: Fault::None }
    }
}

/// A named group of checks.
pub struct SuiteTask {
    pub name: String,
    pub run: Box<dyn FnOnce() -> Vec<Check> + Send>,
}

impl SuiteTask {
    fn new(name: impl Into<String>, run: impl FnOnce() -> Vec<Check> + Send + 'static) -> SuiteTask {
        SuiteTask { name: name.into(), run: Box::new(run) }
    }
}

impl fmt::Debug for SuiteTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn ord(beta: f64) -> Result<Order> {
    Order::new(beta)
}

fn tagged(name: &str, beta: f64) -> String {
    format!("{name}[beta={beta}]")
}

pub fn suite_tasks(opts: &VerifyOptions) -> Result<Vec<SuiteTask>> {
    let betas = opts.betas.iter().map(|&b| ord(b)).collect::<Result<Vec<_>>>()?;
    let fault = opts.fault;
    let seed = opts.seed;
    let mut tasks = Vec::new();
    for &b in &betas {
        let v = b.get();
        tasks.push(SuiteTask::new(tagged("transform_pairs", v), move || check_transform_pairs(b)));
        tasks.push(SuiteTask::new(tagged("dual_route", v), move || check_dual_route(b, fault)));
        tasks.push(SuiteTask::new(tagged("wright_renewal", v), move || check_wright_renewal(b, fault)));
        tasks.push(SuiteTask::new(tagged("telescoping", v), move || check_telescoping(b)));
        tasks.push(SuiteTask::new(tagged("renewal_equation", v), move || check_renewal_equation(b, fault)));
        tasks.push(SuiteTask::new(tagged("fractional_ode", v), move || check_fractional_ode(b)));
        if !b.is_degenerate() {
            tasks.push(SuiteTask::new(tagged("subordinator", v), move || check_subordinator_identity(b)));
            tasks.push(SuiteTask::new(tagged("limit_transforms", v), move || check_limit_transforms(b)));
        }
    }
    if betas.iter().any(|b| b.is_degenerate()) {
        tasks.push(SuiteTask::new("degenerate_beta_1", move || check_degenerate(fault)));
    }
    if !opts.quick {
        for &b in &betas {
            let v = b.get();
            tasks.push(SuiteTask::new(tagged("samplers", v), move || check_samplers(b, seed)));
            tasks.push(SuiteTask::new(tagged("mc_renewal", v), move || check_mc_renewal(b, seed, fault)));
            tasks.push(SuiteTask::new(tagged("mc_counting", v), move || check_mc_counting(b, seed)));
            tasks.push(SuiteTask::new(tagged("mc_erlang", v), move || check_mc_erlang(b, seed)));
        }
        if betas.iter().any(|b| b.get() == 0.5) {
            for process in [ProcessKind::Fpp, ProcessKind::Wright] {
                tasks.push(SuiteTask::new(format!("sweep[{process}]"), move || check_sweep(process)));
            }
        }
    }
    Ok(tasks)
}

/// Runs every task in order on the calling thread.
pub fn run_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::new(if opts.quick { "verify-quick" } else { "verify" });
    for task in suite_tasks(opts)? {
        report.extend((task.run)());
    }
    Ok(report)
}

pub fn log_grid(a: f64, b: f64, points: usize) -> Vec<f64> {
    GridFunction::logspace(a, b, points)
}

fn unit_grid(h: f64, end: f64) -> Vec<f64> {
    GridFunction::uniform_grid(0.0, h, (end / h).round() as usize + 1)
}

/// Talbot inversion of the waiting-time, stable and inverse-subordinator
/// transforms against their closed forms, 40 log-spaced t in [0.05, 50].
pub fn check_transform_pairs(beta: Order) -> Vec<Check> {
    let times = log_grid(0.05, 50.0, 40);
    let mut pairs = vec![TransformPair::ml_density(beta), TransformPair::ml_survival(beta)];
    if !beta.is_degenerate() {
        pairs.push(TransformPair::stable_density(beta));
        for x in [0.5, 1.0, 2.0] {
            pairs.push(TransformPair::inverse_subordinator(beta, x));
        }
    }
    pairs
        .iter()
        .map(|p| {
            let name = format!("pair:{}", p.name);
            Check::from_result(name.clone(), 1e-8, || {
                let r = verify_pair(p, &times, 1e-8)?;
                Ok(Check::at_most(name, r.max_abs_err, 1e-8))
            })
        })
        .collect()
}

/// p_n by the derivative series against inversion of s^(β−1)/(1+s^β)^(n+1)
/// for n ≤ 20, t in [0.1, 10]. At β = 1 the reference is the Poisson law.
pub fn check_dual_route(beta: Order, fault: Fault) -> Vec<Check> {
    let name = tagged("dual_route_pn", beta.get());
    let tol = if beta.is_degenerate() { 1e-12 } else { 1e-8 };
    vec![Check::from_result(name.clone(), tol, || {
        let mut worst: f64 = 0.0;
        let ns: Vec<u32> = (0..=20).collect();
        for &t in &log_grid(0.1, 10.0, 9) {
            let x = t.powf(beta.get());
            let inverted = if beta.is_degenerate() { Vec::new() } else { counting_probs_by_inversion(beta, &ns, t)? };
            for &n in &ns {
                let series = ml_deriv_scaled(n, beta.get(), x)?.value;
                let other = if beta.is_degenerate() {
                    (n as f64 * t.ln() - t).exp() / fault.gamma(n as f64 + 1.0)
                } else {
                    inverted[n as usize].clone()?.value
                };
                worst = nan_max(worst, (series - other).abs());
            }
        }
        Ok(Check::at_most(name, worst, tol))
    })]
}

/// The Wright renewal function: Tauberian agreement with t^β/Γ(1+β) at
/// t = 100 for β < 1, the floor function at β = 1.
pub fn check_wright_renewal(beta: Order, fault: Fault) -> Vec<Check> {
    let w = WrightProcess::new(beta);
    if beta.is_degenerate() {
        let name = "wright_renewal_floor".to_string();
        return vec![Check::from_result(name.clone(), 0.0, || {
            let mut worst: f64 = 0.0;
            for &t in &[0.0, 0.5, 1.0, 2.5, 3.0, 17.9] {
                worst = nan_max(worst, (w.renewal_function(t)?.value - f64::floor(t)).abs());
            }
            Ok(Check::at_most(name, worst, 0.0))
        })];
    }
    // m(t) = t^β/Γ(1+β) − 1/2 + o(1), so the leading term is within 5%
    // only once t^β ≳ 10 Γ(1+β)
    let b = beta.get();
    let t: f64 = if b >= 0.5 { 100.0 } else { 1e4 };
    let name = format!("wright_renewal_tauberian[beta={b},t={t}]");
    let offset_name = tagged("wright_renewal_offset", b);
    vec![
        Check::from_result(name.clone(), 0.05, || {
            let m = w.renewal_function(t)?.value;
            let want = t.powf(b) / fault.gamma(1.0 + b);
            Ok(Check::at_most(name, (m / want - 1.0).abs(), 0.05))
        }),
        Check::from_result(offset_name.clone(), 0.01, || {
            let t = 1e4;
            let m = w.renewal_function(t)?.value;
            let want = t.powf(b) / fault.gamma(1.0 + b) - 0.5;
            Ok(Check::at_most(offset_name, (m - want).abs(), 0.01))
        }),
    ]
}

/// p_n(t) = ∫_0^t (q_n − q_(n+1)) for n ≤ 10 on both processes.
pub fn check_telescoping(beta: Order) -> Vec<Check> {
    let mut laws = vec![WaitingTimeLaw::ml(beta)];
    if !beta.is_degenerate() {
        laws.push(WaitingTimeLaw::stable(beta));
    }
    laws.into_iter()
        .map(|law| {
            let name = format!("telescoping:{}", law.tag());
            Check::from_result(name.clone(), 5e-4, || {
                let mut worst: f64 = 0.0;
                for n in 1..=10 {
                    let e = erlang(&law, n)?;
                    for &t in &[0.3, 1.0, 3.0, 8.0] {
                        worst = nan_max(worst, e.telescoping_error(t)?);
                    }
                }
                Ok(Check::at_most(name, worst, 5e-4))
            })
        })
        .collect()
}

/// Residual of m = Φ + φ * m on a uniform grid, m(t) = t^β/Γ(1+β) for the
/// fractional Poisson process and the series renewal function for Wright.
pub fn check_renewal_equation(beta: Order, fault: Fault) -> Vec<Check> {
    let b = beta.get();
    let mut out = Vec::new();
    let name = tagged("renewal_equation_fpp", b);
    out.push(Check::from_result(name.clone(), 5e-3, || {
        let law = WaitingTimeLaw::ml(beta);
        let g = fault.gamma(1.0 + b);
        let m = GridFunction::sample(unit_grid(1e-3, 10.0), |t| t.powf(b) / g)?;
        let r = renewal_equation_residual(&law, &m)?.max_abs_on(0.1, 10.0);
        Ok(Check::at_most(name, r, 5e-3))
    }));
    if !beta.is_degenerate() {
        let name = tagged("renewal_equation_wright", b);
        out.push(Check::from_result(name.clone(), 5e-3, || {
            let law = WaitingTimeLaw::stable(beta);
            let w = WrightProcess::new(beta);
            let m = GridFunction::try_sample(unit_grid(5e-3, 5.0), |t| Ok(w.renewal_function(t)?.value))?;
            let r = renewal_equation_residual(&law, &m)?.max_abs_on(0.1, 5.0);
            Ok(Check::at_most(name, r, 5e-3))
        }));
    }
    out
}

/// Caputo residual of the counting probabilities for n ≤ 5 on [0.1, 5],
/// step 1e-3, and at β = 1/2 the gain under step halving.
pub fn check_fractional_ode(beta: Order) -> Vec<Check> {
    let b = beta.get();
    let tol = if beta.is_degenerate() { 1e-4 } else { 5e-3 };
    let name = tagged("fractional_ode", b);
    let mut out = Vec::new();
    let coarse = verify_fractional_ode_system(beta, 5, &unit_grid(1e-3, 5.0), tol);
    match &coarse {
        Ok(r) => out.push(Check::at_most(name, r.max_residual, tol)),
        Err(e) => out.push(Check::failed(name, tol, e.to_string())),
    }
    if b == 0.5 {
        let name = "fractional_ode_order[beta=0.5]".to_string();
        let target = 2f64.powf(1.4);
        out.push(Check::from_result(name.clone(), target, || {
            let fine = verify_fractional_ode_system(beta, 5, &unit_grid(5e-4, 5.0), tol)?;
            let coarse = coarse.clone()?;
            Ok(Check::at_least(name, coarse.max_residual / fine.max_residual, target))
        }));
    }
    out
}

/// t^(−β) M_β(x/t^β) = J^(1−β) f(·, x) at x = 1 on [0.5, 5], step 1e-3;
/// below β = 1/2 the density is sharper and the step is 2.5e-4.
pub fn check_subordinator_identity(beta: Order) -> Vec<Check> {
    let step = if beta.get() >= 0.5 { 1e-3 } else { 2.5e-4 };
    let name = format!("inverse_subordinator_fractional_integral[beta={},step={step}]", beta.get());
    vec![Check::from_result(name.clone(), 1e-4, || {
        let at = |t: f64, f: &dyn Fn(f64) -> Result<f64>| if t == 0.0 { Ok(0.0) } else { f(t) };
        let f =
            GridFunction::try_sample(unit_grid(step, 5.0), |t| at(t, &|t| Ok(subordinator_pdf(beta, t, 1.0)?.value)))?;
        let j = rl_fractional_integral(&f, 1.0 - beta.get())?;
        let want = GridFunction::try_sample(f.grid().to_vec(), |t| {
            at(t, &|t| Ok(inverse_subordinator_pdf(beta, 1.0, t)?.value))
        })?;
        Ok(Check::at_most(name, j.sub(&want)?.max_abs_on(0.5, 5.0), 1e-4))
    })]
}

const LIMIT_POINTS: [(f64, f64); 5] = [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (0.1, 3.0), (3.0, 0.2)];

/// The two processes' rescaled transforms: monotone approach to the limit
/// along τ-halving, common extrapolated limit, and the Laplace transform of
/// the limit event-time density.
pub fn check_limit_transforms(beta: Order) -> Vec<Check> {
    let b = beta.get();
    let mut out = Vec::new();
    let name = tagged("limit_monotone_approach", b);
    out.push(Check::from_result(name.clone(), 0.0, || {
        let mut violations = 0.0;
        for process in [ProcessKind::Fpp, ProcessKind::Wright] {
            for &(k, s) in &LIMIT_POINTS {
                let (mut last, mut last_e) = (f64::INFINITY, f64::INFINITY);
                for j in 0..10 {
                    let pair = ScalingPair::canonical(beta, 0.1 / f64::powi(2.0, j))?;
                    let d = (rescaled_transform(process, beta, pair, k, s)? - sojourn_limit(beta, k, s)).abs();
                    let e = (erlang_rescaled_transform(process, beta, pair, k, s)? - erlang_limit(beta, k, s)).abs();
                    if d >= last || e >= last_e {
                        violations += 1.0;
                    }
                    (last, last_e) = (d, e);
                }
            }
        }
        Ok(Check::at_most(name, violations, 0.0))
    }));
    let name = tagged("limits_coincide", b);
    out.push(Check::from_result(name.clone(), 1e-9, || {
        let mut worst: f64 = 0.0;
        for &(k, s) in &LIMIT_POINTS {
            let f = extrapolated_sojourn(ProcessKind::Fpp, beta, k, s)?.value;
            let w = extrapolated_sojourn(ProcessKind::Wright, beta, k, s)?.value;
            let fe = extrapolated_erlang(ProcessKind::Fpp, beta, k, s)?.value;
            let we = extrapolated_erlang(ProcessKind::Wright, beta, k, s)?.value;
            worst = nan_max(nan_max(worst, (f - w).abs()), (fe - we).abs());
        }
        Ok(Check::at_most(name, worst, 1e-9))
    }));
    let name = tagged("limit_event_time_laplace", b);
    out.push(Check::from_result(name.clone(), 1e-6, || {
        let v = erlang_limit_laplace(beta, 1.0, 1.0)?;
        Ok(Check::at_most(name, (v - (-1.0f64).exp()).abs(), 1e-6))
    }));
    out
}

/// β = 1: the fractional Poisson process is the Poisson process and the
/// Wright process has N(t) = floor(t).
pub fn check_degenerate(fault: Fault) -> Vec<Check> {
    let one = Order::new(1.0).expect("1 is a valid order");
    let mut out = Vec::new();
    let name = "beta1_poisson_pmf".to_string();
    out.push(Check::from_result(name.clone(), 1e-12, || {
        let p = FractionalPoisson::standard(one);
        let mut worst: f64 = 0.0;
        for &t in &[0.5, 2.0, 7.0] {
            for n in 0..=25u32 {
                let want = (n as f64 * f64::ln(t) - t).exp() / fault.gamma(n as f64 + 1.0);
                worst = nan_max(worst, (p.counting_prob(n, t)?.value - want).abs());
            }
        }
        Ok(Check::at_most(name, worst, 1e-12))
    }));
    let name = "beta1_erlang_gamma".to_string();
    out.push(Check::from_result(name.clone(), 1e-12, || {
        let p = FractionalPoisson::standard(one);
        let mut worst: f64 = 0.0;
        for &t in &[0.5, 2.0, 7.0] {
            for n in 1..=10u32 {
                let want = ((n - 1) as f64 * f64::ln(t) - t).exp() / fault.gamma(n as f64);
                worst = nan_max(worst, (p.erlang_density(n, t)?.value - want).abs());
                // Q_n(t) = 1 − Σ_(k<n) t^k e^(−t)/k!
                let head: f64 = (0..n).map(|k| (k as f64 * f64::ln(t) - t).exp() / fault.gamma(k as f64 + 1.0)).sum();
                worst = nan_max(worst, (p.erlang_cdf(n, t)?.value - (1.0 - head)).abs());
            }
        }
        Ok(Check::at_most(name, worst, 1e-12))
    }));
    let name = "beta1_wright_lattice".to_string();
    out.push(Check::from_result(name.clone(), 0.0, || {
        let w = WrightProcess::new(one);
        let mut wrong = 0.0;
        for &t in &[0.0f64, 0.5, 1.0, 2.0, 3.5, 9.99] {
            for n in 0..=12u32 {
                let want = if t.floor() as u32 == n { 1.0 } else { 0.0 };
                if w.counting_prob(n, t)?.value != want {
                    wrong += 1.0;
                }
            }
        }
        let path = simulate_counting(&WaitingTimeLaw::stable(one), 20.5, &mut RngStream::new(0, 0))?;
        for &t in &[0.0f64, 0.7, 1.0, 5.5, 20.0] {
            if path.count_at(t) as f64 != t.floor() {
                wrong += 1.0;
            }
        }
        Ok(Check::at_most(name, wrong, 0.0))
    }));
    out
}

/// Waiting-time samplers: ML survival within 4σ at t ∈ {1, 5, 20}, stable
/// draws KS against G_β, and at β = 1/2 the survival tail slope.
pub fn check_samplers(beta: Order, seed: u64) -> Vec<Check> {
    let b = beta.get();
    let mut out = Vec::new();
    let name = tagged("ml_sampler_survival_z", b);
    out.push(Check::from_result(name.clone(), 4.0, || {
        let p = FractionalPoisson::standard(beta);
        let d = sample_waiting_times(&WaitingTimeLaw::MittagLeffler(p), 100_000, seed)?;
        let n = d.len() as f64;
        let mut worst: f64 = 0.0;
        for &t in &[1.0, 5.0, 20.0] {
            let emp = d.iter().filter(|&&x| x > t).count() as f64 / n;
            let psi = p.survival(t)?.value;
            worst = nan_max(worst, (emp - psi).abs() / (psi * (1.0 - psi) / n).sqrt());
        }
        Ok(Check::at_most(name, worst, 4.0))
    }));
    if !beta.is_degenerate() {
        let name = tagged("stable_sampler_ks", b);
        let critical = KS_CRITICAL_1PCT / (100_000f64).sqrt();
        out.push(Check::from_result(name.clone(), critical, || {
            let mut d = sample_waiting_times(&WaitingTimeLaw::stable(beta), 100_000, seed ^ 0x5eed)?;
            d.sort_by(f64::total_cmp);
            let ks = ks_statistic(&d, |x| Ok(stable_cdf(beta, x)?.value), KS_MAX_EVALS)?;
            Ok(Check::at_most(name, ks, critical))
        }));
    }
    if b == 0.5 {
        let name = "ml_tail_slope_error[beta=0.5]".to_string();
        out.push(Check::from_result(name.clone(), 0.05, || {
            let d = sample_waiting_times(&WaitingTimeLaw::ml(beta), 100_000, seed)?;
            let slope = tail_slope(&d, 10.0, 1e3, 12)?;
            Ok(Check::at_most(name, (slope + b).abs(), 0.05).with_detail(format!("slope {slope:.4}")))
        }));
    }
    out
}

/// Simulated E[N(t)] of the fractional Poisson process within 1% of
/// t^β/Γ(1+β) at t ∈ {1, 5, 10}, 10^5 paths.
pub fn check_mc_renewal(beta: Order, seed: u64, fault: Fault) -> Vec<Check> {
    let b = beta.get();
    let name = tagged("mc_renewal_rel_err", b);
    vec![Check::from_result(name.clone(), 0.01, || {
        let law = WaitingTimeLaw::ml(beta);
        let mut worst: f64 = 0.0;
        for &t in &[1.0, 5.0, 10.0] {
            let h = count_histogram(&law, t, seed, 0..100_000)?;
            let m = t.powf(b) / fault.gamma(1.0 + b);
            worst = nan_max(worst, (h.mean() / m - 1.0).abs());
        }
        Ok(Check::at_most(name, worst, 0.01))
    })]
}

/// Simulated p_n(1) within 4σ of the analytic law, both processes.
pub fn check_mc_counting(beta: Order, seed: u64) -> Vec<Check> {
    [WaitingTimeLaw::ml(beta), WaitingTimeLaw::stable(beta)]
        .into_iter()
        .map(|law| {
            let name = format!("mc_counting_z:{}", law.tag());
            Check::from_result(name.clone(), 4.0, || {
                let pmf = empirical_counting_pmf(&law, 1.0, 100_000, seed)?;
                let analytic = (0..pmf.probs.len() as u32 + 8)
                    .map(|n| Ok(law.counting_prob(n, 1.0)?.value))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(Check::at_most(name, pmf.max_z(&analytic), 4.0))
            })
        })
        .collect()
}

/// KS test of simulated event times t_n against Q_n, n ∈ {1, 3}.
pub fn check_mc_erlang(beta: Order, seed: u64) -> Vec<Check> {
    let mut laws = vec![WaitingTimeLaw::ml(beta)];
    if !beta.is_degenerate() {
        laws.push(WaitingTimeLaw::stable(beta));
    }
    let paths = 20_000u64;
    let critical = KS_CRITICAL_1PCT / (paths as f64).sqrt();
    let mut out = Vec::new();
    for law in laws {
        for n in [1u32, 3] {
            let name = format!("mc_erlang_ks:{}:n={n}", law.tag());
            out.push(Check::from_result(name.clone(), critical, || {
                let s = empirical_erlang(&law, n, paths, seed)?;
                Ok(Check::at_most(name, s.ks_statistic, s.critical))
            }));
        }
    }
    out
}

/// The default diffusion-limit sweep at β = 1/2, t = 1.
pub fn check_sweep(process: ProcessKind) -> Vec<Check> {
    let beta = Order::new(0.5).expect("valid order");
    let name = format!("sweep_monotone:{process}");
    let sweep = convergence_sweep(process, beta, 1.0, &SWEEP_TAUS, SWEEP_PATHS, SWEEP_SEED);
    match sweep {
        Ok(r) => {
            let ks: Vec<String> = r.rows.iter().map(|row| format!("{:.4}", row.ks_statistic)).collect();
            let detail = format!("ks {}", ks.join(" "));
            let violations = r.rows.iter().filter(|row| !row.pass).count() as f64;
            vec![
                Check::at_most(name, violations, 0.0).with_detail(detail),
                Check::at_most(format!("sweep_final_ks:{process}"), r.final_ks(), r.baseline),
            ]
        }
        Err(e) => vec![Check::failed(name, 0.0, e.to_string())],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_parsing() {
        assert_eq!("wrong-gamma".parse::<Fault>().unwrap(), Fault::WrongGamma);
        assert!("x".parse::<Fault>().is_err());
        assert_eq!(Fault::WrongGamma.to_string(), "wrong-gamma");
    }

    #[test]
    fn quick_task_list() {
        let opts = VerifyOptions { quick: true, ..VerifyOptions::default() };
        let tasks = suite_tasks(&opts).unwrap();
        assert!(tasks.iter().all(|t| !t.name.starts_with("mc_") && !t.name.starts_with("sweep")));
        assert!(tasks.iter().any(|t| t.name == "degenerate_beta_1"));
        let full = suite_tasks(&VerifyOptions::default()).unwrap();
        assert!(full.len() > tasks.len());
        assert!(suite_tasks(&VerifyOptions { betas: vec![1.5], ..opts }).is_err());
    }

    #[test]
    fn negative_control_fails() {
        let checks = check_degenerate(Fault::WrongGamma);
        assert!(checks.iter().any(|c| !c.pass));
        // a 0.1% error hides inside the 5% Tauberian band but not in the offset
        let checks = check_wright_renewal(Order::new(0.5).unwrap(), Fault::WrongGamma);
        assert!(checks[0].pass);
        assert!(!checks[1].pass);
        let checks = check_degenerate(Fault::None);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
