//! Renewal processes over an arbitrary waiting-time law.
//!
//! The Mittag-Leffler, stable, exponential and delta laws dispatch to their
//! closed forms. Any other law is handled by brute-force convolution on a
//! uniform grid, which also serves as an independent check of the closed
//! forms.
//!
//! The grid convolution works with cell masses w_i = Φ(t_(i+1)) − Φ(t_i)
//! taken from the distribution function, so an integrable singularity of
//! the density at 0 costs nothing. Treating each cell's mass as uniform
//! over the cell, the sum of two cells i, j has a triangular density on
//! [(i+j)h, (i+j+2)h] and puts half its mass in each of the two cells.

use crate::error::{Error, Result};
use crate::frac_ops::GridFunction;
use crate::laplace::{talbot_invert, DEFAULT_NODES};
use crate::processes::{renewal_series, FractionalPoisson, WrightProcess, RENEWAL_CAP};
use crate::quad::tanh_sinh;
use crate::rng::RngStream;
use crate::specfun::{EvalResult, Method, Order};
use crate::xprec::{Cqd, Qd};
use serde::Serialize;
use std::cell::RefCell;
use std::fmt;
use std::io::Write;
use std::sync::Arc;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type ComplexFn = Arc<dyn Fn(Cqd) -> Cqd + Send + Sync>;
type SampleFn = Arc<dyn Fn(&mut RngStream) -> f64 + Send + Sync>;

/// A waiting-time law given by its density, distribution function and
/// Laplace transform.
#[derive(Clone)]
pub struct CustomLaw {
    pub name: String,
    pub pdf: RealFn,
    pub cdf: RealFn,
    pub laplace: ComplexFn,
    pub mean: f64,
    pub sampler: Option<SampleFn>,
}

impl CustomLaw {
    pub fn new(
        name: impl Into<String>,
        pdf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        cdf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        laplace: impl Fn(Cqd) -> Cqd + Send + Sync + 'static,
        mean: f64,
    ) -> CustomLaw {
        CustomLaw {
            name: name.into(),
            pdf: Arc::new(pdf),
            cdf: Arc::new(cdf),
            laplace: Arc::new(laplace),
            mean,
            sampler: None,
        }
    }

    pub fn with_sampler(mut self, sampler: impl Fn(&mut RngStream) -> f64 + Send + Sync + 'static) -> CustomLaw {
        self.sampler = Some(Arc::new(sampler));
        self
    }
}

#[derive(Clone)]
pub enum WaitingTimeLaw {
    /// Survival E_β(-(λt)^β).
    MittagLeffler(FractionalPoisson),
    /// One-sided stable law of order β < 1.
    Stable(WrightProcess),
    Exponential(f64),
    /// Every waiting time equals t0.
    Delta(f64),
    Custom(Arc<CustomLaw>),
}

impl fmt::Debug for WaitingTimeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and >= 0, got {t}")))
    }
}

impl WaitingTimeLaw {
    pub fn ml(beta: Order) -> WaitingTimeLaw {
        WaitingTimeLaw::MittagLeffler(FractionalPoisson::standard(beta))
    }

    /// The stable law of order β; β = 1 is the unit delta.
    pub fn stable(beta: Order) -> WaitingTimeLaw {
        if beta.is_degenerate() {
            WaitingTimeLaw::Delta(1.0)
        } else {
            WaitingTimeLaw::Stable(WrightProcess::new(beta))
        }
    }

    pub fn exponential(lambda: f64) -> Result<WaitingTimeLaw> {
        if lambda > 0.0 && lambda.is_finite() {
            Ok(WaitingTimeLaw::Exponential(lambda))
        } else {
            Err(Error::Domain(format!("rate must be positive, got {lambda}")))
        }
    }

    pub fn delta(t0: f64) -> Result<WaitingTimeLaw> {
        if t0 > 0.0 && t0.is_finite() {
            Ok(WaitingTimeLaw::Delta(t0))
        } else {
            Err(Error::Domain(format!("delay must be positive, got {t0}")))
        }
    }

    pub fn custom(law: CustomLaw) -> WaitingTimeLaw {
        WaitingTimeLaw::Custom(Arc::new(law))
    }

    pub fn tag(&self) -> String {
        match self {
            WaitingTimeLaw::MittagLeffler(p) if p.lambda() == 1.0 => format!("ml({})", p.beta()),
            WaitingTimeLaw::MittagLeffler(p) => format!("ml({},lambda={})", p.beta(), p.lambda()),
            WaitingTimeLaw::Stable(w) => format!("stable({})", w.beta()),
            WaitingTimeLaw::Exponential(l) => format!("exponential({l})"),
            WaitingTimeLaw::Delta(t0) => format!("delta({t0})"),
            WaitingTimeLaw::Custom(c) => format!("custom({})", c.name),
        }
    }

    pub fn has_pdf(&self) -> bool {
        !matches!(self, WaitingTimeLaw::Delta(_))
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(p) => Ok(p.density(t)?.value),
            WaitingTimeLaw::Stable(w) => Ok(w.density(t)?.value),
            WaitingTimeLaw::Exponential(l) => Ok(l * (-l * t).exp()),
            WaitingTimeLaw::Delta(_) => Err(Error::Degenerate("a delta law has no density")),
            WaitingTimeLaw::Custom(c) => Ok((c.pdf)(t)),
        }
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(_) if t == 0.0 => Ok(0.0),
            WaitingTimeLaw::MittagLeffler(p) => Ok(p.erlang_cdf(1, t)?.value),
            WaitingTimeLaw::Stable(w) => Ok(w.erlang_cdf(1, t)?.value),
            WaitingTimeLaw::Exponential(l) => Ok(-(-l * t).exp_m1()),
            WaitingTimeLaw::Delta(t0) => Ok(if t >= *t0 { 1.0 } else { 0.0 }),
            WaitingTimeLaw::Custom(c) => Ok((c.cdf)(t)),
        }
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(p) => Ok(p.survival(t)?.value),
            WaitingTimeLaw::Stable(w) => Ok(w.survival(t)?.value),
            WaitingTimeLaw::Exponential(l) => Ok((-l * t).exp()),
            _ => Ok(1.0 - self.cdf(t)?),
        }
    }

    pub fn laplace(&self, s: Cqd) -> Cqd {
        match self {
            WaitingTimeLaw::MittagLeffler(p) => p.laplace(s),
            WaitingTimeLaw::Stable(w) => w.laplace(s),
            WaitingTimeLaw::Exponential(l) => {
                let l = Qd::from_f64(*l);
                Cqd::real(l) / (s + l)
            }
            WaitingTimeLaw::Delta(t0) => (-s.scale(Qd::from_f64(*t0))).exp(),
            WaitingTimeLaw::Custom(c) => (c.laplace)(s),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            WaitingTimeLaw::MittagLeffler(p) => p.mean_waiting_time(),
            WaitingTimeLaw::Stable(w) => w.mean_waiting_time(),
            WaitingTimeLaw::Exponential(l) => 1.0 / l,
            WaitingTimeLaw::Delta(t0) => *t0,
            WaitingTimeLaw::Custom(c) => c.mean,
        }
    }

    fn analytic(&self) -> bool {
        !matches!(self, WaitingTimeLaw::Custom(_))
    }

    /// P(N(t) = n) from the closed forms; not available for custom laws.
    pub fn counting_prob(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(p) => p.counting_prob(n, t),
            WaitingTimeLaw::Stable(w) => w.counting_prob(n, t),
            WaitingTimeLaw::Exponential(l) => FractionalPoisson::poisson(*l)?.counting_prob(n, t),
            WaitingTimeLaw::Delta(t0) => {
                let hit = (t / t0).floor() as u64 == n as u64;
                Ok(EvalResult::new(if hit { 1.0 } else { 0.0 }, 0.0, Method::ClosedForm))
            }
            WaitingTimeLaw::Custom(_) => Err(Error::Domain("no closed form for a custom law".into())),
        }
    }

    /// Q_n(t) = P(t_n ≤ t).
    pub fn erlang_cdf(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(p) => p.erlang_cdf(n, t),
            WaitingTimeLaw::Stable(w) => w.erlang_cdf(n, t),
            WaitingTimeLaw::Exponential(l) => FractionalPoisson::poisson(*l)?.erlang_cdf(n, t),
            WaitingTimeLaw::Delta(t0) => {
                if n == 0 {
                    return Err(Error::Domain("Erlang index starts at 1".into()));
                }
                let v = if t >= n as f64 * t0 { 1.0 } else { 0.0 };
                Ok(EvalResult::new(v, 0.0, Method::ClosedForm))
            }
            WaitingTimeLaw::Custom(_) => Err(Error::Domain("no closed form for a custom law".into())),
        }
    }

    /// q_n(t), the density of the n-th event time.
    pub fn erlang_density(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        match self {
            WaitingTimeLaw::MittagLeffler(p) => p.erlang_density(n, t),
            WaitingTimeLaw::Stable(w) => w.erlang_density(n, t),
            WaitingTimeLaw::Exponential(l) => FractionalPoisson::poisson(*l)?.erlang_density(n, t),
            WaitingTimeLaw::Delta(_) => Err(Error::Degenerate("convolution powers of a delta are deltas")),
            WaitingTimeLaw::Custom(c) if n == 1 => Ok(EvalResult::new((c.pdf)(t), 0.0, Method::ClosedForm)),
            WaitingTimeLaw::Custom(_) => Err(Error::Domain("no closed form for a custom law".into())),
        }
    }
}

/// Default bound on the tail mass before a distribution is flagged.
pub const TAIL_WARNING: f64 = 1e-6;

/// The distribution of N(t) up to n_max, with the mass beyond it.
#[derive(Clone, Debug, Serialize)]
pub struct CountingDistribution {
    pub law: String,
    pub t: f64,
    pub probs: Vec<f64>,
    pub abs_err: Vec<f64>,
    pub methods: Vec<Method>,
    pub tail_mass: f64,
    /// Set when the tail mass exceeds [`TAIL_WARNING`]: n_max was too small.
    pub tail_warning: bool,
}

impl CountingDistribution {
    pub fn from_evals(law: String, t: f64, evals: Vec<EvalResult>) -> CountingDistribution {
        let probs: Vec<f64> = evals.iter().map(|e| e.value).collect();
        let abs_err = evals.iter().map(|e| e.abs_err).collect();
        let methods = evals.iter().map(|e| e.method).collect();
        let tail_mass = (1.0 - probs.iter().sum::<f64>()).max(0.0);
        CountingDistribution { law, t, probs, abs_err, methods, tail_mass, tail_warning: tail_mass > TAIL_WARNING }
    }

    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    /// Σ n p_n, omitting the tail.
    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    /// Columns n,p_n and a final tail_mass row.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "p_n"])?;
        for (n, p) in self.probs.iter().enumerate() {
            out.write_record([n.to_string(), format!("{p:e}")])?;
        }
        out.write_record(["tail_mass".to_string(), format!("{:e}", self.tail_mass)])?;
        out.flush()?;
        Ok(())
    }
}

/// The law of the n-th event time, t_n = T_1 + … + T_n.
#[derive(Clone, Debug)]
pub struct ErlangFamily {
    pub law: WaitingTimeLaw,
    pub n: u32,
}

impl ErlangFamily {
    pub fn density(&self, t: f64) -> Result<EvalResult> {
        self.law.erlang_density(self.n, t)
    }

    pub fn cdf(&self, t: f64) -> Result<EvalResult> {
        self.law.erlang_cdf(self.n, t)
    }

    /// |p_n(t) − ∫_0^t (q_n − q_(n+1))|, with the integral done by quadrature
    /// of the two densities.
    pub fn telescoping_error(&self, t: f64) -> Result<f64> {
        let n = self.n;
        let p = self.law.counting_prob(n, t)?.value;
        if t == 0.0 {
            return Ok(p.abs());
        }
        let law = &self.law;
        let failure = RefCell::new(None);
        let f = |u: f64| {
            let d = law.erlang_density(n, u).and_then(|a| Ok(a.value - law.erlang_density(n + 1, u)?.value));
            d.unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                0.0
            })
        };
        let q = tanh_sinh(f, 0.0, t, 1e-10);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok((p - q?.value).abs())
    }
}

pub fn erlang(law: &WaitingTimeLaw, n: u32) -> Result<ErlangFamily> {
    if n == 0 {
        return Err(Error::Domain("Erlang index starts at 1".into()));
    }
    Ok(ErlangFamily { law: law.clone(), n })
}

/// Masses of the law in the cells [t_i, t_(i+1)] of a uniform grid from 0.
fn cell_masses(law: &WaitingTimeLaw, grid: &[f64]) -> Result<Vec<f64>> {
    let cdf = grid.iter().map(|&t| law.cdf(t)).collect::<Result<Vec<_>>>()?;
    Ok(cdf.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect())
}

/// Cell masses of X + Y from those of X and Y, truncated to the grid.
fn convolve_cells(a: &[f64], b: &[f64]) -> Vec<f64> {
    let m = a.len();
    let mut full = vec![0.0; m];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b[..m - i].iter().enumerate() {
            full[i + j] += ai * bj;
        }
    }
    let mut out = vec![0.0; m];
    for k in 0..m {
        out[k] = 0.5 * full[k] + if k > 0 { 0.5 * full[k - 1] } else { 0.0 };
    }
    out
}

/// Cell masses of the n-fold convolution, n ≥ 1.
fn power_cells(base: &[f64], n: u32) -> Vec<f64> {
    let mut c = base.to_vec();
    for _ in 1..n {
        c = convolve_cells(&c, base);
    }
    c
}

fn check_grid(grid: &[f64]) -> Result<f64> {
    let g = GridFunction::new(grid.to_vec(), vec![0.0; grid.len()])?;
    if grid.len() < 3 {
        return Err(Error::Domain("grid convolution needs at least 3 points".into()));
    }
    g.origin_step()
}

/// The density of the n-fold convolution φ^(*n) on a uniform grid from 0,
/// by repeated convolution of cell masses. Grid values average the two
/// adjacent cells; the ends are extrapolated linearly. n = 1 returns the
/// sampled density (extrapolated where it is infinite), n = 0 the discrete
/// delta of mass 1 in the first cell.
pub fn conv_power_grid(law: &WaitingTimeLaw, n: u32, grid: &[f64]) -> Result<GridFunction> {
    if !law.has_pdf() {
        return Err(Error::Degenerate("convolution powers of a delta are deltas"));
    }
    let h = check_grid(grid)?;
    let base = cell_masses(law, grid)?;
    let cells = power_cells(&base, n.max(1));
    let m = cells.len();
    let mut values = vec![0.0; grid.len()];
    values[0] = (3.0 * cells[0] - cells[1]) / (2.0 * h);
    for k in 1..m {
        values[k] = (cells[k - 1] + cells[k]) / (2.0 * h);
    }
    values[m] = (3.0 * cells[m - 1] - cells[m - 2]) / (2.0 * h);
    if n == 0 {
        values.iter_mut().for_each(|v| *v = 0.0);
        values[0] = 1.0 / h;
    }
    if n == 1 {
        for (v, &t) in values.iter_mut().zip(grid) {
            let p = law.pdf(t)?;
            if p.is_finite() {
                *v = p;
            }
        }
    }
    GridFunction::new(grid.to_vec(), values)
}

/// Cells per unit of the grid used for custom laws.
const CUSTOM_CELLS: usize = 2000;

/// P(N(t) = n) for n ≤ n_max.
pub fn counting_probs(law: &WaitingTimeLaw, t: f64, n_max: usize) -> Result<CountingDistribution> {
    check_time(t)?;
    if let WaitingTimeLaw::MittagLeffler(p) = law {
        let mut d = p.counting_probs(t, n_max)?;
        d.law = law.tag();
        return Ok(d);
    }
    if law.analytic() {
        let evals = (0..=n_max as u32).map(|n| law.counting_prob(n, t)).collect::<Result<Vec<_>>>()?;
        return Ok(CountingDistribution::from_evals(law.tag(), t, evals));
    }
    if t == 0.0 {
        let evals =
            (0..=n_max).map(|n| EvalResult::new(if n == 0 { 1.0 } else { 0.0 }, 0.0, Method::ClosedForm)).collect();
        return Ok(CountingDistribution::from_evals(law.tag(), t, evals));
    }
    // p_n = Q_n − Q_(n+1), with Q_n the grid mass of φ^(*n) below t
    let grid = GridFunction::linspace(0.0, t, CUSTOM_CELLS + 1);
    let base = cell_masses(law, &grid)?;
    let mut cells = base.clone();
    let mut q_prev = 1.0;
    let mut evals = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            cells = convolve_cells(&cells, &base);
        }
        let q = cells.iter().sum::<f64>();
        let p = (q_prev - q).max(0.0);
        evals.push(EvalResult::new(p, t / CUSTOM_CELLS as f64, Method::Series));
        q_prev = q;
    }
    evals[0] = EvalResult::new(law.survival(t)?, 4.0 * f64::EPSILON, Method::ClosedForm);
    Ok(CountingDistribution::from_evals(law.tag(), t, evals))
}

/// Starting n_max for [`counting_probs_auto`], doubled as needed.
pub const DEFAULT_N_MAX: usize = 64;
const N_MAX_CAP: usize = 1 << 12;

/// [`counting_probs`] with n_max doubled from 64 until the tail mass drops
/// below 1e-8 or n_max reaches 4096.
pub fn counting_probs_auto(law: &WaitingTimeLaw, t: f64) -> Result<CountingDistribution> {
    let mut n_max = DEFAULT_N_MAX;
    loop {
        let d = counting_probs(law, t, n_max)?;
        if d.tail_mass < 1e-8 || n_max >= N_MAX_CAP {
            return Ok(d);
        }
        n_max *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RenewalMethod {
    Analytic,
    SeriesSum,
    Laplace,
}

/// m(t) = E N(t).
pub fn renewal_function(law: &WaitingTimeLaw, t: f64, method: RenewalMethod) -> Result<EvalResult> {
    check_time(t)?;
    match method {
        RenewalMethod::Analytic => match law {
            WaitingTimeLaw::MittagLeffler(p) => p.renewal_function(t),
            WaitingTimeLaw::Exponential(l) => Ok(EvalResult::exact(l * t, Method::ClosedForm)),
            WaitingTimeLaw::Delta(t0) => Ok(EvalResult::new((t / t0).floor(), 0.0, Method::ClosedForm)),
            _ => Err(Error::Domain(format!("no closed-form renewal function for {}", law.tag()))),
        },
        RenewalMethod::SeriesSum => match law {
            WaitingTimeLaw::Delta(t0) => Ok(EvalResult::new((t / t0).floor(), 0.0, Method::ClosedForm)),
            WaitingTimeLaw::Stable(w) => w.renewal_function(t),
            _ if t == 0.0 => Ok(EvalResult::exact(0.0, Method::Series)),
            _ => renewal_series(|n| law.erlang_cdf(n, t), RENEWAL_CAP),
        },
        RenewalMethod::Laplace => {
            match law {
                WaitingTimeLaw::Delta(_) => {
                    return Err(Error::Domain("a delay factor cannot be inverted on the contour".into()))
                }
                WaitingTimeLaw::Stable(w) if w.beta().get() > 0.5 => {
                    return Err(Error::Domain("e^(-s^β) grows on the inversion contour for β > 1/2".into()))
                }
                _ => {}
            }
            if t == 0.0 {
                return Ok(EvalResult::exact(0.0, Method::LaplaceInversion));
            }
            talbot_invert(
                |s| {
                    let phi = law.laplace(s);
                    phi / (s * (Qd::ONE - phi))
                },
                t,
                DEFAULT_NODES,
            )
        }
    }
}

/// m(t) − ∫_0^t [1 + m(t−u)] φ(u) du on a uniform grid from 0, the integral
/// taken cell by cell with exact cell masses and m averaged over each cell.
pub fn renewal_equation_residual(law: &WaitingTimeLaw, m: &GridFunction) -> Result<GridFunction> {
    if !law.has_pdf() {
        return Err(Error::Degenerate("the renewal equation needs a waiting-time density"));
    }
    check_grid(m.grid())?;
    let w = cell_masses(law, m.grid())?;
    let v = m.values();
    let r = (0..v.len())
        .map(|k| {
            let conv: f64 = (0..k).map(|j| w[j] * (1.0 + 0.5 * (v[k - j] + v[k - j - 1]))).sum();
            v[k] - conv
        })
        .collect();
    GridFunction::new(m.grid().to_vec(), r)
}

/// φ̃(s) recovered from the renewal transform: s m̃/(1 + s m̃).
pub fn laplace_from_renewal(m_tilde: Cqd, s: Cqd) -> Cqd {
    let sm = s * m_tilde;
    sm / (sm + Qd::ONE)
}

/// The renewal transform φ̃/(s(1 − φ̃)).
pub fn renewal_transform(law: &WaitingTimeLaw, s: Cqd) -> Cqd {
    let phi = law.laplace(s);
    phi / (s * (Qd::ONE - phi))
}
