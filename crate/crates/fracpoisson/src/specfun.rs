//! Mittag-Leffler, Wright and M-Wright functions on the real line.
//!
//! Power series are summed in quad-double arithmetic from cached
//! coefficient tables, so alternating series whose terms dwarf their sum
//! still deliver double-precision results. Large negative arguments switch
//! to the algebraic asymptotic expansion (Mittag-Leffler) or to Zolotarev's
//! integral representation (M-Wright).

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, ln_gamma_qd, rgamma, sin_pi};
use crate::quad::gauss_kronrod;
use crate::xprec::Qd;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Fractional order β ∈ (0, 1].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct Order(f64);

impl Order {
    pub fn new(beta: f64) -> Result<Order> {
        if beta > 0.0 && beta <= 1.0 {
            Ok(Order(beta))
        } else {
            Err(Error::Domain(format!("order {beta} outside (0, 1]")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// β = 1: exponential waiting times, delta-distributed stable law.
    #[inline]
    pub fn is_degenerate(self) -> bool {
        self.0 == 1.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Asymptotic,
    ClosedForm,
    LaplaceInversion,
    Integral,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
            Method::ClosedForm => "closed_form",
            Method::LaplaceInversion => "laplace_inversion",
            Method::Integral => "integral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value together with an upper bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: f64, abs_err: f64, method: Method) -> EvalResult {
        EvalResult { value, abs_err, method }
    }

    pub(crate) fn exact(value: f64, method: Method) -> EvalResult {
        EvalResult { value, abs_err: ulp(value), method }
    }
}

pub const DEFAULT_TOL: f64 = 1e-12;

/// Series are summed while |z|^(1/α) stays below this; the largest term is
/// then about e^57, far inside the quad-double budget.
pub const SERIES_REACH: f64 = 57.0;

/// Largest admissible ratio between the biggest series term and the sum.
pub const CANCELLATION_BUDGET: f64 = 1e30;

const SMALL_REL: f64 = 1e-20;
const MAX_TERMS: usize = 40_000;

#[inline]
pub(crate) fn ulp(x: f64) -> f64 {
    x.abs() * f64::EPSILON
}

fn check_tol(r: EvalResult, tol: f64) -> Result<EvalResult> {
    if !r.value.is_finite() {
        return Err(Error::NonConvergence(format!("non-finite value {}", r.value)));
    }
    if r.abs_err <= tol * r.value.abs().max(1.0) {
        Ok(r)
    } else {
        Err(Error::Precision { estimate: r.value, bound: r.abs_err, requested: tol })
    }
}

fn finite_or(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {x} is not finite")))
    }
}

// ---------------------------------------------------------------------------
// series bookkeeping

pub(crate) struct SeriesSum {
    pub sum: Qd,
    pub max_term: f64,
    pub tail: f64,
    pub terms: usize,
}

impl SeriesSum {
    /// Rounding accumulated in quad-double plus the truncated tail.
    pub fn bound(&self) -> f64 {
        8.0 * self.terms as f64 * Qd::EPS * self.max_term + self.tail
    }

    pub fn cancellation(&self) -> bool {
        !self.sum.is_finite() || !(self.max_term <= CANCELLATION_BUDGET * self.sum.hi().abs())
    }
}

struct Tracker {
    sum: Qd,
    max_term: f64,
    prev: f64,
    run: u32,
    terms: usize,
}

impl Tracker {
    fn new() -> Tracker {
        Tracker { sum: Qd::ZERO, max_term: 0.0, prev: f64::INFINITY, run: 0, terms: 0 }
    }

    /// Adds a term; true once three successive decreasing terms are
    /// negligible against the partial sum.
    fn push(&mut self, t: Qd) -> bool {
        self.sum += t;
        self.terms += 1;
        let a = t.hi().abs();
        if a == 0.0 {
            // underflowed term
            self.prev = 0.0;
            self.run += 1;
            return self.run >= 3;
        }
        self.max_term = self.max_term.max(a);
        let falling = a < self.prev;
        self.prev = a;
        if falling && (a < SMALL_REL * self.sum.hi().abs() || a < 1e-300) {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= 3
    }

    fn finish(self) -> SeriesSum {
        SeriesSum { sum: self.sum, max_term: self.max_term, tail: 2.0 * self.prev, terms: self.terms }
    }
}

fn too_many_terms(what: &str) -> Error {
    Error::NonConvergence(format!("{what}: series needs more than {MAX_TERMS} terms"))
}

// ---------------------------------------------------------------------------
// coefficient tables

type Key = (u64, u64);

fn key(a: f64, b: f64) -> Key {
    (a.to_bits(), b.to_bits())
}

/// lnΓ(αk + μ) and the ratios Γ(α(k-1)+μ)/Γ(αk+μ), for μ > 0.
struct MlTable {
    ln_g: Vec<Qd>,
    ratio: Vec<Qd>,
}

fn ml_table(alpha: f64, mu: f64, len: usize) -> Arc<MlTable> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Arc<MlTable>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let old = memo.lock().unwrap().get(&key(alpha, mu)).cloned();
    if let Some(t) = &old {
        if t.ln_g.len() >= len {
            return t.clone();
        }
    }
    let (mut ln_g, mut ratio) = match old {
        Some(t) => (t.ln_g.clone(), t.ratio.clone()),
        None => (Vec::new(), Vec::new()),
    };
    let len = len.max(2 * ln_g.len()).max(64);
    let (qa, qm) = (Qd::from_f64(alpha), Qd::from_f64(mu));
    for k in ln_g.len()..len {
        let l = ln_gamma_qd(qa.mul_f64(k as f64) + qm).0;
        let r = if k == 0 { Qd::ZERO } else { (ln_g[k - 1] - l).exp() };
        ln_g.push(l);
        ratio.push(r);
    }
    let t = Arc::new(MlTable { ln_g, ratio });
    memo.lock().unwrap().insert(key(alpha, mu), t.clone());
    t
}

/// Coefficients 1/(k! Γ(λk + μ)) as mantissa · 2^exponent; zero at poles.
struct WrightTable {
    mant: Vec<Qd>,
    exp2: Vec<i32>,
    ln_fact: Qd,
}

fn wright_table(lambda: f64, mu: f64, len: usize) -> Arc<WrightTable> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Arc<WrightTable>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let old = memo.lock().unwrap().get(&key(lambda, mu)).cloned();
    if let Some(t) = &old {
        if t.mant.len() >= len {
            return t.clone();
        }
    }
    let (mut mant, mut exp2, mut ln_fact) = match old {
        Some(t) => (t.mant.clone(), t.exp2.clone(), t.ln_fact),
        None => (Vec::new(), Vec::new(), Qd::ZERO),
    };
    let len = len.max(2 * mant.len()).max(64);
    let (ql, qm) = (Qd::from_f64(lambda), Qd::from_f64(mu));
    let ln2 = Qd::ln2();
    for k in mant.len()..len {
        if k > 0 {
            ln_fact += Qd::from_f64(k as f64).ln();
        }
        let (lg, sign) = ln_gamma_qd(ql.mul_f64(k as f64) + qm);
        if !lg.is_finite() {
            mant.push(Qd::ZERO);
            exp2.push(0);
            continue;
        }
        let l = -(ln_fact + lg);
        let e = (l.hi() / LN_2).round();
        mant.push((l - ln2.mul_f64(e)).exp().mul_f64(sign));
        exp2.push(e as i32);
    }
    let t = Arc::new(WrightTable { mant, exp2, ln_fact });
    memo.lock().unwrap().insert(key(lambda, mu), t.clone());
    t
}

// ---------------------------------------------------------------------------
// Mittag-Leffler

fn ml_series(alpha: f64, mu: f64, z: f64) -> Result<SeriesSum> {
    let zq = Qd::from_f64(z);
    let guess = (2.5 * z.abs().powf(1.0 / alpha) / alpha) as usize + 64;
    let mut table = ml_table(alpha, mu, guess.min(MAX_TERMS));
    let mut term = (-table.ln_g[0]).exp();
    let mut tr = Tracker::new();
    tr.push(term);
    let mut k = 1;
    loop {
        if k >= table.ratio.len() {
            if k >= MAX_TERMS {
                return Err(too_many_terms("Mittag-Leffler"));
            }
            table = ml_table(alpha, mu, 2 * k);
        }
        term = term * zq * table.ratio[k];
        if tr.push(term) {
            break;
        }
        k += 1;
    }
    Ok(tr.finish())
}

/// ln|1/Γ(x)| and the sign of 1/Γ(x); sign 0 at the poles.
fn ln_abs_rgamma(x: f64) -> (f64, f64) {
    if x <= 0.0 && x == x.trunc() {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x > 0.0 {
        return (-ln_gamma(x), 1.0);
    }
    // reflection: 1/Γ(x) = Γ(1-x) sin(πx)/π
    let s = sin_pi(x);
    (ln_gamma(1.0 - x) + s.abs().ln() - PI.ln(), s.signum())
}

/// -Σ z^(-k)/Γ(μ-αk), truncated at the smallest term. Valid for z < 0 and
/// 0 < α ≤ 1, where no exponentially growing contribution exists.
fn ml_asymptotic(alpha: f64, mu: f64, z: f64) -> EvalResult {
    let lz = z.abs().ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut max_term: f64 = 0.0;
    let mut k = 1usize;
    let mut omitted = 0.0;
    while k < 100_000 {
        let (lr, sign) = ln_abs_rgamma(mu - alpha * k as f64);
        if sign != 0.0 {
            let mag = (lr - k as f64 * lz).exp();
            if mag > prev {
                omitted = mag;
                break;
            }
            let parity = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let term = -sign * parity * mag;
            sum += term;
            max_term = max_term.max(mag);
            prev = mag;
            if mag < 1e-18 * sum.abs() {
                omitted = mag;
                break;
            }
        }
        k += 1;
    }
    let err = omitted + 4.0 * k as f64 * f64::EPSILON * max_term + ulp(sum);
    EvalResult::new(sum, err, Method::Asymptotic)
}

/// E_{α,μ}(z) to the default tolerance.
pub fn ml(alpha: f64, mu: f64, z: f64) -> Result<EvalResult> {
    ml_tol(alpha, mu, z, DEFAULT_TOL)
}

/// E_{α,μ}(z) with the error bound required below `tol · max(1, |E|)`.
pub fn ml_tol(alpha: f64, mu: f64, z: f64, tol: f64) -> Result<EvalResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("Mittag-Leffler alpha = {alpha} must be positive")));
    }
    finite_or(mu, "mu")?;
    finite_or(z, "z")?;
    if z == 0.0 {
        return Ok(EvalResult::exact(rgamma(mu), Method::ClosedForm));
    }
    if mu == 1.0 && alpha == 1.0 {
        return Ok(EvalResult::exact(z.exp(), Method::ClosedForm));
    }
    if mu == 1.0 && alpha == 2.0 {
        let v = if z < 0.0 { (-z).sqrt().cos() } else { z.sqrt().cosh() };
        return Ok(EvalResult::new(v, 2.0 * f64::EPSILON * v.abs().max(1.0), Method::ClosedForm));
    }
    if mu <= 0.0 {
        // E_{α,μ}(z) = 1/Γ(μ) + z E_{α,μ+α}(z)
        let r = ml_tol(alpha, mu + alpha, z, tol)?;
        let v = rgamma(mu) + z * r.value;
        let err = z.abs() * r.abs_err + 2.0 * ulp(v).max(ulp(z * r.value));
        return check_tol(EvalResult::new(v, err, r.method), tol);
    }
    let reach = z.abs().powf(1.0 / alpha);
    if z > 0.0 && reach > 700.0 {
        return Err(Error::NonConvergence(format!("E_({alpha},{mu})({z}) overflows")));
    }
    if z < 0.0 && reach > SERIES_REACH {
        if alpha > 1.0 {
            return Err(Error::Domain(format!(
                "E_({alpha},{mu})({z}): alpha > 1 supported only for |z|^(1/alpha) <= {SERIES_REACH}"
            )));
        }
        return check_tol(ml_asymptotic(alpha, mu, z), tol);
    }
    let s = ml_series(alpha, mu, z)?;
    let v = s.sum.to_f64();
    if s.cancellation() {
        return Err(Error::Cancellation { estimate: v, max_term: s.max_term });
    }
    check_tol(EvalResult::new(v, s.bound() + ulp(v), Method::Series), tol)
}

/// Σ_{k≥n} C(k-shift, n-shift) Γ(αn+1)/Γ(αk+1) y^(k-n); shift 0 is the
/// derivative series divided by its leading coefficient.
fn deriv_series(n: u32, alpha: f64, y: f64, shift: usize) -> Result<SeriesSum> {
    let n = n as usize;
    let yq = Qd::from_f64(y);
    let guess = n + (2.5 * y.abs().powf(1.0 / alpha) / alpha) as usize + 64;
    let mut table = ml_table(alpha, 1.0, guess.min(MAX_TERMS));
    let mut term = Qd::ONE;
    let mut tr = Tracker::new();
    tr.push(term);
    let mut k = n + 1;
    loop {
        if k >= table.ratio.len() {
            if k >= MAX_TERMS {
                return Err(too_many_terms("Mittag-Leffler derivative"));
            }
            table = ml_table(alpha, 1.0, 2 * k);
        }
        term = term * yq * table.ratio[k] * Qd::from_f64((k - shift) as f64) / Qd::from_f64((k - n) as f64);
        if tr.push(term) {
            break;
        }
        k += 1;
    }
    Ok(tr.finish())
}

/// Above this |z|^(1/α) the derivative series exceeds the cancellation
/// budget no matter how the terms are summed.
const DERIV_REACH: f64 = 90.0;

fn deriv_guard(n: u32, alpha: f64, x: f64) -> Result<()> {
    let reach = x.abs().powf(1.0 / alpha);
    if reach > DERIV_REACH {
        return Err(Error::Cancellation { estimate: f64::NAN, max_term: reach.exp() });
    }
    if n as usize + 16 >= MAX_TERMS {
        return Err(too_many_terms("Mittag-Leffler derivative"));
    }
    Ok(())
}

/// n-th derivative of E_α at z ≤ 0 by the term-wise differentiated series.
///
/// Returns [`Error::Cancellation`] when the terms outgrow the result by more
/// than the cancellation budget; the Laplace-inversion route then applies.
pub fn ml_deriv(n: u32, alpha: f64, z: f64) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("derivative needs alpha in (0, 1], got {alpha}")));
    }
    finite_or(z, "z")?;
    if z > 0.0 {
        return Err(Error::Domain(format!("derivative needs z <= 0, got {z}")));
    }
    if n == 0 {
        return ml(alpha, 1.0, z);
    }
    if alpha == 1.0 {
        return Ok(EvalResult::exact(z.exp(), Method::ClosedForm));
    }
    let ln_lead = ln_gamma(n as f64 + 1.0) - ln_gamma(alpha * n as f64 + 1.0);
    if z == 0.0 {
        return Ok(EvalResult::new(ln_lead.exp(), 4.0 * ulp(ln_lead.exp()), Method::ClosedForm));
    }
    deriv_guard(n, alpha, z)?;
    let s = deriv_series(n, alpha, z, 0)?;
    let tab = ml_table(alpha, 1.0, n as usize + 1);
    let lead = (ln_gamma_qd(Qd::from_f64(n as f64 + 1.0)).0 - tab.ln_g[n as usize]).exp();
    let v = (lead * s.sum).to_f64();
    if s.cancellation() {
        return Err(Error::Cancellation { estimate: v, max_term: s.max_term * lead.to_f64() });
    }
    let err = lead.to_f64() * s.bound() + ulp(v);
    check_tol(EvalResult::new(v, err, Method::Series), DEFAULT_TOL)
}

/// x^n/n! · E_β^(n)(-x): the counting probability of the fractional
/// Poisson process at x = t^β, without forming the derivative itself.
pub fn ml_deriv_scaled(n: u32, beta: f64, x: f64) -> Result<EvalResult> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!("order {beta} outside (0, 1]")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("scaled derivative needs x >= 0, got {x}")));
    }
    if n == 0 {
        return ml(beta, 1.0, -x);
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0, Method::ClosedForm));
    }
    let nf = n as f64;
    if beta == 1.0 {
        let v = (nf * x.ln() - x - ln_gamma(nf + 1.0)).exp();
        let err = v * f64::EPSILON * (4.0 + x + nf * x.ln().abs());
        return Ok(EvalResult::new(v, err, Method::ClosedForm));
    }
    deriv_guard(n, beta, x)?;
    let s = deriv_series(n, beta, -x, 0)?;
    let tab = ml_table(beta, 1.0, n as usize + 1);
    let ln_lead = Qd::from_f64(x).ln().mul_f64(nf) - tab.ln_g[n as usize];
    if s.sum.hi() <= 0.0 || s.cancellation() {
        let lead = ln_lead.exp().to_f64();
        return Err(Error::Cancellation { estimate: lead * s.sum.to_f64(), max_term: lead * s.max_term });
    }
    let v = (ln_lead + s.sum.ln()).exp().to_f64();
    let err = v * (s.bound() / s.sum.hi()) + ulp(v);
    check_tol(EvalResult::new(v, err, Method::Series), DEFAULT_TOL)
}

/// Σ_{k≥n} (-1)^(k-n) C(k-1, n-1) x^k / Γ(βk+1) for n ≥ 1: the probability
/// that the n-th event of the fractional Poisson process has occurred by
/// time t, at x = t^β.
pub fn ml_erlang_cdf_scaled(n: u32, beta: f64, x: f64) -> Result<EvalResult> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!("order {beta} outside (0, 1]")));
    }
    if n == 0 {
        return Err(Error::Domain("Erlang index starts at 1".into()));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Erlang distribution needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0, Method::ClosedForm));
    }
    if beta == 1.0 {
        return Ok(gamma_cdf(n, x));
    }
    deriv_guard(n, beta, x)?;
    let s = deriv_series(n, beta, -x, 1)?;
    let tab = ml_table(beta, 1.0, n as usize + 1);
    let ln_lead = Qd::from_f64(x).ln().mul_f64(n as f64) - tab.ln_g[n as usize];
    if s.sum.hi() <= 0.0 || s.cancellation() {
        let lead = ln_lead.exp().to_f64();
        return Err(Error::Cancellation { estimate: lead * s.sum.to_f64(), max_term: lead * s.max_term });
    }
    let v = (ln_lead + s.sum.ln()).exp().to_f64();
    let err = v * (s.bound() / s.sum.hi()) + ulp(v);
    check_tol(EvalResult::new(v.min(1.0), err, Method::Series), DEFAULT_TOL)
}

/// Regularised lower incomplete Gamma P(n, x) for integer n.
fn gamma_cdf(n: u32, x: f64) -> EvalResult {
    let pmf = |k: f64| (k * x.ln() - x - ln_gamma(k + 1.0)).exp();
    let nf = n as f64;
    let (mut sum, mut k) = (0.0, if x < nf { nf } else { 0.0 });
    if x < nf {
        // upper tail of the Poisson sum; terms fall at least geometrically
        loop {
            let p = pmf(k);
            sum += p;
            if p <= 1e-18 * sum {
                break;
            }
            k += 1.0;
        }
    } else {
        while k < nf {
            sum += pmf(k);
            k += 1.0;
        }
        sum = 1.0 - sum;
    }
    EvalResult::new(sum, 16.0 * f64::EPSILON * (sum + nf * f64::EPSILON), Method::ClosedForm)
}

// ---------------------------------------------------------------------------
// Wright

/// Σ_{k≥from} z^k / (k! Γ(λk+μ)) in quad-double.
pub(crate) fn wright_sum(lambda: f64, mu: f64, z: f64, from: usize) -> Result<SeriesSum> {
    let zq = Qd::from_f64(z);
    let guess = (3.0 * z.abs().powf(1.0 / (1.0 + lambda)).max(1.0)) as usize + 64;
    let mut table = wright_table(lambda, mu, guess.min(MAX_TERMS));
    // z^k = pw · 2^pe
    let mut pw = Qd::ONE;
    let mut pe = 0i32;
    let mut tr = Tracker::new();
    let mut k = 0;
    loop {
        if k >= table.mant.len() {
            if k >= MAX_TERMS {
                return Err(too_many_terms("Wright"));
            }
            table = wright_table(lambda, mu, 2 * k);
        }
        if k >= from && !table.mant[k].is_zero() {
            let e = table.exp2[k] + pe;
            let term = if e < -1100 { Qd::ZERO } else { (table.mant[k] * pw).ldexp(e) };
            if tr.push(term) {
                break;
            }
        }
        pw *= zq;
        if pw.is_zero() {
            tr.prev = 0.0;
            break;
        }
        let (_, ex) = libm::frexp(pw.hi());
        pw = pw.ldexp(-ex);
        pe += ex;
        k += 1;
    }
    Ok(tr.finish())
}

/// W_{λ,μ}(z) by its defining series, for λ > -1.
pub fn wright(lambda: f64, mu: f64, z: f64) -> Result<EvalResult> {
    if !(lambda > -1.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("Wright lambda = {lambda} must exceed -1")));
    }
    finite_or(mu, "mu")?;
    finite_or(z, "z")?;
    let s = wright_sum(lambda, mu, z, 0)?;
    let v = s.sum.to_f64();
    if s.cancellation() {
        return Err(Error::NonConvergence(format!(
            "W_({lambda},{mu})({z}): largest term {:e} against sum {v:e}",
            s.max_term
        )));
    }
    check_tol(EvalResult::new(v, s.bound() + ulp(v), Method::Series), DEFAULT_TOL)
}

// ---------------------------------------------------------------------------
// Zolotarev–Kanter representation

/// ln(sin u / u), accurate for small u.
fn ln_sinc(u: f64) -> f64 {
    if u < 0.25 {
        let u2 = u * u;
        -u2 * (1.0 / 6.0
            + u2 * (1.0 / 180.0
                + u2 * (1.0 / 2835.0 + u2 * (1.0 / 37800.0 + u2 * (1.0 / 467775.0 + u2 * 691.0 / 3831077250.0)))))
    } else {
        (u.sin() / u).ln()
    }
}

/// A(0) = (1-ν) ν^(ν/(1-ν)) for Kanter's function
/// A(φ) = (sin νφ / sin φ)^(1/(1-ν)) · sin((1-ν)φ) / sin νφ.
pub(crate) fn kanter_a0(nu: f64) -> f64 {
    (1.0 - nu) * nu.powf(nu / (1.0 - nu))
}

/// ln(A(φ)/A(0)) on (0, π); grows from 0 to +∞.
pub(crate) fn kanter_excess(nu: f64, phi: f64) -> f64 {
    let a = ln_sinc(nu * phi);
    (a - ln_sinc(phi)) / (1.0 - nu) + ln_sinc((1.0 - nu) * phi) - a
}

/// Above this value of c·A(0) the M-Wright and stable-CDF series lose too
/// much to cancellation and the integral takes over.
pub(crate) const INTEGRAL_SWITCH: f64 = 30.0;

/// M_ν(x) by Zolotarev's integral, for x > 0:
/// M_ν(x) = x^(ν/(1-ν)) / (π(1-ν)) ∫_0^π A e^(-cA) dφ with c = x^(1/(1-ν)).
pub fn m_wright_integral(nu: f64, x: f64) -> Result<EvalResult> {
    check_nu(nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("integral route needs x > 0, got {x}")));
    }
    let a0 = kanter_a0(nu);
    let ca0 = x.powf(1.0 / (1.0 - nu)) * a0;
    let f = |phi: f64| {
        let d = kanter_excess(nu, phi);
        (d - ca0 * d.exp_m1()).exp()
    };
    let ln_pre = nu / (1.0 - nu) * x.ln() - (PI * (1.0 - nu)).ln() + a0.ln() - ca0;
    // the integral is below π, so the result underflows
    if ln_pre + PI.ln() < -750.0 {
        return Ok(EvalResult::new(0.0, f64::MIN_POSITIVE, Method::Integral));
    }
    let (value, abs_err) = peaked_integral(f, ca0)?;
    let v = (ln_pre + value.ln()).exp();
    let rel = abs_err / value + 8.0 * f64::EPSILON * (1.0 + ca0);
    Ok(EvalResult::new(v, v * rel, Method::Integral))
}

/// ∫_0^π f for integrands peaked at φ = 0 with width about 1/√(c·A(0)),
/// split geometrically so that the peak is always resolved.
pub(crate) fn peaked_integral<F: Fn(f64) -> f64>(f: F, ca0: f64) -> Result<(f64, f64)> {
    let mut lo = 0.0;
    let mut hi = (1.0 / ca0.max(1e-300).sqrt()).min(PI);
    let (mut value, mut err) = (0.0, 0.0);
    loop {
        let q = gauss_kronrod(&f, lo, hi, 1e-16 * value, 1e-14)?;
        value += q.value;
        err += q.abs_err;
        if hi >= PI {
            break;
        }
        lo = hi;
        hi = (4.0 * hi).min(PI);
    }
    Ok((value, err))
}

/// M_ν(x) = W_{-ν,1-ν}(-x) by the series.
pub fn m_wright_series(nu: f64, x: f64) -> Result<EvalResult> {
    check_nu(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("M-Wright needs x >= 0, got {x}")));
    }
    let s = wright_sum(-nu, 1.0 - nu, -x, 0)?;
    let v = s.sum.to_f64();
    if s.cancellation() {
        return Err(Error::Cancellation { estimate: v, max_term: s.max_term });
    }
    Ok(EvalResult::new(v, s.bound() + ulp(v), Method::Series))
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("M-Wright order {nu} outside (0, 1)")))
    }
}

/// M-Wright function M_ν(x) for 0 < ν < 1, x ≥ 0.
///
/// ν = 1/2 uses exp(-x²/4)/√π; otherwise the series, or Zolotarev's integral
/// once the series would cancel too heavily.
pub fn m_wright(nu: f64, x: f64) -> Result<EvalResult> {
    check_nu(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("M-Wright needs x >= 0, got {x}")));
    }
    if nu == 0.5 {
        let v = (-0.25 * x * x).exp() / PI.sqrt();
        return Ok(EvalResult::new(v, v * f64::EPSILON * (3.0 + 0.25 * x * x), Method::ClosedForm));
    }
    if x > 0.0 && x.powf(1.0 / (1.0 - nu)) * kanter_a0(nu) > INTEGRAL_SWITCH {
        return check_tol(m_wright_integral(nu, x)?, DEFAULT_TOL);
    }
    check_tol(m_wright_series(nu, x)?, DEFAULT_TOL)
}
