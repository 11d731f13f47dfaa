//! Numerical Laplace inversion on the fixed Talbot contour, and the
//! transform pairs it is checked against.
//!
//! The contour sum is carried out in quad-double arithmetic: with M nodes
//! the terms reach e^(2M/5) while the result is O(1), so M = 128 needs
//! about 22 digits more than the answer.
//!
//! Transforms that grow near the negative real axis, such as e^(-s^β) for
//! β > 1/2, are inverted on a hyperbola that stays out of that sector.

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::report::nan_max;
use crate::specfun::{ml, ml_deriv_scaled, ulp, EvalResult, Method, Order};
use crate::stable::{inverse_subordinator_pdf, stable_cdf, stable_pdf};
use crate::xprec::{Cqd, Qd};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

pub const DEFAULT_NODES: usize = 64;

/// A transform value at a point s, with κ for Laplace-Laplace objects.
#[derive(Clone, Copy, Debug)]
pub struct LaplaceSample {
    pub s: Cqd,
    pub value: Cqd,
    pub kappa: Option<f64>,
}

/// Principal power s^p, cut along the negative real axis.
pub fn spow(s: Cqd, p: f64) -> Cqd {
    s.powf(Qd::from_f64(p))
}

struct Nodes {
    // s_k = r (a_k + i b_k), weight 1 + i sigma_k
    a: Vec<Qd>,
    b: Vec<Qd>,
    sigma: Vec<Qd>,
}

fn nodes(m: usize) -> Arc<Nodes> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<Nodes>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(n) = memo.lock().unwrap().get(&m) {
        return n.clone();
    }
    let mut nd = Nodes { a: vec![Qd::ONE], b: vec![Qd::ZERO], sigma: vec![Qd::ZERO] };
    for k in 1..m {
        let theta = Qd::pi().mul_f64(k as f64).div_f64(m as f64);
        let (s, c) = theta.sin_cos();
        let cot = c / s;
        let a = theta * cot;
        nd.a.push(a);
        nd.b.push(theta);
        nd.sigma.push(theta + (a - Qd::ONE) * cot);
    }
    let nd = Arc::new(nd);
    memo.lock().unwrap().insert(m, nd.clone());
    nd
}

/// One fixed-Talbot contour sum with `m` nodes.
pub fn talbot_once<F: Fn(Cqd) -> Cqd + ?Sized>(transform: &F, t: f64, m: usize) -> Result<Qd> {
    let nd = nodes(m);
    let tq = Qd::from_f64(t);
    let rt = Qd::from_f64(2.0 * m as f64).div_f64(5.0);
    let r = rt / tq;
    let f0 = transform(Cqd::real(r));
    let mut sum = f0.re.mul_f64(0.5) * rt.exp();
    for k in 1..m {
        let e = Cqd::new(rt * nd.a[k], rt * nd.b[k]).exp();
        // far along the contour e^(st) underflows while F(s) may overflow
        if e.re.is_zero() && e.im.is_zero() {
            continue;
        }
        let s = Cqd::new(r * nd.a[k], r * nd.b[k]);
        let fs = transform(s);
        sum += (e * fs * Cqd::new(Qd::ONE, nd.sigma[k])).re;
    }
    let v = sum * r.div_f64(m as f64);
    if !v.is_finite() {
        return Err(Error::NonConvergence(format!("Talbot sum at t = {t} is not finite")));
    }
    Ok(v)
}

/// Contour sums of several transforms sharing each node evaluation;
/// `transform(s, out)` fills `out` with the transform values at s.
fn talbot_once_many<F: Fn(Cqd, &mut [Cqd]) + ?Sized>(transform: &F, count: usize, t: f64, m: usize) -> Vec<Qd> {
    let nd = nodes(m);
    let rt = Qd::from_f64(2.0 * m as f64).div_f64(5.0);
    let r = rt / Qd::from_f64(t);
    let mut buf = vec![Cqd::real(Qd::ZERO); count];
    transform(Cqd::real(r), &mut buf);
    let e0 = rt.exp();
    let mut sums: Vec<Qd> = buf.iter().map(|f| f.re.mul_f64(0.5) * e0).collect();
    for k in 1..m {
        let e = Cqd::new(rt * nd.a[k], rt * nd.b[k]).exp();
        if e.re.is_zero() && e.im.is_zero() {
            continue;
        }
        let s = Cqd::new(r * nd.a[k], r * nd.b[k]);
        transform(s, &mut buf);
        let w = e * Cqd::new(Qd::ONE, nd.sigma[k]);
        for (acc, f) in sums.iter_mut().zip(&buf) {
            *acc += (w * *f).re;
        }
    }
    let scale = r.div_f64(m as f64);
    sums.into_iter().map(|v| v * scale).collect()
}

fn check_inversion_args(t: f64, nodes: usize) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("inversion needs t > 0, got {t}")));
    }
    if nodes < 16 {
        return Err(Error::Domain(format!("need at least 16 nodes, got {nodes}")));
    }
    Ok(())
}

fn judge(t: f64, half: Qd, mid: Qd, fine: Qd) -> Result<EvalResult> {
    if !(half.is_finite() && mid.is_finite() && fine.is_finite()) {
        return Err(Error::NonConvergence(format!("Talbot sum at t = {t} is not finite")));
    }
    let d1 = (half - mid).abs().to_f64();
    let d2 = (mid - fine).abs().to_f64();
    let v = fine.to_f64();
    if d2 > d1 && d2 > 1e-14 * v.abs().max(1.0) {
        return Err(Error::Inversion { coarse: mid.to_f64(), fine: v, d_coarse: d1, d_fine: d2 });
    }
    Ok(EvalResult::new(v, d2 + ulp(v), Method::LaplaceInversion))
}

/// Inverse Laplace transform at t > 0 by the fixed Talbot method.
///
/// The contour is summed with `nodes/2`, `nodes` and `2·nodes` points; the
/// finest value is returned with `|f_nodes − f_2nodes|` as its error bound.
/// If the difference grows under doubling the inversion is reported as
/// non-convergent.
pub fn talbot_invert<F: Fn(Cqd) -> Cqd>(transform: F, t: f64, nodes: usize) -> Result<EvalResult> {
    check_inversion_args(t, nodes)?;
    let half = talbot_once(&transform, t, nodes / 2)?;
    let mid = talbot_once(&transform, t, nodes)?;
    let fine = talbot_once(&transform, t, 2 * nodes)?;
    judge(t, half, mid, fine)
}

/// [`talbot_invert`] for `count` transforms evaluated together, so work
/// shared between them at a node is done once. Each result is judged on
/// its own.
pub fn talbot_invert_many<F: Fn(Cqd, &mut [Cqd])>(
    transform: F,
    count: usize,
    t: f64,
    nodes: usize,
) -> Result<Vec<Result<EvalResult>>> {
    check_inversion_args(t, nodes)?;
    let half = talbot_once_many(&transform, count, t, nodes / 2);
    let mid = talbot_once_many(&transform, count, t, nodes);
    let fine = talbot_once_many(&transform, count, t, 2 * nodes);
    Ok((0..count).map(|i| judge(t, half[i], mid[i], fine[i])).collect())
}

/// Largest μt on the hyperbolic contour; the terms reach e^(μt).
const HYPERBOLA_MAX_MT: f64 = 60.0;

/// Half-angle above which the requested node count is used as is.
const HYPERBOLA_WIDE_ALPHA: f64 = 0.15;

/// Shape α, step h and μt of the hyperbola s(u) = μ(1 + sin(iu − α)) for
/// `n` nodes per side. The contour and its shifts by ±i·d stay within
/// |arg s| < π − `sector`; h and μt balance the discretisation error
/// e^(μt(1 − sin(α − d)) − 2πd/h) against the truncation error
/// e^(μt(1 − sin α cosh(nh))).
fn hyperbola_params(n: usize, sector: f64) -> (f64, f64, f64) {
    let alpha = 0.5 * (FRAC_PI_2 - sector);
    let d = 0.9 * alpha;
    let lower = 1.0 - (alpha - d).sin();
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for j in 0..600 {
        let h = 10f64.powf(-4.0 + 4.0 * j as f64 / 599.0);
        let c = alpha.sin() * (n as f64 * h).cosh() - 1.0;
        if c <= 0.0 {
            continue;
        }
        let disc = 2.0 * PI * d / h;
        let mut e = disc / (1.0 + lower / c);
        let mut mt = e / c;
        if mt > HYPERBOLA_MAX_MT {
            mt = HYPERBOLA_MAX_MT;
            e = (disc - mt * lower).min(mt * c);
        }
        if e > best.0 {
            best = (e, h, mt);
        }
    }
    (alpha, best.1, best.2)
}

/// The convergence rate is proportional to nodes times the half-angle α, so
/// narrow contours get proportionally more nodes, up to 2^14.
fn hyperbola_nodes(nodes: usize, sector: f64) -> usize {
    let alpha = 0.5 * (FRAC_PI_2 - sector);
    let scale = (HYPERBOLA_WIDE_ALPHA / alpha).max(1.0);
    ((nodes as f64 * scale).ceil() as usize).min(1 << 14)
}

fn hyperbola_once<F: Fn(Cqd) -> Cqd + ?Sized>(transform: &F, t: f64, n: usize, sector: f64) -> Qd {
    let (alpha, h, mt) = hyperbola_params(n, sector);
    let mu = Qd::from_f64(mt / t);
    let (sa, ca) = Qd::from_f64(alpha).sin_cos();
    let tq = Qd::from_f64(t);
    let mut sum = Qd::ZERO;
    for k in 0..=n {
        let u = Qd::from_f64(h).mul_f64(k as f64);
        let eu = u.exp();
        let eiu = eu.recip();
        let (ch, sh) = ((eu + eiu).mul_f64(0.5), (eu - eiu).mul_f64(0.5));
        let s = Cqd::new(mu * (Qd::ONE - sa * ch), mu * ca * sh);
        let ds = Cqd::new(-(mu * sa * sh), mu * ca * ch);
        let e = Cqd::new(s.re * tq, s.im * tq).exp();
        if e.re.is_zero() && e.im.is_zero() {
            continue;
        }
        let term = (e * transform(s) * ds).im;
        sum += if k == 0 { term.mul_f64(0.5) } else { term };
    }
    sum * Qd::from_f64(h) / Qd::pi()
}

/// Inverse Laplace transform on a hyperbola opening to the left, for
/// transforms that grow within `sector` of the negative real axis, where
/// the Talbot contour would pass. e^(-s^β) with β > 1/2 is the case in
/// point: it grows for |arg s| > π/(2β).
///
/// Uses `nodes/2`, `nodes` and `2·nodes` points per side with the same
/// error bound and convergence test as [`talbot_invert`].
pub fn hyperbolic_invert<F: Fn(Cqd) -> Cqd>(transform: F, t: f64, nodes: usize, sector: f64) -> Result<EvalResult> {
    check_inversion_args(t, nodes)?;
    if !(0.0..FRAC_PI_2).contains(&sector) {
        return Err(Error::Domain(format!("growth sector must lie in [0, pi/2), got {sector}")));
    }
    let nodes = hyperbola_nodes(nodes, sector);
    let half = hyperbola_once(&transform, t, nodes / 2, sector);
    let mid = hyperbola_once(&transform, t, nodes, sector);
    let fine = hyperbola_once(&transform, t, 2 * nodes, sector);
    judge(t, half, mid, fine)
}

/// Both contours for a transform with a growth sector, keeping the result
/// with the smaller error bound. The growth only spoils Talbot at small t,
/// while a narrow sector makes the hyperbola converge slowly.
pub fn invert_growing<F: Fn(Cqd) -> Cqd>(transform: F, t: f64, nodes: usize, sector: f64) -> Result<EvalResult> {
    let hyperbola = hyperbolic_invert(&transform, t, nodes, sector);
    let talbot = talbot_invert(&transform, t, nodes);
    match (hyperbola, talbot) {
        (Ok(h), Ok(k)) => Ok(if k.abs_err <= h.abs_err { k } else { h }),
        (Ok(h), Err(_)) => Ok(h),
        (Err(_), Ok(k)) => Ok(k),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Half-angle about the negative real axis in which e^(-s^β) grows.
pub fn stable_growth_sector(beta: Order) -> f64 {
    (PI - FRAC_PI_2 / beta.get()).max(0.0)
}

type TransformFn = Arc<dyn Fn(Cqd) -> Cqd + Send + Sync>;
type ReferenceFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A Laplace transform together with its known original.
#[derive(Clone)]
pub struct TransformPair {
    pub name: String,
    pub transform: TransformFn,
    pub reference: Option<ReferenceFn>,
    /// Times at which the original is regular enough for pointwise checks.
    pub domain: (f64, f64),
    /// Half-angle about the negative real axis in which the transform grows;
    /// when positive the pair is inverted by [`invert_growing`].
    pub sector: f64,
    /// Set when the transform is Σ e^(-d s) F_d(s); each part is inverted at
    /// t - d, since the contour cannot carry a delay factor.
    pub delayed_parts: Option<Vec<(f64, TransformFn)>>,
}

impl std::fmt::Debug for TransformPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransformPair").field("name", &self.name).field("domain", &self.domain).finish()
    }
}

fn one_plus(z: Cqd) -> Cqd {
    z + Qd::ONE
}

impl TransformPair {
    pub fn new(
        name: impl Into<String>,
        transform: impl Fn(Cqd) -> Cqd + Send + Sync + 'static,
        reference: Option<ReferenceFn>,
        domain: (f64, f64),
    ) -> TransformPair {
        TransformPair {
            name: name.into(),
            transform: Arc::new(transform),
            reference,
            domain,
            sector: 0.0,
            delayed_parts: None,
        }
    }

    /// Inverts the transform at t.
    pub fn invert(&self, t: f64, nodes: usize) -> Result<EvalResult> {
        let Some(parts) = &self.delayed_parts else {
            if self.sector > 0.0 {
                return invert_growing(|s| (self.transform)(s), t, nodes, self.sector);
            }
            return talbot_invert(|s| (self.transform)(s), t, nodes);
        };
        let mut acc = EvalResult::new(0.0, 0.0, Method::LaplaceInversion);
        for (d, f) in parts {
            if t > *d {
                let r = talbot_invert(|s| f(s), t - d, nodes)?;
                acc.value += r.value;
                acc.abs_err += r.abs_err;
            }
        }
        Ok(acc)
    }

    pub fn with_sector(mut self, sector: f64) -> TransformPair {
        self.sector = sector;
        self
    }

    pub fn sample(&self, s: Cqd) -> LaplaceSample {
        LaplaceSample { s, value: (self.transform)(s), kappa: None }
    }

    /// 1/(1+s^β) and the Mittag-Leffler density t^(β-1) E_{β,β}(-t^β).
    pub fn ml_density(beta: Order) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("ml_density(beta={b})"),
            move |s| one_plus(spow(s, b)).recip(),
            Some(Arc::new(move |t: f64| Ok(t.powf(b - 1.0) * ml(b, b, -t.powf(b))?.value))),
            (0.05, f64::INFINITY),
        )
    }

    /// s^(β-1)/(1+s^β) and the survival function E_β(-t^β).
    pub fn ml_survival(beta: Order) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("ml_survival(beta={b})"),
            move |s| {
                let sb = spow(s, b);
                sb / (s * one_plus(sb))
            },
            Some(Arc::new(move |t: f64| Ok(ml(b, 1.0, -t.powf(b))?.value))),
            (0.05, f64::INFINITY),
        )
    }

    /// e^(-s^β) and the stable density g_β.
    pub fn stable_density(beta: Order) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("stable_density(beta={b})"),
            move |s| (-spow(s, b)).exp(),
            Some(Arc::new(move |t: f64| Ok(stable_pdf(beta, t)?.value))),
            (0.05, f64::INFINITY),
        )
        .with_sector(stable_growth_sector(beta))
    }

    /// e^(-s^β)/s and the stable distribution function G_β.
    pub fn stable_cdf(beta: Order) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("stable_cdf(beta={b})"),
            move |s| (-spow(s, b)).exp() / s,
            Some(Arc::new(move |t: f64| Ok(stable_cdf(beta, t)?.value))),
            (0.05, f64::INFINITY),
        )
        .with_sector(stable_growth_sector(beta))
    }

    /// s^(β-1) e^(-x s^β) and the inverse-subordinator density t^(-β) M_β(x t^(-β)).
    pub fn inverse_subordinator(beta: Order, x: f64) -> TransformPair {
        let b = beta.get();
        let xq = Qd::from_f64(x);
        TransformPair::new(
            format!("inverse_subordinator(beta={b},x={x})"),
            move |s| {
                let sb = spow(s, b);
                (-sb.scale(xq)).exp() * sb / s
            },
            Some(Arc::new(move |t: f64| Ok(inverse_subordinator_pdf(beta, x, t)?.value))),
            (0.05, f64::INFINITY),
        )
        .with_sector(stable_growth_sector(beta))
    }

    /// s^(β-1)/(1+s^β)^(n+1) and the counting probability by its series.
    pub fn fpp_counting(beta: Order, n: u32) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("fpp_counting(beta={b},n={n})"),
            move |s| fpp_counting_transform(s, b, n),
            Some(Arc::new(move |t: f64| Ok(ml_deriv_scaled(n, b, t.powf(b))?.value))),
            (0.05, f64::INFINITY),
        )
    }

    /// φ̃/(s(1-φ̃)) = s^(-1-β) and the renewal function t^β/Γ(1+β).
    pub fn fpp_renewal(beta: Order) -> TransformPair {
        let b = beta.get();
        TransformPair::new(
            format!("fpp_renewal(beta={b})"),
            move |s| {
                let phi = one_plus(spow(s, b)).recip();
                phi / (s * (Qd::ONE - phi))
            },
            Some(Arc::new(move |t: f64| Ok(t.powf(b) * rgamma(1.0 + b)))),
            (0.05, f64::INFINITY),
        )
    }

    /// (1-e^(-s))/s and the β = 1 Wright survival function, the indicator
    /// of [0, 1); checked only away from the jump.
    pub fn unit_delay_survival() -> TransformPair {
        let mut p = TransformPair::new(
            "unit_delay_survival",
            |s| (Qd::ONE - (-s).exp()) / s,
            Some(Arc::new(|t: f64| {
                if (t - 1.0).abs() < 0.05 {
                    return Err(Error::Domain(format!("t = {t} within 0.05 of the jump")));
                }
                Ok(if t < 1.0 { 1.0 } else { 0.0 })
            })),
            (0.05, f64::INFINITY),
        );
        let step: TransformFn = Arc::new(|s: Cqd| s.recip());
        let drop: TransformFn = Arc::new(|s: Cqd| -s.recip());
        p.delayed_parts = Some(vec![(0.0, step), (1.0, drop)]);
        p
    }
}

/// (1+s^β)^(-k), formed through the logarithm so that large k cannot
/// overflow on the far part of the contour.
pub fn fpp_erlang_transform(s: Cqd, b: f64, k: u32) -> Cqd {
    one_plus(spow(s, b)).ln().scale(Qd::from_f64(-(k as f64))).exp()
}

/// s^(β-1) (1+s^β)^(-(n+1)), the transform of the counting probability.
pub fn fpp_counting_transform(s: Cqd, b: f64, n: u32) -> Cqd {
    spow(s, b) / s * fpp_erlang_transform(s, b, n + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub pair: String,
    pub t: f64,
    pub reference: f64,
    pub inverted: f64,
    pub abs_err: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub pair: String,
    pub tolerance: f64,
    pub max_abs_err: f64,
    pub pass: bool,
    pub records: Vec<PairRecord>,
}

impl PairReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.records)?)
    }
}

/// Inverts the pair at every grid time and compares with the reference.
/// Points where either side fails are recorded as failed.
pub fn verify_pair(pair: &TransformPair, times: &[f64], tol: f64) -> Result<PairReport> {
    verify_pair_with(pair, times, tol, DEFAULT_NODES)
}

pub fn verify_pair_with(pair: &TransformPair, times: &[f64], tol: f64, nodes: usize) -> Result<PairReport> {
    let reference = pair
        .reference
        .as_ref()
        .ok_or_else(|| Error::Domain(format!("pair {} has no time-domain reference", pair.name)))?;
    let mut records = Vec::with_capacity(times.len());
    let mut max_abs_err: f64 = 0.0;
    for &t in times {
        let inv = pair.invert(t, nodes);
        let rf = reference(t);
        let (reference, inverted) = (rf.unwrap_or(f64::NAN), inv.map(|r| r.value).unwrap_or(f64::NAN));
        let abs_err = (inverted - reference).abs();
        let pass = abs_err <= tol;
        max_abs_err = nan_max(max_abs_err, abs_err);
        records.push(PairRecord { pair: pair.name.clone(), t, reference, inverted, abs_err, pass });
    }
    let pass = records.iter().all(|r| r.pass);
    Ok(PairReport { pair: pair.name.clone(), tolerance: tol, max_abs_err, pass, records })
}

/// Counting probability of the standard fractional Poisson process by
/// inverting s^(β-1)/(1+s^β)^(n+1).
pub fn counting_prob_by_inversion(beta: Order, n: u32, t: f64) -> Result<EvalResult> {
    let b = beta.get();
    talbot_invert(move |s| fpp_counting_transform(s, b, n), t, DEFAULT_NODES)
}

/// Counting probabilities P(N(t) = n) for each listed n from one set of
/// contour sums.
pub fn counting_probs_by_inversion(beta: Order, ns: &[u32], t: f64) -> Result<Vec<Result<EvalResult>>> {
    let b = beta.get();
    let transform = |s: Cqd, out: &mut [Cqd]| {
        let sb = spow(s, b);
        let lead = sb / s;
        let log = one_plus(sb).ln();
        for (o, &n) in out.iter_mut().zip(ns) {
            *o = lead * log.scale(Qd::from_f64(-((n + 1) as f64))).exp();
        }
    };
    talbot_invert_many(transform, ns.len(), t, DEFAULT_NODES)
}

/// Erlang density of the standard fractional Poisson process by inverting
/// (1+s^β)^(-n).
pub fn erlang_density_by_inversion(beta: Order, n: u32, t: f64) -> Result<EvalResult> {
    let b = beta.get();
    talbot_invert(move |s| fpp_erlang_transform(s, b, n), t, DEFAULT_NODES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ord(b: f64) -> Order {
        Order::new(b).unwrap()
    }

    #[test]
    fn elementary_originals() {
        let r = talbot_invert(|s: Cqd| s.recip(), 3.7, 64).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = talbot_invert(|s: Cqd| one_plus(s).recip(), 1.0, 64).unwrap();
        assert!((r.value - 0.367_879_441_171_442_3).abs() < 1e-15);
        assert!(r.abs_err < 1e-14);
        assert!(talbot_invert(|s: Cqd| s.recip(), 0.0, 64).is_err());
        assert!(talbot_invert(|s: Cqd| s.recip(), 1.0, 8).is_err());
    }

    #[test]
    fn diffusion_sister_function() {
        // e^{-√s}/√s ↔ e^{-1/(4t)}/√(πt)
        let r = talbot_invert(|s: Cqd| (-spow(s, 0.5)).exp() / spow(s, 0.5), 1.0, 64).unwrap();
        assert!((r.value - 0.439_391_289_467_722_4).abs() < 1e-15);
        let want = (-0.25f64 / 2.0).exp() / (PI * 2.0).sqrt();
        let r = talbot_invert(|s: Cqd| (-spow(s, 0.5)).exp() / spow(s, 0.5), 2.0, 64).unwrap();
        assert!((r.value - want).abs() < 1e-15);
    }

    #[test]
    fn node_doubling_shrinks_error_tenfold() {
        let pairs = [
            TransformPair::ml_density(ord(0.5)),
            TransformPair::ml_survival(ord(0.75)),
            TransformPair::stable_density(ord(0.5)),
            TransformPair::inverse_subordinator(ord(0.25), 1.0),
        ];
        for p in &pairs {
            for &t in &[0.1, 1.0, 10.0] {
                let exact = talbot_once(&*p.transform, t, 256).unwrap();
                let e32 = (talbot_once(&*p.transform, t, 16).unwrap() - exact).abs().to_f64();
                let e64 = (talbot_once(&*p.transform, t, 32).unwrap() - exact).abs().to_f64();
                assert!(e64 * 10.0 <= e32 || e64 < 1e-30, "{} {t}: {e32:e} {e64:e}", p.name);
            }
        }
    }

    #[test]
    fn hyperbola_where_talbot_breaks() {
        // e^(-s^0.75) grows for |arg s| > 2π/3; the Talbot sum at small t is lost
        // to cancellation, the hyperbola is not
        let f = |s: Cqd| (-spow(s, 0.75)).exp();
        assert!(talbot_invert(f, 0.06, DEFAULT_NODES).map_or(true, |r| r.abs_err > 1.0));
        let sector = stable_growth_sector(ord(0.75));
        assert!((sector - PI / 3.0).abs() < 1e-15);
        for &t in &[0.06, 0.3, 1.0, 20.0] {
            let r = hyperbolic_invert(f, t, DEFAULT_NODES, sector).unwrap();
            let want = stable_pdf(ord(0.75), t).unwrap().value;
            assert!((r.value - want).abs() < 1e-13, "t={t}: {} vs {want}", r.value);
            assert!(r.abs_err < 1e-10);
        }
        let r = hyperbolic_invert(|s: Cqd| one_plus(s).recip(), 1.0, 64, 0.0).unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-15);
        assert!(hyperbolic_invert(f, 1.0, 64, 2.0).is_err());
        assert_eq!(stable_growth_sector(ord(0.5)), 0.0);
    }

    #[test]
    fn spec_pairs_pass() {
        let ts: Vec<f64> = (0..12).map(|i| 0.1 * 100f64.powf(i as f64 / 11.0)).collect();
        for p in [
            TransformPair::ml_density(ord(0.5)),
            TransformPair::ml_survival(ord(0.75)),
            TransformPair::stable_density(ord(0.5)),
            TransformPair::stable_cdf(ord(0.5)),
            TransformPair::fpp_renewal(ord(0.5)),
            TransformPair::fpp_counting(ord(0.5), 3),
        ] {
            let r = verify_pair(&p, &ts, 1e-8).unwrap();
            assert!(r.pass, "{}: {:e}", p.name, r.max_abs_err);
        }
        let json = verify_pair(&TransformPair::ml_density(ord(0.5)), &[1.0], 1e-8).unwrap().to_json().unwrap();
        assert!(json.contains("\"inverted\""));
    }

    #[test]
    fn delta_pair_checked_away_from_jump() {
        let p = TransformPair::unit_delay_survival();
        let r = verify_pair(&p, &[0.3, 0.9, 1.1, 3.0], 1e-6).unwrap();
        assert!(r.pass, "{:?}", r.records);
        let r = verify_pair(&p, &[1.0], 1e-6).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn counting_probability_routes() {
        let r = counting_prob_by_inversion(ord(1.0), 2, 2.0).unwrap();
        assert!((r.value - 0.270_670_566_473_225_4).abs() < 1e-14);
        for &b in &[0.3, 0.5, 0.9] {
            let r = counting_prob_by_inversion(ord(b), 0, 1.7).unwrap().value;
            assert!((r - ml(b, 1.0, -1.7f64.powf(b)).unwrap().value).abs() < 1e-8);
        }
        let inv = counting_prob_by_inversion(ord(0.5), 3, 5.0).unwrap().value;
        let ser = ml_deriv_scaled(3, 0.5, 5f64.sqrt()).unwrap().value;
        assert!((inv - ser).abs() < 1e-8);
    }

    #[test]
    fn first_derivative_through_inversion() {
        // p_1(1) = t^β E'_β(-t^β) at t = 1
        let p1 = counting_prob_by_inversion(ord(0.5), 1, 1.0).unwrap().value;
        let d = crate::specfun::ml_deriv(1, 0.5, -1.0).unwrap().value;
        assert!((p1 - d).abs() < 1e-8);
    }

    #[test]
    fn series_asymptotic_switch_matches_inversion() {
        // Ψ at the point where the evaluation changes route
        let b = 0.75;
        for &t in &[56.9, 57.1] {
            let inv = talbot_invert(
                |s: Cqd| {
                    let sb = spow(s, b);
                    sb / (s * one_plus(sb))
                },
                t,
                64,
            )
            .unwrap();
            let direct = ml(b, 1.0, -f64::powf(t, b)).unwrap();
            assert!((inv.value - direct.value).abs() <= 1e-8, "{t}: {} via {}", direct.value, direct.method);
        }
    }

    #[test]
    fn wright_erfc_through_inversion() {
        // W_{-1/2,1}(-x) = erfc(x/2) = G_{1/2}(t) at x = t^{-1/2}; x = 2 ↔ t = 1/4
        let w = crate::specfun::wright(-0.5, 1.0, -2.0).unwrap().value;
        let inv = talbot_invert(|s: Cqd| (-spow(s, 0.5)).exp() / s, 0.25, 64).unwrap().value;
        assert!((w - inv).abs() < 1e-12);
    }

    #[test]
    fn initial_and_final_values() {
        let s = Cqd::from_f64(1e8, 0.0);
        for &b in &[0.25, 0.5, 0.75] {
            let psi = TransformPair::ml_survival(ord(b)).sample(s).value.re.to_f64();
            let fpp_phi = TransformPair::ml_density(ord(b)).sample(s).value.re.to_f64();
            let wright_phi = TransformPair::stable_density(ord(b)).sample(s).value.re.to_f64();
            // s Ψ̃(s) → Ψ(0+) = 1; φ̃(s) → 0 for the fpp; s φ̃(s) → 0 for the Wright law
            assert!((1e8 * psi - 1.0).abs() < 0.02, "{b}: {}", 1e8 * psi);
            assert!(fpp_phi < 0.02, "{b}");
            assert!(1e8 * wright_phi < 1e-3, "{b}");
        }
    }
}
