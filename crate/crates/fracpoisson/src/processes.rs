//! The fractional Poisson process (Mittag-Leffler waiting times) and the
//! Wright process (one-sided stable waiting times), each with its counting
//! probabilities, Erlang laws and renewal function in closed form.

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::laplace::{
    counting_probs_by_inversion, fpp_counting_transform, fpp_erlang_transform, spow, talbot_invert, DEFAULT_NODES,
};
use crate::renewal::CountingDistribution;
use crate::specfun::{ml, ml_deriv_scaled, ml_erlang_cdf_scaled, ulp, EvalResult, Method, Order};
use crate::stable::{stable_cdf, stable_pdf, stable_sf, subordinator_pdf};
use crate::xprec::{Cqd, Qd};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessKind {
    Fpp,
    Wright,
    Poisson,
}

impl ProcessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcessKind::Fpp => "fpp",
            ProcessKind::Wright => "wright",
            ProcessKind::Poisson => "poisson",
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProcessKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<ProcessKind> {
        match s {
            "fpp" => Ok(ProcessKind::Fpp),
            "wright" => Ok(ProcessKind::Wright),
            "poisson" => Ok(ProcessKind::Poisson),
            _ => Err(Error::Domain(format!("unknown process {s:?}; expected fpp, wright or poisson"))),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and >= 0, got {t}")))
    }
}

fn check_index(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::Domain("Erlang index starts at 1".into()))
    }
}

fn fallback_worthy(e: &Error) -> bool {
    matches!(e, Error::Cancellation { .. } | Error::Precision { .. } | Error::NonConvergence(_))
}

/// Renewal process with survival function E_β(-(λt)^β).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FractionalPoisson {
    beta: Order,
    lambda: f64,
}

impl FractionalPoisson {
    pub fn new(beta: Order, lambda: f64) -> Result<FractionalPoisson> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!("rate must be positive, got {lambda}")));
        }
        Ok(FractionalPoisson { beta, lambda })
    }

    pub fn standard(beta: Order) -> FractionalPoisson {
        FractionalPoisson { beta, lambda: 1.0 }
    }

    /// The classical Poisson process of rate λ.
    pub fn poisson(lambda: f64) -> Result<FractionalPoisson> {
        FractionalPoisson::new(Order::new(1.0)?, lambda)
    }

    pub fn beta(&self) -> Order {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn scaled(&self, t: f64) -> f64 {
        (self.lambda * t).powf(self.beta.get())
    }

    pub fn survival(&self, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        if self.beta.is_degenerate() {
            return Ok(EvalResult::exact((-self.lambda * t).exp(), Method::ClosedForm));
        }
        ml(self.beta.get(), 1.0, -self.scaled(t))
    }

    /// Waiting-time density λ(λt)^(β-1) E_{β,β}(-(λt)^β); infinite at t = 0
    /// when β < 1.
    pub fn density(&self, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        let (b, l) = (self.beta.get(), self.lambda);
        if self.beta.is_degenerate() {
            return Ok(EvalResult::exact(l * (-l * t).exp(), Method::ClosedForm));
        }
        if t == 0.0 {
            return Ok(EvalResult::new(f64::INFINITY, 0.0, Method::ClosedForm));
        }
        let e = ml(b, b, -self.scaled(t))?;
        let pre = l * (l * t).powf(b - 1.0);
        Ok(EvalResult::new(pre * e.value, pre * e.abs_err + 2.0 * ulp(pre * e.value), e.method))
    }

    /// φ̃(s) = λ^β / (λ^β + s^β).
    pub fn laplace(&self, s: Cqd) -> Cqd {
        let sb = spow(s.scale(Qd::from_f64(self.lambda).recip()), self.beta.get());
        (sb + Qd::ONE).recip()
    }

    /// 1/λ for β = 1, infinite otherwise.
    pub fn mean_waiting_time(&self) -> f64 {
        if self.beta.is_degenerate() {
            1.0 / self.lambda
        } else {
            f64::INFINITY
        }
    }

    /// P(N(t) = n): the series (λt)^(nβ)/n! E_β^(n)(-(λt)^β), or Laplace
    /// inversion when the series cancels.
    pub fn counting_prob(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(EvalResult::exact(if n == 0 { 1.0 } else { 0.0 }, Method::ClosedForm));
        }
        match ml_deriv_scaled(n, self.beta.get(), self.scaled(t)) {
            Err(e) if fallback_worthy(&e) => {
                let b = self.beta.get();
                let r = talbot_invert(move |s| fpp_counting_transform(s, b, n), self.lambda * t, DEFAULT_NODES)?;
                Ok(EvalResult::new(r.value.clamp(0.0, 1.0), r.abs_err, r.method))
            }
            r => r,
        }
    }

    /// p_0 … p_(n_max); the entries whose series cancels are inverted
    /// together on one contour.
    pub fn counting_probs(&self, t: f64, n_max: usize) -> Result<CountingDistribution> {
        check_time(t)?;
        if t == 0.0 {
            let evals = (0..=n_max as u32).map(|n| self.counting_prob(n, t)).collect::<Result<Vec<_>>>()?;
            return Ok(CountingDistribution::from_evals(self.tag(), t, evals));
        }
        let x = self.scaled(t);
        let mut evals = Vec::with_capacity(n_max + 1);
        let mut pending = Vec::new();
        for n in 0..=n_max as u32 {
            match ml_deriv_scaled(n, self.beta.get(), x) {
                Err(e) if fallback_worthy(&e) => {
                    pending.push(n);
                    evals.push(EvalResult::exact(f64::NAN, Method::LaplaceInversion));
                }
                r => evals.push(r?),
            }
        }
        if !pending.is_empty() {
            let inverted = counting_probs_by_inversion(self.beta, &pending, self.lambda * t)?;
            for (&n, r) in pending.iter().zip(inverted) {
                let r = r?;
                evals[n as usize] = EvalResult::new(r.value.clamp(0.0, 1.0), r.abs_err, r.method);
            }
        }
        Ok(CountingDistribution::from_evals(self.tag(), t, evals))
    }

    /// Density of the n-th event time, q_n(t) = nβ p_n(t)/t.
    pub fn erlang_density(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_index(n)?;
        check_time(t)?;
        let (b, l) = (self.beta.get(), self.lambda);
        if t == 0.0 {
            let v = match (n as f64 * b).partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Less) => f64::INFINITY,
                Some(std::cmp::Ordering::Equal) => l,
                _ => 0.0,
            };
            return Ok(EvalResult::new(v, 0.0, Method::ClosedForm));
        }
        match ml_deriv_scaled(n, b, self.scaled(t)) {
            Ok(p) => {
                let k = n as f64 * b / t;
                Ok(EvalResult::new(k * p.value, k * p.abs_err + ulp(k * p.value), p.method))
            }
            Err(e) if fallback_worthy(&e) => {
                let r = talbot_invert(move |s| fpp_erlang_transform(s, b, n), l * t, DEFAULT_NODES)?;
                Ok(EvalResult::new(l * r.value.max(0.0), l * r.abs_err, r.method))
            }
            Err(e) => Err(e),
        }
    }

    /// Q_n(t) = P(n-th event ≤ t).
    pub fn erlang_cdf(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_index(n)?;
        check_time(t)?;
        let b = self.beta.get();
        match ml_erlang_cdf_scaled(n, b, self.scaled(t)) {
            Err(e) if fallback_worthy(&e) => {
                let r = talbot_invert(move |s| fpp_erlang_transform(s, b, n) / s, self.lambda * t, DEFAULT_NODES)?;
                Ok(EvalResult::new(r.value.clamp(0.0, 1.0), r.abs_err, r.method))
            }
            r => r,
        }
    }

    /// m(t) = (λt)^β / Γ(1+β).
    pub fn renewal_function(&self, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        let v = self.scaled(t) * rgamma(1.0 + self.beta.get());
        Ok(EvalResult::new(v, 4.0 * ulp(v), Method::ClosedForm))
    }

    /// Σ_n p_n(t) e^(-nκ) = E_β(-(1 - e^(-κ))(λt)^β) for κ ≥ 0.
    pub fn generating_function(&self, t: f64, kappa: f64) -> Result<EvalResult> {
        check_time(t)?;
        if !(kappa >= 0.0) {
            return Err(Error::Domain(format!("kappa must be >= 0, got {kappa}")));
        }
        let z = -(-(-kappa).exp_m1()) * self.scaled(t);
        if self.beta.is_degenerate() {
            return Ok(EvalResult::exact(z.exp(), Method::ClosedForm));
        }
        ml(self.beta.get(), 1.0, z)
    }

    pub fn tag(&self) -> String {
        if self.lambda == 1.0 {
            format!("fpp(beta={})", self.beta)
        } else {
            format!("fpp(beta={},lambda={})", self.beta, self.lambda)
        }
    }
}

/// Renewal process whose waiting times follow the one-sided stable law;
/// for β = 1 every waiting time equals 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WrightProcess {
    beta: Order,
}

/// Largest number of terms summed for the renewal function.
pub const RENEWAL_CAP: usize = 10_000;

impl WrightProcess {
    pub fn new(beta: Order) -> WrightProcess {
        WrightProcess { beta }
    }

    pub fn beta(&self) -> Order {
        self.beta
    }

    pub fn survival(&self, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        stable_sf(self.beta, t)
    }

    pub fn density(&self, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        if t == 0.0 && !self.beta.is_degenerate() {
            return Ok(EvalResult::exact(0.0, Method::ClosedForm));
        }
        stable_pdf(self.beta, t)
    }

    /// φ̃(s) = e^(-s^β).
    pub fn laplace(&self, s: Cqd) -> Cqd {
        (-spow(s, self.beta.get())).exp()
    }

    pub fn mean_waiting_time(&self) -> f64 {
        if self.beta.is_degenerate() {
            1.0
        } else {
            f64::INFINITY
        }
    }

    fn epoch_scale(&self, n: u32) -> f64 {
        (n as f64).powf(-1.0 / self.beta.get())
    }

    /// P(N(t) = n) = G_β(n^(-1/β) t) − G_β((n+1)^(-1/β) t), with
    /// p_0 = 1 − G_β(t).
    pub fn counting_prob(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_time(t)?;
        if self.beta.is_degenerate() {
            let hit = (t.floor() as u64) == n as u64;
            return Ok(EvalResult::new(if hit { 1.0 } else { 0.0 }, 0.0, Method::ClosedForm));
        }
        if t == 0.0 {
            return Ok(EvalResult::exact(if n == 0 { 1.0 } else { 0.0 }, Method::ClosedForm));
        }
        if n == 0 {
            return stable_sf(self.beta, t);
        }
        let (a, b) = (self.epoch_scale(n) * t, self.epoch_scale(n + 1) * t);
        let ga = stable_cdf(self.beta, a)?;
        let (hi, lo) = if ga.value <= 0.5 {
            (ga, stable_cdf(self.beta, b)?)
        } else {
            (stable_sf(self.beta, b)?, stable_sf(self.beta, a)?)
        };
        let v = (hi.value - lo.value).max(0.0);
        Ok(EvalResult::new(v, hi.abs_err + lo.abs_err + ulp(hi.value), hi.method))
    }

    pub fn counting_probs(&self, t: f64, n_max: usize) -> Result<CountingDistribution> {
        check_time(t)?;
        let evals = (0..=n_max as u32).map(|n| self.counting_prob(n, t)).collect::<Result<Vec<_>>>()?;
        Ok(CountingDistribution::from_evals(self.tag(), t, evals))
    }

    /// q_n(t) = n^(-1/β) g_β(n^(-1/β) t), the stable subordinator density
    /// at x = n. For β = 1 this is a delta and is refused.
    pub fn erlang_density(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_index(n)?;
        check_time(t)?;
        if self.beta.is_degenerate() {
            return Err(Error::Degenerate("the n-th epoch of the beta = 1 Wright process is exactly n"));
        }
        if t == 0.0 {
            return Ok(EvalResult::exact(0.0, Method::ClosedForm));
        }
        subordinator_pdf(self.beta, t, n as f64)
    }

    /// Q_n(t) = G_β(n^(-1/β) t).
    pub fn erlang_cdf(&self, n: u32, t: f64) -> Result<EvalResult> {
        check_index(n)?;
        check_time(t)?;
        stable_cdf(self.beta, self.epoch_scale(n) * t)
    }

    pub fn renewal_function(&self, t: f64) -> Result<EvalResult> {
        self.renewal_function_capped(t, RENEWAL_CAP)
    }

    /// m(t) = Σ_{n≥1} G_β(n^(-1/β) t) with a bound on the omitted tail.
    pub fn renewal_function_capped(&self, t: f64, n_cap: usize) -> Result<EvalResult> {
        check_time(t)?;
        if self.beta.is_degenerate() {
            return Ok(EvalResult::new(t.floor(), 0.0, Method::ClosedForm));
        }
        renewal_series(|n| self.erlang_cdf(n, t), n_cap)
    }

    pub fn tag(&self) -> String {
        format!("wright(beta={})", self.beta)
    }
}

/// Σ_{n≥1} Q_n for a sequence decreasing to zero faster than any geometric
/// one; once successive ratios fall below 1/2 the tail is bounded by the
/// geometric series of the last ratio.
pub(crate) fn renewal_series<F: FnMut(u32) -> Result<EvalResult>>(mut q: F, n_cap: usize) -> Result<EvalResult> {
    let (mut sum, mut err) = (0.0, 0.0);
    let mut prev = f64::NAN;
    for n in 1..=n_cap as u32 {
        let r = q(n)?;
        sum += r.value;
        err += r.abs_err;
        if r.value == 0.0 {
            return Ok(EvalResult::new(sum, err + ulp(sum) * n as f64, Method::Series));
        }
        let ratio = r.value / prev;
        prev = r.value;
        if ratio < 0.5 && r.value < 1e-17 * sum {
            let tail = r.value * ratio / (1.0 - ratio);
            return Ok(EvalResult::new(sum, err + tail + ulp(sum) * n as f64, Method::Series));
        }
    }
    Err(Error::NonConvergence(format!(
        "renewal series not converged within {n_cap} terms: partial sum {sum}, last term {prev}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_kronrod;
    use std::f64::consts::PI;

    fn ord(b: f64) -> Order {
        Order::new(b).unwrap()
    }

    #[test]
    fn fpp_survival_values() {
        let p = FractionalPoisson::standard(ord(1.0));
        assert!((p.survival(2.0).unwrap().value - (-2.0f64).exp()).abs() < 1e-16);
        let p = FractionalPoisson::standard(ord(0.5));
        assert_eq!(p.survival(0.0).unwrap().value, 1.0);
        assert!((p.survival(1.0).unwrap().value - 0.427_583_576_155_807_0).abs() < 1e-15);
        let mut last = 1.0;
        for i in 1..60 {
            let v = p.survival(0.01 * 1.2f64.powi(i)).unwrap().value;
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn mean_waiting_time_dichotomy() {
        assert_eq!(FractionalPoisson::standard(ord(1.0)).mean_waiting_time(), 1.0);
        assert_eq!(FractionalPoisson::standard(ord(0.99)).mean_waiting_time(), f64::INFINITY);
        assert_eq!(FractionalPoisson::poisson(4.0).unwrap().mean_waiting_time(), 0.25);
        assert!(FractionalPoisson::new(ord(0.5), 0.0).is_err());
    }

    #[test]
    fn poisson_limit_is_exact() {
        let p = FractionalPoisson::poisson(1.0).unwrap();
        assert!((p.counting_prob(2, 2.0).unwrap().value - 0.270_670_566_473_225_4).abs() < 1e-15);
        assert!((p.erlang_density(3, 2.0).unwrap().value - 0.270_670_566_473_225_4).abs() < 1e-15);
        let p = FractionalPoisson::poisson(2.0).unwrap();
        let d = p.counting_probs(1.0, 20).unwrap();
        let mut pmf = (-2.0f64).exp();
        for n in 0..=20 {
            assert!((d.probs[n] - pmf).abs() < 1e-15, "{n}");
            pmf *= 2.0 / (n as f64 + 1.0);
        }
        // rescaled Erlang: λ(λt)^(n-1) e^(-λt)/(n-1)!
        let q = p.erlang_density(3, 1.5).unwrap().value;
        assert!((q - 2.0 * 9.0 * (-3.0f64).exp() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn fpp_erlang_first_is_waiting_density() {
        for &b in &[0.3, 0.5, 0.8] {
            let p = FractionalPoisson::standard(ord(b));
            for &t in &[0.1, 1.0, 7.0] {
                let q1 = p.erlang_density(1, t).unwrap().value;
                let phi = p.density(t).unwrap().value;
                assert!((q1 - phi).abs() < 1e-12 * phi.max(1.0), "{b} {t}");
            }
        }
    }

    #[test]
    fn fpp_density_rescaling() {
        let p = FractionalPoisson::new(ord(0.6), 3.0).unwrap();
        let s = FractionalPoisson::standard(ord(0.6));
        let (a, b) = (p.density(0.7).unwrap().value, 3.0 * s.density(2.1).unwrap().value);
        assert!((a - b).abs() < 1e-13);
        let lt = p.laplace(Cqd::from_f64(1.5, 0.0)).re.to_f64();
        assert!((lt - 1.0 / (1.0 + 0.5f64.powf(0.6))).abs() < 1e-15);
    }

    #[test]
    fn dual_route_counting() {
        for &b in &[0.5, 0.75] {
            let p = FractionalPoisson::standard(ord(b));
            for &t in &[0.1, 1.0, 10.0] {
                for n in [0u32, 1, 2, 7, 20] {
                    let s = p.counting_prob(n, t).unwrap();
                    let i = crate::laplace::counting_prob_by_inversion(ord(b), n, t).unwrap();
                    assert!((s.value - i.value).abs() < 1e-8, "{b} {t} {n}");
                }
            }
        }
    }

    #[test]
    fn inversion_fallback_far_out() {
        // (t^β)^(1/β) = 400 is beyond the series reach
        let p = FractionalPoisson::standard(ord(0.5));
        let r = p.counting_prob(3, 400.0).unwrap();
        assert_eq!(r.method, Method::LaplaceInversion);
        let d = p.counting_probs(400.0, 200).unwrap();
        assert!(d.tail_mass < 1e-8);
        let q = p.erlang_density(2, 400.0).unwrap();
        assert_eq!(q.method, Method::LaplaceInversion);
        let p2 = p.counting_prob(2, 400.0).unwrap().value;
        assert!((q.value - 2.0 * 0.5 * p2 / 400.0).abs() < 1e-10);
        let c = p.erlang_cdf(3, 400.0).unwrap().value;
        let head: f64 = d.probs[..3].iter().sum();
        assert!((c - (1.0 - head)).abs() < 1e-8);
    }

    #[test]
    fn generating_function_identity() {
        let p = FractionalPoisson::standard(ord(0.5));
        let d = p.counting_probs(2.0, 120).unwrap();
        assert!(d.tail_mass < 1e-10);
        for &k in &[0.0, 0.5, 1.0, 2.0] {
            let sum: f64 = d.probs.iter().enumerate().map(|(n, p)| p * (-(n as f64) * k).exp()).sum();
            let want = p.generating_function(2.0, k).unwrap().value;
            assert!((sum - want).abs() < 1e-9, "{k}: {sum} {want}");
        }
    }

    #[test]
    fn wright_counting_values() {
        let w = WrightProcess::new(ord(1.0));
        let d = w.counting_probs(3.5, 6).unwrap();
        assert_eq!(d.probs, vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let w = WrightProcess::new(ord(0.5));
        assert_eq!(w.counting_prob(0, 0.0).unwrap().value, 1.0);
        // erfc(1/2) − erfc(1)
        let p1 = w.counting_prob(1, 1.0).unwrap().value;
        assert!((p1 - (0.479_500_122_186_953_5 - 0.157_299_207_050_285_1)).abs() < 1e-14);
        let d = w.counting_probs(1.0, 400).unwrap();
        assert!(d.tail_mass < 1e-9, "{}", d.tail_mass);
    }

    #[test]
    fn wright_erlang_values() {
        let w = WrightProcess::new(ord(0.5));
        let q = w.erlang_density(4, 1.0).unwrap().value;
        assert!((q - 2.0 * (-4.0f64).exp() / PI.sqrt()).abs() < 1e-15);
        let g = stable_pdf(ord(0.7), 2.3).unwrap().value;
        assert!((WrightProcess::new(ord(0.7)).erlang_density(1, 2.3).unwrap().value - g).abs() < 1e-15);
        assert!(WrightProcess::new(ord(1.0)).erlang_density(1, 1.0).is_err());
        // ∫ e^{-t} q_2(t) dt = e^{-2}, substituting t = e^y
        let f = |y: f64| {
            let t = y.exp();
            t * (-t).exp() * w.erlang_density(2, t).unwrap().value
        };
        let i = gauss_kronrod(f, -8.0, 5.0, 0.0, 1e-12).unwrap().value;
        assert!((i - (-2.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn wright_renewal_offset() {
        // Euler-Maclaurin on Σ_(n≥1) G(n^(-1/β) t): the boundary term is −G(∞)/2
        for &b in &[0.25, 0.5, 0.75] {
            let w = WrightProcess::new(ord(b));
            let t: f64 = 1e4;
            let m = w.renewal_function(t).unwrap().value;
            let want = t.powf(b) * rgamma(1.0 + b) - 0.5;
            assert!((m - want).abs() < 0.01, "beta={b}: {m} vs {want}");
        }
    }

    #[test]
    fn wright_renewal_function() {
        let w = WrightProcess::new(ord(1.0));
        assert_eq!(w.renewal_function(3.5).unwrap().value, 3.0);
        let w = WrightProcess::new(ord(0.5));
        assert_eq!(w.renewal_function(0.0).unwrap().value, 0.0);
        let m = w.renewal_function(100.0).unwrap();
        let fpp = FractionalPoisson::standard(ord(0.5)).renewal_function(100.0).unwrap().value;
        assert!((m.value / fpp - 1.0).abs() <= 0.05, "{} vs {fpp}", m.value);
        assert!(m.abs_err < 1e-9);
        let m = w.renewal_function(1000.0).unwrap().value;
        let fpp = FractionalPoisson::standard(ord(0.5)).renewal_function(1000.0).unwrap().value;
        assert!((m / fpp - 1.0).abs() <= 0.05);
        assert!(w.renewal_function_capped(100.0, 10).is_err());
    }

    #[test]
    fn monotone_erlang_cdfs() {
        let f = FractionalPoisson::standard(ord(0.5));
        let w = WrightProcess::new(ord(0.5));
        for &t in &[0.2, 1.0, 5.0, 30.0] {
            for n in 1..15 {
                assert!(f.erlang_cdf(n + 1, t).unwrap().value <= f.erlang_cdf(n, t).unwrap().value);
                assert!(w.erlang_cdf(n + 1, t).unwrap().value <= w.erlang_cdf(n, t).unwrap().value);
            }
        }
    }

    #[test]
    fn process_kind_parses() {
        assert_eq!("wright".parse::<ProcessKind>().unwrap(), ProcessKind::Wright);
        assert!("levy".parse::<ProcessKind>().is_err());
        assert_eq!(ProcessKind::Poisson.to_string(), "poisson");
    }
}
