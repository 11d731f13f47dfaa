//! Exact samplers and renewal path simulation.
//!
//! A Mittag-Leffler waiting time is drawn as T = E^(1/β) S / λ with E unit
//! exponential and S standard one-sided stable: conditioning on E,
//! E[exp(-sT)] = E[exp(-E (s/λ)^β)] = 1/(1 + (s/λ)^β). Each draw reads
//! exactly three uniforms.
//!
//! Path `i` of a run always reads stream `i` of the seed, and results are
//! reduced by integer counting, so any split of the paths across workers
//! gives bit-identical output.

use crate::error::{Error, Result};
use crate::renewal::WaitingTimeLaw;
use crate::report::nan_max;
use crate::rng::RngStream;
use crate::specfun::Order;
use crate::stable::sample_stable;
use serde::Serialize;
use std::io::Write;
use std::ops::Range;

/// Hard cap on events per path.
pub const EVENT_CAP: u64 = 1_000_000_000;

/// KS critical value at the 1% level, times √N.
pub const KS_CRITICAL_1PCT: f64 = 1.63;

/// Largest number of CDF evaluations used for one KS statistic.
pub const KS_MAX_EVALS: usize = 4096;

/// The same for event-time laws, whose CDF can cost a contour inversion.
pub const ERLANG_KS_EVALS: usize = 1024;

pub fn sample_ml_waiting_time(beta: Order, lambda: f64, rng: &mut RngStream) -> f64 {
    let e = rng.exponential();
    let s = sample_stable(beta, rng);
    e.powf(1.0 / beta.get()) * s / lambda
}

pub fn sample_waiting_time(law: &WaitingTimeLaw, rng: &mut RngStream) -> Result<f64> {
    let t = match law {
        WaitingTimeLaw::MittagLeffler(p) => sample_ml_waiting_time(p.beta(), p.lambda(), rng),
        WaitingTimeLaw::Stable(w) => sample_stable(w.beta(), rng),
        WaitingTimeLaw::Exponential(l) => rng.exponential() / l,
        WaitingTimeLaw::Delta(t0) => *t0,
        WaitingTimeLaw::Custom(c) => match &c.sampler {
            Some(f) => f(rng),
            None => return Err(Error::Domain(format!("law {} has no sampler", c.name))),
        },
    };
    if t.is_finite() && t >= 0.0 {
        Ok(t)
    } else {
        Err(Error::NonConvergence(format!(
            "sampler for {} returned {t} at draw {} of stream {} (seed {})",
            law.tag(),
            rng.draws(),
            rng.stream_id(),
            rng.seed()
        )))
    }
}

/// Event epochs of one path up to a horizon.
#[derive(Clone, Debug, Serialize)]
pub struct RenewalPath {
    pub law: String,
    pub epochs: Vec<f64>,
    pub horizon: f64,
}

impl RenewalPath {
    /// N(t), the number of epochs in (0, t].
    pub fn count_at(&self, t: f64) -> usize {
        self.epochs.partition_point(|&e| e <= t)
    }

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon > 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("horizon must be positive, got {horizon}")))
    }
}

/// Walks the epochs of one path, calling `visit` on each one not beyond the horizon.
fn walk(law: &WaitingTimeLaw, horizon: f64, rng: &mut RngStream, mut visit: impl FnMut(f64)) -> Result<u64> {
    if let WaitingTimeLaw::Delta(t0) = law {
        // multiples rather than running sums keep lattice epochs exact
        let n = (horizon / t0).floor() as u64;
        if n > EVENT_CAP {
            return Err(Error::Domain(format!("more than {EVENT_CAP} events before {horizon}")));
        }
        (1..=n).for_each(|k| visit(k as f64 * t0));
        return Ok(n);
    }
    let mut clock = 0.0;
    let mut n = 0u64;
    loop {
        clock += sample_waiting_time(law, rng)?;
        if clock > horizon {
            return Ok(n);
        }
        n += 1;
        if n > EVENT_CAP {
            return Err(Error::Domain(format!("more than {EVENT_CAP} events before {horizon}")));
        }
        visit(clock);
    }
}

pub fn simulate_counting(law: &WaitingTimeLaw, horizon: f64, rng: &mut RngStream) -> Result<RenewalPath> {
    check_horizon(horizon)?;
    let mut epochs = Vec::new();
    walk(law, horizon, rng, |e| epochs.push(e))?;
    Ok(RenewalPath { law: law.tag(), epochs, horizon })
}

/// N(t) of one path without storing its epochs.
pub fn simulate_count(law: &WaitingTimeLaw, t: f64, rng: &mut RngStream) -> Result<u64> {
    if t == 0.0 {
        return Ok(0);
    }
    check_horizon(t)?;
    walk(law, t, rng, |_| {})
}

/// Per-value path counts of N(t).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountHistogram {
    pub counts: Vec<u64>,
    pub paths: u64,
}

impl CountHistogram {
    pub fn add(&mut self, n: u64) {
        let n = n as usize;
        if n >= self.counts.len() {
            self.counts.resize(n + 1, 0);
        }
        self.counts[n] += 1;
        self.paths += 1;
    }

    pub fn merge(mut self, other: &CountHistogram) -> CountHistogram {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.paths += other.paths;
        self
    }

    pub fn mean(&self) -> f64 {
        let s: u128 = self.counts.iter().enumerate().map(|(n, &c)| n as u128 * c as u128).sum();
        s as f64 / self.paths as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.counts.iter().enumerate().map(|(n, &c)| c as f64 * (n as f64 - m).powi(2)).sum();
        ss / (self.paths as f64 - 1.0)
    }

    pub fn std_err_of_mean(&self) -> f64 {
        (self.variance() / self.paths as f64).sqrt()
    }
}

/// Histogram of N(t) over the paths with stream ids in `paths`.
pub fn count_histogram(law: &WaitingTimeLaw, t: f64, seed: u64, paths: Range<u64>) -> Result<CountHistogram> {
    let mut h = CountHistogram::default();
    for id in paths {
        let mut rng = RngStream::new(seed, id);
        h.add(simulate_count(law, t, &mut rng)?);
    }
    Ok(h)
}

/// Empirical distribution of N(t) with binomial standard errors.
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalPmf {
    pub law: String,
    pub t: f64,
    pub histogram: CountHistogram,
    pub probs: Vec<f64>,
    pub std_err: Vec<f64>,
}

impl EmpiricalPmf {
    pub fn from_histogram(law: &WaitingTimeLaw, t: f64, histogram: CountHistogram) -> EmpiricalPmf {
        let n = histogram.paths as f64;
        let probs: Vec<f64> = histogram.counts.iter().map(|&c| c as f64 / n).collect();
        let std_err = probs.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
        EmpiricalPmf { law: law.tag(), t, histogram, probs, std_err }
    }

    pub fn paths(&self) -> u64 {
        self.histogram.paths
    }

    /// max_n |empirical − analytic| / σ_n with σ_n the binomial error of the
    /// analytic value. Bins expecting fewer than five paths are pooled
    /// with everything above them into one tail bin.
    pub fn max_z(&self, analytic: &[f64]) -> f64 {
        let n = self.paths() as f64;
        let z = |e: f64, a: f64| {
            let sigma = (a * (1.0 - a) / n).sqrt();
            if e == a {
                0.0
            } else if sigma == 0.0 {
                f64::INFINITY
            } else {
                (e - a).abs() / sigma
            }
        };
        let mut worst: f64 = 0.0;
        let (mut e_head, mut a_head) = (0.0, 0.0);
        for (k, &a) in analytic.iter().enumerate() {
            if a * n < 5.0 {
                break;
            }
            let e = self.probs.get(k).copied().unwrap_or(0.0);
            worst = worst.max(z(e, a));
            e_head += e;
            a_head += a;
        }
        worst.max(z((1.0 - e_head).max(0.0), (1.0 - a_head).max(0.0)))
    }

    /// Columns n,count,empirical_p,analytic_p,std_err.
    pub fn write_csv<W: Write>(&self, w: W, analytic: &[f64]) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "count", "empirical_p", "analytic_p", "std_err"])?;
        let len = self.probs.len().max(analytic.len());
        for k in 0..len {
            out.write_record([
                k.to_string(),
                self.histogram.counts.get(k).copied().unwrap_or(0).to_string(),
                format!("{:e}", self.probs.get(k).copied().unwrap_or(0.0)),
                analytic.get(k).map_or(String::new(), |a| format!("{a:e}")),
                format!("{:e}", self.std_err.get(k).copied().unwrap_or(0.0)),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn empirical_counting_pmf(law: &WaitingTimeLaw, t: f64, paths: u64, seed: u64) -> Result<EmpiricalPmf> {
    if paths < 1000 {
        return Err(Error::Domain(format!("need at least 1000 paths, got {paths}")));
    }
    Ok(EmpiricalPmf::from_histogram(law, t, count_histogram(law, t, seed, 0..paths)?))
}

/// Kolmogorov-Smirnov distance between a sorted sample and a continuous CDF.
///
/// Exact for samples up to `max_evals`. Larger samples evaluate the CDF at
/// evenly spaced order statistics and bound the statistic between them by
/// monotonicity, so the result is an upper bound within (N/max_evals)/N of
/// the exact value.
pub fn ks_statistic(sorted: &[f64], mut cdf: impl FnMut(f64) -> Result<f64>, max_evals: usize) -> Result<f64> {
    let n = sorted.len();
    if n == 0 {
        return Err(Error::Domain("empty sample".into()));
    }
    let nf = n as f64;
    if n <= max_evals.max(2) {
        let mut d: f64 = 0.0;
        for (i, &x) in sorted.iter().enumerate() {
            let f = cdf(x)?;
            d = nan_max(nan_max(d, (i + 1) as f64 / nf - f), f - i as f64 / nf);
        }
        return Ok(d);
    }
    let m = max_evals.max(2);
    let idx: Vec<usize> = (0..m).map(|j| j * (n - 1) / (m - 1)).collect();
    let vals = idx.iter().map(|&i| cdf(sorted[i])).collect::<Result<Vec<f64>>>()?;
    let mut d: f64 = 0.0;
    for w in 0..m - 1 {
        let (a, b) = (idx[w], idx[w + 1]);
        // order statistics a..=b lie between F(x_a) and F(x_b)
        d = nan_max(nan_max(d, (b + 1) as f64 / nf - vals[w]), vals[w + 1] - a as f64 / nf);
    }
    Ok(d)
}

/// One bin of an Erlang-epoch histogram.
#[derive(Clone, Debug, Serialize)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub count: u64,
    pub empirical_p: f64,
    pub analytic_p: f64,
    pub std_err: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErlangSample {
    pub law: String,
    pub n: u32,
    pub paths: u64,
    #[serde(skip)]
    pub epochs: Vec<f64>,
    pub ks_statistic: f64,
    pub critical: f64,
    pub pass: bool,
    pub histogram: Vec<HistogramBin>,
}

impl ErlangSample {
    /// Columns bin_left,bin_right,count,empirical_p,analytic_p,std_err.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["bin_left", "bin_right", "count", "empirical_p", "analytic_p", "std_err"])?;
        for b in &self.histogram {
            out.write_record([
                format!("{:e}", b.left),
                format!("{:e}", b.right),
                b.count.to_string(),
                format!("{:e}", b.empirical_p),
                format!("{:e}", b.analytic_p),
                format!("{:e}", b.std_err),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// The n-th epoch of paths 0..paths, in stream order.
pub fn sample_erlang_epochs(law: &WaitingTimeLaw, n: u32, seed: u64, paths: Range<u64>) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("Erlang index starts at 1".into()));
    }
    paths
        .map(|id| {
            let mut rng = RngStream::new(seed, id);
            let mut t = 0.0;
            for _ in 0..n {
                t += sample_waiting_time(law, &mut rng)?;
            }
            Ok(t)
        })
        .collect()
}

/// KS test of the n-th epoch against Q_n, plus a histogram on `bins`
/// equal-probability cells of the sample.
pub fn erlang_ks(law: &WaitingTimeLaw, n: u32, mut epochs: Vec<f64>, bins: usize) -> Result<ErlangSample> {
    epochs.sort_by(f64::total_cmp);
    let paths = epochs.len() as u64;
    let cdf = |t: f64| law.erlang_cdf(n, t).map(|e| e.value);
    let ks = ks_statistic(&epochs, cdf, ERLANG_KS_EVALS)?;
    let critical = KS_CRITICAL_1PCT / (paths as f64).sqrt();
    let histogram = if matches!(law, WaitingTimeLaw::Delta(_)) { Vec::new() } else { histogram(&epochs, bins, cdf)? };
    Ok(ErlangSample { law: law.tag(), n, paths, epochs, ks_statistic: ks, critical, pass: ks < critical, histogram })
}

fn histogram(sorted: &[f64], bins: usize, mut cdf: impl FnMut(f64) -> Result<f64>) -> Result<Vec<HistogramBin>> {
    let n = sorted.len();
    let bins = bins.clamp(1, n);
    let nf = n as f64;
    let edges: Vec<f64> = (0..=bins)
        .map(|j| {
            if j == 0 {
                0.0
            } else if j == bins {
                sorted[n - 1]
            } else {
                sorted[j * n / bins]
            }
        })
        .collect();
    let mut out = Vec::with_capacity(bins);
    let mut lo = 0usize;
    let mut f_left = cdf(edges[0])?;
    for j in 0..bins {
        let (l, r) = (edges[j], edges[j + 1]);
        let hi = if j + 1 == bins { n } else { sorted.partition_point(|&x| x <= r) };
        let count = (hi - lo) as u64;
        let f_right = cdf(r)?;
        let p = count as f64 / nf;
        out.push(HistogramBin {
            left: l,
            right: r,
            count,
            empirical_p: p,
            analytic_p: f_right - f_left,
            std_err: (p * (1.0 - p) / nf).sqrt(),
        });
        lo = hi;
        f_left = f_right;
    }
    Ok(out)
}

pub fn empirical_erlang(law: &WaitingTimeLaw, n: u32, paths: u64, seed: u64) -> Result<ErlangSample> {
    erlang_ks(law, n, sample_erlang_epochs(law, n, seed, 0..paths)?, 40)
}

/// Least-squares slope of ln S(t) against ln t for the empirical survival
/// of `draws` at `points` log-spaced times in [lo, hi].
pub fn tail_slope(draws: &[f64], lo: f64, hi: f64, points: usize) -> Result<f64> {
    if !(0.0 < lo && lo < hi) || points < 2 {
        return Err(Error::Domain("need 0 < lo < hi and at least two points".into()));
    }
    let mut sorted = draws.to_vec();
    sorted.sort_by(f64::total_cmp);
    let nf = sorted.len() as f64;
    let mut xy = Vec::with_capacity(points);
    for k in 0..points {
        let t = lo * (hi / lo).powf(k as f64 / (points - 1) as f64);
        let above = sorted.len() - sorted.partition_point(|&x| x <= t);
        if above == 0 {
            return Err(Error::Domain(format!("no draws beyond {t}")));
        }
        xy.push((t.ln(), (above as f64 / nf).ln()));
    }
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Waiting-time draws from streams 0..count.
pub fn sample_waiting_times(law: &WaitingTimeLaw, count: u64, seed: u64) -> Result<Vec<f64>> {
    (0..count).map(|id| sample_waiting_time(law, &mut RngStream::new(seed, id))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use crate::processes::FractionalPoisson;
    use crate::stable::stable_cdf;
    use proptest::prelude::*;

    fn ord(b: f64) -> Order {
        Order::new(b).unwrap()
    }

    #[test]
    fn ml_draw_uses_three_uniforms() {
        let mut rng = RngStream::new(1, 0);
        for k in 1..=10 {
            sample_ml_waiting_time(ord(0.6), 1.0, &mut rng);
            assert_eq!(rng.draws(), 3 * k);
        }
    }

    #[test]
    fn exponential_mean() {
        let law = WaitingTimeLaw::ml(ord(1.0));
        let d = sample_waiting_times(&law, 100_000, 11).unwrap();
        let m = d.iter().sum::<f64>() / d.len() as f64;
        let se = (d.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (d.len() - 1) as f64 / d.len() as f64).sqrt();
        assert!((m - 1.0).abs() < 3.0 * se, "{m} ± {se}");

        let law = WaitingTimeLaw::MittagLeffler(FractionalPoisson::new(ord(1.0), 2.5).unwrap());
        let d = sample_waiting_times(&law, 100_000, 12).unwrap();
        let m = d.iter().sum::<f64>() / d.len() as f64;
        assert!((m - 0.4).abs() < 0.01, "{m}");
    }

    #[test]
    fn ml_survival_within_binomial_band() {
        let p = FractionalPoisson::standard(ord(0.5));
        let law = WaitingTimeLaw::MittagLeffler(p);
        let d = sample_waiting_times(&law, 100_000, 3).unwrap();
        let n = d.len() as f64;
        for &t in &[1.0, 5.0, 20.0] {
            let emp = d.iter().filter(|&&x| x > t).count() as f64 / n;
            let psi = p.survival(t).unwrap().value;
            let sigma = (psi * (1.0 - psi) / n).sqrt();
            assert!((emp - psi).abs() < 3.0 * sigma, "t={t}: {emp} vs {psi}");
        }
    }

    #[test]
    fn ml_tail_exponent() {
        let law = WaitingTimeLaw::ml(ord(0.5));
        let d = sample_waiting_times(&law, 100_000, 5).unwrap();
        let slope = tail_slope(&d, 10.0, 1e3, 12).unwrap();
        assert!((slope + 0.5).abs() < 0.05, "{slope}");
    }

    #[test]
    fn lattice_paths_are_exact() {
        let law = WaitingTimeLaw::stable(ord(1.0));
        let path = simulate_counting(&law, 10.5, &mut RngStream::new(0, 0)).unwrap();
        assert_eq!(path.epochs, (1..=10).map(|k| k as f64).collect::<Vec<_>>());
        for &t in &[0.0, 0.5, 1.0, 2.999, 3.0, 10.4] {
            assert_eq!(path.count_at(t), t.floor() as usize);
        }
    }

    #[test]
    fn paths_are_increasing_and_bounded() {
        let law = WaitingTimeLaw::ml(ord(0.7));
        for id in 0..50 {
            let p = simulate_counting(&law, 30.0, &mut RngStream::new(9, id)).unwrap();
            assert!(p.epochs.windows(2).all(|w| w[0] < w[1]));
            assert!(p.epochs.iter().all(|&e| e <= 30.0));
            assert_eq!(p.count_at(30.0), p.len());
        }
    }

    #[test]
    fn poisson_mean_count() {
        let law = WaitingTimeLaw::exponential(2.0).unwrap();
        let h = count_histogram(&law, 1.0, 4, 0..100_000).unwrap();
        assert!((h.mean() - 2.0).abs() < 3.0 * h.std_err_of_mean(), "{}", h.mean());
    }

    #[test]
    fn fpp_renewal_function() {
        let law = WaitingTimeLaw::ml(ord(0.5));
        for &t in &[1.0, 5.0, 10.0] {
            let h = count_histogram(&law, t, 21, 0..100_000).unwrap();
            let m = t.sqrt() / gamma(1.5);
            assert!((h.mean() - m).abs() < 0.01 * m, "t={t}: {} vs {m}", h.mean());
        }
    }

    #[test]
    fn counting_pmf_within_four_sigma() {
        for law in [WaitingTimeLaw::ml(ord(0.5)), WaitingTimeLaw::stable(ord(0.5))] {
            let pmf = empirical_counting_pmf(&law, 1.0, 100_000, 8).unwrap();
            let analytic: Vec<f64> =
                (0..pmf.probs.len() as u32 + 5).map(|n| law.counting_prob(n, 1.0).unwrap().value).collect();
            let z = pmf.max_z(&analytic);
            assert!(z < 4.0, "{}: z = {z}", law.tag());
        }
        let pmf = EmpiricalPmf::from_histogram(
            &WaitingTimeLaw::ml(ord(0.5)),
            0.0,
            count_histogram(&WaitingTimeLaw::ml(ord(0.5)), 0.0, 1, 0..1000).unwrap(),
        );
        assert_eq!(pmf.probs, vec![1.0]);
        assert!(empirical_counting_pmf(&WaitingTimeLaw::ml(ord(0.5)), 1.0, 999, 0).is_err());
    }

    #[test]
    fn erlang_epochs_pass_ks() {
        let cases = [
            (WaitingTimeLaw::exponential(1.0).unwrap(), 2),
            (WaitingTimeLaw::stable(ord(0.5)), 3),
            (WaitingTimeLaw::ml(ord(1.0)), 1),
            (WaitingTimeLaw::ml(ord(0.75)), 2),
        ];
        for (law, n) in cases {
            let s = empirical_erlang(&law, n, 20_000, 17).unwrap();
            assert!(s.pass, "{} n={n}: {} vs {}", law.tag(), s.ks_statistic, s.critical);
            let total: u64 = s.histogram.iter().map(|b| b.count).sum();
            assert_eq!(total, 20_000);
        }
    }

    #[test]
    fn stable_sampler_ks() {
        for &b in &[0.25, 0.5, 0.75] {
            let law = WaitingTimeLaw::stable(ord(b));
            let mut d = sample_waiting_times(&law, 20_000, 31).unwrap();
            d.sort_by(f64::total_cmp);
            let ks = ks_statistic(&d, |x| stable_cdf(ord(b), x).map(|e| e.value), KS_MAX_EVALS).unwrap();
            assert!(ks < KS_CRITICAL_1PCT / (d.len() as f64).sqrt(), "beta={b}: {ks}");
        }
    }

    #[test]
    fn ks_bound_brackets_exact_value() {
        let d: Vec<f64> = (0..5000).map(|i| ((i as f64 + 0.3) / 5000.0).powf(1.1)).collect();
        let exact = ks_statistic(&d, Ok, usize::MAX).unwrap();
        let bound = ks_statistic(&d, Ok, 500).unwrap();
        assert!(bound >= exact && bound <= exact + 10.0 / 5000.0, "{exact} {bound}");
    }

    #[test]
    fn missing_sampler_is_an_error() {
        let law = WaitingTimeLaw::custom(crate::renewal::CustomLaw::new("flat", |_| 1.0, |t| t.min(1.0), |s| s, 0.5));
        assert!(sample_waiting_time(&law, &mut RngStream::new(0, 0)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn worker_split_is_invisible(seed in any::<u64>(), cut in 0u64..400) {
            let law = WaitingTimeLaw::ml(ord(0.6));
            let whole = count_histogram(&law, 3.0, seed, 0..400).unwrap();
            let left = count_histogram(&law, 3.0, seed, 0..cut).unwrap();
            let right = count_histogram(&law, 3.0, seed, cut..400).unwrap();
            prop_assert_eq!(right.merge(&left), whole);
        }

        #[test]
        fn paths_replay(seed in any::<u64>(), id in any::<u64>()) {
            let law = WaitingTimeLaw::stable(ord(0.8));
            let a = simulate_counting(&law, 20.0, &mut RngStream::new(seed, id)).unwrap();
            let b = simulate_counting(&law, 20.0, &mut RngStream::new(seed, id)).unwrap();
            prop_assert_eq!(a.epochs, b.epochs);
        }

        #[test]
        fn count_is_monotone_in_t(seed in any::<u64>(), t in 0.1f64..50.0) {
            let law = WaitingTimeLaw::ml(ord(0.4));
            let p = simulate_counting(&law, 100.0, &mut RngStream::new(seed, 0)).unwrap();
            prop_assert!(p.count_at(t) <= p.count_at(t * 1.5));
            prop_assert_eq!(p.count_at(t) as u64, simulate_count(&law, t, &mut RngStream::new(seed, 0)).unwrap());
        }
    }
}
