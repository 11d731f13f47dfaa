//! The one-sided stable law of order β < 1 (Laplace transform e^(-s^β)),
//! its subordinator and inverse-subordinator densities, and Kanter's exact
//! sampler. β = 1 is the unit delta and is rejected by the densities.

use crate::error::{Error, Result};
use crate::quad::gauss_kronrod;
use crate::rng::RngStream;
use crate::specfun::{
    kanter_a0, kanter_excess, m_wright, peaked_integral, ulp, wright_sum, EvalResult, Method, Order, INTEGRAL_SWITCH,
};
use std::f64::consts::PI;

fn nondegenerate(beta: Order, what: &'static str) -> Result<f64> {
    if beta.is_degenerate() {
        Err(Error::Degenerate(what))
    } else {
        Ok(beta.get())
    }
}

/// Density g_β(t) = β t^(-β-1) M_β(t^(-β)).
pub fn stable_pdf(beta: Order, t: f64) -> Result<EvalResult> {
    let b = nondegenerate(beta, "the stable density is the delta at t = 1")?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("stable density needs t > 0, got {t}")));
    }
    if b == 0.5 {
        // Lévy–Smirnov
        let v = (-0.25 / t - 1.5 * t.ln()).exp() / (2.0 * PI.sqrt());
        return Ok(EvalResult::new(v, v * f64::EPSILON * (4.0 + 0.25 / t), Method::ClosedForm));
    }
    let m = m_wright(b, t.powf(-b))?;
    Ok(scaled(m, b.ln() - (b + 1.0) * t.ln()))
}

/// e^ln_pre · m, formed in logs so that an overflowing prefactor meeting an
/// underflowing M-Wright value still gives a finite product.
fn scaled(m: EvalResult, ln_pre: f64) -> EvalResult {
    if m.value == 0.0 {
        return EvalResult::new(0.0, (ln_pre + m.abs_err.ln()).exp(), m.method);
    }
    let v = (ln_pre + m.value.ln()).exp();
    let rel = m.abs_err / m.value + 4.0 * f64::EPSILON * (1.0 + ln_pre.abs());
    EvalResult::new(v, v * rel, m.method)
}

fn cdf_scale(b: f64, t: f64) -> f64 {
    t.powf(-b / (1.0 - b)) * kanter_a0(b)
}

/// (G, 1 - G) by the series of W_{-β,1}(-t^(-β)).
fn series_parts(b: f64, t: f64) -> Result<(EvalResult, EvalResult)> {
    let x = t.powf(-b);
    let all = wright_sum(-b, 1.0, -x, 0)?;
    let tail = wright_sum(-b, 1.0, -x, 1)?;
    let g = all.sum.to_f64();
    let s = -tail.sum.to_f64();
    if all.cancellation() {
        return Err(Error::Cancellation { estimate: g, max_term: all.max_term });
    }
    Ok((
        EvalResult::new(g, all.bound() + ulp(g), Method::Series),
        EvalResult::new(s, tail.bound() + ulp(s), Method::Series),
    ))
}

fn check_t(beta: Order, t: f64) -> Result<f64> {
    let b = nondegenerate(beta, "use the unit step for the distribution function")?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("need finite t > 0, got {t}")));
    }
    Ok(b)
}

/// G_β(t) by its Wright-function series.
pub fn stable_cdf_series(beta: Order, t: f64) -> Result<EvalResult> {
    Ok(series_parts(check_t(beta, t)?, t)?.0)
}

/// 1 - G_β(t) by the series with the leading 1 removed.
pub fn stable_sf_series(beta: Order, t: f64) -> Result<EvalResult> {
    Ok(series_parts(check_t(beta, t)?, t)?.1)
}

/// G_β(t) = (1/π) ∫_0^π exp(-c A(φ)) dφ with c = t^(-β/(1-β)).
pub fn stable_cdf_integral(beta: Order, t: f64) -> Result<EvalResult> {
    let b = check_t(beta, t)?;
    let ca0 = cdf_scale(b, t);
    if ca0 > 760.0 {
        return Ok(EvalResult::new(0.0, f64::MIN_POSITIVE, Method::Integral));
    }
    let (value, err) = peaked_integral(|phi| (-ca0 * kanter_excess(b, phi).exp_m1()).exp(), ca0)?;
    let v = (-ca0).exp() * value / PI;
    let rel = err / value + 8.0 * f64::EPSILON * (1.0 + ca0);
    Ok(EvalResult::new(v, v * rel, Method::Integral))
}

/// 1 - G_β(t) = (1/π) ∫_0^π (1 - exp(-c A(φ))) dφ.
pub fn stable_sf_integral(beta: Order, t: f64) -> Result<EvalResult> {
    let b = check_t(beta, t)?;
    let ca0 = cdf_scale(b, t);
    let f = |phi: f64| -(-ca0 * kanter_excess(b, phi).exp()).exp_m1();
    let q = gauss_kronrod(f, 0.0, PI, 0.0, 1e-14)?;
    let v = q.value / PI;
    Ok(EvalResult::new(v, q.abs_err / PI + 8.0 * ulp(v), Method::Integral))
}

/// Distribution function G_β(t); the unit step at t = 1 when β = 1.
pub fn stable_cdf(beta: Order, t: f64) -> Result<EvalResult> {
    if t.is_nan() {
        return Err(Error::Domain("t is NaN".into()));
    }
    if beta.is_degenerate() {
        return Ok(EvalResult::new(if t >= 1.0 { 1.0 } else { 0.0 }, 0.0, Method::ClosedForm));
    }
    if t <= 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm));
    }
    if t == f64::INFINITY {
        return Ok(EvalResult::new(1.0, 0.0, Method::ClosedForm));
    }
    if cdf_scale(beta.get(), t) > INTEGRAL_SWITCH {
        stable_cdf_integral(beta, t)
    } else {
        stable_cdf_series(beta, t)
    }
}

/// Survival function 1 - G_β(t), accurate in the far tail.
pub fn stable_sf(beta: Order, t: f64) -> Result<EvalResult> {
    if t.is_nan() {
        return Err(Error::Domain("t is NaN".into()));
    }
    if beta.is_degenerate() {
        return Ok(EvalResult::new(if t >= 1.0 { 0.0 } else { 1.0 }, 0.0, Method::ClosedForm));
    }
    if t <= 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::ClosedForm));
    }
    if t == f64::INFINITY {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm));
    }
    if cdf_scale(beta.get(), t) > INTEGRAL_SWITCH {
        let g = stable_cdf_integral(beta, t)?;
        Ok(EvalResult::new(1.0 - g.value, g.abs_err + f64::EPSILON, Method::Integral))
    } else {
        stable_sf_series(beta, t)
    }
}

/// G_β^(-1)(p) by bisection in log t.
pub fn stable_quantile(beta: Order, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile level {p} outside (0, 1)")));
    }
    if beta.is_degenerate() {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (-60.0f64, 60.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if stable_cdf(beta, mid.exp())?.value < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Density in t of the stable subordinator at x: f(t, x) = x^(-1/β) g_β(x^(-1/β) t).
pub fn subordinator_pdf(beta: Order, t: f64, x: f64) -> Result<EvalResult> {
    let b = nondegenerate(beta, "the subordinator density is the delta at t = x")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("subordinator density needs x > 0, got {x}")));
    }
    let s = x.powf(-1.0 / b);
    let g = stable_pdf(beta, s * t)?;
    let v = s * g.value;
    Ok(EvalResult::new(v, s * g.abs_err + 2.0 * ulp(v), g.method))
}

/// The same density written through M_β: f(t, x) = β x t^(-β-1) M_β(x t^(-β)).
pub fn subordinator_pdf_m_form(beta: Order, t: f64, x: f64) -> Result<EvalResult> {
    let b = nondegenerate(beta, "the subordinator density is the delta at t = x")?;
    if !(x > 0.0 && t > 0.0) || !x.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!("need t, x > 0, got ({t}, {x})")));
    }
    let m = m_wright(b, x * t.powf(-b))?;
    Ok(scaled(m, b.ln() + x.ln() - (b + 1.0) * t.ln()))
}

/// Density in x of the inverse stable subordinator at time t:
/// t^(-β) M_β(x / t^β).
pub fn inverse_subordinator_pdf(beta: Order, x: f64, t: f64) -> Result<EvalResult> {
    let b = nondegenerate(beta, "the inverse subordinator is the delta at x = t")?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("inverse subordinator needs t > 0, got {t}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("inverse subordinator needs x >= 0, got {x}")));
    }
    let pre = t.powf(-b);
    let m = m_wright(b, x * pre)?;
    let v = pre * m.value;
    Ok(EvalResult::new(v, pre * m.abs_err + 2.0 * ulp(v), m.method))
}

/// Distribution function in x of the inverse subordinator at time t:
/// P(E_t ≤ x) = 1 - G_β(t x^(-1/β)).
pub fn inverse_subordinator_cdf(beta: Order, x: f64, t: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if beta.is_degenerate() {
        return Ok(if x >= t { 1.0 } else { 0.0 });
    }
    Ok(stable_sf(beta, t * x.powf(-1.0 / beta.get()))?.value)
}

/// One draw of the standard one-sided stable law by Kanter's formula
/// S = (A(πU)/E)^((1-β)/β); consumes exactly two uniforms.
pub fn sample_stable(beta: Order, rng: &mut RngStream) -> f64 {
    let b = beta.get();
    let u = rng.uniform();
    let e = rng.exponential();
    if beta.is_degenerate() {
        return 1.0;
    }
    let ln_a = kanter_a0(b).ln() + kanter_excess(b, PI * u);
    ((1.0 - b) / b * (ln_a - e.ln())).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{exp_sinh, tanh_sinh};
    use proptest::prelude::*;

    fn ord(b: f64) -> Order {
        Order::new(b).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn levy_smirnov_value() {
        assert!(close(stable_pdf(ord(0.5), 1.0).unwrap().value, 0.219_695_644_733_861_198_5, 1e-15));
        assert!(matches!(stable_pdf(ord(1.0), 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn density_normalised() {
        for &b in &[0.25, 0.5, 0.75] {
            // t = e^y tames the t^(-1-β) tail
            let f = |y: f64| stable_pdf(ord(b), y.exp()).unwrap().value * y.exp();
            let q = gauss_kronrod(f, -12.0, 300.0, 0.0, 1e-12).unwrap().value;
            assert!((q - 1.0).abs() < 1e-8, "{b}: {q}");
        }
    }

    #[test]
    fn cdf_reference_values() {
        // 80-digit series of W_{-β,1}(-t^{-β})
        let cases = [
            (0.25, 0.01, 0.049_074_735_781_065_311_669),
            (0.75, 0.5, 0.161_474_681_879_103_770_78),
            (0.25, 100.0, 0.768_703_467_378_726_978_69),
            (0.75, 0.3, 0.004_265_244_610_992_791_163),
        ];
        for (b, t, want) in cases {
            assert!(close(stable_cdf(ord(b), t).unwrap().value, want, 1e-13), "{b} {t}");
        }
        assert!(close(stable_sf(ord(0.25), 1e6).unwrap().value, 0.025_525_092_128_181_598_866, 1e-13));
        assert!(close(stable_sf(ord(0.5), 1e4).unwrap().value, 0.005_641_848_820_031_550_280_6, 1e-13));
    }

    #[test]
    fn half_order_cdf_is_erfc() {
        for &t in &[0.05f64, 0.3, 1.0, 4.0, 50.0] {
            let want = libm::erfc(0.5 / t.sqrt());
            assert!(close(stable_cdf(ord(0.5), t).unwrap().value, want, 1e-13), "{t}");
        }
        assert!(close(stable_cdf(ord(0.5), 1.0).unwrap().value, 0.479_500_122_186_953_5, 1e-14));
    }

    #[test]
    fn degenerate_step() {
        let one = ord(1.0);
        assert_eq!(stable_cdf(one, 0.5).unwrap().value, 0.0);
        assert_eq!(stable_cdf(one, 1.0).unwrap().value, 1.0);
        assert_eq!(stable_cdf(ord(0.4), 0.0).unwrap().value, 0.0);
        assert_eq!(sample_stable(one, &mut RngStream::new(1, 1)), 1.0);
    }

    #[test]
    fn series_and_integral_agree() {
        for &b in &[0.2, 0.35, 0.5, 0.65, 0.8] {
            for &t in &[0.08, 0.2, 0.6, 2.0, 9.0] {
                if cdf_scale(b, t) > INTEGRAL_SWITCH {
                    continue;
                }
                let s = stable_cdf_series(ord(b), t).unwrap().value;
                let i = stable_cdf_integral(ord(b), t).unwrap().value;
                assert!((s - i).abs() <= 1e-12 * s.max(1e-3), "{b} {t}: {s} {i}");
                let s = stable_sf_series(ord(b), t).unwrap().value;
                let i = stable_sf_integral(ord(b), t).unwrap().value;
                assert!((s - i).abs() <= 1e-12 * s.max(1e-3), "{b} {t}: {s} {i}");
            }
        }
    }

    #[test]
    fn cdf_integrates_density() {
        for &(b, t) in &[(0.3, 2.0), (0.75, 0.7), (0.6, 5.0)] {
            let q = tanh_sinh(|u| stable_pdf(ord(b), u).unwrap().value, 0.0, t, 1e-12).unwrap();
            assert!(close(q.value, stable_cdf(ord(b), t).unwrap().value, 1e-10), "{b} {t}");
        }
    }

    #[test]
    fn subordinator_scaling() {
        let b = ord(0.5);
        let f = subordinator_pdf(b, 1.0, 2.0).unwrap().value;
        assert!(close(f, 0.25 * stable_pdf(b, 0.25).unwrap().value, 1e-15));
        assert!(close(
            subordinator_pdf(ord(0.3), 1.7, 1.0).unwrap().value,
            stable_pdf(ord(0.3), 1.7).unwrap().value,
            1e-15
        ));
    }

    #[test]
    fn subordinator_two_forms_agree_on_grid() {
        for &b in &[0.3, 0.5, 0.7] {
            for i in 0..20 {
                for j in 0..20 {
                    let t = 0.1 * 100f64.powf(i as f64 / 19.0);
                    let x = 0.1 * 100f64.powf(j as f64 / 19.0);
                    let a = subordinator_pdf(ord(b), t, x).unwrap().value;
                    let m = subordinator_pdf_m_form(ord(b), t, x).unwrap().value;
                    assert!((a - m).abs() <= 1e-10 * a.max(1e-300) || (a - m).abs() < 1e-280, "{b} {t} {x}: {a} {m}");
                }
            }
        }
    }

    #[test]
    fn inverse_subordinator_values() {
        let b = ord(0.5);
        assert!(close(inverse_subordinator_pdf(b, 1.0, 1.0).unwrap().value, 0.439_391_289_467_722_4, 1e-15));
        let v0 = inverse_subordinator_pdf(ord(0.3), 0.0, 2.0).unwrap().value;
        assert!(close(v0, 2f64.powf(-0.3) / crate::gamma::gamma(0.7), 1e-14));
        for &b in &[0.25, 0.5, 0.75] {
            let q = exp_sinh(|x| inverse_subordinator_pdf(ord(b), x, 3.0).unwrap().value, 0.0, 1e-12).unwrap();
            assert!((q.value - 1.0).abs() < 1e-8, "{b}");
        }
    }

    #[test]
    fn sampler_ks_and_median() {
        let b = ord(0.5);
        let n = 100_000;
        let mut r = RngStream::new(2024, 0);
        let mut xs: Vec<f64> = (0..n).map(|_| sample_stable(b, &mut r)).collect();
        assert_eq!(r.draws(), 2 * n as u64);
        xs.sort_by(f64::total_cmp);
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = libm::erfc(0.5 / x.sqrt());
                (f - i as f64 / n as f64).abs().max(((i + 1) as f64 / n as f64 - f).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.006, "KS {ks}");
        let med = stable_quantile(b, 0.5).unwrap();
        // erfc(1/(2√m)) = 1/2
        assert!(close(med, 1.099_054_669_158_866_2, 1e-9), "{med}");
        let emp = xs[n / 2];
        assert!((emp / med - 1.0).abs() < 0.03);
    }

    #[test]
    fn sampler_laplace_transform() {
        for &b in &[0.3, 0.7] {
            let n = 100_000;
            let mut r = RngStream::new(5, 11);
            let xs: Vec<f64> = (0..n).map(|_| sample_stable(ord(b), &mut r)).collect();
            for &s in &[0.5f64, 1.0, 2.0] {
                let ys: Vec<f64> = xs.iter().map(|x| (-s * x).exp()).collect();
                let mean = ys.iter().sum::<f64>() / n as f64;
                let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                let se = (var / n as f64).sqrt();
                assert!((mean - (-s.powf(b)).exp()).abs() < 3.0 * se, "{b} {s}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cdf_monotone_and_complementary(b in 0.1f64..0.95, lt in -1.5f64..3.0) {
            let t = 10f64.powf(lt);
            let g1 = stable_cdf(ord(b), t).unwrap().value;
            let g2 = stable_cdf(ord(b), 1.05 * t).unwrap().value;
            let s1 = stable_sf(ord(b), t).unwrap().value;
            prop_assert!(g2 >= g1);
            prop_assert!((0.0..=1.0).contains(&g1));
            prop_assert!((g1 + s1 - 1.0).abs() < 1e-13);
        }

        #[test]
        fn inverse_subordinator_self_similar(b in 0.1f64..0.95, x in 0.01f64..5.0, t in 0.1f64..20.0) {
            let lhs = inverse_subordinator_pdf(ord(b), x, t).unwrap().value;
            let rhs = t.powf(-b) * inverse_subordinator_pdf(ord(b), x * t.powf(-b), 1.0).unwrap().value;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300));
        }
    }
}
