//! Numerical quadrature.
//!
//! * [`gauss_kronrod`]: globally adaptive 10/21-point Gauss–Kronrod.
//! * [`tanh_sinh`]: double-exponential rule on a finite interval, robust
//!   against integrable endpoint singularities such as t^(β-1).
//! * [`exp_sinh`]: double-exponential rule on [a, ∞).

use crate::error::{Error, Result};
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive Gauss–Kronrod quadrature on a finite interval.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Quadrature> {
    const MAX_PIECES: usize = 2000;
    if a == b {
        return Ok(Quadrature { value: 0.0, abs_err: 0.0, evals: 0 });
    }
    let (v, e) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, err: e });
    let mut total = v;
    let mut err = e;
    let mut evals = 21;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_PIECES {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}]: estimate {total:e}, error {err:e}"
            )));
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // interval can no longer be split in double precision
            heap.push(p);
            break;
        }
        let (v1, e1) = gk21(&f, p.a, m);
        let (v2, e2) = gk21(&f, m, p.b);
        evals += 42;
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2 });
    }
    // re-sum to shed accumulated cancellation in the running totals
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let abs_err: f64 = heap.iter().map(|p| p.err).sum();
    if !value.is_finite() {
        return Err(Error::NonConvergence(format!("non-finite integral on [{a}, {b}]")));
    }
    Ok(Quadrature { value, abs_err, evals })
}

/// Tanh-sinh quadrature on [a, b]. The integrand is never evaluated at
/// the endpoints.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    const T_MAX: f64 = 6.0;
    const MAX_LEVEL: u32 = 12;
    if a == b {
        return Ok(Quadrature { value: 0.0, abs_err: 0.0, evals: 0 });
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // contribution of node t (and its mirror)
    let eval = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        if t == 0.0 {
            return w * f(mid);
        }
        // distance from the nearer endpoint, computed without cancellation
        let d = half * 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        if d <= 0.0 || w == 0.0 {
            return 0.0;
        }
        let (xl, xr) = (a + d, b - d);
        let mut s = 0.0;
        if xl > a && xl < b {
            s += f(xl);
        }
        if xr > a && xr < b {
            s += f(xr);
        }
        w * s
    };
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut evals = 1;
    let mut k = 1.0;
    while k * h <= T_MAX {
        sum += eval(k * h);
        evals += 2;
        k += 1.0;
    }
    let mut prev = sum * h * half;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1.0;
        while k * h <= T_MAX {
            sum += eval(k * h);
            evals += 2;
            k += 2.0;
        }
        let cur = sum * h * half;
        let diff = (cur - prev).abs();
        if !cur.is_finite() {
            return Err(Error::NonConvergence("tanh-sinh: non-finite sum".into()));
        }
        if diff <= rel_tol * cur.abs() || diff < 1e-300 {
            return Ok(Quadrature { value: cur, abs_err: diff, evals });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!("tanh-sinh on [{a}, {b}] stalled at {prev:e}")))
}

/// Exp-sinh quadrature on [a, ∞) for integrands that decay at infinity.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, a: f64, rel_tol: f64) -> Result<Quadrature> {
    const T_LO: f64 = -4.5;
    const T_HI: f64 = 4.0;
    const MAX_LEVEL: u32 = 12;
    let eval = |t: f64| -> f64 {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let x = a + e;
        if !x.is_finite() || x <= a {
            return 0.0;
        }
        let v = f(x);
        if v == 0.0 {
            return 0.0;
        }
        FRAC_PI_2 * t.cosh() * e * v
    };
    let mut h = 0.5;
    let n_lo = (T_LO / h).ceil() as i64;
    let n_hi = (T_HI / h).floor() as i64;
    let mut sum = 0.0;
    let mut evals = 0;
    for k in n_lo..=n_hi {
        sum += eval(k as f64 * h);
        evals += 1;
    }
    let mut prev = sum * h;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        let n_lo = (T_LO / h).ceil() as i64;
        let n_hi = (T_HI / h).floor() as i64;
        for k in n_lo..=n_hi {
            if k % 2 != 0 {
                sum += eval(k as f64 * h);
                evals += 1;
            }
        }
        let cur = sum * h;
        let diff = (cur - prev).abs();
        if !cur.is_finite() {
            return Err(Error::NonConvergence("exp-sinh: non-finite sum".into()));
        }
        if diff <= rel_tol * cur.abs() || diff < 1e-300 {
            return Ok(Quadrature { value: cur, abs_err: diff, evals });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!("exp-sinh from {a} stalled at {prev:e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_integrates_polynomials_exactly() {
        // 21-point Kronrod is exact through degree 31
        let q = gauss_kronrod(|x| x.powi(30) * 31.0, 0.0, 1.0, 1e-15, 0.0).unwrap();
        assert!((q.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_adapts_to_a_spike() {
        let f = |x: f64| 1.0 / (1e-4 + (x - 0.3).powi(2));
        let exact = ((0.7f64 / 1e-2).atan() + (0.3f64 / 1e-2).atan()) / 1e-2;
        let q = gauss_kronrod(f, 0.0, 1.0, 0.0, 1e-12).unwrap();
        assert!((q.value / exact - 1.0).abs() < 1e-11);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_0^1 x^(-1/2) dx = 2 and ∫_0^1 ln x dx = -1
        let q = tanh_sinh(|x| x.powf(-0.5), 0.0, 1.0, 1e-13).unwrap();
        assert!((q.value - 2.0).abs() < 1e-12);
        let q = tanh_sinh(|x| x.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((q.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn exp_sinh_half_line() {
        let q = exp_sinh(|x| (-x).exp(), 0.0, 1e-13).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
        // Γ(1/2) = ∫ x^(-1/2) e^(-x)
        let q = exp_sinh(|x| x.powf(-0.5) * (-x).exp(), 0.0, 1e-13).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        // algebraic tail
        let q = exp_sinh(|x| 1.0 / (1.0 + x * x), 0.0, 1e-12).unwrap();
        assert!((q.value - FRAC_PI_2).abs() < 1e-10);
    }
}
