//! Gamma function in double and quad-double precision.
//!
//! The double routines wrap the musl-derived `libm` implementation, which
//! stays within a few ulps on (0, 171). The quad-double routines shift the
//! argument above 60 and apply the Stirling series through B_50, which
//! leaves a truncation error near 1e-66.

use crate::xprec::Qd;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == r.trunc() {
        return 0.0;
    }
    let (sign, a) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let a = if a > 0.5 { 1.0 - a } else { a };
    sign * (PI * a).sin()
}

/// Γ(x) for real x; ±∞ at the poles, overflow past 171.6.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return f64::INFINITY;
    }
    libm::tgamma(x)
}

/// 1/Γ(x), exactly zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return 0.0;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    if x < -170.0 {
        return sin_pi(x) / PI * ln_gamma(1.0 - x).exp();
    }
    1.0 / libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return f64::INFINITY;
    }
    libm::lgamma(x)
}

/// Bernoulli numbers B_2 .. B_50 as exact fractions.
const BERNOULLI: [(i128, i128); 25] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
    (1520097643918070802691, 1806),
    (-27833269579301024235023, 690),
    (596451111593912163277961, 282),
    (-5609403368997817686249127547, 46410),
    (495057205241079648212477525, 66),
];

const STIRLING_SHIFT: f64 = 60.0;

struct StirlingTable {
    coeffs: Vec<Qd>,
    half_ln_two_pi: Qd,
}

fn stirling() -> &'static StirlingTable {
    static T: OnceLock<StirlingTable> = OnceLock::new();
    T.get_or_init(|| {
        let coeffs = BERNOULLI
            .iter()
            .enumerate()
            .map(|(i, &(num, den))| {
                let k = 2 * (i as i128 + 1);
                Qd::from_i128(num) / Qd::from_i128(den * k * (k - 1))
            })
            .collect();
        StirlingTable { coeffs, half_ln_two_pi: Qd::pi().mul_f64(2.0).ln().mul_f64(0.5) }
    })
}

fn ln_gamma_stirling(y: Qd) -> Qd {
    let t = stirling();
    let inv = y.recip();
    let inv2 = inv.sqr();
    let mut p = inv;
    let mut s = Qd::ZERO;
    for c in &t.coeffs {
        s += *c * p;
        p *= inv2;
    }
    (y - Qd::from_f64(0.5)) * y.ln() - y + t.half_ln_two_pi + s
}

fn is_nonpositive_integer(x: Qd) -> bool {
    x.hi() <= 0.0 && x == x.floor()
}

/// ln|Γ(x)| and the sign of Γ(x) in quad-double precision.
/// At the poles the log is +∞ and the sign is reported as +1.
pub fn ln_gamma_qd(x: Qd) -> (Qd, f64) {
    if is_nonpositive_integer(x) {
        return (Qd::from_f64(f64::INFINITY), 1.0);
    }
    if x.hi() < 0.5 {
        let s = (x * Qd::pi()).sin_cos().0;
        let (lg, sg) = ln_gamma_qd(Qd::ONE - x);
        let sign = if s.is_sign_negative() { -sg } else { sg };
        return (Qd::pi().ln() - s.abs().ln() - lg, sign);
    }
    if x.hi() >= STIRLING_SHIFT {
        return (ln_gamma_stirling(x), 1.0);
    }
    let mut y = x;
    let mut prod = Qd::ONE;
    while y.hi() < STIRLING_SHIFT {
        prod *= y;
        y += Qd::ONE;
    }
    (ln_gamma_stirling(y) - prod.ln(), 1.0)
}

/// Γ(x) in quad-double precision (may overflow the f64 exponent range).
pub fn gamma_qd(x: Qd) -> Qd {
    if is_nonpositive_integer(x) {
        return Qd::from_f64(f64::INFINITY);
    }
    let (lg, s) = ln_gamma_qd(x);
    lg.exp().mul_f64(s)
}

/// 1/Γ(x) in quad-double precision, exactly zero at the poles.
pub fn rgamma_qd(x: Qd) -> Qd {
    if is_nonpositive_integer(x) {
        return Qd::ZERO;
    }
    let (lg, s) = ln_gamma_qd(x);
    (-lg).exp().mul_f64(s)
}
