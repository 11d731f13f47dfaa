//! Quad-double arithmetic.
//!
//! A [`Qd`] is an unevaluated sum of four non-overlapping `f64` limbs,
//! giving roughly 2^-209 (about 62 digits) of relative precision with the
//! exponent range of `f64`. The algorithms follow Hida, Li and Bailey.
//! Addition uses the accurate (IEEE-style) merge so that cancellation
//! between nearly equal operands loses nothing beyond the fourth limb.
//!
//! [`Cqd`] is the matching complex type, enough for Laplace-contour work:
//! `exp`, principal `ln` and real powers.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Qd(pub [f64; 4]);

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[cfg(target_feature = "fma")]
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[cfg(not(target_feature = "fma"))]
#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0;
    const THRESH: f64 = 6.696_928_794_914_17e299;
    if a.abs() > THRESH {
        let a = a * 3.725_290_298_461_914e-9;
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

#[cfg(not(target_feature = "fma"))]
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

#[inline]
fn three_sum(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let (t1, t2) = two_sum(a, b);
    let (a, t3) = two_sum(c, t1);
    let (b, c) = two_sum(t2, t3);
    (a, b, c)
}

#[inline]
fn three_sum2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let (t1, t2) = two_sum(a, b);
    let (a, t3) = two_sum(c, t1);
    (a, t2 + t3)
}

fn renorm(c0: f64, c1: f64, c2: f64, c3: f64, c4: f64) -> Qd {
    if !c0.is_finite() {
        return Qd([c0, 0.0, 0.0, 0.0]);
    }
    let (s, c4) = quick_two_sum(c3, c4);
    let (s, c3) = quick_two_sum(c2, s);
    let (s, c2) = quick_two_sum(c1, s);
    let (c0, c1) = quick_two_sum(c0, s);

    let (mut s0, mut s1) = quick_two_sum(c0, c1);
    let (mut s2, mut s3) = (0.0, 0.0);
    if s1 != 0.0 {
        (s1, s2) = quick_two_sum(s1, c2);
        if s2 != 0.0 {
            (s2, s3) = quick_two_sum(s2, c3);
            if s3 != 0.0 {
                s3 += c4;
            } else {
                (s2, s3) = quick_two_sum(s2, c4);
            }
        } else {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        }
    } else {
        (s0, s1) = quick_two_sum(s0, c2);
        if s1 != 0.0 {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        } else {
            (s0, s1) = quick_two_sum(s0, c3);
            if s1 != 0.0 {
                (s1, s2) = quick_two_sum(s1, c4);
            } else {
                (s0, s1) = quick_two_sum(s0, c4);
            }
        }
    }
    Qd([s0, s1, s2, s3])
}

/// Adds `c` into the double-length accumulator `(u, v)`; returns a limb
/// that has become final, or zero.
#[inline]
fn quick_three_accum(u: &mut f64, v: &mut f64, c: f64) -> f64 {
    let (s, b) = two_sum(*v, c);
    let (s, a) = two_sum(*u, s);
    let za = a != 0.0;
    let zb = b != 0.0;
    if za && zb {
        *u = a;
        *v = b;
        return s;
    }
    if !zb {
        *v = a;
        *u = s;
    } else {
        *u = s;
        *v = b;
    }
    0.0
}

fn ieee_add(a: &Qd, b: &Qd) -> Qd {
    let (a, b) = (&a.0, &b.0);
    let (mut i, mut j, mut k) = (0usize, 0usize, 0usize);
    let mut x = [0.0f64; 4];
    let pick = |i: &mut usize, j: &mut usize| -> f64 {
        if *i >= 4 {
            *j += 1;
            b[*j - 1]
        } else if *j >= 4 || a[*i].abs() > b[*j].abs() {
            *i += 1;
            a[*i - 1]
        } else {
            *j += 1;
            b[*j - 1]
        }
    };
    let u0 = pick(&mut i, &mut j);
    let v0 = pick(&mut i, &mut j);
    let (mut u, mut v) = quick_two_sum(u0, v0);
    while k < 4 {
        if i >= 4 && j >= 4 {
            x[k] = u;
            if k < 3 {
                x[k + 1] = v;
            }
            break;
        }
        let t = pick(&mut i, &mut j);
        let s = quick_three_accum(&mut u, &mut v, t);
        if s != 0.0 {
            x[k] = s;
            k += 1;
        }
    }
    for &ak in &a[i.min(4)..] {
        x[3] += ak;
    }
    for &bk in &b[j.min(4)..] {
        x[3] += bk;
    }
    renorm(x[0], x[1], x[2], x[3], 0.0)
}

fn mul_qd(a: &Qd, b: &Qd) -> Qd {
    let (a, b) = (&a.0, &b.0);
    let (p0, q0) = two_prod(a[0], b[0]);
    let (p1, q1) = two_prod(a[0], b[1]);
    let (p2, q2) = two_prod(a[1], b[0]);
    let (p3, q3) = two_prod(a[0], b[2]);
    let (p4, q4) = two_prod(a[1], b[1]);
    let (p5, q5) = two_prod(a[2], b[0]);

    let (p1, p2, q0) = three_sum(p1, p2, q0);
    let (p2, q1, q2) = three_sum(p2, q1, q2);
    let (p3, p4, p5) = three_sum(p3, p4, p5);

    let (s0, t0) = two_sum(p2, p3);
    let (s1, t1) = two_sum(q1, p4);
    let mut s2 = q2 + p5;
    let (mut s1, t0) = two_sum(s1, t0);
    s2 += t0 + t1;

    s1 += a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0] + q0 + q3 + q4 + q5;
    renorm(p0, p1, s0, s1, s2)
}

fn mul_f64(a: &Qd, b: f64) -> Qd {
    let a = &a.0;
    let (p0, q0) = two_prod(a[0], b);
    let (p1, q1) = two_prod(a[1], b);
    let (p2, q2) = two_prod(a[2], b);
    let p3 = a[3] * b;
    let s0 = p0;
    let (s1, s2) = two_sum(q0, p1);
    let (s2, q1, p2) = three_sum(s2, q1, p2);
    let (q1, q2) = three_sum2(q1, q2, p3);
    renorm(s0, s1, s2, q1, q2 + p2)
}

fn div_qd(a: &Qd, b: &Qd) -> Qd {
    let b0 = b.0[0];
    let q0 = a.0[0] / b0;
    let mut r = *a - mul_f64(b, q0);
    let q1 = r.0[0] / b0;
    r -= mul_f64(b, q1);
    let q2 = r.0[0] / b0;
    r -= mul_f64(b, q2);
    let q3 = r.0[0] / b0;
    r -= mul_f64(b, q3);
    let q4 = r.0[0] / b0;
    renorm(q0, q1, q2, q3, q4)
}

impl Qd {
    pub const ZERO: Qd = Qd([0.0; 4]);
    pub const ONE: Qd = Qd([1.0, 0.0, 0.0, 0.0]);
    /// Unit roundoff of the format.
    pub const EPS: f64 = 1.215_432_671_457_254_2e-63;

    #[inline]
    pub fn from_f64(x: f64) -> Qd {
        Qd([x, 0.0, 0.0, 0.0])
    }

    /// Exact conversion of an integer of any size representable in i128.
    pub fn from_i128(n: i128) -> Qd {
        let mut rem = n;
        let mut acc = Qd::ZERO;
        while rem != 0 {
            let hi = rem as f64;
            acc += Qd::from_f64(hi);
            rem -= hi as i128;
        }
        acc
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.0[0] + self.0[1]
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0[0] == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0[0].is_finite()
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.0[0] < 0.0
    }

    #[inline]
    pub fn abs(self) -> Qd {
        if self.0[0] < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplication by an exact power of two.
    #[inline]
    pub fn ldexp(self, e: i32) -> Qd {
        let f = 2f64.powi(e);
        if f.is_finite() && f != 0.0 {
            Qd(self.0.map(|x| x * f))
        } else {
            let h = e / 2;
            self.ldexp(h).ldexp(e - h)
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Qd {
        mul_f64(&self, b)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Qd {
        div_qd(&self, &Qd::from_f64(b))
    }

    #[inline]
    pub fn sqr(self) -> Qd {
        mul_qd(&self, &self)
    }

    pub fn recip(self) -> Qd {
        div_qd(&Qd::ONE, &self)
    }

    pub fn powi(self, n: i32) -> Qd {
        if n == 0 {
            return Qd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Qd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn floor(self) -> Qd {
        let x0 = self.0[0].floor();
        if x0 != self.0[0] {
            return Qd::from_f64(x0);
        }
        let x1 = self.0[1].floor();
        if x1 != self.0[1] {
            return renorm(x0, x1, 0.0, 0.0, 0.0);
        }
        let x2 = self.0[2].floor();
        if x2 != self.0[2] {
            return renorm(x0, x1, x2, 0.0, 0.0);
        }
        renorm(x0, x1, x2, self.0[3].floor(), 0.0)
    }

    pub fn round(self) -> Qd {
        (self + Qd::from_f64(0.5)).floor()
    }

    pub fn sqrt(self) -> Qd {
        if self.is_zero() {
            return Qd::ZERO;
        }
        if self.0[0] < 0.0 {
            return Qd::from_f64(f64::NAN);
        }
        let half = self.mul_f64(0.5);
        let mut x = Qd::from_f64(1.0 / self.0[0].sqrt());
        for _ in 0..3 {
            x += x * (Qd::from_f64(0.5) - half * x.sqr());
        }
        self * x
    }

    pub fn exp(self) -> Qd {
        const K: i32 = 10;
        if self.0[0] <= -745.2 {
            return Qd::ZERO;
        }
        if self.0[0] >= 709.8 {
            return Qd::from_f64(f64::INFINITY);
        }
        if self.is_zero() {
            return Qd::ONE;
        }
        let c = consts();
        let m = (self.0[0] / std::f64::consts::LN_2 + 0.5).floor();
        let r = (self - c.ln2.mul_f64(m)).ldexp(-K);
        // expm1 of r by Taylor, then squared back up K times in expm1 form
        let mut s = r;
        let mut p = r;
        let inv_fact = &c.inv_fact;
        for f in inv_fact.iter().skip(2) {
            p *= r;
            let t = p * *f;
            s += t;
            if t.0[0].abs() <= Qd::EPS * 1e-3 * s.0[0].abs() {
                break;
            }
        }
        for _ in 0..K {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + Qd::ONE).ldexp(m as i32)
    }

    pub fn ln(self) -> Qd {
        if self.0[0] <= 0.0 {
            return Qd::from_f64(if self.0[0] == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if !self.is_finite() {
            return self;
        }
        let mut x = Qd::from_f64(self.0[0].ln());
        for _ in 0..3 {
            x = x + self * (-x).exp() - Qd::ONE;
        }
        x
    }

    /// `self^e` for `self > 0`.
    pub fn powf(self, e: Qd) -> Qd {
        if self.is_zero() {
            return if e.0[0] > 0.0 { Qd::ZERO } else { Qd::from_f64(f64::INFINITY) };
        }
        (e * self.ln()).exp()
    }

    /// Sine and cosine together.
    pub fn sin_cos(self) -> (Qd, Qd) {
        if self.is_zero() {
            return (Qd::ZERO, Qd::ONE);
        }
        let c = consts();
        let z = (self / c.two_pi).round();
        let r = self - c.two_pi * z;
        let j = (r.0[0] / std::f64::consts::FRAC_PI_2).round();
        let r = r - c.half_pi.mul_f64(j);
        let (s, co) = sin_cos_taylor(r, &c.inv_fact);
        match (j as i64).rem_euclid(4) {
            0 => (s, co),
            1 => (co, -s),
            2 => (-s, -co),
            _ => (-co, s),
        }
    }

    pub fn atan2(y: Qd, x: Qd) -> Qd {
        let c = consts();
        if x.is_zero() {
            if y.is_zero() {
                return Qd::ZERO;
            }
            return if y.0[0] > 0.0 { c.half_pi } else { -c.half_pi };
        }
        if y.is_zero() {
            return if x.0[0] > 0.0 { Qd::ZERO } else { c.pi };
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let (xn, yn) = (x / r, y / r);
        let mut z = Qd::from_f64(y.0[0].atan2(x.0[0]));
        for _ in 0..2 {
            let (s, co) = z.sin_cos();
            // sin(target - z), exact enough once |target - z| is tiny
            z += yn * co - xn * s;
        }
        z
    }

    pub fn pi() -> Qd {
        consts().pi
    }

    pub fn ln2() -> Qd {
        consts().ln2
    }
}

fn sin_cos_taylor(r: Qd, inv_fact: &[Qd]) -> (Qd, Qd) {
    if r.is_zero() {
        return (Qd::ZERO, Qd::ONE);
    }
    let r2 = r.sqr();
    let mut s = r;
    let mut p = r;
    let mut k = 3;
    while k < inv_fact.len() {
        p = -(p * r2);
        let t = p * inv_fact[k];
        s += t;
        if t.0[0].abs() <= Qd::EPS * 1e-3 * r.0[0].abs() {
            break;
        }
        k += 2;
    }
    let co = (Qd::ONE - s.sqr()).sqrt();
    (s, co)
}

struct Consts {
    pi: Qd,
    two_pi: Qd,
    half_pi: Qd,
    ln2: Qd,
    inv_fact: Vec<Qd>,
}

fn consts() -> &'static Consts {
    static C: OnceLock<Consts> = OnceLock::new();
    C.get_or_init(|| {
        let mut inv_fact = vec![Qd::ONE, Qd::ONE];
        for n in 2..64 {
            let prev = inv_fact[n - 1];
            inv_fact.push(prev.div_f64(n as f64));
        }
        let pi = machin_pi();
        let ln2 = ln2_series();
        Consts { pi, two_pi: pi.mul_f64(2.0), half_pi: pi.mul_f64(0.5), ln2, inv_fact }
    })
}

/// atan(1/m) by its alternating Taylor series.
fn atan_inv(m: f64) -> Qd {
    let x = Qd::from_f64(1.0).div_f64(m);
    let x2 = x.sqr();
    let mut p = x;
    let mut s = x;
    let mut k = 1.0;
    loop {
        p = -(p * x2);
        k += 2.0;
        let t = p.div_f64(k);
        s += t;
        if t.0[0].abs() < 1e-70 {
            break;
        }
    }
    s
}

fn machin_pi() -> Qd {
    (atan_inv(5.0).mul_f64(4.0) - atan_inv(239.0)).mul_f64(4.0)
}

/// ln 2 = 2 atanh(1/3).
fn ln2_series() -> Qd {
    let x = Qd::ONE.div_f64(3.0);
    let x2 = x.sqr();
    let mut p = x;
    let mut s = x;
    let mut k = 1.0;
    loop {
        p *= x2;
        k += 2.0;
        let t = p.div_f64(k);
        s += t;
        if t.0[0] < 1e-70 {
            break;
        }
    }
    s.mul_f64(2.0)
}

impl From<f64> for Qd {
    fn from(x: f64) -> Qd {
        Qd::from_f64(x)
    }
}

impl Neg for Qd {
    type Output = Qd;
    #[inline]
    fn neg(self) -> Qd {
        Qd(self.0.map(|x| -x))
    }
}

impl Add for Qd {
    type Output = Qd;
    #[inline]
    fn add(self, b: Qd) -> Qd {
        ieee_add(&self, &b)
    }
}

impl Sub for Qd {
    type Output = Qd;
    #[inline]
    fn sub(self, b: Qd) -> Qd {
        ieee_add(&self, &-b)
    }
}

impl Mul for Qd {
    type Output = Qd;
    #[inline]
    fn mul(self, b: Qd) -> Qd {
        mul_qd(&self, &b)
    }
}

impl Div for Qd {
    type Output = Qd;
    #[inline]
    fn div(self, b: Qd) -> Qd {
        div_qd(&self, &b)
    }
}

impl AddAssign for Qd {
    #[inline]
    fn add_assign(&mut self, b: Qd) {
        *self = *self + b;
    }
}

impl SubAssign for Qd {
    #[inline]
    fn sub_assign(&mut self, b: Qd) {
        *self = *self - b;
    }
}

impl MulAssign for Qd {
    #[inline]
    fn mul_assign(&mut self, b: Qd) {
        *self = *self * b;
    }
}

impl PartialOrd for Qd {
    fn partial_cmp(&self, other: &Qd) -> Option<Ordering> {
        let d = *self - *other;
        d.0[0].partial_cmp(&0.0)
    }
}

/// Complex quad-double.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cqd {
    pub re: Qd,
    pub im: Qd,
}

impl Cqd {
    pub const ONE: Cqd = Cqd { re: Qd::ONE, im: Qd::ZERO };

    pub fn new(re: Qd, im: Qd) -> Cqd {
        Cqd { re, im }
    }

    pub fn real(re: Qd) -> Cqd {
        Cqd { re, im: Qd::ZERO }
    }

    pub fn from_f64(re: f64, im: f64) -> Cqd {
        Cqd { re: Qd::from_f64(re), im: Qd::from_f64(im) }
    }

    pub fn norm_sqr(self) -> Qd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Qd {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: Qd) -> Cqd {
        Cqd { re: self.re * k, im: self.im * k }
    }

    pub fn recip(self) -> Cqd {
        let d = self.norm_sqr();
        Cqd { re: self.re / d, im: -(self.im / d) }
    }

    pub fn exp(self) -> Cqd {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cqd { re: m * c, im: m * s }
    }

    /// Principal logarithm, branch cut on the negative real axis.
    pub fn ln(self) -> Cqd {
        Cqd { re: self.norm_sqr().ln().mul_f64(0.5), im: Qd::atan2(self.im, self.re) }
    }

    /// Principal power `exp(e Log z)`.
    pub fn powf(self, e: Qd) -> Cqd {
        if self.re.is_zero() && self.im.is_zero() {
            return Cqd::default();
        }
        (self.ln().scale(e)).exp()
    }

    pub fn powi(self, n: u32) -> Cqd {
        let mut acc = Cqd::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for Cqd {
    type Output = Cqd;
    fn add(self, b: Cqd) -> Cqd {
        Cqd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for Cqd {
    type Output = Cqd;
    fn sub(self, b: Cqd) -> Cqd {
        Cqd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Neg for Cqd {
    type Output = Cqd;
    fn neg(self) -> Cqd {
        Cqd { re: -self.re, im: -self.im }
    }
}

impl Mul for Cqd {
    type Output = Cqd;
    fn mul(self, b: Cqd) -> Cqd {
        Cqd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}

impl Div for Cqd {
    type Output = Cqd;
    fn div(self, b: Cqd) -> Cqd {
        let d = b.norm_sqr();
        Cqd { re: (self.re * b.re + self.im * b.im) / d, im: (self.im * b.re - self.re * b.im) / d }
    }
}

impl Add<Qd> for Cqd {
    type Output = Cqd;
    fn add(self, b: Qd) -> Cqd {
        Cqd { re: self.re + b, im: self.im }
    }
}

impl Sub<Cqd> for Qd {
    type Output = Cqd;
    fn sub(self, b: Cqd) -> Cqd {
        Cqd { re: self - b.re, im: -b.im }
    }
}
