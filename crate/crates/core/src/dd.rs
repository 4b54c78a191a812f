//! Double-double real and complex arithmetic.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of significand. Elementary functions are accurate to a few
//! units in the last place of that format for moderate arguments.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };
const FRAC_PI_2: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123_233_995_736_766e-17 };
const LN_2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn from_parts(hi: f64, lo: f64) -> Dd {
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub fn pi() -> Dd {
        PI
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    /// True when the value is an integer exactly representable in an `i32`.
    pub fn as_i32(self) -> Option<i32> {
        if self.lo == 0.0 && self.hi.fract() == 0.0 && self.hi.abs() <= i32::MAX as f64 {
            Some(self.hi as i32)
        } else {
            None
        }
    }

    /// Exact multiplication by `2^k`.
    fn ldexp(self, k: i32) -> Dd {
        let mut v = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            v = Dd { hi: v.hi * f, lo: v.lo * f };
            k -= step;
        }
        v
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::new(f64::NAN) };
        }
        let y = Dd::new(self.hi.sqrt());
        y + (self - y.sqr()) / (y * 2.0)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
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
            Dd::ONE / acc
        } else {
            acc
        }
    }

    pub fn exp(self) -> Dd {
        if !self.is_finite() {
            return Dd::new(self.hi.exp());
        }
        if self.hi > 709.7 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = (self - LN_2 * k).ldexp(-10);
        // expm1(r) by Taylor series, |r| < 4e-4
        let mut term = r;
        let mut s = r;
        let mut i = 2.0;
        while term.hi.abs() > 1e-34 {
            term = term * r / i;
            s += term;
            i += 1.0;
        }
        for _ in 0..10 {
            s = s * (s + 2.0);
        }
        (s + 1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if !self.is_finite() {
            return self;
        }
        let y = Dd::new(self.hi.ln());
        y + self * (-y).exp() - 1.0
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        if !self.is_finite() {
            return (Dd::new(f64::NAN), Dd::new(f64::NAN));
        }
        let k = (self.hi / FRAC_PI_2.hi).round();
        let r = self - FRAC_PI_2 * k;
        let r2 = r.sqr();
        let mut s = r;
        let mut c = Dd::ONE;
        let mut ts = r;
        let mut tc = Dd::ONE;
        let mut i = 1.0;
        loop {
            ts = -(ts * r2) / ((i + 1.0) * (i + 2.0));
            tc = -(tc * r2) / (i * (i + 1.0));
            s += ts;
            c += tc;
            i += 2.0;
            if ts.hi.abs() < 1e-34 && tc.hi.abs() < 1e-34 {
                break;
            }
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn atan2(self, x: Dd) -> Dd {
        let y = self;
        if x.is_zero() && y.is_zero() {
            return Dd::ZERO;
        }
        let z = Dd::new(y.hi.atan2(x.hi));
        let r = (x.sqr() + y.sqr()).sqrt();
        let (s, c) = z.sin_cos();
        if x.hi.abs() > y.hi.abs() {
            z + (y / r - s) / c
        } else {
            z - (x / r - c) / s
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl PartialEq<f64> for Dd {
    fn eq(&self, other: &f64) -> bool {
        self.hi == *other && self.lo == 0.0
    }
}

impl PartialOrd<f64> for Dd {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.partial_cmp(&Dd::new(*other))
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::from_parts(s1, s2 + t2)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        Dd::from_parts(s1, s2 + self.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::from_parts(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::from_parts(p, e + self.lo * b)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::new(q1);
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        Dd::from_parts(q1, q2) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self / Dd::new(b)
    }
}

macro_rules! scalar_lhs {
    ($t:ty) => {
        impl Add<$t> for f64 {
            type Output = $t;
            #[inline]
            fn add(self, b: $t) -> $t {
                b + self
            }
        }
        impl Sub<$t> for f64 {
            type Output = $t;
            #[inline]
            fn sub(self, b: $t) -> $t {
                -b + self
            }
        }
        impl Mul<$t> for f64 {
            type Output = $t;
            #[inline]
            fn mul(self, b: $t) -> $t {
                b * self
            }
        }
        impl Div<$t> for f64 {
            type Output = $t;
            #[inline]
            fn div(self, b: $t) -> $t {
                <$t>::from(self) / b
            }
        }
    };
}

macro_rules! assign_ops {
    ($t:ty, $($rhs:ty),*) => {
        $(
            impl AddAssign<$rhs> for $t {
                #[inline]
                fn add_assign(&mut self, b: $rhs) {
                    *self = *self + b;
                }
            }
            impl SubAssign<$rhs> for $t {
                #[inline]
                fn sub_assign(&mut self, b: $rhs) {
                    *self = *self - b;
                }
            }
            impl MulAssign<$rhs> for $t {
                #[inline]
                fn mul_assign(&mut self, b: $rhs) {
                    *self = *self * b;
                }
            }
            impl DivAssign<$rhs> for $t {
                #[inline]
                fn div_assign(&mut self, b: $rhs) {
                    *self = *self / b;
                }
            }
        )*
    };
}

scalar_lhs!(Dd);
assign_ops!(Dd, Dd, f64);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };
    pub const I: Cdd = Cdd { re: Dd::ZERO, im: Dd::ONE };

    #[inline]
    pub fn new(re: impl Into<Dd>, im: impl Into<Dd>) -> Cdd {
        Cdd { re: re.into(), im: im.into() }
    }

    /// `r e^{i theta}` with the trigonometric factors in extended precision.
    pub fn from_polar(r: f64, theta: f64) -> Cdd {
        let (s, c) = Dd::new(theta).sin_cos();
        Cdd { re: c * r, im: s * r }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.im.is_zero()
    }

    #[inline]
    pub fn conj(self) -> Cdd {
        Cdd { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    /// Modulus, rounded to `f64`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn abs_dd(self) -> Dd {
        if self.im.is_zero() {
            self.re.abs()
        } else if self.re.is_zero() {
            self.im.abs()
        } else {
            let s = scale_exponent(self);
            let z = self.scale(-s);
            z.norm_sqr().sqrt().ldexp(s)
        }
    }

    fn scale(self, k: i32) -> Cdd {
        Cdd { re: self.re.ldexp(k), im: self.im.ldexp(k) }
    }

    pub fn inv(self) -> Cdd {
        Cdd::ONE / self
    }

    pub fn arg(self) -> Dd {
        self.im.atan2(self.re)
    }

    pub fn exp(self) -> Cdd {
        let m = self.re.exp();
        if self.im.is_zero() {
            return Cdd { re: m, im: Dd::ZERO };
        }
        let (s, c) = self.im.sin_cos();
        Cdd { re: m * c, im: m * s }
    }

    /// Principal logarithm.
    pub fn ln(self) -> Cdd {
        if self.im.is_zero() && self.re > 0.0 {
            return Cdd { re: self.re.ln(), im: Dd::ZERO };
        }
        Cdd { re: self.abs_dd().ln(), im: self.arg() }
    }

    /// Principal square root.
    pub fn sqrt(self) -> Cdd {
        if self.re.is_zero() && self.im.is_zero() {
            return Cdd::ZERO;
        }
        if self.im.is_zero() {
            return if self.re > 0.0 {
                Cdd { re: self.re.sqrt(), im: Dd::ZERO }
            } else {
                let t = (-self.re).sqrt();
                Cdd { re: Dd::ZERO, im: if self.im.hi.is_sign_negative() { -t } else { t } }
            };
        }
        let r = self.abs_dd();
        if self.re >= 0.0 {
            let t = ((r + self.re) * 0.5).sqrt();
            Cdd { re: t, im: self.im / (t * 2.0) }
        } else {
            let t = ((r - self.re) * 0.5).sqrt();
            let t_signed = if self.im < 0.0 { -t } else { t };
            Cdd { re: self.im.abs() / (t * 2.0), im: t_signed }
        }
    }

    pub fn powi(self, n: i32) -> Cdd {
        if n == 0 {
            return Cdd::ONE;
        }
        if self.im.is_zero() {
            return Cdd { re: self.re.powi(n), im: Dd::ZERO };
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Cdd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            acc.inv()
        } else {
            acc
        }
    }

    /// Principal power `exp(s Log z)`.
    pub fn powc(self, s: Cdd) -> Cdd {
        if let (Some(k), true) = (s.re.as_i32(), s.im.is_zero()) {
            return self.powi(k);
        }
        (self.ln() * s).exp()
    }
}

fn scale_exponent(z: Cdd) -> i32 {
    let m = z.re.hi.abs().max(z.im.hi.abs());
    if m == 0.0 || !m.is_finite() {
        0
    } else {
        m.log2().floor() as i32
    }
}

impl From<f64> for Cdd {
    fn from(x: f64) -> Cdd {
        Cdd { re: Dd::new(x), im: Dd::ZERO }
    }
}

impl From<Dd> for Cdd {
    fn from(x: Dd) -> Cdd {
        Cdd { re: x, im: Dd::ZERO }
    }
}

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Cdd {
        Cdd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }
}

impl From<Cdd> for Complex64 {
    fn from(z: Cdd) -> Complex64 {
        z.to_c64()
    }
}

impl fmt::Debug for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.to_c64(), f)
    }
}

impl fmt::Display for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_c64(), f)
    }
}

impl Serialize for Cdd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_c64().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cdd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Cdd, D::Error> {
        Complex64::deserialize(d).map(Cdd::from)
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    #[inline]
    fn neg(self) -> Cdd {
        Cdd { re: -self.re, im: -self.im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: Cdd) -> Cdd {
        Cdd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: Cdd) -> Cdd {
        Cdd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Cdd) -> Cdd {
        if self.im.is_zero() {
            return Cdd { re: self.re * b.re, im: self.re * b.im };
        }
        if b.im.is_zero() {
            return Cdd { re: self.re * b.re, im: self.im * b.re };
        }
        Cdd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, b: Cdd) -> Cdd {
        if b.im.is_zero() {
            return Cdd { re: self.re / b.re, im: self.im / b.re };
        }
        let s = scale_exponent(b);
        let bs = b.scale(-s);
        let d = bs.norm_sqr();
        let num = self * bs.conj();
        Cdd { re: num.re / d, im: num.im / d }.scale(-s)
    }
}

impl Add<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: f64) -> Cdd {
        Cdd { re: self.re + b, im: self.im }
    }
}

impl Sub<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: f64) -> Cdd {
        Cdd { re: self.re - b, im: self.im }
    }
}

impl Mul<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: f64) -> Cdd {
        Cdd { re: self.re * b, im: self.im * b }
    }
}

impl Div<f64> for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, b: f64) -> Cdd {
        Cdd { re: self.re / b, im: self.im / b }
    }
}

impl Add<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: Dd) -> Cdd {
        Cdd { re: self.re + b, im: self.im }
    }
}

impl Sub<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: Dd) -> Cdd {
        Cdd { re: self.re - b, im: self.im }
    }
}

impl Mul<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Dd) -> Cdd {
        Cdd { re: self.re * b, im: self.im * b }
    }
}

impl Div<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, b: Dd) -> Cdd {
        Cdd { re: self.re / b, im: self.im / b }
    }
}

scalar_lhs!(Cdd);
assign_ops!(Cdd, Cdd, f64, Dd);

impl Sum for Cdd {
    fn sum<I: Iterator<Item = Cdd>>(iter: I) -> Cdd {
        iter.fold(Cdd::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Cdd> for Cdd {
    fn sum<I: Iterator<Item = &'a Cdd>>(iter: I) -> Cdd {
        iter.fold(Cdd::ZERO, |a, b| a + *b)
    }
}

impl Product for Cdd {
    fn product<I: Iterator<Item = Cdd>>(iter: I) -> Cdd {
        iter.fold(Cdd::ONE, |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // references: 50-digit evaluations split into hi + lo
    fn close(a: Dd, hi: f64, lo: f64) -> bool {
        (a - Dd::from_parts(hi, lo)).to_f64().abs() <= 1e-30 * hi.abs()
    }

    #[test]
    fn arithmetic_keeps_low_word() {
        let third = Dd::ONE / 3.0;
        assert!((third * 3.0 - 1.0).to_f64().abs() < 1e-31);
        let x = Dd::new(1.0) + 1e-20;
        assert_eq!((x.hi, x.lo), (1.0, 1e-20));
        let s = Dd::new(2.0).sqrt();
        assert!((s * s - 2.0).to_f64().abs() < 1e-31);
        assert_eq!(Dd::new(0.5).powi(-3), Dd::new(8.0));
    }

    #[test]
    fn exp_and_ln() {
        assert!(close(Dd::new(0.17).ln(), -1.7719568419318752, -2.3106971110554094e-17));
        let p = (Dd::new(0.17).ln() * 1.3).exp();
        assert!(close(p, 0.09990416579859135, -1.0069572066092136e-18));
        let e_ref = Dd::from_parts(std::f64::consts::E, 1.445_646_891_729_250_2e-16);
        assert!(close(Dd::ONE.exp(), e_ref.hi, e_ref.lo));
        let roundtrip = Dd::new(123.456).ln().exp();
        assert!(((roundtrip - 123.456) / 123.456).to_f64().abs() < 1e-30);
        assert_eq!(Dd::new(-800.0).exp(), Dd::ZERO);
    }

    #[test]
    fn trigonometry() {
        let (s, c) = Dd::new(1.1).sin_cos();
        assert!(close(s, 0.8912073600614354, -3.605930522940284e-17));
        assert!(close(c, 0.4535961214255773, -5.78481191353792e-18));
        assert!(close(Dd::new(30.0).sin_cos().0, -0.9880316240928618, 3.655935837727403e-17));
        assert!(close(Dd::new(0.3).atan2(Dd::new(0.7)), 0.40489178628508343, 2.7690323179934683e-19));
        assert!(close(Dd::new(-0.3).atan2(Dd::new(-0.7)), -2.7367008673047097, -6.667662545167815e-17));
    }

    #[test]
    fn complex_functions() {
        let e = Cdd::new(0.3, -0.8).exp();
        assert!(close(e.re, 0.9404556879095657, -4.754509593000995e-17));
        assert!(close(e.im, -0.9683294374690127, -4.0793273281342225e-17));
        let r = Cdd::new(-0.3, 0.8).sqrt();
        assert!(close(r.re, 0.5264980410845577, 9.855288307674513e-18));
        assert!(close(r.im, 0.7597369197728097, -3.307558766225781e-17));
        let z = Cdd::new(0.4, -1.7);
        let back = z.ln().exp();
        assert!((back - z).abs_dd().to_f64() < 1e-30);
        assert!(((z / z) - Cdd::ONE).norm() < 1e-31);
        assert!((z * z.inv() - Cdd::ONE).norm() < 1e-31);
        assert!((z.powi(-3) * z.powi(3) - Cdd::ONE).norm() < 1e-30);
        let u = Cdd::from_polar(1.0, 0.7);
        assert!((u.norm_sqr() - 1.0).to_f64().abs() < 1e-31);
        assert_eq!(Cdd::new(-4.0, 0.0).sqrt(), Cdd::new(0.0, 2.0));
    }

    #[test]
    fn huge_and_tiny_division() {
        let a = Cdd::new(1e200, 3e199);
        let b = Cdd::new(2e200, -1e200);
        let q = a / b;
        assert!(q.is_finite());
        assert!((q * b - a).norm() < 1e-30 * a.norm());
    }
}
