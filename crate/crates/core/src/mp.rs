//! Multiprecision complex arithmetic on top of `astro-float`.
//!
//! Only what the exact-input evaluator needs: field operations, `exp`, `ln`
//! and conversion from and to double-double.

use astro_float::{BigFloat, Consts, RoundingMode, Word};

use crate::dd::{Cdd, Dd};

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone)]
pub(crate) struct Mpc {
    re: BigFloat,
    im: BigFloat,
}

/// Working precision plus the constant cache `astro-float` needs for `pi`, `exp`, `ln`.
pub(crate) struct MpCtx {
    p: usize,
    cc: Consts,
}

impl MpCtx {
    pub(crate) fn new(bits: usize) -> Self {
        MpCtx { p: bits, cc: Consts::new().expect("astro-float constant cache") }
    }

    fn real(&self, x: Dd) -> BigFloat {
        let p = self.p;
        BigFloat::from_f64(x.hi, p).add(&BigFloat::from_f64(x.lo, p), p, RM)
    }

    pub(crate) fn lift(&self, z: Cdd) -> Mpc {
        Mpc { re: self.real(z.re), im: self.real(z.im) }
    }

    pub(crate) fn from_f64(&self, x: f64) -> Mpc {
        Mpc { re: BigFloat::from_f64(x, self.p), im: BigFloat::from_f64(0.0, self.p) }
    }

    pub(crate) fn add(&self, a: &Mpc, b: &Mpc) -> Mpc {
        Mpc { re: a.re.add(&b.re, self.p, RM), im: a.im.add(&b.im, self.p, RM) }
    }

    pub(crate) fn sub(&self, a: &Mpc, b: &Mpc) -> Mpc {
        Mpc { re: a.re.sub(&b.re, self.p, RM), im: a.im.sub(&b.im, self.p, RM) }
    }

    pub(crate) fn neg(&self, a: &Mpc) -> Mpc {
        Mpc { re: a.re.neg(), im: a.im.neg() }
    }

    pub(crate) fn mul(&self, a: &Mpc, b: &Mpc) -> Mpc {
        let p = self.p;
        if a.im.is_zero() && b.im.is_zero() {
            return Mpc { re: a.re.mul(&b.re, p, RM), im: BigFloat::from_f64(0.0, p) };
        }
        let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
        Mpc { re, im }
    }

    pub(crate) fn div(&self, a: &Mpc, b: &Mpc) -> Mpc {
        let p = self.p;
        if b.im.is_zero() {
            return Mpc { re: a.re.div(&b.re, p, RM), im: a.im.div(&b.re, p, RM) };
        }
        let d = b.re.mul(&b.re, p, RM).add(&b.im.mul(&b.im, p, RM), p, RM);
        let re = a.re.mul(&b.re, p, RM).add(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.im.mul(&b.re, p, RM).sub(&a.re.mul(&b.im, p, RM), p, RM);
        Mpc { re: re.div(&d, p, RM), im: im.div(&d, p, RM) }
    }

    pub(crate) fn exp(&mut self, a: &Mpc) -> Mpc {
        let p = self.p;
        let r = a.re.exp(p, RM, &mut self.cc);
        if a.im.is_zero() {
            return Mpc { re: r, im: BigFloat::from_f64(0.0, p) };
        }
        let c = a.im.cos(p, RM, &mut self.cc);
        let s = a.im.sin(p, RM, &mut self.cc);
        Mpc { re: r.mul(&c, p, RM), im: r.mul(&s, p, RM) }
    }

    /// Principal logarithm.
    pub(crate) fn ln(&mut self, a: &Mpc) -> Mpc {
        let p = self.p;
        if a.im.is_zero() && a.re.is_positive() {
            return Mpc { re: a.re.ln(p, RM, &mut self.cc), im: BigFloat::from_f64(0.0, p) };
        }
        let m2 = a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM);
        let re = m2.ln(p, RM, &mut self.cc).div(&BigFloat::from_f64(2.0, p), p, RM);
        Mpc { re, im: self.atan2(&a.im, &a.re) }
    }

    fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let p = self.p;
        let pi = self.cc.pi(p, RM);
        if x.is_zero() {
            let h = pi.div(&BigFloat::from_f64(2.0, p), p, RM);
            return if y.is_negative() { h.neg() } else { h };
        }
        let t = y.div(x, p, RM).atan(p, RM, &mut self.cc);
        if x.is_positive() {
            t
        } else if y.is_negative() {
            t.sub(&pi, p, RM)
        } else {
            t.add(&pi, p, RM)
        }
    }

    pub(crate) fn powi(&self, a: &Mpc, k: i32) -> Mpc {
        let mut base = if k < 0 { self.div(&self.from_f64(1.0), a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.from_f64(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl Mpc {
    pub(crate) fn norm(&self) -> f64 {
        let (r, i) = (to_dd(&self.re).hi, to_dd(&self.im).hi);
        r.hypot(i)
    }

    pub(crate) fn to_cdd(&self) -> Cdd {
        Cdd { re: to_dd(&self.re), im: to_dd(&self.im) }
    }
}

/// Rounds to double-double by summing the leading mantissa bits in 32-bit chunks.
fn to_dd(x: &BigFloat) -> Dd {
    if x.is_zero() {
        return Dd::ZERO;
    }
    if x.is_nan() {
        return Dd::new(f64::NAN);
    }
    if x.is_inf() {
        return Dd::new(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    }
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return Dd::ZERO;
    };
    let wb = (std::mem::size_of::<Word>() * 8) as i32;
    let mut acc = Dd::ZERO;
    let mut shift = exponent;
    // 128 leading bits are enough for a 106-bit result
    let mut taken = 0;
    for &w in words.iter().rev() {
        // Word is u32 on wasm32
        #[allow(clippy::unnecessary_cast)]
        let w = w as u64;
        let halves: &[(u64, i32)] =
            if wb == 64 { &[(w >> 32, 32), (w & 0xffff_ffff, 64)] } else { &[(w & 0xffff_ffff, 32)] };
        for &(h, off) in halves {
            acc += scale(h as f64, shift - off);
        }
        shift -= wb;
        taken += wb;
        if taken >= 128 {
            break;
        }
    }
    if sign.is_negative() {
        -acc
    } else {
        acc
    }
}

/// `x * 2^e` without intermediate overflow for moderate `e`.
fn scale(x: f64, e: i32) -> f64 {
    let half = e / 2;
    x * 2f64.powi(half) * 2f64.powi(e - half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_double_double() {
        let m = MpCtx::new(256);
        for z in [Cdd::new(Dd::pi(), -0.25), Cdd::new(1e-200, 3e150), Cdd::new(-7.0, 0.0)] {
            let back = m.lift(z).to_cdd();
            assert_eq!(back.re.hi, z.re.hi);
            assert!((back.re - z.re).abs().to_f64() <= 1e-31 * z.re.abs().to_f64());
            assert!((back.im - z.im).abs().to_f64() <= 1e-31 * z.im.abs().to_f64());
        }
    }

    #[test]
    fn transcendental_values() {
        let mut m = MpCtx::new(320);
        // exp(0.3 - 0.8i), ln(-0.3 + 0.8i), mpmath at 40 digits
        let e = m.exp(&m.lift(Cdd::new(0.3, -0.8))).to_cdd();
        assert!((e.re.to_f64() - 0.940_455_687_909_565_6).abs() < 1e-15);
        assert!((e.im.to_f64() + 0.968_329_437_469_012_7).abs() < 1e-15);
        let l = m.ln(&m.lift(Cdd::new(-0.3, 0.8))).to_cdd();
        assert!((l.re.to_f64() + 0.157_355_372_419_850_1).abs() < 1e-15);
        assert!((l.im.to_f64() - 1.929_566_997_065_468_8).abs() < 1e-15);
        let v = m.powi(&m.from_f64(0.5), -10).to_cdd();
        assert_eq!(v.re.to_f64(), 1024.0);
    }
}
