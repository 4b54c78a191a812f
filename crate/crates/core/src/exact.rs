//! Terminating sums over exactly specified parameters.
//!
//! Balanced `4phi3` representations of a well-conditioned polynomial can
//! cancel by 30 or more orders of magnitude at small `q`, so no fixed working
//! precision is enough. Here every parameter is a monomial
//!
//! ```text
//! ±q0^{c + k_alpha alpha + k_beta beta} v_0^{j_0} ... v_5^{j_5}
//! ```
//!
//! in the exact inputs `q0, alpha, beta, v_i` of an [`Env`]. An expression is
//! first summed in double-double; when the ratio of `sum |terms|` to
//! `|sum|` says that is not enough, it is summed again from the same exact
//! inputs at a multiprecision working precision chosen from that ratio.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::mp::{Mpc, MpCtx};

/// Number of free variables an [`Env`] can carry.
pub const NVARS: usize = 6;

/// Bits of accuracy wanted in the final value beyond the cancellation.
const GUARD_BITS: f64 = 60.0;
/// Effective precision of the double-double pass.
const DD_BITS: f64 = 104.0;
const MAX_BITS: usize = 4096;
/// Same threshold as the floating series engine.
const ZERO_FACTOR: f64 = 4.0 * f64::EPSILON;

/// Affine exponent `c + k[0] alpha + k[1] beta`. Coefficients are dyadic
/// rationals, so they are exact in `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lin {
    pub c: f64,
    pub k: [f64; 2],
}

pub const ALPHA: Lin = Lin { c: 0.0, k: [1.0, 0.0] };
pub const BETA: Lin = Lin { c: 0.0, k: [0.0, 1.0] };

impl Lin {
    pub const fn constant(c: f64) -> Lin {
        Lin { c, k: [0.0, 0.0] }
    }

    fn as_integer(&self) -> Option<i32> {
        (self.k == [0.0, 0.0] && self.c.fract() == 0.0 && self.c.abs() < 1e9).then_some(self.c as i32)
    }
}

impl From<f64> for Lin {
    fn from(c: f64) -> Lin {
        Lin::constant(c)
    }
}

impl From<i32> for Lin {
    fn from(c: i32) -> Lin {
        Lin::constant(c as f64)
    }
}

impl Add for Lin {
    type Output = Lin;
    fn add(self, o: Lin) -> Lin {
        Lin { c: self.c + o.c, k: [self.k[0] + o.k[0], self.k[1] + o.k[1]] }
    }
}

impl Add<f64> for Lin {
    type Output = Lin;
    fn add(self, o: f64) -> Lin {
        Lin { c: self.c + o, ..self }
    }
}

impl Sub for Lin {
    type Output = Lin;
    fn sub(self, o: Lin) -> Lin {
        self + (-o)
    }
}

impl Sub<f64> for Lin {
    type Output = Lin;
    fn sub(self, o: f64) -> Lin {
        self + (-o)
    }
}

impl Neg for Lin {
    type Output = Lin;
    fn neg(self) -> Lin {
        self * -1.0
    }
}

impl Mul<f64> for Lin {
    type Output = Lin;
    fn mul(self, s: f64) -> Lin {
        Lin { c: self.c * s, k: [self.k[0] * s, self.k[1] * s] }
    }
}

impl Div<f64> for Lin {
    type Output = Lin;
    fn div(self, s: f64) -> Lin {
        Lin { c: self.c / s, k: [self.k[0] / s, self.k[1] / s] }
    }
}

/// `±q0^e v^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mono {
    pub neg: bool,
    pub e: Lin,
    pub v: [i32; NVARS],
}

impl Mono {
    pub const ONE: Mono = Mono { neg: false, e: Lin::constant(0.0), v: [0; NVARS] };

    pub fn pow(self, k: i32) -> Mono {
        let mut v = self.v;
        v.iter_mut().for_each(|x| *x *= k);
        Mono { neg: self.neg && k % 2 != 0, e: self.e * k as f64, v }
    }

    pub fn inv(self) -> Mono {
        self.pow(-1)
    }

    /// Exactly `base^{-j}` for some `j >= 0`.
    fn termination_of(&self, base: &Mono) -> Option<usize> {
        if self.neg || self.v != [0; NVARS] || base.neg || base.v != [0; NVARS] {
            return None;
        }
        let (e, b) = (self.e.as_integer_like()?, base.e.as_integer_like()?);
        let j = -e / b;
        (j >= 0.0 && j.fract() == 0.0).then_some(j as usize)
    }
}

impl Lin {
    fn as_integer_like(&self) -> Option<f64> {
        (self.k == [0.0, 0.0]).then_some(self.c)
    }
}

/// `q0^e`.
pub fn q(e: impl Into<Lin>) -> Mono {
    Mono { neg: false, e: e.into(), v: [0; NVARS] }
}

/// The free variable `v_i`.
pub fn var(i: usize) -> Mono {
    let mut v = [0; NVARS];
    v[i] = 1;
    Mono { neg: false, e: Lin::constant(0.0), v }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, o: Mono) -> Mono {
        let mut v = self.v;
        for (x, y) in v.iter_mut().zip(o.v) {
            *x += y;
        }
        Mono { neg: self.neg != o.neg, e: self.e + o.e, v }
    }
}

impl Div for Mono {
    type Output = Mono;
    fn div(self, o: Mono) -> Mono {
        self * o.inv()
    }
}

impl Neg for Mono {
    type Output = Mono;
    fn neg(self) -> Mono {
        Mono { neg: !self.neg, ..self }
    }
}

/// A base `q0^r` with `r` dyadic, e.g. 1, 2 or 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base(pub f64);

impl Base {
    /// `(q0^r)^e`.
    pub fn pow(self, e: impl Into<Lin>) -> Mono {
        q(e.into() * self.0)
    }

    pub fn mono(self) -> Mono {
        q(self.0)
    }
}

/// Exact values of the root base, the two exponent symbols and the variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Env {
    pub q0: Cdd,
    pub syms: [Cdd; 2],
    pub vars: [Cdd; NVARS],
}

impl Env {
    pub fn new(q0: Cdd) -> Env {
        Env { q0, syms: [Cdd::ZERO; 2], vars: [Cdd::ZERO; NVARS] }
    }

    pub fn with_exponents(mut self, alpha: Cdd, beta: Cdd) -> Env {
        self.syms = [alpha, beta];
        self
    }

    pub fn with_var(mut self, i: usize, v: Cdd) -> Env {
        self.vars[i] = v;
        self
    }

    /// Double-double value of a monomial, for guards and diagnostics.
    pub fn value(&self, m: &Mono) -> Cdd {
        let mut f = DdField;
        let mut s = Session::new(&mut f, self);
        s.mono(m)
    }
}

/// `(a; base)_n`, or its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poch {
    pub a: Mono,
    pub base: Mono,
    pub n: usize,
    pub inverse: bool,
}

/// Terminating `r phi s(num; den; base, z)`; some numerator must be `base^{-j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phi {
    pub num: Vec<Mono>,
    pub den: Vec<Mono>,
    pub base: Mono,
    pub z: Mono,
}

impl Phi {
    pub fn new(num: Vec<Mono>, den: Vec<Mono>, base: Mono, z: Mono) -> Phi {
        Phi { num, den, base, z }
    }

    /// Balanced form: argument equal to the base.
    pub fn at_base(num: Vec<Mono>, den: Vec<Mono>, base: Mono) -> Phi {
        Phi { num, den, base, z: base }
    }
}

/// `scalar * coef * prod Poch * phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub scalar: f64,
    pub coef: Mono,
    pub poch: Vec<Poch>,
    pub phi: Option<Phi>,
}

impl Default for Term {
    fn default() -> Self {
        Term::new()
    }
}

impl Term {
    pub fn new() -> Term {
        Term { scalar: 1.0, coef: Mono::ONE, poch: Vec::new(), phi: None }
    }

    pub fn scaled(mut self, s: f64) -> Term {
        self.scalar *= s;
        self
    }

    pub fn times(mut self, m: Mono) -> Term {
        self.coef = self.coef * m;
        self
    }

    /// Multiplies by `(num; base)_n / (den; base)_n`, entry by entry.
    pub fn ratio(mut self, num: &[Mono], den: &[Mono], base: Mono, n: usize) -> Term {
        for &a in num {
            self.poch.push(Poch { a, base, n, inverse: false });
        }
        for &a in den {
            self.poch.push(Poch { a, base, n, inverse: true });
        }
        self
    }

    pub fn series(mut self, phi: Phi) -> Term {
        self.phi = Some(phi);
        self
    }
}

/// Value plus the diagnostics of how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Cdd,
    /// `sum |terms| / |sum|` as measured in the final pass.
    pub condition: f64,
    /// Working precision of the final pass; 0 for the double-double pass.
    pub bits: usize,
}

/// Sums `terms` with enough precision for about 18 correct digits.
pub fn eval(terms: &[Term], env: &Env) -> Result<Cdd> {
    eval_detailed(terms, env).map(|e| e.value)
}

pub fn eval_detailed(terms: &[Term], env: &Env) -> Result<Evaluation> {
    let needed = |cond: f64| if cond.is_finite() { cond.max(1.0).log2() + GUARD_BITS } else { f64::INFINITY };
    let (v, cond) = {
        let mut f = DdField;
        run(&mut f, terms, env)?
    };
    if !v.is_finite() {
        return Err(Error::NonFinite("exact terminating sum"));
    }
    let mut want = needed(cond);
    if want <= DD_BITS {
        return Ok(Evaluation { value: v, condition: cond, bits: 0 });
    }
    let mut bits = if want.is_finite() { (want as usize + 64).next_multiple_of(64) } else { 256 };
    loop {
        bits = bits.min(MAX_BITS);
        let mut f = MpCtx::new(bits);
        let (v, cond) = run(&mut f, terms, env)?;
        let v = f.lower(&v);
        want = needed(cond);
        if want <= bits as f64 || bits == MAX_BITS {
            // at the cap an exactly vanishing sum is returned as its rounding residue
            return Ok(Evaluation { value: v, condition: cond, bits });
        }
        bits = (bits * 2).max(want as usize + 64).next_multiple_of(64);
    }
}

/// Arithmetic shared by the double-double and multiprecision passes.
trait Field {
    type V: Clone;
    fn lift(&mut self, x: Cdd) -> Self::V;
    fn add(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&mut self, a: &Self::V) -> Self::V;
    fn exp(&mut self, a: &Self::V) -> Self::V;
    fn ln(&mut self, a: &Self::V) -> Self::V;
    fn powi(&mut self, a: &Self::V, k: i32) -> Self::V;
    fn norm(&self, a: &Self::V) -> f64;
    fn lower(&self, a: &Self::V) -> Cdd;
}

struct DdField;

impl Field for DdField {
    type V = Cdd;
    fn lift(&mut self, x: Cdd) -> Cdd {
        x
    }
    fn add(&mut self, a: &Cdd, b: &Cdd) -> Cdd {
        *a + *b
    }
    fn sub(&mut self, a: &Cdd, b: &Cdd) -> Cdd {
        *a - *b
    }
    fn mul(&mut self, a: &Cdd, b: &Cdd) -> Cdd {
        *a * *b
    }
    fn div(&mut self, a: &Cdd, b: &Cdd) -> Cdd {
        *a / *b
    }
    fn neg(&mut self, a: &Cdd) -> Cdd {
        -*a
    }
    fn exp(&mut self, a: &Cdd) -> Cdd {
        a.exp()
    }
    fn ln(&mut self, a: &Cdd) -> Cdd {
        a.ln()
    }
    fn powi(&mut self, a: &Cdd, k: i32) -> Cdd {
        a.powi(k)
    }
    fn norm(&self, a: &Cdd) -> f64 {
        a.norm()
    }
    fn lower(&self, a: &Cdd) -> Cdd {
        *a
    }
}

impl Field for MpCtx {
    type V = Mpc;
    fn lift(&mut self, x: Cdd) -> Mpc {
        MpCtx::lift(self, x)
    }
    fn add(&mut self, a: &Mpc, b: &Mpc) -> Mpc {
        MpCtx::add(self, a, b)
    }
    fn sub(&mut self, a: &Mpc, b: &Mpc) -> Mpc {
        MpCtx::sub(self, a, b)
    }
    fn mul(&mut self, a: &Mpc, b: &Mpc) -> Mpc {
        MpCtx::mul(self, a, b)
    }
    fn div(&mut self, a: &Mpc, b: &Mpc) -> Mpc {
        MpCtx::div(self, a, b)
    }
    fn neg(&mut self, a: &Mpc) -> Mpc {
        MpCtx::neg(self, a)
    }
    fn exp(&mut self, a: &Mpc) -> Mpc {
        MpCtx::exp(self, a)
    }
    fn ln(&mut self, a: &Mpc) -> Mpc {
        MpCtx::ln(self, a)
    }
    fn powi(&mut self, a: &Mpc, k: i32) -> Mpc {
        MpCtx::powi(self, a, k)
    }
    fn norm(&self, a: &Mpc) -> f64 {
        a.norm()
    }
    fn lower(&self, a: &Mpc) -> Cdd {
        a.to_cdd()
    }
}

/// Lifted inputs for one pass.
struct Session<'f, F: Field> {
    f: &'f mut F,
    q0: F::V,
    log_q0: Option<F::V>,
    syms: [F::V; 2],
    vars: Vec<F::V>,
}

impl<'f, F: Field> Session<'f, F> {
    fn new(f: &'f mut F, env: &Env) -> Self {
        let q0 = f.lift(env.q0);
        let syms = [f.lift(env.syms[0]), f.lift(env.syms[1])];
        let vars = env.vars.iter().map(|&v| f.lift(v)).collect();
        Session { f, q0, log_q0: None, syms, vars }
    }

    fn one(&mut self) -> F::V {
        self.f.lift(Cdd::ONE)
    }

    fn q_power(&mut self, e: &Lin) -> F::V {
        if let Some(k) = e.as_integer() {
            return self.f.powi(&self.q0, k);
        }
        if self.log_q0.is_none() {
            self.log_q0 = Some(self.f.ln(&self.q0));
        }
        let mut s = self.f.lift(Cdd::from(e.c));
        for i in 0..2 {
            if e.k[i] != 0.0 {
                let k = self.f.lift(Cdd::from(e.k[i]));
                let t = self.f.mul(&k, &self.syms[i]);
                s = self.f.add(&s, &t);
            }
        }
        let l = self.log_q0.clone().expect("set above");
        let x = self.f.mul(&s, &l);
        self.f.exp(&x)
    }

    fn mono(&mut self, m: &Mono) -> F::V {
        let mut v = self.q_power(&m.e);
        for i in 0..NVARS {
            if m.v[i] != 0 {
                let p = self.f.powi(&self.vars[i], m.v[i]);
                v = self.f.mul(&v, &p);
            }
        }
        if m.neg {
            v = self.f.neg(&v);
        }
        v
    }

    fn factor(&mut self, one: &F::V, a: &F::V, qk: &F::V, index: usize) -> Result<F::V> {
        let t = self.f.mul(a, qk);
        let d = self.f.sub(one, &t);
        if self.f.norm(&d) < ZERO_FACTOR {
            return Err(Error::ZeroDenominator { index });
        }
        Ok(d)
    }

    fn poch(&mut self, p: &Poch) -> Result<F::V> {
        let one = self.one();
        let a = self.mono(&p.a);
        let base = self.mono(&p.base);
        let mut acc = one.clone();
        let mut qk = one.clone();
        for k in 0..p.n {
            let t = self.f.mul(&a, &qk);
            let d = self.f.sub(&one, &t);
            if p.inverse && self.f.norm(&d) < ZERO_FACTOR {
                return Err(Error::ZeroDenominator { index: k });
            }
            acc = self.f.mul(&acc, &d);
            qk = self.f.mul(&qk, &base);
        }
        Ok(if p.inverse { self.f.div(&one, &acc) } else { acc })
    }

    /// Returns the sum and the sum of term moduli.
    fn phi(&mut self, phi: &Phi) -> Result<(F::V, f64)> {
        let stop = phi
            .num
            .iter()
            .filter_map(|a| a.termination_of(&phi.base))
            .min()
            .ok_or_else(|| Error::DomainError("exact sums must terminate".into()))?;
        let one = self.one();
        let base = self.mono(&phi.base);
        let z = self.mono(&phi.z);
        let num: Vec<F::V> = phi.num.iter().map(|m| self.mono(m)).collect();
        let den: Vec<F::V> = phi.den.iter().map(|m| self.mono(m)).collect();
        let extra = 1 + den.len() as i32 - num.len() as i32;
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut abs = 1.0;
        let mut qk = one.clone();
        for k in 0..stop {
            let mut r = z.clone();
            for a in &num {
                let t = self.f.mul(a, &qk);
                let f = self.f.sub(&one, &t);
                r = self.f.mul(&r, &f);
            }
            let qk1 = self.f.mul(&qk, &base);
            let d = self.factor(&one, &one, &qk1, k + 1)?;
            r = self.f.div(&r, &d);
            for b in &den {
                let d = self.factor(&one, b, &qk, k + 1)?;
                r = self.f.div(&r, &d);
            }
            if extra != 0 {
                let mq = self.f.neg(&qk);
                let s = self.f.powi(&mq, extra);
                r = self.f.mul(&r, &s);
            }
            term = self.f.mul(&term, &r);
            sum = self.f.add(&sum, &term);
            abs += self.f.norm(&term);
            qk = qk1;
        }
        Ok((sum, abs))
    }
}

fn run<F: Field>(f: &mut F, terms: &[Term], env: &Env) -> Result<(F::V, f64)> {
    let mut s = Session::new(f, env);
    let mut total = s.f.lift(Cdd::ZERO);
    let mut abs = 0.0;
    for t in terms {
        let mut v = s.mono(&t.coef);
        let sc = s.f.lift(Cdd::from(t.scalar));
        v = s.f.mul(&v, &sc);
        for p in &t.poch {
            let x = s.poch(p)?;
            v = s.f.mul(&v, &x);
        }
        let scale = s.f.norm(&v);
        let (v, a) = match &t.phi {
            Some(phi) => {
                let (sum, a) = s.phi(phi)?;
                (s.f.mul(&v, &sum), a * scale)
            }
            None => (v, scale),
        };
        total = s.f.add(&total, &v);
        abs += a;
    }
    let n = s.f.norm(&total);
    Ok((total, if n > 0.0 { abs / n } else { f64::INFINITY }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpochhammer, re, QContext};

    #[test]
    fn monomial_algebra() {
        let m = -(q(ALPHA / 2.0 + 0.25) * var(0)).pow(3);
        assert!(m.neg);
        assert_eq!(m.e, Lin { c: 0.75, k: [1.5, 0.0] });
        assert_eq!(m.v[0], 3);
        assert_eq!((m / m), Mono::ONE);
        assert_eq!(q(-3).termination_of(&q(1)), Some(3));
        assert_eq!(q(-4).termination_of(&q(2)), Some(2));
        assert_eq!(q(-3).termination_of(&q(2)), None);
        assert_eq!((-q(-2)).termination_of(&q(1)), None);
    }

    #[test]
    fn saalschutz_sum() {
        // 3phi2(q^{-n}, a, b; c, ab q^{1-n}/c; q, q) = (c/a, c/b; q)_n / (c, c/(ab); q)_n
        let (qv, a, b, c) = (0.3, 0.7, -0.4, 0.45);
        let env = Env::new(re(qv)).with_var(0, re(a)).with_var(1, re(b)).with_var(2, re(c));
        let (va, vb, vc) = (var(0), var(1), var(2));
        let ctx = QContext::new(qv).unwrap();
        for n in 0..8usize {
            let ni = n as i32;
            let lhs = Term::new().series(Phi::at_base(
                vec![q(-ni), va, vb],
                vec![vc, va * vb * q(1 - ni) / vc],
                q(1),
            ));
            let v = eval(&[lhs], &env).unwrap();
            let qp = |x: f64| qpochhammer(re(x), &ctx, n);
            let oracle = qp(c / a) * qp(c / b) / (qp(c) * qp(c / (a * b)));
            assert!((v - oracle).norm() < 1e-14 * oracle.norm(), "n={n}");
        }
    }

    #[test]
    fn escalates_on_cancellation() {
        // 1phi0(q^{-n}; -; q, x q^n) = (x; q)_n; with x near q^{-5} the product
        // nearly vanishes while the terms are huge.
        let qv = 0.1;
        let ctx = QContext::new(qv).unwrap();
        let n = 12;
        let x = 1e5 * (1.0 + 1e-15);
        let env = Env::new(re(qv)).with_var(0, re(x));
        let t = Term::new().series(Phi::new(vec![q(-n)], vec![], q(1), var(0) * q(n)));
        let e = eval_detailed(&[t], &env).unwrap();
        let oracle = qpochhammer(re(x), &ctx, n as usize);
        assert!(e.bits > 0, "condition {}", e.condition);
        assert!((e.value - oracle).norm() < 1e-15 * oracle.norm());
    }

    #[test]
    fn zero_denominator_reported() {
        let env = Env::new(re(0.5));
        let t = Term::new().series(Phi::at_base(vec![q(-3)], vec![q(-1)], q(1)));
        assert!(matches!(eval(&[t], &env), Err(Error::ZeroDenominator { .. })));
        let t = Term::new().series(Phi::at_base(vec![var(0)], vec![], q(1)));
        assert!(matches!(eval(&[t], &env), Err(Error::DomainError(_))));
    }
}
