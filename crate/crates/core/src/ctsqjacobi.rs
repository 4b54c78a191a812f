//! Continuous q-Jacobi polynomials `P_n^{(alpha,beta)}(x | q)`.
//!
//! They are Askey–Wilson polynomials with parameters
//! `{q^{alpha/2+1/4}, q^{alpha/2+3/4}, -q^{beta/2+1/4}, -q^{beta/2+3/4}}`:
//!
//! ```text
//! P_n(x|q) = q^{(alpha/2+1/4) n} / (q, -q^{(alpha+beta+1)/2}, -q^{(alpha+beta+2)/2}; q)_n  p_n(x; a,b,c,d | q)
//! ```
//!
//! Besides that definition, [`ctsq_jacobi`] evaluates twenty further balanced
//! `4phi3` representations. They are algebraically equal and numerically
//! independent, which is what the cross-representation checks rely on.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::awpolys::{aw_p_term, aw_r_sequence, aw_r_term, AWParams, UnitArgument};
use crate::error::{Error, Result};
use crate::exact::{eval, q, var, Base, Env, Lin, Mono, Phi, Term, ALPHA, BETA};
use crate::qcore::{ensure_finite, pochhammer_ratio, qpochhammer_multi, re, Complex, Order, ParamList, QContext};
use crate::quadrature::{integrate, QuadratureSettings};

/// The pair `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: Complex,
    pub beta: Complex,
}

impl JacobiParams {
    pub fn new(alpha: impl Into<Complex>, beta: impl Into<Complex>) -> Self {
        JacobiParams { alpha: alpha.into(), beta: beta.into() }
    }

    pub fn swapped(&self) -> Self {
        JacobiParams { alpha: self.beta, beta: self.alpha }
    }

    /// Askey–Wilson parameters of the family.
    pub fn aw_params(&self, ctx: &QContext) -> AWParams {
        let (al, be) = (self.alpha, self.beta);
        AWParams::new(
            ctx.pow(al / 2.0 + 0.25),
            ctx.pow(al / 2.0 + 0.75),
            -ctx.pow(be / 2.0 + 0.25),
            -ctx.pow(be / 2.0 + 0.75),
        )
    }

    fn real_parts(&self) -> Result<(f64, f64)> {
        if self.alpha.im != 0.0 || self.beta.im != 0.0 {
            return Err(Error::DomainError("alpha and beta must be real here".into()));
        }
        Ok((self.alpha.re.to_f64(), self.beta.re.to_f64()))
    }
}

/// The six `z^n`-prefactored representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum D3Form {
    A,
    F,
    B,
    C,
    D,
    E,
}

/// Evaluation path for `P_n^{(alpha,beta)}(x|q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Through the Askey–Wilson polynomial.
    InterAw,
    D1,
    D1B,
    D1C,
    D1D,
    D2B,
    D2,
    D2D,
    D2C,
    /// `z^n`-prefactored forms; `inverted` substitutes `z -> 1/z`.
    D3 { form: D3Form, inverted: bool },
}

impl Representation {
    pub const ALL: [Representation; 21] = {
        use D3Form::*;
        use Representation::*;
        [
            InterAw,
            D1,
            D1B,
            D1C,
            D1D,
            D2B,
            D2,
            D2D,
            D2C,
            D3 { form: A, inverted: false },
            D3 { form: F, inverted: false },
            D3 { form: B, inverted: false },
            D3 { form: C, inverted: false },
            D3 { form: D, inverted: false },
            D3 { form: E, inverted: false },
            D3 { form: A, inverted: true },
            D3 { form: F, inverted: true },
            D3 { form: B, inverted: true },
            D3 { form: C, inverted: true },
            D3 { form: D, inverted: true },
            D3 { form: E, inverted: true },
        ]
    };

    pub fn name(&self) -> String {
        match self {
            Representation::D3 { form, inverted } => {
                format!("D3{}{}", format!("{form:?}").to_lowercase(), if *inverted { "-inv" } else { "" })
            }
            other => format!("{other:?}"),
        }
    }
}

/// `P_n^{(alpha,beta)}(x|q)` through the chosen representation.
pub fn ctsq_jacobi(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext, rep: Representation) -> Result<Complex> {
    let z = if let Representation::D3 { inverted: true, .. } = rep { var(0).inv() } else { var(0) };
    let t = ctsq_jacobi_term(n, rep, z, Base(1.0));
    ensure_finite(eval(&[t], &jacobi_env(arg.z(), jp, ctx))?, "continuous q-Jacobi polynomial")
}

/// The `D2D` form with the `q^{-n(n-1)/2}` prefactor of its siblings added.
///
/// This variant is *not* an identity; it is kept so the harness can show that
/// the printed form without that prefactor is the correct one.
pub fn ctsq_jacobi_d2d_with_extra_prefactor(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    let b = Base(1.0);
    let t = d2_family(n, Representation::D2D, var(0), b).times(b.pow(-binom(n)));
    eval(&[t], &jacobi_env(arg.z(), jp, ctx))
}

/// Exact-input environment with `alpha`, `beta` as exponent symbols and `z` as variable 0.
pub fn jacobi_env(z: Complex, jp: &JacobiParams, ctx: &QContext) -> Env {
    Env::new(ctx.q).with_exponents(jp.alpha, jp.beta).with_var(0, z)
}

fn binom(n: usize) -> i32 {
    (n * n.saturating_sub(1) / 2) as i32
}

/// `P_n^{(alpha,beta)}(x | base)` via `rep` at the monomial argument `z`
/// (the caller applies any `z -> 1/z` inversion).
pub fn ctsq_jacobi_term(n: usize, rep: Representation, z: Mono, base: Base) -> Term {
    match rep {
        Representation::InterAw => inter_aw(n, z, base),
        Representation::D1 | Representation::D1B | Representation::D1C | Representation::D1D => d1_family(n, rep, z, base),
        Representation::D2B | Representation::D2 | Representation::D2D | Representation::D2C => d2_family(n, rep, z, base),
        Representation::D3 { form, .. } => d3_family(n, form, z, base),
    }
}

/// Askey–Wilson parameters of the family as monomials.
pub fn jacobi_aw_monos(base: Base) -> [Mono; 4] {
    [
        base.pow(ALPHA / 2.0 + 0.25),
        base.pow(ALPHA / 2.0 + 0.75),
        -base.pow(BETA / 2.0 + 0.25),
        -base.pow(BETA / 2.0 + 0.75),
    ]
}

fn inter_aw(n: usize, z: Mono, b: Base) -> Term {
    let s = ALPHA + BETA;
    aw_p_term(n, jacobi_aw_monos(b), z, b)
        .times(b.pow((ALPHA / 2.0 + 0.25) * n as f64))
        .ratio(&[], &[b.mono(), -b.pow(s / 2.0 + 0.5), -b.pow(s / 2.0 + 1.0)], b.mono(), n)
}

fn d1_family(n: usize, rep: Representation, z: Mono, b: Base) -> Term {
    let (al, be) = (ALPHA, BETA);
    let s = al + be;
    let ni = n as i32;
    let q1 = b.mono();
    let (pre, lower, den) = match rep {
        Representation::D1 => (
            Term::new().ratio(&[b.pow(al + 1.0)], &[q1], q1, n),
            b.pow(al / 2.0 + 0.25),
            [b.pow(al + 1.0), -b.pow(s / 2.0 + 0.5), -b.pow(s / 2.0 + 1.0)],
        ),
        Representation::D1B => (
            Term::new()
                .times(b.pow(-(n as f64) / 2.0))
                .ratio(&[b.pow(al + 1.0), -b.pow((s + 3.0) / 2.0)], &[q1, -b.pow((s + 1.0) / 2.0)], q1, n),
            b.pow(al / 2.0 + 0.75),
            [b.pow(al + 1.0), -b.pow(s / 2.0 + 1.0), -b.pow(s / 2.0 + 1.5)],
        ),
        Representation::D1C => (
            Term::new().times((-b.pow((al - be) / 2.0)).pow(ni)).ratio(&[b.pow(be + 1.0)], &[q1], q1, n),
            -b.pow(be / 2.0 + 0.25),
            [b.pow(be + 1.0), -b.pow(s / 2.0 + 0.5), -b.pow(s / 2.0 + 1.0)],
        ),
        Representation::D1D => (
            Term::new()
                .times((-b.pow((al - be - 1.0) / 2.0)).pow(ni))
                .ratio(&[b.pow(be + 1.0), -b.pow((s + 3.0) / 2.0)], &[q1, -b.pow((s + 1.0) / 2.0)], q1, n),
            -b.pow(be / 2.0 + 0.75),
            [b.pow(be + 1.0), -b.pow(s / 2.0 + 1.0), -b.pow(s / 2.0 + 1.5)],
        ),
        _ => unreachable!("not a D1 representation"),
    };
    let num = vec![b.pow(-ni), b.pow(s + (n as f64 + 1.0)), lower * z, lower / z];
    pre.series(Phi::at_base(num, den.to_vec(), q1))
}

fn d2_family(n: usize, rep: Representation, z: Mono, b: Base) -> Term {
    let (al, be) = (ALPHA, BETA);
    let s = al + be;
    let nf = n as f64;
    let ni = n as i32;
    let q1 = b.mono();
    let q_binom = b.pow(-binom(n));
    let common = |point: Mono| {
        Term::new().ratio(
            &[b.pow(s / 2.0 + 0.5), b.pow(s / 2.0 + 1.0), point * z, point / z],
            &[q1, b.pow(s + 1.0)],
            q1,
            n,
        )
    };
    // lower numerators -q^{-s/2-n + {0, shift}} and denominators q^{-s-2n}, point z^±
    let (pre, upper, shift, point) = match rep {
        Representation::D2B => (
            common(b.pow(al / 2.0 + 0.75)).times(q_binom * (-b.pow(-0.5)).pow(ni)),
            b.pow(-al - nf),
            -0.5,
            b.pow(-al / 2.0 + 0.25 - nf),
        ),
        Representation::D2 => (
            common(b.pow(al / 2.0 + 0.25)).times(q_binom).scaled(if n.is_multiple_of(2) { 1.0 } else { -1.0 }),
            b.pow(-al - nf),
            0.5,
            b.pow(-al / 2.0 + 0.75 - nf),
        ),
        Representation::D2D => (
            common(-b.pow(be / 2.0 + 0.75)).times(b.pow((al - be - nf) / 2.0).pow(ni)),
            b.pow(-be - nf),
            -0.5,
            -b.pow(-be / 2.0 + 0.25 - nf),
        ),
        Representation::D2C => (
            common(-b.pow(be / 2.0 + 0.25)).times(q_binom * b.pow((al - be) / 2.0).pow(ni)),
            b.pow(-be - nf),
            0.5,
            -b.pow(-be / 2.0 + 0.75 - nf),
        ),
        _ => unreachable!("not a D2 representation"),
    };
    let num = vec![b.pow(-ni), upper, -b.pow(-s / 2.0 - nf), -b.pow(-s / 2.0 - nf + shift)];
    let den = vec![b.pow(-s - 2.0 * nf), point * z, point / z];
    pre.series(Phi::at_base(num, den, q1))
}

fn d3_family(n: usize, form: D3Form, z: Mono, b: Base) -> Term {
    let (al, be) = (ALPHA, BETA);
    let s = al + be;
    let nf = n as f64;
    let ni = n as i32;
    let q1 = b.mono();
    let zi = z.inv();
    let qn = b.pow(-ni);
    let p = |e: Lin| b.pow(e);
    let half_offsets = [q1, -p(s / 2.0 + 0.5), -p(s / 2.0 + 1.0)];
    let (pre_num, pre_den, num, den): (Vec<Mono>, Vec<Mono>, Vec<Mono>, Vec<Mono>) = match form {
        D3Form::A => (
            vec![p(al + 1.0), -p(be / 2.0 + 0.25) * zi, -p(be / 2.0 + 0.75) * zi],
            half_offsets.to_vec(),
            vec![qn, p(-be - nf), p(al / 2.0 + 0.25) * z, p(al / 2.0 + 0.75) * z],
            vec![p(al + 1.0), -p(-be / 2.0 - nf + 0.25) * z, -p(-be / 2.0 - nf + 0.75) * z],
        ),
        D3Form::F => (
            vec![p(be + 1.0), p(al / 2.0 + 0.25) * zi, p(al / 2.0 + 0.75) * zi],
            half_offsets.to_vec(),
            vec![qn, p(-al - nf), -p(be / 2.0 + 0.25) * z, -p(be / 2.0 + 0.75) * z],
            vec![p(be + 1.0), p(-al / 2.0 - nf + 0.25) * z, p(-al / 2.0 - nf + 0.75) * z],
        ),
        D3Form::B => (
            vec![p(al / 2.0 + 0.75) * zi, -p(be / 2.0 + 0.75) * zi],
            vec![q1, -p((s + 2.0) / 2.0)],
            vec![qn, -p(-(s + 1.0) / 2.0 - nf), p(al / 2.0 + 0.25) * z, -p(be / 2.0 + 0.25) * z],
            vec![-p((s + 1.0) / 2.0), p(-al / 2.0 + 0.25 - nf) * z, -p(-be / 2.0 + 0.25 - nf) * z],
        ),
        D3Form::C => (
            vec![p(al / 2.0 + 0.75) * zi, -p(be / 2.0 + 0.25) * zi],
            vec![q1, -p((s + 1.0) / 2.0)],
            vec![qn, -p(-s / 2.0 - nf), p(al / 2.0 + 0.25) * z, -p(be / 2.0 + 0.75) * z],
            vec![-p((s + 2.0) / 2.0), p(-al / 2.0 + 0.25 - nf) * z, -p(-be / 2.0 + 0.75 - nf) * z],
        ),
        D3Form::D => (
            vec![p(al / 2.0 + 0.25) * zi, -p(be / 2.0 + 0.75) * zi],
            vec![q1, -p((s + 1.0) / 2.0)],
            vec![qn, -p(-s / 2.0 - nf), p(al / 2.0 + 0.75) * z, -p(be / 2.0 + 0.25) * z],
            vec![-p((s + 2.0) / 2.0), p(-al / 2.0 + 0.75 - nf) * z, -p(-be / 2.0 + 0.25 - nf) * z],
        ),
        D3Form::E => (
            vec![-p((s + 3.0) / 2.0), p(al / 2.0 + 0.25) * zi, -p(be / 2.0 + 0.25) * zi],
            half_offsets.to_vec(),
            vec![qn, -p(-(s - 1.0) / 2.0 - nf), p(al / 2.0 + 0.75) * z, -p(be / 2.0 + 0.75) * z],
            vec![-p((s + 3.0) / 2.0), p(-al / 2.0 + 0.75 - nf) * z, -p(-be / 2.0 + 0.75 - nf) * z],
        ),
    };
    Term::new()
        .times(z.pow(ni) * p((al / 2.0 + 0.25) * nf))
        .ratio(&pre_num, &pre_den, q1, n)
        .series(Phi::at_base(num, den, q1))
}

/// `P_0 .. P_{count-1}` at one argument via the Askey–Wilson recurrence.
pub fn ctsq_jacobi_sequence(count: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<Vec<Complex>> {
    let r = aw_r_sequence(count, arg, &jp.aw_params(ctx), ctx)?;
    // P_n = (q^{alpha+1}; q)_n / (q; q)_n r_n
    let a1 = ctx.pow(jp.alpha + 1.0);
    let mut factor = re(1.0);
    let mut qn = re(1.0);
    let mut out = Vec::with_capacity(count);
    for rn in r {
        out.push(factor * rn);
        factor *= (re(1.0) - a1 * qn) / (re(1.0) - ctx.q * qn);
        qn *= ctx.q;
    }
    Ok(out)
}

/// Relative residual `|a - b| / max(|a|, |b|, 1e-30)`.
pub fn relative_residual(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-30)
}

/// Both sides of `P_n^{(a,b)}(-x) = (-1)^n q^{n(a-b)/2} P_n^{(b,a)}(x)`.
pub fn ctsq_parity_sides(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<(Complex, Complex)> {
    let lhs = ctsq_jacobi(n, &arg.negated(), jp, ctx, Representation::D1)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = ctx.pow((jp.alpha - jp.beta) * (n as f64 / 2.0))
        * sign
        * ctsq_jacobi(n, arg, &jp.swapped(), ctx, Representation::D1C)?;
    Ok((lhs, rhs))
}

pub fn ctsq_parity_residual(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<f64> {
    let (l, r) = ctsq_parity_sides(n, arg, jp, ctx)?;
    Ok(relative_residual(l, r))
}

fn both_sides(lhs: Term, rhs: Term, env: &Env) -> Result<(Complex, Complex)> {
    Ok((eval(&[lhs], env)?, eval(&[rhs], env)?))
}

/// Sides of the base-`q^2` quadratic transformation of a balanced `4phi3`:
///
/// ```text
/// 4phi3(q^{-2n}, q^{2n}a^2, c^2, q b^2; -a, -qa, q^2 b^2 c^2; q^2, q^2)
///   = (bc)^n (-q, -a/(bc); q)_n / (-a, -qbc; q)_n
///     4phi3(q^{-n}, q^n a, c/b, q b/c; -q, -a/(bc), q bc; q, q)
/// ```
pub fn singh_sides(n: usize, a: Complex, b: Complex, c: Complex, ctx: &QContext) -> Result<(Complex, Complex)> {
    singh_general(n, a, b, c, ctx, Base(2.0), Base(1.0))
}

pub fn singh_residual(n: usize, a: Complex, b: Complex, c: Complex, ctx: &QContext) -> Result<f64> {
    let (l, r) = singh_sides(n, a, b, c, ctx)?;
    Ok(relative_residual(l, r))
}

/// The same transformation written with base `q` on the left and `q^{1/2}` on the right.
pub fn singh_sqrt_sides(n: usize, a: Complex, b: Complex, c: Complex, ctx: &QContext) -> Result<(Complex, Complex)> {
    singh_general(n, a, b, c, ctx, Base(1.0), Base(0.5))
}

fn singh_general(n: usize, a: Complex, b: Complex, c: Complex, ctx: &QContext, big: Base, small: Base) -> Result<(Complex, Complex)> {
    let env = Env::new(ctx.q).with_var(1, a).with_var(2, b).with_var(3, c);
    let (a, b, c) = (var(1), var(2), var(3));
    let ni = n as i32;
    let p = small.mono();
    let lhs = Term::new().series(Phi::at_base(
        vec![big.pow(-ni), big.pow(ni) * a * a, c * c, p * b * b],
        vec![-a, -p * a, big.mono() * b * b * c * c],
        big.mono(),
    ));
    let rhs = Term::new()
        .times((b * c).pow(ni))
        .ratio(&[-p, -a / (b * c)], &[-a, -p * b * c], p, n)
        .series(Phi::at_base(vec![small.pow(-ni), small.pow(ni) * a, c / b, p * b / c], vec![-p, -a / (b * c), p * b * c], p));
    both_sides(lhs, rhs, &env)
}

/// `r_n(x; ±q^{1/2}, q^{a+1/2}, -q^{b+1/2} | q)` as a term.
fn quad_lhs(n: usize, z: Mono) -> Term {
    let h = q(0.5);
    aw_r_term(n, [h, -h, q(ALPHA + 0.5), -q(BETA + 0.5)], z, Base(1.0))
}

/// Sides of
///
/// ```text
/// r_n(x; ±q^{1/2}, q^{a+1/2}, -q^{b+1/2} | q)
///   = q^{-n a} (-q^{a+1}, -q^{a+b+1}; q)_n / (-q^{b+1}, -q; q)_n
///     r_n(x; q^{a+1/2}, q^{a+3/2}, -q^{b+1/2}, -q^{b+3/2} | q^2)
/// ```
pub fn quad_transform_sides(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<(Complex, Complex)> {
    let z = var(0);
    let rhs = aw_r_term(n, [q(ALPHA + 0.5), q(ALPHA + 1.5), -q(BETA + 0.5), -q(BETA + 1.5)], z, Base(2.0))
        .times(q(-ALPHA * n as f64))
        .ratio(&[-q(ALPHA + 1.0), -q(ALPHA + BETA + 1.0)], &[-q(BETA + 1.0), -q(1)], q(1), n);
    both_sides(quad_lhs(n, z), rhs, &jacobi_env(arg.z(), jp, ctx))
}

pub fn quad_transform_residual(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<f64> {
    let (l, r) = quad_transform_sides(n, arg, jp, ctx)?;
    Ok(relative_residual(l, r))
}

/// Sides of
///
/// ```text
/// r_n(x; ±q^{1/2}, q^{a+1/2}, -q^{b+1/2} | q) = q^{-n a} (q, -q^{a+b+1}; q)_n / (q^{a+1}, -q^{b+1}; q)_n P_n^{(a,b)}(x | q^2)
/// ```
pub fn base_two_sides(n: usize, arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<(Complex, Complex)> {
    let z = var(0);
    let rhs = ctsq_jacobi_term(n, Representation::D1, z, Base(2.0))
        .times(q(-ALPHA * n as f64))
        .ratio(&[q(1), -q(ALPHA + BETA + 1.0)], &[q(ALPHA + 1.0), -q(BETA + 1.0)], q(1), n);
    both_sides(quad_lhs(n, z), rhs, &jacobi_env(arg.z(), jp, ctx))
}

/// Orthogonality weight `w(cos theta; alpha, beta | q)` for `z = e^{i theta}`.
pub fn weight(arg: &UnitArgument, jp: &JacobiParams, ctx: &QContext) -> Result<f64> {
    let z = arg.z();
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::DomainError("weight needs |z| = 1".into()));
    }
    jp.real_parts()?;
    let p = jp.aw_params(ctx);
    let num = ParamList::new().zpm(z * z);
    let mut den = ParamList::new();
    for c in p.as_array() {
        den = den.scaled_zpm(c, z);
    }
    let v = qpochhammer_multi(&num, ctx, Order::Infinite)? / qpochhammer_multi(&den, ctx, Order::Infinite)?;
    if v.im.to_f64().abs() > 1e-12 * v.re.to_f64().abs() + 1e-300 {
        return Err(Error::DomainError(format!("weight has imaginary part {}", v.im)));
    }
    Ok(v.re.to_f64())
}

/// Squared norm `h_n(alpha, beta | q)` from its closed product form.
pub fn norm_hn(n: usize, jp: &JacobiParams, ctx: &QContext) -> Result<f64> {
    let (al, be) = jp.real_parts()?;
    if !(al > -1.0 && be > -1.0) || ctx.q.im != 0.0 || !(ctx.q.re > 0.0 && ctx.q.re < 1.0) {
        return Err(Error::DomainError("norm needs alpha, beta > -1 and 0 < q < 1".into()));
    }
    let s = al + be;
    let qp = |e: f64| ctx.pow(re(e));
    let inf = pochhammer_ratio(
        &ParamList::new().with(qp((s + 2.0) / 2.0)).with(qp((s + 3.0) / 2.0)),
        &ParamList::new()
            .with(ctx.q)
            .with(qp(al + 1.0))
            .with(qp(be + 1.0))
            .with(-qp((s + 1.0) / 2.0))
            .with(-qp((s + 2.0) / 2.0)),
        ctx,
        Order::Infinite,
    )?;
    let fin = pochhammer_ratio(
        &ParamList::new().with(qp(al + 1.0)).with(qp(be + 1.0)).with(qp((s + 1.0) / 2.0)),
        &ParamList::new().with(ctx.q).with(qp(s + 1.0)).with(qp((s + 3.0) / 2.0)),
        ctx,
        Order::Finite(n),
    )?;
    let v = qp((al + 0.5) * n as f64) * inf * fin * (2.0 * PI);
    Ok(v.re.to_f64())
}

/// `int_{-1}^{1} P_m P_n w / sqrt(1 - x^2) dx`, computed as `int_0^pi P_m P_n w d theta`.
pub fn orthogonality_integral(m: usize, n: usize, jp: &JacobiParams, ctx: &QContext, quad: &QuadratureSettings) -> Result<Complex> {
    jp.real_parts()?;
    let count = m.max(n) + 1;
    integrate(
        |theta| {
            let arg = UnitArgument::from_angle(theta);
            let w = weight(&arg, jp, ctx)?;
            let seq = ctsq_jacobi_sequence(count, &arg, jp, ctx)?;
            Ok(seq[m] * seq[n] * w)
        },
        0.0,
        PI,
        quad,
    )
}

/// Rogers polynomial `C_n(x; b | q)` recovered from `P_n^{(a,a)}` with `b = q^{a+1/2}`:
///
/// ```text
/// P_n^{(a,a)}(x|q) = (q^{a+1}; q)_n / (q^{2a+1}; q)_n  q^{(a/2+1/4) n}  C_n(x; q^{a+1/2} | q)
/// ```
pub fn ctsq_ultraspherical(n: usize, arg: &UnitArgument, b: Complex, ctx: &QContext) -> Result<Complex> {
    if b.norm() == 0.0 {
        return Err(Error::ZeroDenominator { index: 0 });
    }
    // a = Log_q(b) - 1/2, so q^{a+1} = b q^{1/2}, q^{2a+1} = b^2, q^{a/2+1/4} = b^{1/2}
    let alpha = b.ln() / ctx.q.ln() - 0.5;
    let p = ctsq_jacobi(n, arg, &JacobiParams::new(alpha, alpha), ctx, Representation::D1)?;
    let ratio = pochhammer_ratio(
        &ParamList::new().with(b * b),
        &ParamList::new().with(b * ctx.pow(re(0.5))),
        ctx,
        Order::Finite(n),
    )?;
    ensure_finite(ratio * p / b.sqrt().powi(n as i32), "Rogers polynomial")
}

/// `C_0 .. C_{count-1}` from `2x(1 - b q^n) C_n = (1 - q^{n+1}) C_{n+1} + (1 - b^2 q^{n-1}) C_{n-1}`.
pub fn rogers_sequence(count: usize, arg: &UnitArgument, b: Complex, ctx: &QContext) -> Result<Vec<Complex>> {
    let one = re(1.0);
    let x2 = arg.x() * 2.0;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    out.push(one);
    let mut qn = one;
    for n in 0..count - 1 {
        let prev = if n == 0 { re(0.0) } else { out[n - 1] };
        let d = one - qn * ctx.q;
        if d.norm() == 0.0 {
            return Err(Error::ZeroDenominator { index: n + 1 });
        }
        let next = (x2 * (one - b * qn) * out[n] - (one - b * b * qn / ctx.q) * prev) / d;
        out.push(ensure_finite(next, "Rogers recurrence")?);
        qn *= ctx.q;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpochhammer;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn degree_zero_all_paths() {
        let c = ctx(0.5);
        let jp = JacobiParams::new(0.4, 1.2);
        let arg = UnitArgument::from_angle(0.9);
        for rep in Representation::ALL {
            let v = ctsq_jacobi(0, &arg, &jp, &c, rep).unwrap();
            assert!(relative_residual(v, re(1.0)) < 1e-15, "{}", rep.name());
        }
    }

    #[test]
    fn twenty_one_paths_agree() {
        let c = ctx(0.5);
        let jp = JacobiParams::new(0.4, 1.2);
        let arg = UnitArgument::from_angle(0.9);
        let reference = ctsq_jacobi(3, &arg, &jp, &c, Representation::InterAw).unwrap();
        for rep in Representation::ALL {
            let v = ctsq_jacobi(3, &arg, &jp, &c, rep).unwrap();
            assert!(relative_residual(v, reference) < 1e-11, "{}: {v} vs {reference}", rep.name());
        }
        let extra = ctsq_jacobi_d2d_with_extra_prefactor(3, &arg, &jp, &c).unwrap();
        assert!(relative_residual(extra, reference) > 1e-3);
    }

    #[test]
    fn special_value_at_first_parameter() {
        let c = ctx(0.5);
        let jp = JacobiParams::new(0.7, -0.3);
        let arg = UnitArgument::new(c.pow(re(0.7 / 2.0 + 0.25))).unwrap();
        for n in 0..6 {
            let v = ctsq_jacobi(n, &arg, &jp, &c, Representation::D2C).unwrap();
            let closed = qpochhammer(c.pow(re(1.7)), &c, n) / qpochhammer(re(0.5), &c, n);
            assert!(relative_residual(v, closed) < 1e-12);
        }
    }

    #[test]
    fn parity_examples() {
        let c = ctx(0.4);
        let arg = UnitArgument::from_angle(1.1);
        assert_eq!(ctsq_parity_residual(0, &arg, &JacobiParams::new(0.7, 0.2), &c).unwrap(), 0.0);
        assert!(ctsq_parity_residual(4, &arg, &JacobiParams::new(0.7, 0.2), &c).unwrap() < 1e-11);
        assert!(ctsq_parity_residual(3, &UnitArgument::from_angle(0.3), &JacobiParams::new(0.5, 0.5), &c).unwrap() < 1e-12);
    }

    #[test]
    fn singh_and_quadratic_examples() {
        let c = ctx(0.6);
        assert!(singh_residual(1, re(0.3), re(0.2), re(0.5), &c).unwrap() < 1e-13);
        assert!(singh_residual(0, re(0.3), re(0.2), re(0.5), &c).unwrap() == 0.0);
        let (l, r) = singh_sqrt_sides(4, re(0.3), re(0.2), re(0.5), &c).unwrap();
        assert!(relative_residual(l, r) < 1e-12);
        let c = ctx(0.49);
        let arg = UnitArgument::from_angle(0.7);
        let jp = JacobiParams::new(0.5, 1.0);
        assert!(quad_transform_residual(3, &arg, &jp, &c).unwrap() < 1e-12);
        assert_eq!(quad_transform_residual(0, &arg, &jp, &c).unwrap(), 0.0);
        let (l, r) = base_two_sides(3, &arg, &jp, &c).unwrap();
        assert!(relative_residual(l, r) < 1e-12, "{l} {r}");
    }

    #[test]
    fn weight_is_positive_and_symmetric() {
        let c = ctx(0.5);
        let jp = JacobiParams::new(0.3, 0.3);
        let w = weight(&UnitArgument::from_angle(PI / 2.0), &jp, &c).unwrap();
        assert!(w > 0.0);
        let jp = JacobiParams::new(0.3, 1.4);
        for k in 1..20 {
            let arg = UnitArgument::from_angle(k as f64 * 0.15);
            let a = weight(&arg, &jp, &c).unwrap();
            let b = weight(&arg.inverted(), &jp, &c).unwrap();
            assert!((a - b).abs() <= 1e-13 * a.abs());
        }
        let jp = JacobiParams::new(-0.5, -0.5);
        let mut theta = 0.1;
        while theta < PI - 0.1 {
            let w = weight(&UnitArgument::from_angle(theta), &jp, &c).unwrap();
            assert!(w.is_finite() && w > 0.0 && w < 1e3);
            theta += 0.05;
        }
        assert!(weight(&UnitArgument::new(re(1.2)).unwrap(), &jp, &c).is_err());
    }

    #[test]
    fn norm_matches_quadrature() {
        let c = ctx(0.5);
        let jp = JacobiParams::new(0.0, 0.0);
        let i = orthogonality_integral(0, 0, &jp, &c, &QuadratureSettings::default()).unwrap();
        let h0 = norm_hn(0, &jp, &c).unwrap();
        assert!((i.re - h0).abs() < 1e-6 * h0);
        let jp = JacobiParams::new(0.3, 1.1);
        let c = ctx(0.4);
        for n in 0..8 {
            let h = norm_hn(n, &jp, &c).unwrap();
            assert!(h > 0.0);
            // incremental ratio
            let q = 0.4f64;
            let s = 1.4;
            let nn = n as f64;
            let ratio = q.powf(0.8) * (1.0 - q.powf(1.3 + nn)) * (1.0 - q.powf(2.1 + nn)) * (1.0 - q.powf((s + 1.0) / 2.0 + nn))
                / ((1.0 - q.powf(1.0 + nn)) * (1.0 - q.powf(s + 1.0 + nn)) * (1.0 - q.powf((s + 3.0) / 2.0 + nn)));
            let h1 = norm_hn(n + 1, &jp, &c).unwrap();
            assert!((h1 / h - ratio).abs() < 1e-12 * ratio);
        }
    }

    #[test]
    fn orthogonality_small_cases() {
        let c = ctx(0.3);
        let jp = JacobiParams::new(0.5, 0.5);
        let s = QuadratureSettings::default();
        let h0 = norm_hn(0, &jp, &c).unwrap();
        let off = orthogonality_integral(0, 1, &jp, &c, &s).unwrap();
        assert!(off.norm() < 1e-8 * h0);
        let d = orthogonality_integral(3, 3, &jp, &c, &s).unwrap();
        let h3 = norm_hn(3, &jp, &c).unwrap();
        assert!((d.re - h3).abs() < 1e-6 * h3);
    }

    #[test]
    fn sequence_matches_definition() {
        let c = ctx(0.45);
        let jp = JacobiParams::new(1.3, 0.2);
        let arg = UnitArgument::from_angle(2.2);
        let seq = ctsq_jacobi_sequence(8, &arg, &jp, &c).unwrap();
        for (n, v) in seq.iter().enumerate() {
            let d = ctsq_jacobi(n, &arg, &jp, &c, Representation::D1).unwrap();
            assert!(relative_residual(*v, d) < 1e-10, "n={n}: {}", relative_residual(*v, d));
        }
    }

    #[test]
    fn rogers_first_degree() {
        let c = ctx(0.5);
        for (theta, b) in [(0.3, 0.2), (1.0, 0.7), (2.0, 0.45), (2.9, 0.1), (1.7, 0.33)] {
            let arg = UnitArgument::from_angle(theta);
            let b = re(b);
            let expected = arg.x() * 2.0 * (re(1.0) - b) / 0.5;
            assert!(relative_residual(ctsq_ultraspherical(1, &arg, b, &c).unwrap(), expected) < 1e-13);
            assert_eq!(ctsq_ultraspherical(0, &arg, b, &c).unwrap(), re(1.0));
            let seq = rogers_sequence(6, &arg, b, &c).unwrap();
            for (n, v) in seq.iter().enumerate() {
                assert!(relative_residual(*v, ctsq_ultraspherical(n, &arg, b, &c).unwrap()) < 1e-10);
            }
        }
    }
}
