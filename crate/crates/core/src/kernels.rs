//! Poisson kernels and generating functions of continuous q-Jacobi and
//! Rogers polynomials, each as a direct power series in `t` and in closed
//! (hypergeometric) form.
//!
//! Direct series use the three-term recurrences for the polynomial values,
//! and sums run in double-double with a tolerance far below the checks made
//! on them.

use serde::{Deserialize, Serialize};

use crate::awpolys::{aw_r_sequence, AWParams, UnitArgument};
use crate::ctsqjacobi::{ctsq_jacobi_sequence, rogers_sequence, JacobiParams};
use crate::error::{Error, Result};
use crate::qcore::{ensure_finite, pochhammer_ratio, re, Complex, Order, ParamList, QContext};
use crate::series::{phi, wp};

/// Relative truncation tolerance used inside this module.
const KERNEL_TOL: f64 = 1e-20;

/// Outer sums of the three-term kernel stop after this many terms.
pub const MAX_OUTER_TERMS: usize = 1500;

/// Longest direct power series summed before giving up.
const MAX_SERIES_TERMS: usize = 2048;

/// Two arguments `x = (z + 1/z)/2`, `y = (w + 1/w)/2` and the series parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub z: Complex,
    pub w: Complex,
    pub t: Complex,
}

impl KernelPoint {
    pub fn new(z: impl Into<Complex>, w: impl Into<Complex>, t: impl Into<Complex>) -> Result<Self> {
        let p = KernelPoint { z: z.into(), w: w.into(), t: t.into() };
        if p.z.norm() == 0.0 || p.w.norm() == 0.0 {
            return Err(Error::DomainError("z and w must be nonzero".into()));
        }
        if p.t.norm() >= 1.0 {
            return Err(Error::DomainError(format!("need |t| < 1, got {}", p.t.norm())));
        }
        Ok(p)
    }

    /// `z -> 1/z`, `w -> 1/w`.
    pub fn inverted(&self) -> Self {
        KernelPoint { z: self.z.inv(), w: self.w.inv(), t: self.t }
    }

    /// `x <-> y`.
    pub fn swapped(&self) -> Self {
        KernelPoint { z: self.w, w: self.z, t: self.t }
    }

    fn args(&self) -> Result<(UnitArgument, UnitArgument)> {
        Ok((UnitArgument::new(self.z)?, UnitArgument::new(self.w)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaSide {
    LhsSeries,
    Rhs8W7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZdSide {
    LhsSeries,
    RhsTwo5Phi4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wp32Side {
    Phi32,
    Two4Phi3,
    W87,
}

fn fine(ctx: &QContext) -> QContext {
    ctx.with_tolerances(ctx.tol_rel.min(KERNEL_TOL), ctx.tol_abs)
}

fn list(v: &[Complex]) -> ParamList {
    ParamList::from(v.to_vec())
}

fn inf_ratio(num: &ParamList, den: &ParamList, ctx: &QContext) -> Result<Complex> {
    pochhammer_ratio(num, den, ctx, Order::Infinite)
}

fn fin_ratio(num: &ParamList, den: &ParamList, ctx: &QContext, n: usize) -> Result<Complex> {
    pochhammer_ratio(num, den, ctx, Order::Finite(n))
}

/// `(num; q)_n / (den; q)_n z^n` for `n < len`.
fn coefficients(len: usize, num: &ParamList, den: &ParamList, z: Complex, ctx: &QContext) -> Result<Vec<Complex>> {
    let one = re(1.0);
    let mut out = Vec::with_capacity(len);
    let mut c = one;
    let mut qn = one;
    for n in 0..len {
        out.push(c);
        let mut r = z;
        for &a in num.iter() {
            r *= one - a * qn;
        }
        for &b in den.iter() {
            let f = one - b * qn;
            if f.norm() < 4.0 * f64::EPSILON {
                return Err(Error::ZeroDenominator { index: n + 1 });
            }
            r /= f;
        }
        c *= r;
        qn *= ctx.q;
    }
    Ok(out)
}

/// Sum of `terms`, once three consecutive terms fall below tolerance.
fn settled_sum(terms: &[Complex], ctx: &QContext) -> Option<Complex> {
    let mut sum = re(0.0);
    let mut small = 0;
    for &v in terms {
        sum += v;
        if v.norm() <= ctx.tol_rel * sum.norm() + ctx.tol_abs {
            small += 1;
            if small >= 3 {
                return Some(sum);
            }
        } else {
            small = 0;
        }
    }
    None
}

/// Sums a power series whose first `len` terms `build(len)` returns,
/// doubling `len` until the tail is negligible.
fn power_series(cap: usize, ctx: &QContext, mut build: impl FnMut(usize) -> Result<Vec<Complex>>) -> Result<Complex> {
    let mut len = cap.min(64);
    loop {
        let terms = build(len)?;
        if let Some(s) = settled_sum(&terms, ctx) {
            return ensure_finite(s, "power series");
        }
        if len >= cap {
            return Err(Error::NoConvergence(cap));
        }
        len = (2 * len).min(cap);
    }
}

/// Sums `f(0) + f(1) + ...` until three consecutive terms are negligible.
fn outer_sum(ctx: &QContext, mut f: impl FnMut(usize) -> Result<Complex>) -> Result<Complex> {
    let mut sum = re(0.0);
    let mut small = 0;
    for n in 0..MAX_OUTER_TERMS {
        let v = f(n)?;
        sum += v;
        if v.norm() <= ctx.tol_rel * sum.norm() + ctx.tol_abs {
            small += 1;
            if small >= 3 {
                return ensure_finite(sum, "outer sum");
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(MAX_OUTER_TERMS))
}

fn check_t(t: Complex) -> Result<()> {
    if t.norm() >= 1.0 {
        return Err(Error::DomainError(format!("need |t| < 1, got {}", t.norm())));
    }
    Ok(())
}

/// Askey–Wilson Poisson kernel
/// `sum_n (abcd/q, +-sqrt(q abcd), ab, ac, ad; q)_n t^n / ((q, +-sqrt(abcd/q), bc, bd, cd; q)_n a^{2n}) r_n(x) r_n(y)`,
/// summed to at most `n_max` terms.
pub fn aw_poisson_series(pt: &KernelPoint, p: &AWParams, ctx: &QContext, n_max: usize) -> Result<Complex> {
    check_t(pt.t)?;
    let ctx = fine(ctx);
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let abcd = p.abcd();
    let q = ctx.q;
    let num = list(&[abcd / q, a * b, a * c, a * d]).pm((q * abcd).sqrt());
    let den = list(&[q, b * c, b * d, c * d]).pm((abcd / q).sqrt());
    let (x, y) = pt.args()?;
    power_series(n_max, &ctx, |len| {
        let co = coefficients(len, &num, &den, pt.t / (a * a), &ctx)?;
        let rx = aw_r_sequence(len, &x, p, &ctx)?;
        let ry = aw_r_sequence(len, &y, p, &ctx)?;
        Ok((0..len).map(|n| co[n] * rx[n] * ry[n]).collect())
    })
}

/// The same kernel in its simplified form for `d = bc/a`.
pub fn aw_poisson_series_adbc(pt: &KernelPoint, a: Complex, b: Complex, c: Complex, ctx: &QContext, n_max: usize) -> Result<Complex> {
    check_t(pt.t)?;
    let ctx = fine(ctx);
    let q = ctx.q;
    let bc = b * c;
    let p = AWParams::new(a, b, c, bc / a);
    let num = list(&[bc * bc / q, a * b, a * c]).pm(q.sqrt() * bc);
    let den = list(&[q, b * bc / a, bc * c / a]).pm(bc / q.sqrt());
    let (x, y) = pt.args()?;
    power_series(n_max, &ctx, |len| {
        let co = coefficients(len, &num, &den, pt.t / (a * a), &ctx)?;
        let rx = aw_r_sequence(len, &x, &p, &ctx)?;
        let ry = aw_r_sequence(len, &y, &p, &ctx)?;
        Ok((0..len).map(|n| co[n] * rx[n] * ry[n]).collect())
    })
}

fn poisson_coefficients(len: usize, t: Complex, jp: &JacobiParams, ctx: &QContext) -> Result<Vec<Complex>> {
    let (al, be) = (jp.alpha, jp.beta);
    let s = al + be;
    let num = list(&[ctx.q, ctx.pow(s + 1.0), ctx.pow((s + 3.0) / 2.0)]);
    let den = list(&[ctx.pow(al + 1.0), ctx.pow(be + 1.0), ctx.pow((s + 1.0) / 2.0)]);
    coefficients(len, &num, &den, t / ctx.pow(al + 0.5), ctx)
}

/// First `count` terms `c_n t^n P_n(x) P_n(y)` of the continuous q-Jacobi Poisson kernel.
pub fn poisson_kernel_terms(pt: &KernelPoint, jp: &JacobiParams, ctx: &QContext, count: usize) -> Result<Vec<Complex>> {
    let ctx = fine(ctx);
    let (x, y) = pt.args()?;
    let co = poisson_coefficients(count, pt.t, jp, &ctx)?;
    let px = ctsq_jacobi_sequence(count, &x, jp, &ctx)?;
    let py = ctsq_jacobi_sequence(count, &y, jp, &ctx)?;
    Ok((0..count).map(|n| co[n] * px[n] * py[n]).collect())
}

/// Continuous q-Jacobi Poisson kernel
/// `sum_n (q, q^{a+b+1}, q^{(a+b+3)/2}; q)_n t^n / ((q^{a+1}, q^{b+1}, q^{(a+b+1)/2}; q)_n q^{(a+1/2)n}) P_n(x) P_n(y)`.
pub fn poisson_kernel_series(pt: &KernelPoint, jp: &JacobiParams, ctx: &QContext, n_max: usize) -> Result<Complex> {
    check_t(pt.t)?;
    let f = fine(ctx);
    power_series(n_max, &f, |len| poisson_kernel_terms(pt, jp, ctx, len))
}

/// The kernel as three outer sums of very-well-poised `10W9` series.
pub fn poisson_kernel_threeterm(pt: &KernelPoint, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    threeterm(pt, jp, ctx, true)
}

/// As [`poisson_kernel_threeterm`], with the third family's `10W9` taking
/// `-q^{(a+b+2n)/2}` without the factor `t`. Not an identity.
pub fn poisson_kernel_threeterm_as_printed(pt: &KernelPoint, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    threeterm(pt, jp, ctx, false)
}

fn threeterm(pt: &KernelPoint, jp: &JacobiParams, ctx: &QContext, t_in_third: bool) -> Result<Complex> {
    check_t(pt.t)?;
    if pt.t.norm() == 0.0 {
        return Err(Error::DomainError("the three-term form needs t != 0".into()));
    }
    let ctx = fine(ctx);
    ctx.require_convergent()?;
    let (al, be) = (jp.alpha, jp.beta);
    let s = al + be;
    let (z, w, t) = (pt.z, pt.w, pt.t);
    let q = ctx.q;
    let p = |e: Complex| ctx.pow(e);
    let one = re(1.0);
    let sq = q.sqrt();
    let halves = |c: Complex| ParamList::new().q_offsets(&ctx, c, s / 2.0, &[0.5, 1.0, 1.5]);

    // first family
    let pre1 = (one - t * t) * inf_ratio(&list(&[-p((s + 4.0) / 2.0) * t]), &list(&[-p((-s - 2.0) / 2.0) * t]), &ctx)?;
    let num1 = list(&[p((s + 2.0) / 2.0)])
        .pm(p((s + 3.0) / 2.0))
        .scaled_zpm(-p(be / 2.0 + 0.75), z)
        .scaled_zpm(-p(be / 2.0 + 0.75), w);
    let den1 = list(&[
        q,
        p(be + 1.0),
        -p((s + 2.0) / 2.0),
        -p((s + 3.0) / 2.0),
        -p((be - al + 1.0) / 2.0),
        -p(s / 2.0 + 2.0) * t,
        -p(s / 2.0 + 2.0) / t,
    ]);
    let sum1 = outer_sum(&ctx, |n| {
        let nf = n as f64;
        let c = fin_ratio(&num1, &den1, &ctx, n)? * q.powi(n as i32);
        let bs = list(&[p(re(-nf)), -p((-s - 2.0 * nf - 1.0) / 2.0), p(-be - nf)])
            .scaled_zpm(p(al / 2.0 + 0.25), z)
            .scaled_zpm(p(al / 2.0 + 0.25), w);
        Ok(c * wp(-p((al - be - 2.0 * nf - 1.0) / 2.0), bs, &ctx, q)?)
    })?;

    // second family
    let pre2 = inf_ratio(
        &list(&[p(s + 2.0), t, -p((al - be) / 2.0) * t])
            .scaled_zpm(p(al / 2.0 + 0.75), z)
            .scaled_zpm(p(al / 2.0 + 0.25), w)
            .scaled_zpm(-p(be / 2.0 + 0.25) * t, z)
            .scaled_zpm(-p(be / 2.0 + 0.75) * t, w),
        &list(&[p(al + 1.0), -p((al - be) / 2.0), p(be + 1.0) * t, -p((s + 2.0) / 2.0) / t])
            .extend(&halves(-one))
            .cross_zpm(t, z, w),
        &ctx,
    )?;
    let num2 = list(&[-t, p(be + 1.0) * t]).pm(sq * t).cross_zpm(t, z, w);
    let den2 = list(&[q, -p(-s / 2.0) * t, q * t * t, -p((al - be) / 2.0) * t])
        .scaled_zpm(-p(be / 2.0 + 0.25) * t, z)
        .scaled_zpm(-p(be / 2.0 + 0.75) * t, w);
    let sum2 = outer_sum(&ctx, |n| {
        let nf = n as f64;
        let qn = q.powi(n as i32);
        let c = fin_ratio(&num2, &den2, &ctx, n)? * qn;
        let bs = list(&[qn * t, -p((s + 2.0 * nf) / 2.0) * t, -p((be - al + 2.0 * nf) / 2.0) * t])
            .scaled_zpm(-p(be / 2.0 + 0.75), z)
            .scaled_zpm(-p(be / 2.0 + 0.25), w);
        Ok(c * wp(p(be + nf) * t, bs, &ctx, q)?)
    })?;

    // third family
    let pre3 = inf_ratio(
        &list(&[p(s + 2.0), t, -p((be - al) / 2.0) * t])
            .scaled_zpm(-p(be / 2.0 + 0.75), z)
            .scaled_zpm(-p(be / 2.0 + 0.25), w)
            .scaled_zpm(p(al / 2.0 + 0.25) * t, z)
            .scaled_zpm(p(al / 2.0 + 0.75) * t, w),
        &list(&[p(be + 1.0), -p((be - al) / 2.0), p(al + 1.0) * t, -p((s + 2.0) / 2.0) / t])
            .extend(&halves(-one))
            .cross_zpm(t, z, w),
        &ctx,
    )?;
    let num3 = list(&[-t, p(al + 1.0) * t]).pm(sq * t).cross_zpm(t, z, w);
    let den3 = list(&[q, -p(-s / 2.0) * t, -p((be - al) / 2.0) * t, q * t * t])
        .scaled_zpm(p(al / 2.0 + 0.25) * t, z)
        .scaled_zpm(p(al / 2.0 + 0.75) * t, w);
    let tt = if t_in_third { t } else { one };
    let sum3 = outer_sum(&ctx, |n| {
        let nf = n as f64;
        let qn = q.powi(n as i32);
        let c = fin_ratio(&num3, &den3, &ctx, n)? * qn;
        let bs = list(&[qn * t, -p((s + 2.0 * nf) / 2.0) * tt, -p((al - be + 2.0 * nf) / 2.0) * t])
            .scaled_zpm(p(al / 2.0 + 0.75), z)
            .scaled_zpm(p(al / 2.0 + 0.25), w);
        Ok(c * wp(p(al + nf) * t, bs, &ctx, q)?)
    })?;

    ensure_finite(pre1 * sum1 + pre2 * sum2 + pre3 * sum3, "three-term Poisson kernel")
}

/// First `count` terms of the `w = a` generating function's left side.
pub fn genfun_wa_terms(arg: &UnitArgument, t: Complex, jp: &JacobiParams, ctx: &QContext, count: usize) -> Result<Vec<Complex>> {
    let ctx = fine(ctx);
    let s = jp.alpha + jp.beta;
    let num = list(&[ctx.pow(s + 1.0), ctx.pow((s + 3.0) / 2.0)]);
    let den = list(&[ctx.pow(jp.beta + 1.0), ctx.pow((s + 1.0) / 2.0)]);
    let co = coefficients(count, &num, &den, t, &ctx)?;
    let pv = ctsq_jacobi_sequence(count, arg, jp, &ctx)?;
    Ok((0..count).map(|n| co[n] * pv[n]).collect())
}

/// `sum_n (q^{a+b+1}, q^{(a+b+3)/2}; q)_n / (q^{b+1}, q^{(a+b+1)/2}; q)_n t^n P_n(x|q)`
/// and its `8W7` closed form.
pub fn genfun_wa(arg: &UnitArgument, t: Complex, jp: &JacobiParams, ctx: &QContext, side: WaSide) -> Result<Complex> {
    let ctx = fine(ctx);
    let (al, be) = (jp.alpha, jp.beta);
    let s = al + be;
    let p = |e: Complex| ctx.pow(e);
    if (p(al + 0.5) * t).norm() >= 1.0 {
        return Err(Error::DomainError("need |q^{alpha+1/2} t| < 1".into()));
    }
    match side {
        WaSide::LhsSeries => power_series(MAX_SERIES_TERMS, &ctx, |len| genfun_wa_terms(arg, t, jp, &ctx, len)),
        WaSide::Rhs8W7 => {
            let z = arg.z();
            let pre = inf_ratio(
                &list(&[-p((3.0 * al + be + 5.0) / 2.0) * t, p(2.0 * al + 1.0) * t * t, -p((s + 2.0) / 2.0) * t])
                    .scaled_zpm(p(al + be / 2.0 + 1.75) * t, z),
                &list(&[p(2.0 * al + 2.0) * t * t, -p(s + 2.5) * t, -p(al + 1.0) * t]).scaled_zpm(p(al / 2.0 + 0.25) * t, z),
                &ctx,
            )?;
            let bs = list(&[-p(al + 1.5) * t, p((be - al) / 2.0), p((s + 3.0) / 2.0)]).scaled_zpm(-p(be / 2.0 + 0.75), z);
            ensure_finite(pre * wp(-p(s + 1.5) * t, bs, &ctx, -p(al + 0.5) * t)?, "w = a generating function")
        }
    }
}

/// `sum_n (q^{a+b+1}, +-q^{(a+b+3)/2}; q)_n / (q^{a+1}, +-q^{(a+b+1)/2}; q)_n t^n P_n(x|q)`
/// and its closed form as two `5phi4` series.
pub fn genfun_zd(arg: &UnitArgument, t: Complex, jp: &JacobiParams, ctx: &QContext, side: ZdSide) -> Result<Complex> {
    let ctx = fine(ctx);
    let (al, be) = (jp.alpha, jp.beta);
    let s = al + be;
    let q = ctx.q;
    let p = |e: Complex| ctx.pow(e);
    check_t(t)?;
    match side {
        ZdSide::LhsSeries => {
            let num = list(&[p(s + 1.0)]).pm(p((s + 3.0) / 2.0));
            let den = list(&[p(al + 1.0)]).pm(p((s + 1.0) / 2.0));
            power_series(MAX_SERIES_TERMS, &ctx, |len| {
                let co = coefficients(len, &num, &den, t, &ctx)?;
                let pv = ctsq_jacobi_sequence(len, arg, jp, &ctx)?;
                Ok((0..len).map(|n| co[n] * pv[n]).collect())
            })
        }
        ZdSide::RhsTwo5Phi4 => {
            if t.norm() == 0.0 {
                return Err(Error::DomainError("the closed form needs t != 0".into()));
            }
            // The two halves cancel by many orders of magnitude near t = q^k,
            // so each 5phi4 is summed to the working precision.
            let ctx = ctx.with_tolerances(1e-31, 0.0);
            let z = arg.z();
            let a = p(al / 2.0 + 0.25);
            let r1 = inf_ratio(&list(&[p(s + 3.0) * t, p(s + 2.0) * t * t]), &list(&[t, p(s + 3.0) * t * t]), &ctx)?
                * phi(
                    list(&[p((s + 2.0) / 2.0)]).pm(p((s + 3.0) / 2.0)).scaled_zpm(a, z),
                    list(&[p(al + 1.0), -p((s + 1.0) / 2.0), p(s + 3.0) * t, q / t]),
                    &ctx,
                    q,
                )?;
            let r2 = inf_ratio(
                &list(&[p(s + 2.0), -p((s + 1.0) / 2.0) * t, -p((s + 2.0) / 2.0) * t, p(al + 1.0) * t]).scaled_zpm(a, z),
                &list(&[p(al + 1.0), -p((s + 1.0) / 2.0), -p((s + 2.0) / 2.0), t.inv()]).scaled_zpm(a * t, z),
                &ctx,
            )? * phi(
                list(&[p((s + 2.0) / 2.0) * t]).pm(p((s + 3.0) / 2.0) * t).scaled_zpm(a * t, z),
                list(&[-p((s + 1.0) / 2.0) * t, q * t, p(al + 1.0) * t, p(s + 3.0) * t * t]),
                &ctx,
                q,
            )?;
            ensure_finite(r1 + r2, "z = d generating function")
        }
    }
}

/// `sum_n (qb; q)_n / (b; q)_n t^n C_n(x; b|q) = (1 - b t^2) (qbtz^{+-}; q)_inf / (tz^{+-}; q)_inf`.
pub fn rogers_genfun(arg: &UnitArgument, t: Complex, b: Complex, ctx: &QContext, side: Side) -> Result<Complex> {
    let ctx = fine(ctx);
    check_t(t)?;
    let q = ctx.q;
    let z = arg.z();
    match side {
        Side::Lhs => power_series(MAX_SERIES_TERMS, &ctx, |len| {
            let co = coefficients(len, &list(&[q * b]), &list(&[b]), t, &ctx)?;
            let cv = rogers_sequence(len, arg, b, &ctx)?;
            Ok((0..len).map(|n| co[n] * cv[n]).collect())
        }),
        Side::Rhs => {
            let r = inf_ratio(&ParamList::new().scaled_zpm(q * b * t, z), &ParamList::new().scaled_zpm(t, z), &ctx)?;
            ensure_finite((re(1.0) - b * t * t) * r, "Rogers generating function")
        }
    }
}

/// `sum_n (+-qb; q)_n / (+-b; q)_n t^n C_n(x; b|q)` and its `8W7` closed form.
pub fn rogers_genfun2(arg: &UnitArgument, t: Complex, b: Complex, ctx: &QContext, side: Side) -> Result<Complex> {
    let ctx = fine(ctx);
    check_t(t)?;
    let q = ctx.q;
    let z = arg.z();
    match side {
        Side::Lhs => power_series(MAX_SERIES_TERMS, &ctx, |len| {
            let co = coefficients(len, &ParamList::new().pm(q * b), &ParamList::new().pm(b), t, &ctx)?;
            let cv = rogers_sequence(len, arg, b, &ctx)?;
            Ok((0..len).map(|n| co[n] * cv[n]).collect())
        }),
        Side::Rhs => {
            let pre = inf_ratio(
                &list(&[q * b, b * t * t]).scaled_zpm(-q * b * t, z),
                &list(&[-b, -q * b * t * t]).scaled_zpm(t, z),
                &ctx,
            )?;
            let bs = list(&[-q.inv()]).pm(q * b.sqrt() * t).scaled_zpm(t, z);
            ensure_finite(pre * wp(-b * t * t, bs, &ctx, q * b)?, "Rogers generating function")
        }
    }
}

/// The well-poised `3phi2(ab, sqrt(q) a, q sqrt(ab); sqrt(q) b, sqrt(ab); q, z)` and
/// its two transformed forms. Square roots are principal.
pub fn wp_3phi2_transform(a: Complex, b: Complex, z: Complex, ctx: &QContext, side: Wp32Side) -> Result<Complex> {
    let ctx = fine(ctx);
    ctx.require_convergent()?;
    let q = ctx.q;
    let sq = q.sqrt();
    let sab = (a * b).sqrt();
    let q3 = q * q * q;
    if z.norm() == 0.0 {
        // both transformed forms have removable singularities at z = 0
        return Ok(re(1.0));
    }
    match side {
        Wp32Side::Phi32 => phi(list(&[a * b, sq * a, q * sab]), list(&[sq * b, sab]), &ctx, z),
        Wp32Side::Two4Phi3 => {
            // the two halves can cancel heavily, as in the z = d generating function
            let ctx = ctx.with_tolerances(1e-31, 0.0);
            let r1 = inf_ratio(
                &list(&[a * a * z * z, -(q3 * a * a * a * b).sqrt() * z]),
                &list(&[q * a * a * z * z, -(a / (q * b)).sqrt() * z]),
                &ctx,
            )? * phi(
                list(&[q * sab, -(q * b / a).sqrt()]).pm((q * a * b).sqrt()),
                list(&[sq * b, -(q3 * a * a * a * b).sqrt() * z, -(q3 * b / a).sqrt() / z]),
                &ctx,
                q,
            )?;
            let r2 = inf_ratio(
                &list(&[q * a * b, sq * a * z, -(q * b / a).sqrt(), -sab * z]),
                &list(&[sq * b, -q * sab, z, -(q * b / a).sqrt() / z]),
                &ctx,
            )? * phi(
                list(&[z, -sq * a * z]).pm(a * z),
                list(&[q * a * a * z * z, -(q * a / b).sqrt() * z, -sab * z]),
                &ctx,
                q,
            )?;
            ensure_finite(r1 + r2, "well-poised 3phi2")
        }
        Wp32Side::W87 => {
            let pre = inf_ratio(
                &list(&[
                    a * a * z * z,
                    q * sab * z,
                    -(q * a * b).sqrt() * z,
                    q * (a * a * a * b).sqrt() * z,
                    -(q3 * a * a * a * b).sqrt() * z,
                ]),
                &list(&[q * a * a * z * z, z, a * z, -sq * a * z, -q3.sqrt() * a * b * z]),
                &ctx,
            )?;
            let bs = list(&[q * sab, -(q * a * b).sqrt(), (b / a).sqrt(), -(q * b / a).sqrt(), -q * a * z]);
            ensure_finite(pre * wp(-sq * a * b * z, bs, &ctx, -a * z)?, "well-poised 3phi2")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctsqjacobi::relative_residual as rel;

    fn cis(theta: f64) -> Complex {
        Complex::from_polar(1.0, theta)
    }

    #[test]
    fn kernel_forms_agree() {
        let ctx = QContext::new(0.5).unwrap();
        let jp = JacobiParams::new(0.3, 0.8);
        let pt = KernelPoint::new(cis(0.8), cis(1.3), 0.4).unwrap();
        let direct = poisson_kernel_series(&pt, &jp, &ctx, 400).unwrap();
        // mpmath, 25 digits
        assert!((direct.re.to_f64() - 1.022_750_756_021_505_9).abs() < 1e-14);
        let aw = aw_poisson_series(&pt, &jp.aw_params(&ctx), &ctx, 400).unwrap();
        assert!(rel(direct, aw) < 1e-15);
        let p = jp.aw_params(&ctx);
        let adbc = aw_poisson_series_adbc(&pt, p.a, p.b, p.c, &ctx, 400).unwrap();
        assert!(rel(aw, adbc) < 1e-15);
        let three = poisson_kernel_threeterm(&pt, &jp, &ctx).unwrap();
        assert!(rel(direct, three) < 1e-12);
        let inv = poisson_kernel_threeterm(&pt.inverted(), &jp, &ctx).unwrap();
        assert!(rel(three, inv) < 1e-12);
        let sw = poisson_kernel_threeterm(&pt.swapped(), &jp, &ctx).unwrap();
        assert!(rel(three, sw) < 1e-12);
        let printed = poisson_kernel_threeterm_as_printed(&pt, &jp, &ctx).unwrap();
        assert!(rel(direct, printed) > 1e-6);
    }

    #[test]
    fn kernel_small_t() {
        let ctx = QContext::new(0.5).unwrap();
        let jp = JacobiParams::new(0.3, 0.8);
        let pt = KernelPoint::new(cis(0.8), cis(1.3), 0.0).unwrap();
        assert_eq!(poisson_kernel_series(&pt, &jp, &ctx, 50).unwrap().re.to_f64(), 1.0);
        let pt = KernelPoint::new(cis(0.8), cis(1.3), 1e-6).unwrap();
        assert!((poisson_kernel_threeterm(&pt, &jp, &ctx).unwrap() - 1.0).norm() < 1e-4);
    }

    #[test]
    fn w_equals_a_gives_generating_function() {
        let ctx = QContext::new(0.5).unwrap();
        let jp = JacobiParams::new(0.3, 0.8);
        let a = ctx.pow(jp.alpha / 2.0 + 0.25);
        let pt = KernelPoint::new(cis(0.8), a, 0.4).unwrap();
        let k = poisson_kernel_terms(&pt, &jp, &ctx, 20).unwrap();
        let g = genfun_wa_terms(&UnitArgument::new(pt.z).unwrap(), pt.t / ctx.pow(jp.alpha + 0.5), &jp, &ctx, 20).unwrap();
        for n in 0..20 {
            assert!(rel(k[n], g[n]) < 1e-13, "n={n}");
        }
    }

    #[test]
    fn generating_functions() {
        let arg = UnitArgument::from_angle(1.0);
        let ctx = QContext::new(0.5).unwrap();
        let t = re(0.3);
        for jp in [JacobiParams::new(0.4, 1.1), JacobiParams::new(0.4, 0.4)] {
            let l = genfun_wa(&arg, t, &jp, &ctx, WaSide::LhsSeries).unwrap();
            let r = genfun_wa(&arg, t, &jp, &ctx, WaSide::Rhs8W7).unwrap();
            assert!(rel(l, r) < 1e-14);
        }
        let ctx = QContext::new(0.4).unwrap();
        let arg = UnitArgument::from_angle(0.9);
        let jp = JacobiParams::new(0.6, 0.2);
        let l = genfun_zd(&arg, re(0.35), &jp, &ctx, ZdSide::LhsSeries).unwrap();
        let r = genfun_zd(&arg, re(0.35), &jp, &ctx, ZdSide::RhsTwo5Phi4).unwrap();
        assert!(rel(l, r) < 1e-13);
    }

    #[test]
    fn rogers_generating_functions() {
        let ctx = QContext::new(0.4).unwrap();
        let arg = UnitArgument::from_angle(0.7);
        let b = ctx.pow(re(1.0));
        let l = rogers_genfun(&arg, re(0.3), b, &ctx, Side::Lhs).unwrap();
        assert!(rel(l, rogers_genfun(&arg, re(0.3), b, &ctx, Side::Rhs).unwrap()) < 1e-14);
        let l = rogers_genfun(&arg, re(0.3), re(1e-8), &ctx, Side::Lhs).unwrap();
        assert!(rel(l, rogers_genfun(&arg, re(0.3), re(1e-8), &ctx, Side::Rhs).unwrap()) < 1e-14);
        let ctx = QContext::new(0.5).unwrap();
        let arg = UnitArgument::from_angle(1.2);
        let l = rogers_genfun2(&arg, re(0.25), re(0.3), &ctx, Side::Lhs).unwrap();
        let r = rogers_genfun2(&arg, re(0.25), re(0.3), &ctx, Side::Rhs).unwrap();
        assert!(rel(l, r) < 1e-13);
    }

    #[test]
    fn well_poised_transform() {
        let ctx = QContext::new(0.5).unwrap();
        let (a, b, z) = (re(0.2), re(0.5), re(0.3));
        let v = wp_3phi2_transform(a, b, z, &ctx, Wp32Side::Phi32).unwrap();
        for side in [Wp32Side::Two4Phi3, Wp32Side::W87] {
            assert!(rel(v, wp_3phi2_transform(a, b, z, &ctx, side).unwrap()) < 1e-14);
        }
        assert_eq!(wp_3phi2_transform(a, b, re(0.0), &ctx, Wp32Side::Phi32).unwrap().re.to_f64(), 1.0);
    }
}
