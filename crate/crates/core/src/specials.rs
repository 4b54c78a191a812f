//! Specializations of continuous q-Jacobi polynomials.
//!
//! At the arguments `x = (z_m + 1/z_m)/2` with `z_m` on one of the four
//! parameter lattices, `P_n^{(alpha,beta)}` is also a degree-`m` Askey–Wilson
//! polynomial and a q-Racah polynomial in either degree. The same holds at
//! `x_m^{+-} = +-(q^{1/4+m/2} + q^{-1/4-m/2})/2` with base `q^{1/2}`.
//!
//! Every side is built as an exact-input term, so cancellation inside the
//! balanced series never limits the accuracy.

use serde::{Deserialize, Serialize};

use crate::awpolys::{aw_p_term, q_racah_term};
use crate::ctsqjacobi::{ctsq_jacobi_term, JacobiParams, Representation};
use crate::error::{Error, Result};
use crate::exact::{eval, q, Base, Env, Lin, Mono, Phi, Term, ALPHA, BETA};
use crate::qcore::{ensure_finite, re, Complex, QContext};

/// Which lattice `z_m` lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecializationKind {
    /// `z_m = q^{alpha/2+1/4+m}`
    SP1,
    /// `z_m = q^{alpha/2+3/4+m}`
    SP2,
    /// `z_m = -q^{beta/2+1/4+m}`
    SP3,
    /// `z_m = -q^{beta/2+3/4+m}`
    SP4,
}

impl SpecializationKind {
    pub const ALL: [SpecializationKind; 4] =
        [SpecializationKind::SP1, SpecializationKind::SP2, SpecializationKind::SP3, SpecializationKind::SP4];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegreeSide {
    /// `R_n` evaluated on the lattice point `m`.
    NSide,
    /// `R_m` evaluated on the lattice point `n`.
    MSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn mono(self) -> Mono {
        match self {
            Sign::Plus => Mono::ONE,
            Sign::Minus => -Mono::ONE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XmSide {
    /// The polynomial itself at `x_m^{+-}`.
    Direct,
    /// Degree-`n` Askey–Wilson form in base `q^{1/2}`.
    AwN,
    /// Degree-`m` Askey–Wilson form in base `q^{1/2}`.
    AwM,
}

/// Arguments with closed-form values of the base-`q^2` polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadPoint {
    /// `z = q^{1/2}`
    PlusHalf,
    /// `z = -q^{1/2}`
    MinusHalf,
    /// `z = q^{alpha+1/2}`
    AtAlpha,
    /// `z = -q^{beta+1/2}`
    AtBeta,
}

impl QuadPoint {
    pub const ALL: [QuadPoint; 4] = [QuadPoint::PlusHalf, QuadPoint::MinusHalf, QuadPoint::AtAlpha, QuadPoint::AtBeta];
}

/// Which exponent is pinned to `+-1/2` in the q-Racah self-dualities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfCase {
    BetaMinusHalf,
    BetaPlusHalf,
    AlphaMinusHalf,
    AlphaPlusHalf,
}

impl HalfCase {
    pub const ALL: [HalfCase; 4] =
        [HalfCase::BetaMinusHalf, HalfCase::BetaPlusHalf, HalfCase::AlphaMinusHalf, HalfCase::AlphaPlusHalf];
}

fn env(jp: &JacobiParams, ctx: &QContext) -> Env {
    Env::new(ctx.q).with_exponents(jp.alpha, jp.beta)
}

fn run(t: Term, e: &Env, what: &'static str) -> Result<Complex> {
    ensure_finite(eval(&[t], e)?, what)
}

/// Folds a series-free prefactor into `t`.
fn prefixed(pre: Term, mut t: Term) -> Term {
    debug_assert!(pre.phi.is_none());
    t.scalar *= pre.scalar;
    t.coef = t.coef * pre.coef;
    t.poch.extend(pre.poch);
    t
}

fn s() -> Lin {
    ALPHA + BETA
}

fn q1() -> Mono {
    q(1.0)
}

/// `z_m` for `kind`.
pub fn lattice_point(kind: SpecializationKind, m: usize) -> Mono {
    let mf = m as f64;
    match kind {
        SpecializationKind::SP1 => q(ALPHA / 2.0 + 0.25 + mf),
        SpecializationKind::SP2 => q(ALPHA / 2.0 + 0.75 + mf),
        SpecializationKind::SP3 => -q(BETA / 2.0 + 0.25 + mf),
        SpecializationKind::SP4 => -q(BETA / 2.0 + 0.75 + mf),
    }
}

/// The value at `m = 0`, which is also the degree-`n` prefactor of every form.
fn special_term(n: usize, kind: SpecializationKind) -> Term {
    let (al, be, s) = (ALPHA, BETA, s());
    let ni = n as i32;
    let t = Term::new();
    match kind {
        SpecializationKind::SP1 => t.ratio(&[q(al + 1.0)], &[q1()], q1(), n),
        SpecializationKind::SP2 => t
            .times(q(-(n as f64) / 2.0))
            .ratio(&[q(al + 1.0), -q((s + 3.0) / 2.0)], &[q1(), -q((s + 1.0) / 2.0)], q1(), n),
        SpecializationKind::SP3 => t.times((-q((al - be) / 2.0)).pow(ni)).ratio(&[q(be + 1.0)], &[q1()], q1(), n),
        SpecializationKind::SP4 => t
            .times((-q((al - be - 1.0) / 2.0)).pow(ni))
            .ratio(&[q(be + 1.0), -q((s + 3.0) / 2.0)], &[q1(), -q((s + 1.0) / 2.0)], q1(), n),
    }
}

/// Closed-form `P_n^{(alpha,beta)}` at `z_0` of `kind`.
pub fn special_value(n: usize, kind: SpecializationKind, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    run(special_term(n, kind), &env(jp, ctx), "special value")
}

/// `P_n^{(alpha,beta)}((z_m + 1/z_m)/2 | q)` through the chosen representation.
pub fn specialized_jacobi(
    n: usize,
    m: usize,
    kind: SpecializationKind,
    jp: &JacobiParams,
    ctx: &QContext,
    rep: Representation,
) -> Result<Complex> {
    let mut z = lattice_point(kind, m);
    if let Representation::D3 { inverted: true, .. } = rep {
        z = z.inv();
    }
    run(ctsq_jacobi_term(n, rep, z, Base(1.0)), &env(jp, ctx), "continuous q-Jacobi polynomial")
}

/// Degree-`m` Askey–Wilson form of the specialized polynomial.
pub fn specialization_aw_m(n: usize, m: usize, kind: SpecializationKind, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    let (al, be, s) = (ALPHA, BETA, s());
    let (first, lower_m, second, fourth) = match kind {
        SpecializationKind::SP1 => (al, [-q((s + 1.0) / 2.0), -q((s + 2.0) / 2.0)], (al - be + 1.0) / 2.0, -Mono::ONE),
        SpecializationKind::SP2 => (al, [-q((s + 2.0) / 2.0), -q((s + 3.0) / 2.0)], (al - be + 1.0) / 2.0, -q1()),
        SpecializationKind::SP3 => (be, [-q((s + 1.0) / 2.0), -q((s + 2.0) / 2.0)], (be - al + 1.0) / 2.0, -Mono::ONE),
        SpecializationKind::SP4 => (be, [-q((s + 2.0) / 2.0), -q((s + 3.0) / 2.0)], (be - al + 1.0) / 2.0, -q1()),
    };
    let params = [q((s + 1.0) / 2.0), q(second), -q(0.5), fourth];
    let pre = special_term(n, kind)
        .times(q((s + 1.0) / 2.0 * m as f64))
        .ratio(&[], &[q(first + 1.0), lower_m[0], lower_m[1]], q1(), m);
    let t = prefixed(pre, aw_p_term(m, params, q((s + 1.0) / 2.0 + n as f64), Base(1.0)));
    run(t, &env(jp, ctx), "Askey-Wilson specialization")
}

/// The balanced `4phi3` that links the specialized polynomial to both right-hand sides.
pub fn specialization_4phi3(n: usize, m: usize, kind: SpecializationKind, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    let (al, be, s) = (ALPHA, BETA, s());
    let (nf, mf) = (n as f64, m as f64);
    let (top, den) = match kind {
        SpecializationKind::SP1 => (al + 0.5, [q(al + 1.0), -q((s + 1.0) / 2.0), -q((s + 2.0) / 2.0)]),
        SpecializationKind::SP2 => (al + 1.5, [q(al + 1.0), -q((s + 2.0) / 2.0), -q((s + 3.0) / 2.0)]),
        SpecializationKind::SP3 => (be + 0.5, [q(be + 1.0), -q((s + 1.0) / 2.0), -q((s + 2.0) / 2.0)]),
        SpecializationKind::SP4 => (be + 1.5, [q(be + 1.0), -q((s + 2.0) / 2.0), -q((s + 3.0) / 2.0)]),
    };
    let phi = Phi::at_base(vec![q(-nf), q(s + 1.0 + nf), q(-mf), q(top + mf)], den.to_vec(), q1());
    run(prefixed(special_term(n, kind), Term::new().series(phi)), &env(jp, ctx), "specialization 4phi3")
}

/// q-Racah parameters `(alpha, beta, gamma, delta)` of the degree-`n` side.
fn racah_params(kind: SpecializationKind, printed: bool) -> [Mono; 4] {
    let (al, be, s) = (ALPHA, BETA, s());
    match kind {
        SpecializationKind::SP1 => [q(al), q(be), -q(s / 2.0), -q((al - be - 1.0) / 2.0)],
        SpecializationKind::SP2 => [q(al), q(be), -q((s + 1.0) / 2.0), -q((al - be) / 2.0)],
        SpecializationKind::SP3 if printed => [q(be), q(al), -q((be - al - 1.0) / 2.0), -q(s / 2.0)],
        SpecializationKind::SP3 => [q(be), q(al), -q(s / 2.0), -q((be - al - 1.0) / 2.0)],
        SpecializationKind::SP4 => [q(be), q(al), -q((s + 1.0) / 2.0), -q((be - al) / 2.0)],
    }
}

fn racah_form(n: usize, m: usize, kind: SpecializationKind, side: DegreeSide, printed: bool) -> Term {
    let [a, b, g, d] = racah_params(kind, printed && side == DegreeSide::NSide);
    let series = match side {
        DegreeSide::NSide => q_racah_term(n, m, [a, b, g, d], Base(1.0)),
        DegreeSide::MSide if printed && kind == SpecializationKind::SP4 => q_racah_term(m, n, [g, -Mono::ONE, a, b], Base(1.0)),
        DegreeSide::MSide => q_racah_term(m, n, [g, d, a, b], Base(1.0)),
    };
    prefixed(special_term(n, kind), series)
}

/// q-Racah form of the specialized polynomial, degree `n` or degree `m`.
pub fn specialization_qracah(
    n: usize,
    m: usize,
    kind: SpecializationKind,
    jp: &JacobiParams,
    ctx: &QContext,
    side: DegreeSide,
) -> Result<Complex> {
    run(racah_form(n, m, kind, side, false), &env(jp, ctx), "q-Racah specialization")
}

/// The q-Racah forms with the parameters exactly as printed in the source.
///
/// They differ from [`specialization_qracah`] for `SP3` on the `n` side
/// (`gamma` and `delta` exchanged) and `SP4` on the `m` side (`delta = -1`).
/// Neither printed variant is an identity.
pub fn specialization_qracah_as_printed(
    n: usize,
    m: usize,
    kind: SpecializationKind,
    jp: &JacobiParams,
    ctx: &QContext,
    side: DegreeSide,
) -> Result<Complex> {
    run(racah_form(n, m, kind, side, true), &env(jp, ctx), "q-Racah specialization")
}

fn half_env(case: HalfCase, free: Complex, ctx: &QContext) -> (Env, SpecializationKind) {
    let (jp, kind) = match case {
        HalfCase::BetaMinusHalf => (JacobiParams::new(free, re(-0.5)), SpecializationKind::SP1),
        HalfCase::BetaPlusHalf => (JacobiParams::new(free, re(0.5)), SpecializationKind::SP2),
        HalfCase::AlphaMinusHalf => (JacobiParams::new(re(-0.5), free), SpecializationKind::SP3),
        HalfCase::AlphaPlusHalf => (JacobiParams::new(re(0.5), free), SpecializationKind::SP4),
    };
    (env(&jp, ctx), kind)
}

/// Self-duality `R_n(mu(m); P) = R_m(mu(n); P)` when one exponent is `+-1/2`.
///
/// `free` is the exponent that is not pinned. Returns `(R_n, R_m)`.
pub fn half_duality(n: usize, m: usize, case: HalfCase, free: Complex, ctx: &QContext) -> Result<(Complex, Complex)> {
    let (e, kind) = half_env(case, free, ctx);
    let p = racah_params(kind, false);
    let a = run(q_racah_term(n, m, p, Base(1.0)), &e, "q-Racah polynomial")?;
    let b = run(q_racah_term(m, n, p, Base(1.0)), &e, "q-Racah polynomial")?;
    Ok((a, b))
}

/// The `beta = -1/2` self-duality read literally, with
/// `(gamma, delta) = (-q^{alpha/2+1/4}, -q^{alpha/2-1/4})`. Not an identity.
pub fn half_duality_as_printed(n: usize, m: usize, alpha: Complex, ctx: &QContext) -> Result<(Complex, Complex)> {
    let (e, _) = half_env(HalfCase::BetaMinusHalf, alpha, ctx);
    let p = [q(ALPHA), q(-0.5), -q(ALPHA / 2.0 + 0.25), -q(ALPHA / 2.0 - 0.25)];
    let a = run(q_racah_term(n, m, p, Base(1.0)), &e, "q-Racah polynomial")?;
    let b = run(q_racah_term(m, n, p, Base(1.0)), &e, "q-Racah polynomial")?;
    Ok((a, b))
}

const HALF: Base = Base(0.5);

/// `x_m^{+-}` as a monomial in `z`.
fn xm_point(m: usize, sign: Sign) -> Mono {
    sign.mono() * q(0.25 + m as f64 / 2.0)
}

fn xm_aw_n(n: usize, m: usize, sign: Sign, printed: bool) -> Term {
    let sg = if printed { sign.mono() } else { Mono::ONE };
    let (al, be, s) = (ALPHA, BETA, s());
    let p = HALF.mono();
    let lead = sg * q(al / 2.0 + 0.25);
    let params = [q(0.25), -q(0.25), lead, -sg * q(be / 2.0 + 0.25)];
    aw_p_term(n, params, xm_point(m, sign), HALF)
        .times(lead.pow(n as i32))
        .ratio(&[], &[p, -p, -q((s + 1.0) / 2.0)], p, n)
}

fn xm_aw_m(n: usize, m: usize, sign: Sign) -> Term {
    let sg = sign.mono();
    let (al, be, s) = (ALPHA, BETA, s());
    let p = HALF.mono();
    let (up_a, up_b) = (sg * q((al + 1.0) / 2.0), -sg * q((be + 1.0) / 2.0));
    let pre = Term::new()
        .times((sg * q(al / 2.0)).pow(n as i32))
        .times(q((s + 1.0) / 4.0 * m as f64))
        .ratio(&[up_a, up_b], &[p, -q((s + 1.0) / 2.0)], p, n)
        .ratio(&[], &[-p, up_a, up_b], p, m);
    let params = [q((s + 1.0) / 4.0), -q((-s + 1.0) / 4.0), sg * q((al - be + 1.0) / 4.0), -sg * q((be - al + 1.0) / 4.0)];
    prefixed(pre, aw_p_term(m, params, q((s + 1.0 + 2.0 * n as f64) / 4.0), HALF))
}

/// `P_n^{(alpha,beta)}(x_m^{+-} | q)` by one of three evaluation paths.
pub fn xm_special(n: usize, m: usize, sign: Sign, jp: &JacobiParams, ctx: &QContext, side: XmSide) -> Result<Complex> {
    let t = match side {
        XmSide::Direct => ctsq_jacobi_term(n, Representation::InterAw, xm_point(m, sign), Base(1.0)),
        XmSide::AwN => xm_aw_n(n, m, sign, false),
        XmSide::AwM => xm_aw_m(n, m, sign),
    };
    run(t, &env(jp, ctx), "x_m special value")
}

/// The degree-`n` form with the sign-dependent parameter set as printed.
/// Correct for `Sign::Plus` only.
pub fn xm_special_aw_n_as_printed(n: usize, m: usize, sign: Sign, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    run(xm_aw_n(n, m, sign, true), &env(jp, ctx), "x_m special value")
}

/// Shared prefactor of the two q-Racah forms at `x_m^{+-}`.
fn xm_racah_pre(n: usize, sign: Sign) -> Term {
    let sg = sign.mono();
    let p = HALF.mono();
    let s = s();
    Term::new()
        .times((sg * q(ALPHA / 2.0)).pow(n as i32))
        .ratio(&[sg * q((ALPHA + 1.0) / 2.0), -sg * q((BETA + 1.0) / 2.0)], &[p, -q((s + 1.0) / 2.0)], p, n)
}

fn xm_racah(n: usize, m: usize, sign: Sign, side: DegreeSide) -> Term {
    let sg = sign.mono();
    let (a, b) = (sg * q(ALPHA / 2.0), sg * q(BETA / 2.0));
    let one = -Mono::ONE;
    let series = match side {
        DegreeSide::NSide => q_racah_term(n, m, [a, b, one, one], HALF),
        DegreeSide::MSide => q_racah_term(m, n, [one, one, a, b], HALF),
    };
    prefixed(xm_racah_pre(n, sign), series)
}

/// `P_n^{(alpha,beta)}(x_m^{+-} | q)` as a base-`q^{1/2}` q-Racah polynomial of degree `n` or `m`.
pub fn xm_special_qracah(n: usize, m: usize, sign: Sign, jp: &JacobiParams, ctx: &QContext, side: DegreeSide) -> Result<Complex> {
    run(xm_racah(n, m, sign, side), &env(jp, ctx), "x_m q-Racah form")
}

/// Both q-Racah forms with `alpha = -N-1` (`Sign::Plus`) or `beta = -N-1`
/// (`Sign::Minus`); `free` is the other exponent. Returns `(R_n form, R_m form)`.
pub fn racah_duality_special(
    n: usize,
    m: usize,
    sign: Sign,
    n_trunc: usize,
    free: Complex,
    ctx: &QContext,
) -> Result<(Complex, Complex)> {
    if n > n_trunc || m > n_trunc {
        return Err(Error::DomainError(format!("degrees ({n}, {m}) exceed N = {n_trunc}")));
    }
    let pinned = re(-(n_trunc as f64) - 1.0);
    let jp = match sign {
        Sign::Plus => JacobiParams::new(pinned, free),
        Sign::Minus => JacobiParams::new(free, pinned),
    };
    let e = env(&jp, ctx);
    let a = run(xm_racah(n, m, sign, DegreeSide::NSide), &e, "x_m q-Racah form")?;
    let b = run(xm_racah(n, m, sign, DegreeSide::MSide), &e, "x_m q-Racah form")?;
    Ok((a, b))
}

/// With `beta = -alpha`: `R_n(mu(m); A, 1/A, -1, -1 | q^{1/2}) = R_m(mu(n); same)`,
/// `A = +-q^{alpha/2}`. Returns both sides.
pub fn opposite_exponent_duality(n: usize, m: usize, sign: Sign, alpha: Complex, ctx: &QContext) -> Result<(Complex, Complex)> {
    let sg = sign.mono();
    let p = [sg * q(ALPHA / 2.0), sg * q(-ALPHA / 2.0), -Mono::ONE, -Mono::ONE];
    let e = env(&JacobiParams::new(alpha, -alpha), ctx);
    let a = run(q_racah_term(n, m, p, HALF), &e, "q-Racah polynomial")?;
    let b = run(q_racah_term(m, n, p, HALF), &e, "q-Racah polynomial")?;
    Ok((a, b))
}

/// Two-term closed form of `P_n^{(alpha,beta)}(x_1^{+-} | q)`.
pub fn xm_first_lattice_value(n: usize, sign: Sign, jp: &JacobiParams, ctx: &QContext) -> Result<Complex> {
    let sg = sign.mono();
    let p = HALF.mono();
    let pre = xm_racah_pre(n, sign);
    let correction = pre
        .clone()
        .scaled(-1.0)
        .ratio(&[p, q(-(n as f64) / 2.0), q((s() + n as f64 + 1.0) / 2.0)], &[], p, 1)
        .ratio(&[], &[sg * q((ALPHA + 1.0) / 2.0), -sg * q((BETA + 1.0) / 2.0)], p, 1);
    ensure_finite(eval(&[pre, correction], &env(jp, ctx))?, "x_1 special value")
}

fn quad_term(n: usize, which: QuadPoint) -> Term {
    let (al, be, s) = (ALPHA, BETA, s());
    let ni = n as i32;
    let t = Term::new();
    match which {
        QuadPoint::PlusHalf => t.times(q(al).pow(ni)).ratio(&[q(al + 1.0), -q(be + 1.0)], &[q1(), -q(s + 1.0)], q1(), n),
        QuadPoint::MinusHalf => t.times((-q(al)).pow(ni)).ratio(&[-q(al + 1.0), q(be + 1.0)], &[q1(), -q(s + 1.0)], q1(), n),
        QuadPoint::AtAlpha => t.ratio(&[q(al + 1.0), -q(al + 1.0)], &[q1(), -q1()], q1(), n),
        QuadPoint::AtBeta => t.times((-q(al - be)).pow(ni)).ratio(&[q(be + 1.0), -q(be + 1.0)], &[q1(), -q1()], q1(), n),
    }
}

/// `z` of a [`QuadPoint`], in the root base `q`.
pub fn quad_point(which: QuadPoint) -> Mono {
    match which {
        QuadPoint::PlusHalf => q(0.5),
        QuadPoint::MinusHalf => -q(0.5),
        QuadPoint::AtAlpha => q(ALPHA + 0.5),
        QuadPoint::AtBeta => -q(BETA + 0.5),
    }
}

/// Closed form of `P_n^{(alpha,beta)}(x | q^2)` at the four points of [`QuadPoint`];
/// `ctx` carries `q`, not `q^2`.
pub fn quad_special_values(n: usize, jp: &JacobiParams, ctx: &QContext, which: QuadPoint) -> Result<Complex> {
    run(quad_term(n, which), &env(jp, ctx), "base q^2 special value")
}

/// `P_n^{(alpha,beta)}(x | q^2)` at a [`QuadPoint`], evaluated from the definition.
pub fn quad_point_polynomial(n: usize, jp: &JacobiParams, ctx: &QContext, which: QuadPoint) -> Result<Complex> {
    run(ctsq_jacobi_term(n, Representation::InterAw, quad_point(which), Base(2.0)), &env(jp, ctx), "continuous q-Jacobi polynomial")
}
