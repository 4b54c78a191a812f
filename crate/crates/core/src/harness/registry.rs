use std::f64::consts::PI;

use super::{Domain, Draw, Evaluator, IdentityRecord, Range};
use crate::awpolys::{aw_p, aw_special_value, q_racah, AWParams, QRacahParams, TruncationCondition, UnitArgument};
use crate::ctsqjacobi::*;
use crate::error::{Error, Result};
use crate::kernels::*;
use crate::qcore::{pochhammer_ratio, qpochhammer, qpochhammer_inf, re, Complex, Order, ParamList, QContext};
use crate::quadrature::QuadratureSettings;
use crate::series::phi;
use crate::specials::*;

const TERMINATING: f64 = 1e-12;
const MIXED: f64 = 1e-11;
const ONE_INFINITE: f64 = 1e-9;
const KERNEL: f64 = 1e-8;

/// Cap on Poisson-kernel series length; the sums stop once settled.
const KERNEL_TERMS: usize = 4096;

impl IdentityRecord {
    fn new(id: &'static str, lhs: Evaluator, rhs: Evaluator, domain: Domain, default_tol: f64, notes: &'static str) -> Self {
        IdentityRecord { id, lhs, rhs, domain, default_tol, notes, report_only: false, reported_region: None }
    }

    fn report_only(mut self) -> Self {
        self.report_only = true;
        self
    }

    fn reported_where(mut self, f: fn(&Draw) -> bool) -> Self {
        self.reported_region = Some(f);
        self
    }
}

fn ctx(d: &Draw) -> Result<QContext> {
    QContext::new(d.get("q")?)
}

fn jp(d: &Draw) -> Result<JacobiParams> {
    Ok(JacobiParams::new(d.get("alpha")?, d.get("beta")?))
}

fn arg(d: &Draw) -> Result<UnitArgument> {
    Ok(UnitArgument::from_angle(d.get("theta")?))
}

fn kind(d: &Draw) -> Result<SpecializationKind> {
    SpecializationKind::ALL.get(d.index("kind")?).copied().ok_or_else(|| Error::BadParameter("kind must be 0..=3".into()))
}

fn sign(d: &Draw) -> Result<Sign> {
    Ok(if d.index("sign")? == 0 { Sign::Plus } else { Sign::Minus })
}

fn cis(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}

fn cplx(d: &Draw, name: &str) -> Result<Complex> {
    Ok(Complex::new(d.get(&format!("{name}_re"))?, d.get(&format!("{name}_im"))?))
}

/// Every `|1 - v q^k|`, `0 <= k < n`, stays away from zero.
fn clear_of_poles(vals: &[f64], q: f64, n: usize) -> bool {
    vals.iter().all(|&v| (0..n).all(|k| (1.0 - v * q.powi(k as i32)).abs() > 1e-3))
}

fn nm() -> Vec<(&'static str, Range)> {
    vec![("n", Range::Int(0, 5)), ("m", Range::Int(0, 5))]
}

fn jacobi_with(extra: Vec<(&'static str, Range)>) -> Domain {
    let mut d = Domain::jacobi();
    d.vars.extend(extra);
    d
}

/// Jacobi domain with `q` drawn as a square.
fn half_base(extra: Vec<(&'static str, Range)>) -> Domain {
    jacobi_with(extra).with("q", Range::Square(0.25, 0.95))
}

mod qcore_ids {
    use super::*;

    pub fn split_lhs(d: &Draw) -> Result<Complex> {
        qpochhammer_inf(cplx(d, "a")?, &ctx(d)?)
    }

    pub fn split_rhs(d: &Draw) -> Result<Complex> {
        let (c, a, n) = (ctx(d)?, cplx(d, "a")?, d.index("n")?);
        Ok(qpochhammer(a, &c, n) * qpochhammer_inf(a * c.q.powi(n as i32), &c)?)
    }

    pub fn binomial_lhs(d: &Draw) -> Result<Complex> {
        phi(ParamList::new().with(cplx(d, "a")?), ParamList::new(), &ctx(d)?, cplx(d, "z")?)
    }

    pub fn binomial_rhs(d: &Draw) -> Result<Complex> {
        let (c, a, z) = (ctx(d)?, cplx(d, "a")?, cplx(d, "z")?);
        pochhammer_ratio(&ParamList::new().with(a * z), &ParamList::new().with(z), &c, Order::Infinite)
    }

    fn abc(d: &Draw) -> Result<(Complex, Complex, Complex)> {
        Ok((re(d.get("a")?), re(d.get("b")?), re(d.get("c")?)))
    }

    pub fn saal_lhs(d: &Draw) -> Result<Complex> {
        let (c, n) = (ctx(d)?, d.index("n")?);
        let (a, b, cc) = abc(d)?;
        let num = ParamList::new().with(c.q.powi(-(n as i32))).with(a).with(b);
        let den = ParamList::new().with(cc).with(a * b * c.q.powi(1 - n as i32) / cc);
        phi(num, den, &c, c.q)
    }

    pub fn saal_rhs(d: &Draw) -> Result<Complex> {
        let (c, n) = (ctx(d)?, d.index("n")?);
        let (a, b, cc) = abc(d)?;
        pochhammer_ratio(
            &ParamList::new().with(cc / a).with(cc / b),
            &ParamList::new().with(cc).with(cc / (a * b)),
            &c,
            Order::Finite(n),
        )
    }

    pub fn saal_guard(d: &Draw) -> bool {
        let get = |k| d.get(k).unwrap_or(0.0);
        let (q, a, b, c, n) = (get("q"), get("a"), get("b"), get("c"), get("n") as usize);
        let lower = a * b * q.powi(1 - n as i32) / c;
        clear_of_poles(&[c, c / (a * b), lower], q, n.max(1))
    }
}

mod aw_ids {
    use super::*;

    fn params(d: &Draw) -> Result<AWParams> {
        Ok(AWParams::new(d.get("a")?, d.get("b")?, d.get("c")?, d.get("d")?))
    }

    pub fn special_lhs(d: &Draw) -> Result<Complex> {
        let p = params(d)?;
        aw_p(d.index("n")?, &UnitArgument::new(p.a)?, &p, &ctx(d)?)
    }

    pub fn special_rhs(d: &Draw) -> Result<Complex> {
        aw_special_value(d.index("n")?, &params(d)?, &ctx(d)?)
    }

    fn racah(d: &Draw) -> Result<(QRacahParams, QContext)> {
        let c = ctx(d)?;
        let big_n = d.index("N")?;
        let pin = c.q.powi(-(big_n as i32) - 1);
        let (a, b, g, dl) = (re(d.get("a")?), re(d.get("b")?), re(d.get("c")?), re(d.get("d")?));
        let (p, cond) = match d.index("cond")? {
            0 => (QRacahParams::new(pin, b, g, dl), TruncationCondition::Alpha),
            1 => (QRacahParams::new(a, b, g, pin / b), TruncationCondition::BetaDelta),
            _ => (QRacahParams::new(a, b, pin, dl), TruncationCondition::Gamma),
        };
        Ok((p.truncated(big_n, cond, &c)?, c))
    }

    pub fn duality_lhs(d: &Draw) -> Result<Complex> {
        let (p, c) = racah(d)?;
        q_racah(d.index("n")?, d.index("m")?, &p, &c)
    }

    pub fn duality_rhs(d: &Draw) -> Result<Complex> {
        let (p, c) = racah(d)?;
        q_racah(d.index("m")?, d.index("n")?, &p.dual(), &c)
    }

    pub fn nonzero(d: &Draw) -> bool {
        ["a", "b", "c", "d"].iter().all(|k| d.get(k).map_or(true, |v| v.abs() > 0.05))
    }
}

mod jacobi_ids {
    use super::*;

    pub fn inter_aw(d: &Draw) -> Result<Complex> {
        ctsq_jacobi(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?, Representation::InterAw)
    }

    pub fn chosen_rep(d: &Draw) -> Result<Complex> {
        let rep = Representation::ALL.get(d.index("rep")?).copied().ok_or_else(|| Error::BadParameter("rep must be 0..=20".into()))?;
        ctsq_jacobi(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?, rep)
    }

    pub fn restored_prefactor(d: &Draw) -> Result<Complex> {
        ctsq_jacobi_d2d_with_extra_prefactor(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn parity_lhs(d: &Draw) -> Result<Complex> {
        Ok(ctsq_parity_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.0)
    }

    pub fn parity_rhs(d: &Draw) -> Result<Complex> {
        Ok(ctsq_parity_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.1)
    }

    fn singh(d: &Draw, sqrt: bool) -> Result<(Complex, Complex)> {
        let (n, c) = (d.index("n")?, ctx(d)?);
        let (a, b, cc) = (re(d.get("a")?), re(d.get("b")?), re(d.get("c")?));
        if sqrt {
            singh_sqrt_sides(n, a, b, cc, &c)
        } else {
            singh_sides(n, a, b, cc, &c)
        }
    }

    pub fn singh_lhs(d: &Draw) -> Result<Complex> {
        Ok(singh(d, false)?.0)
    }

    pub fn singh_rhs(d: &Draw) -> Result<Complex> {
        Ok(singh(d, false)?.1)
    }

    pub fn singh_sqrt_lhs(d: &Draw) -> Result<Complex> {
        Ok(singh(d, true)?.0)
    }

    pub fn singh_sqrt_rhs(d: &Draw) -> Result<Complex> {
        Ok(singh(d, true)?.1)
    }

    pub fn quad_lhs(d: &Draw) -> Result<Complex> {
        Ok(quad_transform_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.0)
    }

    pub fn quad_rhs(d: &Draw) -> Result<Complex> {
        Ok(quad_transform_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.1)
    }

    pub fn base_two_lhs(d: &Draw) -> Result<Complex> {
        Ok(base_two_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.0)
    }

    pub fn base_two_rhs(d: &Draw) -> Result<Complex> {
        Ok(base_two_sides(d.index("n")?, &arg(d)?, &jp(d)?, &ctx(d)?)?.1)
    }

    /// `1 + I_{mn} / sqrt(h_m h_n)`; shifted by one so the off-diagonal target is not zero.
    pub fn ortho_integral(d: &Draw) -> Result<Complex> {
        let (m, n, j, c) = (d.index("m")?, d.index("n")?, jp(d)?, ctx(d)?);
        let quad = QuadratureSettings { tol: 1e-12, ..QuadratureSettings::default() };
        let i = orthogonality_integral(m, n, &j, &c, &quad)?;
        Ok(i / (norm_hn(m, &j, &c)? * norm_hn(n, &j, &c)?).sqrt() + 1.0)
    }

    pub fn ortho_expected(d: &Draw) -> Result<Complex> {
        Ok(re(if d.index("m")? == d.index("n")? { 2.0 } else { 1.0 }))
    }

    pub fn rogers_from_jacobi(d: &Draw) -> Result<Complex> {
        ctsq_ultraspherical(d.index("n")?, &arg(d)?, re(d.get("b")?), &ctx(d)?)
    }

    pub fn rogers_recurrence(d: &Draw) -> Result<Complex> {
        let n = d.index("n")?;
        Ok(rogers_sequence(n + 1, &arg(d)?, re(d.get("b")?), &ctx(d)?)?[n])
    }
}

mod special_ids {
    use super::*;

    fn nmk(d: &Draw) -> Result<(usize, usize, SpecializationKind, JacobiParams, QContext)> {
        Ok((d.index("n")?, d.index("m")?, kind(d)?, jp(d)?, ctx(d)?))
    }

    pub fn specialized(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialized_jacobi(n, m, k, &j, &c, Representation::InterAw)
    }

    pub fn closed_value(d: &Draw) -> Result<Complex> {
        special_value(d.index("n")?, kind(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn aw_m(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_aw_m(n, m, k, &j, &c)
    }

    pub fn bridge(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_4phi3(n, m, k, &j, &c)
    }

    pub fn racah_n(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_qracah(n, m, k, &j, &c, DegreeSide::NSide)
    }

    pub fn racah_m(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_qracah(n, m, k, &j, &c, DegreeSide::MSide)
    }

    pub fn racah_n_printed(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_qracah_as_printed(n, m, k, &j, &c, DegreeSide::NSide)
    }

    pub fn racah_m_printed(d: &Draw) -> Result<Complex> {
        let (n, m, k, j, c) = nmk(d)?;
        specialization_qracah_as_printed(n, m, k, &j, &c, DegreeSide::MSide)
    }

    fn half(d: &Draw) -> Result<(Complex, Complex)> {
        let case = HalfCase::ALL.get(d.index("case")?).copied().ok_or_else(|| Error::BadParameter("case must be 0..=3".into()))?;
        half_duality(d.index("n")?, d.index("m")?, case, re(d.get("free")?), &ctx(d)?)
    }

    pub fn half_lhs(d: &Draw) -> Result<Complex> {
        Ok(half(d)?.0)
    }

    pub fn half_rhs(d: &Draw) -> Result<Complex> {
        Ok(half(d)?.1)
    }

    fn half_printed(d: &Draw) -> Result<(Complex, Complex)> {
        half_duality_as_printed(d.index("n")?, d.index("m")?, re(d.get("alpha")?), &ctx(d)?)
    }

    pub fn half_printed_lhs(d: &Draw) -> Result<Complex> {
        Ok(half_printed(d)?.0)
    }

    pub fn half_printed_rhs(d: &Draw) -> Result<Complex> {
        Ok(half_printed(d)?.1)
    }

    fn xm(d: &Draw, side: XmSide) -> Result<Complex> {
        xm_special(d.index("n")?, d.index("m")?, sign(d)?, &jp(d)?, &ctx(d)?, side)
    }

    pub fn xm_direct(d: &Draw) -> Result<Complex> {
        xm(d, XmSide::Direct)
    }

    pub fn xm_aw_n(d: &Draw) -> Result<Complex> {
        xm(d, XmSide::AwN)
    }

    pub fn xm_aw_m(d: &Draw) -> Result<Complex> {
        xm(d, XmSide::AwM)
    }

    pub fn xm_aw_n_printed(d: &Draw) -> Result<Complex> {
        xm_special_aw_n_as_printed(d.index("n")?, d.index("m")?, sign(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn xm_racah_n(d: &Draw) -> Result<Complex> {
        xm_special_qracah(d.index("n")?, d.index("m")?, sign(d)?, &jp(d)?, &ctx(d)?, DegreeSide::NSide)
    }

    pub fn xm_racah_m(d: &Draw) -> Result<Complex> {
        xm_special_qracah(d.index("n")?, d.index("m")?, sign(d)?, &jp(d)?, &ctx(d)?, DegreeSide::MSide)
    }

    pub fn xm_first(d: &Draw) -> Result<Complex> {
        xm_first_lattice_value(d.index("n")?, sign(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn xm_first_direct(d: &Draw) -> Result<Complex> {
        xm_special(d.index("n")?, 1, sign(d)?, &jp(d)?, &ctx(d)?, XmSide::Direct)
    }

    fn which(d: &Draw) -> Result<QuadPoint> {
        QuadPoint::ALL.get(d.index("which")?).copied().ok_or_else(|| Error::BadParameter("which must be 0..=3".into()))
    }

    pub fn quad_closed(d: &Draw) -> Result<Complex> {
        quad_special_values(d.index("n")?, &jp(d)?, &ctx(d)?, which(d)?)
    }

    pub fn quad_poly(d: &Draw) -> Result<Complex> {
        quad_point_polynomial(d.index("n")?, &jp(d)?, &ctx(d)?, which(d)?)
    }

    fn pinned(d: &Draw) -> Result<(Complex, Complex)> {
        racah_duality_special(d.index("n")?, d.index("m")?, sign(d)?, d.index("N")?, re(d.get("free")?), &ctx(d)?)
    }

    pub fn pinned_n(d: &Draw) -> Result<Complex> {
        Ok(pinned(d)?.0)
    }

    pub fn pinned_m(d: &Draw) -> Result<Complex> {
        Ok(pinned(d)?.1)
    }

    fn opposite(d: &Draw) -> Result<(Complex, Complex)> {
        opposite_exponent_duality(d.index("n")?, d.index("m")?, sign(d)?, re(d.get("alpha")?), &ctx(d)?)
    }

    pub fn opposite_lhs(d: &Draw) -> Result<Complex> {
        Ok(opposite(d)?.0)
    }

    pub fn opposite_rhs(d: &Draw) -> Result<Complex> {
        Ok(opposite(d)?.1)
    }

    pub fn pinned_alpha(d: &Draw) -> f64 {
        pinned_exponent(d, 0)
    }

    pub fn pinned_beta(d: &Draw) -> f64 {
        pinned_exponent(d, 1)
    }

    fn pinned_exponent(d: &Draw, slot: usize) -> f64 {
        let (s, big_n, free) = (d.get("sign").unwrap_or(0.0) as usize, d.get("N").unwrap_or(1.0), d.get("free").unwrap_or(0.0));
        if s == slot {
            -big_n - 1.0
        } else {
            free
        }
    }
}

mod kernel_ids {
    use super::*;

    fn point(d: &Draw) -> Result<KernelPoint> {
        KernelPoint::new(cis(d.get("theta_z")?), cis(d.get("theta_w")?), d.get("t")?)
    }

    pub fn series(d: &Draw) -> Result<Complex> {
        poisson_kernel_series(&point(d)?, &jp(d)?, &ctx(d)?, KERNEL_TERMS)
    }

    pub fn aw_general(d: &Draw) -> Result<Complex> {
        let (j, c) = (jp(d)?, ctx(d)?);
        aw_poisson_series(&point(d)?, &j.aw_params(&c), &c, KERNEL_TERMS)
    }

    fn abc(d: &Draw) -> Result<(Complex, Complex, Complex)> {
        Ok((re(d.get("a")?), re(d.get("b")?), re(d.get("c")?)))
    }

    pub fn adbc_general(d: &Draw) -> Result<Complex> {
        let (a, b, c) = abc(d)?;
        aw_poisson_series(&point(d)?, &AWParams::new(a, b, c, b * c / a), &ctx(d)?, KERNEL_TERMS)
    }

    pub fn adbc_simplified(d: &Draw) -> Result<Complex> {
        let (a, b, c) = abc(d)?;
        aw_poisson_series_adbc(&point(d)?, a, b, c, &ctx(d)?, KERNEL_TERMS)
    }

    pub fn adbc_guard(d: &Draw) -> bool {
        let get = |k| d.get(k).unwrap_or(1.0);
        (get("b") * get("c") / get("a")).abs() < 0.9
    }

    pub fn threeterm(d: &Draw) -> Result<Complex> {
        poisson_kernel_threeterm(&point(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn threeterm_printed(d: &Draw) -> Result<Complex> {
        poisson_kernel_threeterm_as_printed(&point(d)?, &jp(d)?, &ctx(d)?)
    }

    pub fn small_t(d: &Draw) -> bool {
        d.get("t").is_ok_and(|t| t.abs() < 0.1)
    }

    /// The kernel with `w = q^{alpha/2+1/4}`.
    pub fn at_w_equals_a(d: &Draw) -> Result<Complex> {
        let (j, c) = (jp(d)?, ctx(d)?);
        let a = c.pow(j.alpha / 2.0 + 0.25);
        let pt = KernelPoint::new(cis(d.get("theta")?), a, d.get("t")?)?;
        poisson_kernel_series(&pt, &j, &c, KERNEL_TERMS)
    }

    /// `t = u q^{alpha+1/2}`, which keeps the reduced series inside its disc of convergence.
    pub fn t_scaled(d: &Draw) -> f64 {
        let get = |k| d.get(k).unwrap_or(0.0);
        get("u") * get("q").powf(get("alpha") + 0.5).min(1.0)
    }

    /// `t = u min(1, q^{-alpha-1/2})`, so the 8W7 argument `-q^{alpha+1/2} t` stays below 0.6.
    pub fn t_inside_8w7(d: &Draw) -> f64 {
        let get = |k| d.get(k).unwrap_or(0.0);
        get("u") * get("q").powf(-get("alpha") - 0.5).min(1.0)
    }

    pub fn wa_at_scaled_t(d: &Draw) -> Result<Complex> {
        let (j, c) = (jp(d)?, ctx(d)?);
        let t = re(d.get("t")?) / c.pow(j.alpha + 0.5);
        genfun_wa(&arg(d)?, t, &j, &c, WaSide::Rhs8W7)
    }

    fn t(d: &Draw) -> Result<Complex> {
        Ok(re(d.get("t")?))
    }

    pub fn wa_lhs(d: &Draw) -> Result<Complex> {
        genfun_wa(&arg(d)?, t(d)?, &jp(d)?, &ctx(d)?, WaSide::LhsSeries)
    }

    pub fn wa_rhs(d: &Draw) -> Result<Complex> {
        genfun_wa(&arg(d)?, t(d)?, &jp(d)?, &ctx(d)?, WaSide::Rhs8W7)
    }

    pub fn zd_lhs(d: &Draw) -> Result<Complex> {
        genfun_zd(&arg(d)?, t(d)?, &jp(d)?, &ctx(d)?, ZdSide::LhsSeries)
    }

    pub fn zd_rhs(d: &Draw) -> Result<Complex> {
        genfun_zd(&arg(d)?, t(d)?, &jp(d)?, &ctx(d)?, ZdSide::RhsTwo5Phi4)
    }

    fn rogers(d: &Draw, second: bool, side: Side) -> Result<Complex> {
        let (a, tt, b, c) = (arg(d)?, t(d)?, re(d.get("b")?), ctx(d)?);
        if second {
            rogers_genfun2(&a, tt, b, &c, side)
        } else {
            rogers_genfun(&a, tt, b, &c, side)
        }
    }

    pub fn rogers1_lhs(d: &Draw) -> Result<Complex> {
        rogers(d, false, Side::Lhs)
    }

    pub fn rogers1_rhs(d: &Draw) -> Result<Complex> {
        rogers(d, false, Side::Rhs)
    }

    pub fn rogers2_lhs(d: &Draw) -> Result<Complex> {
        rogers(d, true, Side::Lhs)
    }

    pub fn rogers2_rhs(d: &Draw) -> Result<Complex> {
        rogers(d, true, Side::Rhs)
    }

    pub fn t_clear_of_lattice(d: &Draw) -> bool {
        let (q, t) = (d.get("q").unwrap_or(0.5), d.get("t").unwrap_or(0.0).abs());
        (0..60).all(|k| (t / q.powi(k) - 1.0).abs() > 1e-3)
    }

    fn wp32(d: &Draw, side: Wp32Side) -> Result<Complex> {
        wp_3phi2_transform(re(d.get("a")?), re(d.get("b")?), cplx(d, "z")?, &ctx(d)?, side)
    }

    pub fn wp32_series(d: &Draw) -> Result<Complex> {
        wp32(d, Wp32Side::Phi32)
    }

    pub fn wp32_two(d: &Draw) -> Result<Complex> {
        wp32(d, Wp32Side::Two4Phi3)
    }

    pub fn wp32_w87(d: &Draw) -> Result<Complex> {
        wp32(d, Wp32Side::W87)
    }
}

/// All registered identities, sorted by id.
pub fn registry() -> Vec<IdentityRecord> {
    use aw_ids as aw;
    use jacobi_ids as jc;
    use kernel_ids as kr;
    use qcore_ids as qc;
    use special_ids as sp;
    use IdentityRecord as R;
    use Range::*;

    let unit = Uniform(-0.9, 0.9);
    let racah = Domain::new(vec![
        ("q", Uniform(0.05, 0.9)),
        ("N", Int(1, 5)),
        ("n", UpTo("N")),
        ("m", UpTo("N")),
        ("cond", Int(0, 2)),
        ("a", unit),
        ("b", unit),
        ("c", unit),
        ("d", unit),
    ])
    .guarded(aw::nonzero);
    let kernel_pt = vec![("theta_z", Uniform(0.05, PI - 0.05)), ("theta_w", Uniform(0.05, PI - 0.05))];
    let pinned = half_base(vec![
        ("sign", Int(0, 1)),
        ("N", Int(1, 5)),
        ("n", UpTo("N")),
        ("m", UpTo("N")),
        ("free", Uniform(-0.9, 3.0)),
        ("alpha", Pinned(sp::pinned_alpha)),
        ("beta", Pinned(sp::pinned_beta)),
    ]);

    let mut all = vec![
        R::new(
            "aw.special_value",
            aw::special_lhs,
            aw::special_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("n", Int(0, 8)),
                ("a", unit),
                ("b", unit),
                ("c", unit),
                ("d", unit),
            ])
            .guarded(aw::nonzero),
            TERMINATING,
            "Askey-Wilson polynomial at z = a equals (ab, ac, ad; q)_n / a^n",
        ),
        R::new(
            "duality.half",
            sp::half_lhs,
            sp::half_rhs,
            half_base(vec![("case", Int(0, 3)), ("free", Uniform(-0.9, 3.0)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            TERMINATING,
            "self-dual q-Racah polynomials when alpha or beta is +-1/2",
        ),
        R::new(
            "duality.half_printed",
            sp::half_printed_lhs,
            sp::half_printed_rhs,
            half_base(nm()),
            TERMINATING,
            "the +-1/2 self-duality with parameters -q^{alpha/2 +- 1/4} read literally; not an identity",
        )
        .report_only(),
        R::new(
            "duality.opposite",
            sp::opposite_lhs,
            sp::opposite_rhs,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            TERMINATING,
            "self-dual q-Racah polynomials R(A, 1/A, -1, -1 | q^{1/2}) arising when beta = -alpha",
        ),
        R::new(
            "duality.pinned",
            sp::pinned_n,
            sp::pinned_m,
            pinned.clone(),
            TERMINATING,
            "degree-n and degree-m q-Racah forms of P_n at x_m when alpha or beta is -N-1",
        ),
        R::new(
            "duality.qracah",
            aw::duality_lhs,
            aw::duality_rhs,
            racah,
            TERMINATING,
            "q-Racah duality R_n(mu(m); a, b, g, d) = R_m(mu(n); g, d, a, b) under each truncation condition",
        ),
        R::new(
            "genfun.wa",
            kr::wa_lhs,
            kr::wa_rhs,
            jacobi_with(vec![("u", Uniform(-0.6, 0.6)), ("t", Pinned(kr::t_inside_8w7))]),
            ONE_INFINITE,
            "generating function from the Poisson kernel at w = a, summed as an 8W7",
        ),
        R::new(
            "genfun.zd",
            kr::zd_lhs,
            kr::zd_rhs,
            jacobi_with(vec![("t", Uniform(-0.6, 0.6))]).guarded(kr::t_clear_of_lattice),
            ONE_INFINITE,
            "generating function from the Poisson kernel at z = d, as two 5phi4 series",
        ),
        R::new(
            "jacobi.def2d_prefactor_restored",
            jc::inter_aw,
            jc::restored_prefactor,
            jacobi_with(vec![("n", Int(2, 6))]),
            MIXED,
            "the z^n-prefactored 4phi3 representation with an extra q^{-n(n-1)/2}; not an identity",
        )
        .report_only(),
        R::new(
            "jacobi.orthogonality",
            jc::ortho_integral,
            jc::ortho_expected,
            Domain::jacobi()
                .with("q", Uniform(0.1, 0.8))
                .with("alpha", Uniform(-0.45, 2.5))
                .with("beta", Uniform(-0.45, 2.5))
                .with("n", Int(0, 5))
                .with("m", Int(0, 5)),
            KERNEL,
            "orthogonality and norm: 1 + int P_m P_n w / sqrt(h_m h_n) equals 1 + delta_mn",
        ),
        R::new(
            "jacobi.parity",
            jc::parity_lhs,
            jc::parity_rhs,
            jacobi_with(vec![("n", Int(0, 8))]),
            TERMINATING,
            "P_n^(a,b)(-x) = (-1)^n q^{n(a-b)/2} P_n^(b,a)(x)",
        ),
        R::new(
            "jacobi.quadratic",
            jc::quad_lhs,
            jc::quad_rhs,
            jacobi_with(vec![("n", Int(0, 8))]),
            TERMINATING,
            "r_n(x; +-q^{1/2}, q^{a+1/2}, -q^{b+1/2} | q) as a base q^2 Askey-Wilson polynomial",
        ),
        R::new(
            "jacobi.quadratic_base_two",
            jc::base_two_lhs,
            jc::base_two_rhs,
            jacobi_with(vec![("n", Int(0, 8))]),
            TERMINATING,
            "the same Askey-Wilson polynomial as a multiple of P_n^(a,b)(x | q^2)",
        ),
        R::new(
            "jacobi.representations",
            jc::inter_aw,
            jc::chosen_rep,
            jacobi_with(vec![("n", Int(0, 6)), ("rep", Int(1, 20))]),
            MIXED,
            "each of the 20 balanced 4phi3 representations agrees with the Askey-Wilson form",
        ),
        R::new(
            "jacobi.singh",
            jc::singh_lhs,
            jc::singh_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("n", Int(0, 8)),
                ("a", Uniform(0.05, 0.95)),
                ("b", Uniform(0.05, 0.95)),
                ("c", Uniform(0.05, 0.95)),
            ]),
            TERMINATING,
            "quadratic transformation of a balanced 4phi3 from base q^2 to base q",
        ),
        R::new(
            "jacobi.singh_sqrt",
            jc::singh_sqrt_lhs,
            jc::singh_sqrt_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("n", Int(0, 8)),
                ("a", Uniform(0.05, 0.95)),
                ("b", Uniform(0.05, 0.95)),
                ("c", Uniform(0.05, 0.95)),
            ]),
            TERMINATING,
            "the quadratic transformation written from base q to base q^{1/2}",
        ),
        R::new(
            "jacobi.ultraspherical",
            jc::rogers_from_jacobi,
            jc::rogers_recurrence,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("b", Uniform(0.05, 0.9)),
                ("theta", Uniform(0.05, PI - 0.05)),
                ("n", Int(0, 8)),
            ]),
            TERMINATING,
            "Rogers polynomials from the symmetric continuous q-Jacobi polynomials",
        ),
        R::new(
            "kernel.adbc",
            kr::adbc_general,
            kr::adbc_simplified,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("a", Uniform(0.2, 0.9)),
                ("b", unit),
                ("c", unit),
                ("t", Uniform(-0.6, 0.6)),
            ])
            .with("theta_z", kernel_pt[0].1)
            .with("theta_w", kernel_pt[1].1)
            .guarded(kr::adbc_guard),
            ONE_INFINITE,
            "Askey-Wilson Poisson kernel in its simplified form when ad = bc",
        ),
        R::new(
            "kernel.jacobi",
            kr::aw_general,
            kr::series,
            jacobi_with(kernel_pt.clone()).with("t", Uniform(-0.6, 0.6)),
            ONE_INFINITE,
            "continuous q-Jacobi Poisson kernel as the Askey-Wilson kernel at the Jacobi parameters",
        ),
        R::new(
            "kernel.threeterm",
            kr::series,
            kr::threeterm,
            jacobi_with(kernel_pt.clone()).with("t", Uniform(0.02, 0.6)),
            KERNEL,
            "symmetric Poisson kernel as three outer sums of 10W9 series; errors for t < 0.1 are reported",
        )
        .reported_where(kr::small_t),
        R::new(
            "kernel.threeterm_printed",
            kr::series,
            kr::threeterm_printed,
            jacobi_with(kernel_pt).with("t", Uniform(0.1, 0.6)),
            KERNEL,
            "three-term kernel with the factor t missing from the third 10W9; not an identity",
        )
        .report_only(),
        R::new(
            "kernel.w_equals_a",
            kr::at_w_equals_a,
            kr::wa_at_scaled_t,
            jacobi_with(vec![("u", Uniform(-0.6, 0.6)), ("t", Pinned(kr::t_scaled))]),
            ONE_INFINITE,
            "Poisson kernel at w = q^{a/2+1/4} equals the w = a generating function at t q^{-a-1/2}",
        ),
        R::new(
            "qcore.splitting",
            qc::split_lhs,
            qc::split_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("a_re", Uniform(-2.0, 2.0)),
                ("a_im", Uniform(-2.0, 2.0)),
                ("n", Int(0, 10)),
            ]),
            1e-13,
            "(a; q)_inf = (a; q)_n (a q^n; q)_inf",
        ),
        R::new(
            "rogers.first",
            kr::rogers1_lhs,
            kr::rogers1_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("b", unit),
                ("theta", Uniform(0.05, PI - 0.05)),
                ("t", Uniform(-0.6, 0.6)),
            ]),
            ONE_INFINITE,
            "sum (qb; q)_n / (b; q)_n t^n C_n(x; b | q) in closed product form",
        ),
        R::new(
            "rogers.second",
            kr::rogers2_lhs,
            kr::rogers2_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("b", unit),
                ("theta", Uniform(0.05, PI - 0.05)),
                ("t", Uniform(-0.6, 0.6)),
            ]),
            ONE_INFINITE,
            "sum (+-qb; q)_n / (+-b; q)_n t^n C_n(x; b | q) as an 8W7",
        ),
        R::new(
            "series.qbinomial",
            qc::binomial_lhs,
            qc::binomial_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("a_re", Uniform(-1.5, 1.5)),
                ("a_im", Uniform(-1.5, 1.5)),
                ("z_re", Uniform(-0.55, 0.55)),
                ("z_im", Uniform(-0.55, 0.55)),
            ]),
            TERMINATING,
            "1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf",
        ),
        R::new(
            "series.saalschutz",
            qc::saal_lhs,
            qc::saal_rhs,
            Domain::new(vec![
                ("q", Uniform(0.05, 0.9)),
                ("n", Int(0, 8)),
                ("a", unit),
                ("b", unit),
                ("c", unit),
            ])
            .guarded(qc::saal_guard),
            TERMINATING,
            "balanced terminating 3phi2 summation",
        ),
        R::new(
            "special.aw_m",
            sp::specialized,
            sp::aw_m,
            jacobi_with(vec![("kind", Int(0, 3)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "P_n at the m-th point above each special value as a degree-m Askey-Wilson polynomial",
        ),
        R::new(
            "special.bridge_4phi3",
            sp::specialized,
            sp::bridge,
            jacobi_with(vec![("kind", Int(0, 3)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "the same specialization as a balanced 4phi3 in the degree-m variable",
        ),
        R::new(
            "special.qracah_m",
            sp::specialized,
            sp::racah_m,
            jacobi_with(vec![("kind", Int(0, 3)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "the specialization as a degree-m q-Racah polynomial",
        ),
        R::new(
            "special.qracah_m_printed",
            sp::specialized,
            sp::racah_m_printed,
            jacobi_with(vec![("kind", Fixed(3.0)), ("n", Int(1, 5)), ("m", Int(1, 5))]),
            MIXED,
            "degree-m q-Racah form of the fourth specialization with delta = -1; not an identity",
        )
        .report_only(),
        R::new(
            "special.qracah_n",
            sp::specialized,
            sp::racah_n,
            jacobi_with(vec![("kind", Int(0, 3)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "the specialization as a degree-n q-Racah polynomial",
        ),
        R::new(
            "special.qracah_n_printed",
            sp::specialized,
            sp::racah_n_printed,
            jacobi_with(vec![("kind", Fixed(2.0)), ("n", Int(1, 5)), ("m", Int(1, 5))]),
            MIXED,
            "degree-n q-Racah form of the third specialization with gamma and delta exchanged; not an identity",
        )
        .report_only(),
        R::new(
            "special.quad_values",
            sp::quad_closed,
            sp::quad_poly,
            jacobi_with(vec![("which", Int(0, 3)), ("n", Int(0, 8))]),
            TERMINATING,
            "closed forms of P_n(x | q^2) at four points obtained from the quadratic transformation",
        ),
        R::new(
            "special.values",
            sp::specialized,
            sp::closed_value,
            jacobi_with(vec![("kind", Int(0, 3)), ("n", Int(0, 8)), ("m", Fixed(0.0))]),
            TERMINATING,
            "closed forms of P_n at the four special arguments",
        ),
        R::new(
            "special.xm_aw_m",
            sp::xm_direct,
            sp::xm_aw_m,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "P_n at x_m^{+-} as a degree-m Askey-Wilson polynomial",
        ),
        R::new(
            "special.xm_aw_n",
            sp::xm_direct,
            sp::xm_aw_n,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "P_n at x_m^{+-} as a degree-n Askey-Wilson polynomial with parameters +-q^{a/2+1/4}, -+q^{b/2+1/4}",
        ),
        R::new(
            "special.xm_aw_n_printed",
            sp::xm_direct,
            sp::xm_aw_n_printed,
            half_base(vec![("sign", Fixed(1.0)), ("n", Int(1, 5)), ("m", Int(1, 5))]),
            MIXED,
            "degree-n Askey-Wilson form at x_m^- with sign-flipped parameters; not an identity",
        )
        .report_only(),
        R::new(
            "special.xm_first",
            sp::xm_first_direct,
            sp::xm_first,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 8))]),
            TERMINATING,
            "two-term closed form of P_n at x_1^{+-}",
        ),
        R::new(
            "special.xm_qracah_m",
            sp::xm_direct,
            sp::xm_racah_m,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "P_n at x_m^{+-} as a base q^{1/2} degree-m q-Racah polynomial",
        ),
        R::new(
            "special.xm_qracah_n",
            sp::xm_direct,
            sp::xm_racah_n,
            half_base(vec![("sign", Int(0, 1)), ("n", Int(0, 5)), ("m", Int(0, 5))]),
            MIXED,
            "P_n at x_m^{+-} as a base q^{1/2} degree-n q-Racah polynomial",
        ),
        R::new(
            "special.xm_pinned",
            sp::xm_direct,
            sp::pinned_n,
            pinned,
            MIXED,
            "P_n at x_m with alpha or beta equal to -N-1 matches its finite q-Racah form",
        ),
        R::new(
            "transform.wp3phi2",
            kr::wp32_series,
            kr::wp32_two,
            wp_domain(),
            ONE_INFINITE,
            "well-poised 3phi2 as a sum of two 4phi3 series",
        ),
        R::new(
            "transform.wp3phi2_w87",
            kr::wp32_series,
            kr::wp32_w87,
            wp_domain(),
            ONE_INFINITE,
            "well-poised 3phi2 as a very-well-poised 8W7",
        ),
    ];
    all.sort_by_key(|r| r.id);
    all
}

fn wp_domain() -> Domain {
    Domain::new(vec![
        ("q", Range::Uniform(0.05, 0.9)),
        ("a", Range::Uniform(0.05, 0.9)),
        ("b", Range::Uniform(0.05, 0.9)),
        ("z_re", Range::Uniform(-0.5, 0.5)),
        ("z_im", Range::Uniform(-0.5, 0.5)),
    ])
}
