//! Askey–Wilson polynomials, their renormalized form, and q-Racah polynomials.
//!
//! ```text
//! p_n(x; a,b,c,d | q) = a^{-n} (ab, ac, ad; q)_n
//!                       4phi3(q^{-n}, q^{n-1}abcd, a z, a/z; ab, ac, ad; q, q),   x = (z + 1/z)/2
//! r_n(x; a,b,c,d | q) = a^n / (ab, ac, ad; q)_n  p_n(x; a,b,c,d | q)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{ensure_finite, pochhammer_ratio, re, Complex, Order, ParamList, QContext};
use crate::exact::{eval, var, Base, Env, Mono, Phi, Term};

/// Tolerance for recognising a parameter as `q^{-N-1}`.
const TRUNCATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AWParams {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl AWParams {
    pub fn new(a: impl Into<Complex>, b: impl Into<Complex>, c: impl Into<Complex>, d: impl Into<Complex>) -> Self {
        AWParams { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn as_array(&self) -> [Complex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(p: [Complex; 4]) -> Self {
        AWParams { a: p[0], b: p[1], c: p[2], d: p[3] }
    }

    /// Parameters with `a` and the `i`-th entry exchanged.
    pub fn leading(&self, i: usize) -> Self {
        let mut p = self.as_array();
        p.swap(0, i);
        Self::from_array(p)
    }

    pub fn abcd(&self) -> Complex {
        self.a * self.b * self.c * self.d
    }

    fn lower(&self) -> ParamList {
        ParamList::new().with(self.a * self.b).with(self.a * self.c).with(self.a * self.d)
    }
}

/// Argument `z` of a polynomial in `x = (z + 1/z)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitArgument {
    z: Complex,
}

impl UnitArgument {
    pub fn new(z: impl Into<Complex>) -> Result<Self> {
        let z = z.into();
        if z.norm() == 0.0 || !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::DomainError("argument z must be finite and nonzero".into()));
        }
        Ok(UnitArgument { z })
    }

    /// `z = e^{i theta}`, so `x = cos theta`.
    pub fn from_angle(theta: f64) -> Self {
        UnitArgument { z: Complex::from_polar(1.0, theta) }
    }

    pub fn z(&self) -> Complex {
        self.z
    }

    pub fn x(&self) -> Complex {
        (self.z + self.z.inv()) * 0.5
    }

    pub fn inverted(&self) -> Self {
        UnitArgument { z: self.z.inv() }
    }

    pub fn negated(&self) -> Self {
        UnitArgument { z: -self.z }
    }
}

/// `r_n(x; a,b,c,d | base)` as an exact-input term.
pub fn aw_r_term(n: usize, p: [Mono; 4], z: Mono, base: Base) -> Term {
    let [a, b, c, d] = p;
    let ni = n as i32;
    Term::new().series(Phi::at_base(
        vec![base.pow(-ni), base.pow(ni - 1) * a * b * c * d, a * z, a / z],
        vec![a * b, a * c, a * d],
        base.mono(),
    ))
}

/// `p_n(x; a,b,c,d | base)` as an exact-input term.
pub fn aw_p_term(n: usize, p: [Mono; 4], z: Mono, base: Base) -> Term {
    let [a, b, c, d] = p;
    aw_r_term(n, p, z, base).ratio(&[a * b, a * c, a * d], &[], base.mono(), n).times(a.pow(-(n as i32)))
}

fn aw_env(arg: &UnitArgument, p: &AWParams, ctx: &QContext) -> Env {
    let mut env = Env::new(ctx.q).with_var(4, arg.z());
    for (i, v) in p.as_array().into_iter().enumerate() {
        env = env.with_var(i, v);
    }
    env
}

const AW_VARS: [usize; 4] = [0, 1, 2, 3];

/// Askey–Wilson polynomial `p_n(x; a,b,c,d | q)`.
pub fn aw_p(n: usize, arg: &UnitArgument, p: &AWParams, ctx: &QContext) -> Result<Complex> {
    let t = aw_p_term(n, AW_VARS.map(var), var(4), Base(1.0));
    ensure_finite(eval(&[t], &aw_env(arg, p, ctx))?, "Askey-Wilson polynomial")
}

/// Renormalized Askey–Wilson polynomial `r_n`, the bare balanced `4phi3`.
pub fn aw_r(n: usize, arg: &UnitArgument, p: &AWParams, ctx: &QContext) -> Result<Complex> {
    let t = aw_r_term(n, AW_VARS.map(var), var(4), Base(1.0));
    ensure_finite(eval(&[t], &aw_env(arg, p, ctx))?, "Askey-Wilson polynomial")
}

/// `r_0 .. r_{count-1}` from the three-term recurrence
///
/// ```text
/// (a + 1/a - 2x) r_n = A_n r_{n+1} - (A_n + C_n) r_n + C_n r_{n-1}
/// ```
///
/// Stable for arguments on the orthogonality interval, where the explicit
/// `4phi3` loses digits once `q^{-n}` gets large.
pub fn aw_r_sequence(count: usize, arg: &UnitArgument, p: &AWParams, ctx: &QContext) -> Result<Vec<Complex>> {
    let one = re(1.0);
    let q = ctx.q;
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let abcd = p.abcd();
    let shift = a + a.inv() - arg.x() * 2.0;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    out.push(one);
    let mut prev = re(0.0);
    let mut qn = one;
    for n in 0..count.saturating_sub(1) {
        let qnm1 = qn / q;
        let big_a = (one - abcd * qnm1) * (one - a * b * qn) * (one - a * c * qn) * (one - a * d * qn)
            / (a * (one - abcd * qnm1 * qn) * (one - abcd * qn * qn));
        let big_c = a * (one - qn) * (one - b * c * qnm1) * (one - b * d * qnm1) * (one - c * d * qnm1)
            / ((one - abcd * qnm1 * qnm1) * (one - abcd * qnm1 * qn));
        if big_a.norm() == 0.0 {
            return Err(Error::ZeroDenominator { index: n + 1 });
        }
        let cur = out[n];
        let big_c = if n == 0 { re(0.0) } else { big_c };
        let next = ((big_a + big_c - shift) * cur - big_c * prev) / big_a;
        prev = cur;
        out.push(ensure_finite(next, "Askey-Wilson recurrence")?);
        qn *= q;
    }
    Ok(out)
}

/// Lattice point `mu(m) = q^{-m} + q^{m+1} gamma delta`.
pub fn mu(m: usize, gamma: Complex, delta: Complex, ctx: &QContext) -> Complex {
    ctx.q.powi(-(m as i32)) + ctx.q.powi(m as i32 + 1) * gamma * delta
}

/// Which parameter combination equals `q^{-N-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationCondition {
    Alpha,
    BetaDelta,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub n_max: usize,
    pub condition: TruncationCondition,
}

/// Parameters `(alpha, beta, gamma, delta)` of a q-Racah polynomial.
///
/// Without a truncation the same object describes the generic `4phi3` on the
/// `mu(m)` lattice, which is how the specialization formulas use it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QRacahParams {
    pub alpha: Complex,
    pub beta: Complex,
    pub gamma: Complex,
    pub delta: Complex,
    pub truncation: Option<Truncation>,
}

impl QRacahParams {
    pub fn new(alpha: impl Into<Complex>, beta: impl Into<Complex>, gamma: impl Into<Complex>, delta: impl Into<Complex>) -> Self {
        QRacahParams { alpha: alpha.into(), beta: beta.into(), gamma: gamma.into(), delta: delta.into(), truncation: None }
    }

    /// Attaches `N` and checks that exactly the tagged condition holds.
    pub fn truncated(mut self, n_max: usize, condition: TruncationCondition, ctx: &QContext) -> Result<Self> {
        let target = ctx.q.powi(-(n_max as i32) - 1);
        let hit = |v: Complex| (v / target - 1.0).norm() < TRUNCATION_TOL;
        let flags = [hit(self.alpha), hit(self.beta * self.delta), hit(self.gamma)];
        let want = match condition {
            TruncationCondition::Alpha => 0,
            TruncationCondition::BetaDelta => 1,
            TruncationCondition::Gamma => 2,
        };
        if !flags[want] || flags.iter().filter(|&&f| f).count() != 1 {
            return Err(Error::DomainError(format!(
                "q-Racah truncation {condition:?} with N = {n_max} does not hold exclusively"
            )));
        }
        self.truncation = Some(Truncation { n_max, condition });
        Ok(self)
    }

    /// Parameters of the dual polynomial: `(gamma, delta, alpha, beta)`.
    pub fn dual(&self) -> Self {
        QRacahParams { alpha: self.gamma, beta: self.delta, gamma: self.alpha, delta: self.beta, truncation: self.truncation }
    }

    pub fn mu(&self, m: usize, ctx: &QContext) -> Complex {
        mu(m, self.gamma, self.delta, ctx)
    }
}

/// `R_n(mu(m); alpha, beta, gamma, delta | q)`.
pub fn q_racah(n: usize, m: usize, p: &QRacahParams, ctx: &QContext) -> Result<Complex> {
    if let Some(t) = p.truncation {
        if n > t.n_max {
            return Err(Error::DomainError(format!("degree {n} exceeds N = {}", t.n_max)));
        }
    }
    let env = Env::new(ctx.q)
        .with_var(0, p.alpha)
        .with_var(1, p.beta)
        .with_var(2, p.gamma)
        .with_var(3, p.delta);
    ensure_finite(eval(&[q_racah_term(n, m, AW_VARS.map(var), Base(1.0))], &env)?, "q-Racah polynomial")
}

/// `R_n(mu(m); alpha, beta, gamma, delta | base)` as an exact-input term.
pub fn q_racah_term(n: usize, m: usize, p: [Mono; 4], base: Base) -> Term {
    let [al, be, ga, de] = p;
    let (ni, mi) = (n as i32, m as i32);
    let q1 = base.mono();
    Term::new().series(Phi::at_base(
        vec![base.pow(-ni), base.pow(ni + 1) * al * be, base.pow(-mi), base.pow(mi + 1) * ga * de],
        vec![q1 * al, q1 * be * de, q1 * ga],
        q1,
    ))
}

/// Recovers the lattice index `m` from a raw value `mu(m)`.
pub fn lattice_index(mu_value: Complex, gamma: Complex, delta: Complex, ctx: &QContext) -> Result<usize> {
    ctx.require_convergent()?;
    for m in 0..=ctx.max_terms {
        let v = mu(m, gamma, delta, ctx);
        if (v - mu_value).norm() <= 1e-10 * v.norm().max(mu_value.norm()) {
            return Ok(m);
        }
        if ctx.q.norm().powi(-(m as i32)) > 4.0 * (mu_value.norm() + (ctx.q * gamma * delta).norm()) + 4.0 {
            break;
        }
    }
    Err(Error::DomainError(format!("{mu_value} is not on the q-Racah lattice")))
}

/// `R_n` at a raw lattice value `mu`, for callers that carry `mu` instead of `m`.
pub fn q_racah_at(n: usize, mu_value: Complex, p: &QRacahParams, ctx: &QContext) -> Result<Complex> {
    let m = lattice_index(mu_value, p.gamma, p.delta, ctx)?;
    q_racah(n, m, p, ctx)
}

/// `(ab, ac, ad; q)_n / a^n`, the special value of `p_n` at `z = a`.
pub fn aw_special_value(n: usize, p: &AWParams, ctx: &QContext) -> Result<Complex> {
    let r = pochhammer_ratio(&p.lower(), &ParamList::new(), ctx, Order::Finite(n))?;
    ensure_finite(r / p.a.powi(n as i32), "Askey-Wilson special value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpochhammer;

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-30)
    }

    fn sample() -> (AWParams, QContext) {
        (AWParams::new(0.3, 0.2, 0.1, 0.4), QContext::new(0.5).unwrap())
    }

    #[test]
    fn degree_zero_is_one() {
        let (p, c) = sample();
        let arg = UnitArgument::from_angle(0.4);
        assert_eq!(aw_p(0, &arg, &p, &c).unwrap(), re(1.0));
        assert_eq!(aw_r(0, &arg, &p, &c).unwrap(), re(1.0));
    }

    #[test]
    fn brute_force_degree_two() {
        let (p, c) = sample();
        let q = 0.5f64;
        let z = Complex::from_polar(1.0, std::f64::consts::PI / 3.0);
        let arg = UnitArgument::new(z).unwrap();
        let (a, b, cc, d) = (0.3f64, 0.2, 0.1, 0.4);
        let abcd = a * b * cc * d;
        let mut s = re(0.0);
        for k in 0..=2usize {
            let num = qpochhammer(re(q.powi(-2)), &c, k)
                * qpochhammer(re(q * abcd), &c, k)
                * qpochhammer(z * a, &c, k)
                * qpochhammer(z.inv() * a, &c, k);
            let den = qpochhammer(re(a * b), &c, k)
                * qpochhammer(re(a * cc), &c, k)
                * qpochhammer(re(a * d), &c, k)
                * qpochhammer(re(q), &c, k);
            s += num / den * q.powi(k as i32);
        }
        let oracle = s * qpochhammer(re(a * b), &c, 2) * qpochhammer(re(a * cc), &c, 2) * qpochhammer(re(a * d), &c, 2)
            / (a * a);
        let v = aw_p(2, &arg, &p, &c).unwrap();
        assert!(rel(v, oracle) < 1e-12, "{v} {oracle}");
    }

    #[test]
    fn special_values_at_each_parameter() {
        let (p, c) = sample();
        for i in 0..4 {
            let lead = p.leading(i);
            let arg = UnitArgument::new(lead.a).unwrap();
            for n in 0..6 {
                let v = aw_p(n, &arg, &p, &c).unwrap();
                let sv = aw_special_value(n, &lead, &c).unwrap();
                assert!(rel(v, sv) < 1e-11, "i={i} n={n}: {v} vs {sv}");
                let r = aw_r(n, &UnitArgument::new(p.a).unwrap(), &p, &c).unwrap();
                assert!(rel(r, re(1.0)) < 1e-12);
            }
        }
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        let (p, c) = sample();
        let arg = UnitArgument::from_angle(1.1);
        let seq = aw_r_sequence(12, &arg, &p, &c).unwrap();
        for (n, v) in seq.iter().enumerate() {
            let direct = aw_r(n, &arg, &p, &c).unwrap();
            assert!(rel(*v, direct) < 1e-12, "n={n}: {v} {direct}");
        }
    }

    #[test]
    fn mu_examples() {
        let c = QContext::new(0.5).unwrap();
        let (g, d) = (re(0.3), re(0.7));
        assert!(rel(mu(0, g, d, &c), re(1.0) + g * d * 0.5) < 1e-15);
        let v = mu(3, re(2.0), re(1.0), &c);
        assert!(rel(v, re(8.0 + 0.125)) < 1e-15);
        assert!(rel(mu(2, re(-1.0), re(-1.0), &c), re(4.125)) < 1e-15);
    }

    #[test]
    fn q_racah_trivial_cases_and_truncation() {
        let c = QContext::new(0.5).unwrap();
        let p = QRacahParams::new(0.5f64.powi(-5), 0.3, 0.2, 0.7)
            .truncated(4, TruncationCondition::Alpha, &c)
            .unwrap();
        assert_eq!(q_racah(0, 3, &p, &c).unwrap(), re(1.0));
        assert_eq!(q_racah(3, 0, &p, &c).unwrap(), re(1.0));
        assert!(matches!(q_racah(5, 1, &p, &c), Err(Error::DomainError(_))));
        assert!(QRacahParams::new(0.3, 0.3, 0.2, 0.7).truncated(4, TruncationCondition::Alpha, &c).is_err());
    }

    #[test]
    fn q_racah_duality_box() {
        let c = QContext::new(0.5).unwrap();
        let p = QRacahParams::new(0.5f64.powi(-5), 0.3, 0.2, 0.7)
            .truncated(4, TruncationCondition::Alpha, &c)
            .unwrap();
        for n in 0..=4 {
            for m in 0..=4 {
                let l = q_racah(n, m, &p, &c).unwrap();
                let r = q_racah(m, n, &p.dual(), &c).unwrap();
                assert!(rel(l, r) < 1e-13, "n={n} m={m}: {l} {r}");
            }
        }
    }

    #[test]
    fn raw_lattice_entry() {
        let c = QContext::new(0.5).unwrap();
        let p = QRacahParams::new(0.2, 0.3, 0.4, 0.6);
        let m = 3;
        let via_mu = q_racah_at(2, p.mu(m, &c), &p, &c).unwrap();
        assert_eq!(via_mu, q_racah(2, m, &p, &c).unwrap());
        assert!(lattice_index(re(3.3), p.gamma, p.delta, &c).is_err());
    }
}
