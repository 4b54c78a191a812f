//! Basic hypergeometric series `r phi s` and very-well-poised `r+1 W r`.
//!
//! ```text
//! r phi s (a_1..a_r; b_1..b_s; q, z)
//!     = sum_k (a_1..a_r; q)_k / (q, b_1..b_s; q)_k [(-1)^k q^{k(k-1)/2}]^{1+s-r} z^k
//! ```
//!
//! A numerator parameter equal to `q^{-n}` terminates the sum after `n + 1`
//! terms. Nonterminating sums stop once three consecutive terms fall below
//! `tol_rel |partial| + tol_abs`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{ensure_finite, re, Complex, ParamList, QContext};

/// A numerator parameter `u` counts as `q^{-n}` when `|u q^n - 1|` is below this.
pub const TERMINATION_TOL: f64 = 1e-12;

/// Denominator factors smaller than this in modulus are treated as zeros.
const ZERO_FACTOR: f64 = 4.0 * f64::EPSILON;

/// Consecutive small terms required before a nonterminating sum is accepted.
const SMALL_RUN: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub num: ParamList,
    pub den: ParamList,
    pub ctx: QContext,
    pub z: Complex,
}

impl PhiSpec {
    pub fn new(num: ParamList, den: ParamList, ctx: &QContext, z: impl Into<Complex>) -> Self {
        PhiSpec { num, den, ctx: *ctx, z: z.into() }
    }

    /// Smallest `n` such that some numerator parameter is `q^{-n}`.
    pub fn termination_index(&self) -> Option<usize> {
        self.num.iter().filter_map(|&u| termination_of(u, &self.ctx)).min()
    }
}

/// Returns `n` when `u` is `q^{-n}` to within [`TERMINATION_TOL`].
pub fn termination_of(u: Complex, ctx: &QContext) -> Option<usize> {
    if u.norm() == 0.0 {
        return None;
    }
    let lq = ctx.q.norm().ln();
    let guess = -u.norm().ln() / lq;
    if !guess.is_finite() || guess < -0.5 || guess > ctx.max_terms as f64 + 0.5 {
        return None;
    }
    let centre = guess.round() as i64;
    (centre - 1..=centre + 1)
        .filter(|&n| n >= 0 && n as usize <= ctx.max_terms)
        .map(|n| n as usize)
        .find(|&n| (u * ctx.q.powi(n as i32) - 1.0).norm() < TERMINATION_TOL)
}

/// Sums `r phi s`.
pub fn phi_eval(spec: &PhiSpec) -> Result<Complex> {
    let ctx = &spec.ctx;
    let r = spec.num.len() as i32;
    let s = spec.den.len() as i32;
    let extra = 1 + s - r;
    let stop = spec.termination_index();

    if stop.is_none() {
        if !ctx.is_convergent() {
            return Err(Error::DivergenceRegion(format!("nonterminating series needs |q| < 1, got {}", ctx.q.norm())));
        }
        if extra < 0 || (extra == 0 && spec.z.norm() >= 1.0) {
            return Err(Error::DivergenceRegion(format!(
                "{r}phi{s} with |z| = {} does not converge",
                spec.z.norm()
            )));
        }
    }

    let one = re(1.0);
    let mut term = one;
    let mut sum = one;
    let mut qk = one;
    let mut small = 0usize;
    let mut k = 0usize;
    loop {
        if let Some(n) = stop {
            if k == n {
                return ensure_finite(sum, "basic hypergeometric sum");
            }
        } else if k >= ctx.max_terms {
            return Err(Error::NoConvergence(ctx.max_terms));
        }
        // term_{k+1} / term_k
        let mut ratio = spec.z / (one - qk * ctx.q);
        for &a in spec.num.iter() {
            ratio *= one - a * qk;
        }
        for &b in spec.den.iter() {
            let f = one - b * qk;
            if f.norm() < ZERO_FACTOR {
                return Err(Error::ZeroDenominator { index: k + 1 });
            }
            ratio /= f;
        }
        if extra != 0 {
            ratio *= (-qk).powi(extra);
        }
        term *= ratio;
        k += 1;
        qk *= ctx.q;
        if term.norm() == 0.0 {
            // a numerator factor vanished; every later term carries it too
            return ensure_finite(sum, "basic hypergeometric sum");
        }
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonFinite("basic hypergeometric sum"));
        }
        if stop.is_none() {
            if term.norm() < ctx.tol_rel * sum.norm() + ctx.tol_abs {
                small += 1;
                if small >= SMALL_RUN {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
    }
}

/// Very-well-poised series `W(a; b_1..b_m; q, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WPSpec {
    pub a: Complex,
    pub bs: ParamList,
    pub ctx: QContext,
    pub z: Complex,
}

impl WPSpec {
    pub fn new(a: impl Into<Complex>, bs: ParamList, ctx: &QContext, z: impl Into<Complex>) -> Self {
        WPSpec { a: a.into(), bs, ctx: *ctx, z: z.into() }
    }

    /// The equivalent `r phi s`: numerators `a, q sqrt(a), -q sqrt(a), b_i`,
    /// denominators `sqrt(a), -sqrt(a), a q / b_i`.
    pub fn expand(&self) -> Result<PhiSpec> {
        let q = self.ctx.q;
        let sa = self.a.sqrt();
        let mut num = ParamList::new().with(self.a).with(q * sa).with(-q * sa);
        let mut den = ParamList::new().with(sa).with(-sa);
        for &b in self.bs.iter() {
            if b.norm() == 0.0 {
                return Err(Error::DomainError("very-well-poised parameter b = 0".into()));
            }
            num = num.with(b);
            den = den.with(self.a * q / b);
        }
        Ok(PhiSpec { num, den, ctx: self.ctx, z: self.z })
    }
}

pub fn w_eval(spec: &WPSpec) -> Result<Complex> {
    phi_eval(&spec.expand()?)
}

/// Convenience wrapper for `r phi s`.
pub fn phi(num: ParamList, den: ParamList, ctx: &QContext, z: impl Into<Complex>) -> Result<Complex> {
    phi_eval(&PhiSpec::new(num, den, ctx, z))
}

/// Convenience wrapper for `W(a; bs; q, z)`.
pub fn wp(a: impl Into<Complex>, bs: ParamList, ctx: &QContext, z: impl Into<Complex>) -> Result<Complex> {
    w_eval(&WPSpec::new(a, bs, ctx, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpochhammer, qpochhammer_inf};

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-30)
    }

    #[test]
    fn unit_numerator_gives_one() {
        let c = ctx(0.5);
        let v = phi(ParamList::new().with(1.0).with(0.3), ParamList::new().with(0.2), &c, 0.9).unwrap();
        assert_eq!(v, re(1.0));
    }

    #[test]
    fn q_binomial_example() {
        let c = ctx(0.5);
        let v = phi(ParamList::new().with(0.25), ParamList::new(), &c, 0.5).unwrap();
        let oracle = qpochhammer_inf(re(0.125), &c).unwrap() / qpochhammer_inf(re(0.5), &c).unwrap();
        assert!(close(v, oracle, 1e-12));
    }

    #[test]
    fn two_term_q_racah_closed_form() {
        // n = 1 q-Racah 4phi3 expanded by hand
        let q = 0.5f64;
        let c = ctx(q);
        let (al, be, ga, de, m) = (0.3, 0.2, 0.7, 0.4, 3);
        let num = ParamList::new()
            .with(1.0 / q)
            .with(q * q * al * be)
            .with(q.powi(-m))
            .with(q.powi(m + 1) * ga * de);
        let den = ParamList::new().with(q * al).with(q * be * de).with(q * ga);
        let v = phi(num, den, &c, q).unwrap();
        let oracle = 1.0
            + (1.0 - 1.0 / q) * (1.0 - q * q * al * be) * (1.0 - q.powi(-m)) * (1.0 - q.powi(m + 1) * ga * de) * q
                / ((1.0 - q * al) * (1.0 - q * be * de) * (1.0 - q * ga) * (1.0 - q));
        assert!(close(v, re(oracle), 1e-14), "{v} vs {oracle}");
    }

    #[test]
    fn termination_counts_terms() {
        let c = ctx(0.4);
        let spec = PhiSpec::new(
            ParamList::new().with(0.4f64.powi(-3)).with(0.7),
            ParamList::new().with(0.2),
            &c,
            0.4,
        );
        assert_eq!(spec.termination_index(), Some(3));
        // explicit 4-term sum
        let q = 0.4f64;
        let mut oracle = re(0.0);
        for k in 0..=3usize {
            let t = qpochhammer(re(q.powi(-3)), &c, k) * qpochhammer(re(0.7), &c, k)
                / (qpochhammer(re(0.2), &c, k) * qpochhammer(re(q), &c, k))
                * q.powi(k as i32);
            oracle += t;
        }
        assert!(close(phi_eval(&spec).unwrap(), oracle, 1e-14));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let c = ctx(0.5);
        // den = q^{-1}: factor (1 - q^{-1} q) vanishes at k = 1
        let r = phi(ParamList::new().with(0.5f64.powi(-3)), ParamList::new().with(2.0), &c, 0.5);
        assert!(matches!(r, Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn divergence_region() {
        let c = ctx(0.5);
        let r = phi(ParamList::new().with(0.3).with(0.2), ParamList::new().with(0.1), &c, 1.5);
        assert!(matches!(r, Err(Error::DivergenceRegion(_))));
        let r = phi(ParamList::new().with(0.3).with(0.2), ParamList::new(), &c, 0.1);
        assert!(matches!(r, Err(Error::DivergenceRegion(_))));
    }

    #[test]
    fn no_convergence_hits_cap() {
        let c = ctx(0.5).with_max_terms(10);
        let r = phi(ParamList::new().with(0.3), ParamList::new(), &c, 0.99);
        assert!(matches!(r, Err(Error::NoConvergence(10))));
    }

    #[test]
    fn w_with_unit_parameter_is_one() {
        let c = ctx(0.5);
        let bs = ParamList::new().with(1.0).with(0.3).with(0.2).with(0.1).with(0.4);
        assert_eq!(wp(0.05, bs, &c, 0.3).unwrap(), re(1.0));
    }

    #[test]
    fn w_matches_hand_expansion() {
        let c = ctx(0.5);
        let q = 0.5f64;
        let a = 0.02f64;
        let bs = [0.5f64.powi(-2), 0.3, -0.2, 0.15, 0.25, 0.35, 0.45];
        let sa = a.sqrt();
        let mut num = ParamList::new().with(a).with(q * sa).with(-q * sa);
        let mut den = ParamList::new().with(sa).with(-sa);
        for b in bs {
            num = num.with(b);
            den = den.with(a * q / b);
        }
        let direct = phi(num, den, &c, q).unwrap();
        let w = wp(a, bs.iter().map(|&b| re(b)).collect(), &c, q).unwrap();
        assert!(close(direct, w, 1e-13));
    }
}
