//! Complex scalars, the base `q`, q-shifted factorials and parameter lists.
//!
//! Every series in the crate is built from q-shifted factorials
//!
//! ```text
//! (a; q)_n = (1 - a)(1 - aq) ... (1 - aq^{n-1}),      (a; q)_0 = 1
//! (a; q)_inf = prod_{k >= 0} (1 - aq^k),                 |q| < 1
//! ```
//!
//! and products of them over parameter lists. [`ParamList`] carries the usual
//! shorthand: `±a` expands to `{a, -a}`, `z^±` to `{z, 1/z}` and `a + {x1, .., xn}`
//! to one entry per offset.

use serde::{Deserialize, Serialize};

pub use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
///
/// Components are double-double, so parameters such as `q^{-n}` or `q^s z`
/// derived from `f64` inputs carry about 32 significant digits into the
/// balanced sums, which routinely cancel by `10^15` or more.
pub type Complex = Cdd;

/// Shorthand for a purely real complex value.
#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Fails with [`Error::NonFinite`] when `v` has a NaN or infinite component.
#[inline]
pub fn ensure_finite(v: Complex, what: &'static str) -> Result<Complex> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// The base `q` of every q-series together with the truncation controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QContextFields", into = "QContextFields")]
pub struct QContext {
    pub q: Complex,
    log_q: Complex,
    /// Relative truncation tolerance for nonterminating sums and products.
    pub tol_rel: f64,
    /// Absolute floor added to the relative tolerance.
    pub tol_abs: f64,
    /// Hard cap on the number of summed terms or product factors.
    pub max_terms: usize,
}

impl QContext {
    pub const DEFAULT_TOL_REL: f64 = 1e-14;
    pub const DEFAULT_TOL_ABS: f64 = 1e-300;
    pub const DEFAULT_MAX_TERMS: usize = 2000;

    /// Builds a context with default tolerances. `q` must be nonzero and off the unit circle.
    pub fn new(q: impl Into<Complex>) -> Result<Self> {
        let q = q.into();
        if !q.is_finite() || q.norm() == 0.0 || (q.norm() - 1.0).abs() < 1e-15 {
            return Err(Error::InvalidBase(format!("{q}")));
        }
        Ok(QContext {
            q,
            log_q: q.ln(),
            tol_rel: Self::DEFAULT_TOL_REL,
            tol_abs: Self::DEFAULT_TOL_ABS,
            max_terms: Self::DEFAULT_MAX_TERMS,
        })
    }

    /// Same tolerances, different base.
    pub fn with_base(&self, q: impl Into<Complex>) -> Result<Self> {
        let mut ctx = QContext::new(q)?;
        ctx.tol_rel = self.tol_rel;
        ctx.tol_abs = self.tol_abs;
        ctx.max_terms = self.max_terms;
        Ok(ctx)
    }

    /// Context in base `q^2`.
    pub fn squared(&self) -> Result<Self> {
        self.with_base(self.q * self.q)
    }

    /// Context in base `q^{1/2}` (principal branch).
    pub fn sqrt_base(&self) -> Result<Self> {
        self.with_base(self.q.sqrt())
    }

    pub fn with_tolerances(mut self, tol_rel: f64, tol_abs: f64) -> Self {
        self.tol_rel = tol_rel;
        self.tol_abs = tol_abs;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// `q^s` on the principal branch.
    #[inline]
    pub fn pow(&self, s: impl Into<Complex>) -> Complex {
        qpow(self, s.into())
    }

    /// Principal `Log q`.
    pub fn log_q(&self) -> Complex {
        self.log_q
    }

    /// True for the regime where infinite products and nonterminating series converge.
    pub fn is_convergent(&self) -> bool {
        self.q.norm() < 1.0
    }

    pub fn require_convergent(&self) -> Result<()> {
        if self.is_convergent() {
            Ok(())
        } else {
            Err(Error::DivergentProduct(self.q.norm()))
        }
    }
}

/// `q^s := exp(s Log q)` with the principal logarithm.
///
/// Integer real exponents go through repeated multiplication so that they are
/// exact up to rounding.
pub fn qpow(ctx: &QContext, s: Complex) -> Complex {
    if let (Some(k), true) = (s.re.as_i32(), s.im.is_zero()) {
        return ctx.q.powi(k);
    }
    (s * ctx.log_q).exp()
}

#[derive(Serialize, Deserialize)]
struct QContextFields {
    q: Complex,
    tol_rel: f64,
    tol_abs: f64,
    max_terms: usize,
}

impl TryFrom<QContextFields> for QContext {
    type Error = Error;
    fn try_from(f: QContextFields) -> Result<Self> {
        Ok(QContext::new(f.q)?.with_tolerances(f.tol_rel, f.tol_abs).with_max_terms(f.max_terms))
    }
}

impl From<QContext> for QContextFields {
    fn from(c: QContext) -> Self {
        QContextFields { q: c.q, tol_rel: c.tol_rel, tol_abs: c.tol_abs, max_terms: c.max_terms }
    }
}

/// Finite q-shifted factorial `(a; q)_n`.
pub fn qpochhammer(a: Complex, ctx: &QContext, n: usize) -> Complex {
    let mut acc = re(1.0);
    let mut aqk = a;
    for _ in 0..n {
        acc *= re(1.0) - aqk;
        aqk *= ctx.q;
    }
    acc
}

/// Outcome of a truncated infinite product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfiniteProduct {
    pub value: Complex,
    /// Number of factors multiplied.
    pub factors: usize,
    /// Bound on `|tail - 1|` for the neglected factors.
    pub tail_bound: f64,
}

/// `(a; q)_inf` with the truncation bookkeeping exposed.
///
/// Stops at the first `K >= 1` with `|a| |q|^K < tol_rel (1 - |q|)`; the neglected
/// tail then differs from one by at most `|a||q|^K / (1 - |q|)` to first order.
pub fn qpochhammer_inf_detailed(a: Complex, ctx: &QContext) -> Result<InfiniteProduct> {
    ctx.require_convergent()?;
    let qa = ctx.q.norm();
    let threshold = ctx.tol_rel * (1.0 - qa);
    let mut acc = re(1.0);
    let mut aqk = a;
    let mut k = 0usize;
    loop {
        if k >= 1 && aqk.norm() < threshold {
            let tail = aqk.norm() / (1.0 - qa);
            return Ok(InfiniteProduct { value: ensure_finite(acc, "infinite product")?, factors: k, tail_bound: tail });
        }
        if k >= ctx.max_terms {
            return Err(Error::TermCapExceeded(ctx.max_terms));
        }
        acc *= re(1.0) - aqk;
        aqk *= ctx.q;
        k += 1;
    }
}

/// Infinite q-shifted factorial `(a; q)_inf`, `|q| < 1`.
pub fn qpochhammer_inf(a: Complex, ctx: &QContext) -> Result<Complex> {
    qpochhammer_inf_detailed(a, ctx).map(|p| p.value)
}

/// Length of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

/// Ordered multiset of complex parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamList {
    pub entries: Vec<Complex>,
}

impl ParamList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex> {
        self.entries.iter()
    }

    /// Appends a single entry.
    pub fn with(mut self, a: impl Into<Complex>) -> Self {
        self.entries.push(a.into());
        self
    }

    /// Appends `±a = {a, -a}`.
    pub fn pm(mut self, a: impl Into<Complex>) -> Self {
        let a = a.into();
        self.entries.push(a);
        self.entries.push(-a);
        self
    }

    /// Appends `z^± = {z, 1/z}`.
    pub fn zpm(mut self, z: impl Into<Complex>) -> Self {
        let z = z.into();
        self.entries.push(z);
        self.entries.push(z.inv());
        self
    }

    /// Appends `c z^± = {c z, c / z}`.
    pub fn scaled_zpm(mut self, c: impl Into<Complex>, z: impl Into<Complex>) -> Self {
        let (c, z) = (c.into(), z.into());
        self.entries.push(c * z);
        self.entries.push(c / z);
        self
    }

    /// Appends `a + {x1, .., xn}`.
    pub fn offsets(mut self, a: impl Into<Complex>, xs: &[f64]) -> Self {
        let a = a.into();
        self.entries.extend(xs.iter().map(|&x| a + x));
        self
    }

    /// Appends `c q^{e + {o1, .., on}}`, the exponent-offset form of the list notation.
    pub fn q_offsets(mut self, ctx: &QContext, c: impl Into<Complex>, e: impl Into<Complex>, offs: &[f64]) -> Self {
        let (c, e) = (c.into(), e.into());
        self.entries.extend(offs.iter().map(|&o| c * ctx.pow(e + o)));
        self
    }

    /// Appends `c q^e`.
    pub fn qp(self, ctx: &QContext, c: impl Into<Complex>, e: impl Into<Complex>) -> Self {
        self.q_offsets(ctx, c, e, &[0.0])
    }

    /// Appends `t z^± w^± = {t z w, t z/w, t w/z, t/(zw)}`.
    pub fn cross_zpm(mut self, t: impl Into<Complex>, z: impl Into<Complex>, w: impl Into<Complex>) -> Self {
        let (t, z, w) = (t.into(), z.into(), w.into());
        for zz in [z, z.inv()] {
            for ww in [w, w.inv()] {
                self.entries.push(t * zz * ww);
            }
        }
        self
    }

    pub fn extend(mut self, other: &ParamList) -> Self {
        self.entries.extend_from_slice(&other.entries);
        self
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: impl Into<Complex>) -> Self {
        let c = c.into();
        ParamList { entries: self.entries.iter().map(|&e| e * c).collect() }
    }
}

impl From<Vec<Complex>> for ParamList {
    fn from(entries: Vec<Complex>) -> Self {
        ParamList { entries }
    }
}

impl FromIterator<Complex> for ParamList {
    fn from_iter<I: IntoIterator<Item = Complex>>(iter: I) -> Self {
        ParamList { entries: iter.into_iter().collect() }
    }
}

/// Product of q-shifted factorials over every entry of `list`.
pub fn qpochhammer_multi(list: &ParamList, ctx: &QContext, order: Order) -> Result<Complex> {
    let mut acc = re(1.0);
    for &a in list.iter() {
        acc *= match order {
            Order::Finite(n) => qpochhammer(a, ctx, n),
            Order::Infinite => qpochhammer_inf(a, ctx)?,
        };
    }
    ensure_finite(acc, "q-shifted factorial product")
}

/// `(num; q)_order / (den; q)_order`, failing when the denominator vanishes.
pub fn pochhammer_ratio(num: &ParamList, den: &ParamList, ctx: &QContext, order: Order) -> Result<Complex> {
    let d = qpochhammer_multi(den, ctx, order)?;
    if d.norm() == 0.0 {
        return Err(Error::ZeroDenominator { index: 0 });
    }
    let n = qpochhammer_multi(num, ctx, order)?;
    ensure_finite(n / d, "q-shifted factorial ratio")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn qpow_examples() {
        let c = ctx(0.5);
        assert_eq!(qpow(&c, re(0.0)), re(1.0));
        assert_eq!(qpow(&c, re(2.0)), re(0.25));
        let h = qpow(&c, re(0.5));
        assert_relative_eq!(h.re.to_f64(), std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!((h * h).re.to_f64(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn invalid_bases_rejected() {
        assert!(QContext::new(0.0).is_err());
        assert!(QContext::new(Complex::from_polar(1.0, 0.3)).is_err());
        assert!(QContext::new(1.5).is_ok());
    }

    #[test]
    fn finite_pochhammer_examples() {
        let c = ctx(0.5);
        assert_eq!(qpochhammer(re(3.7), &c, 0), re(1.0));
        assert_relative_eq!(qpochhammer(re(0.5), &c, 2).re.to_f64(), 0.375, max_relative = 1e-15);
        assert_eq!(qpochhammer(re(2.0), &c, 2), re(0.0));
    }

    #[test]
    fn infinite_pochhammer_examples() {
        let c = ctx(0.5);
        assert_eq!(qpochhammer_inf(re(0.0), &c).unwrap(), re(1.0));
        // direct 60-factor product
        let mut oracle = 1.0;
        for k in 0..60 {
            oracle *= 1.0 - 0.5 * 0.5f64.powi(k);
        }
        let v = qpochhammer_inf(re(0.5), &c).unwrap();
        assert_relative_eq!(v.re.to_f64(), oracle, max_relative = 1e-14);
        assert_relative_eq!(v.re.to_f64(), 0.288_788_095_086_602_4, max_relative = 1e-13);
    }

    #[test]
    fn infinite_pochhammer_errors() {
        assert!(matches!(qpochhammer_inf(re(0.5), &ctx(2.0)), Err(Error::DivergentProduct(_))));
        let c = ctx(0.999).with_max_terms(100);
        assert!(matches!(qpochhammer_inf(re(0.5), &c), Err(Error::TermCapExceeded(100))));
    }

    #[test]
    fn list_notation() {
        let c = ctx(0.5);
        assert_eq!(qpochhammer_multi(&ParamList::new(), &c, Order::Finite(5)).unwrap(), re(1.0));
        let pm = ParamList::new().pm(0.5);
        assert_relative_eq!(qpochhammer_multi(&pm, &c, Order::Finite(1)).unwrap().re.to_f64(), 0.75, max_relative = 1e-15);
        let zpm = ParamList::new().zpm(2.0);
        assert_relative_eq!(qpochhammer_multi(&zpm, &c, Order::Finite(1)).unwrap().re.to_f64(), -0.5, max_relative = 1e-15);
        let offs = ParamList::new().offsets(1.0, &[0.5, 1.0, 1.5]);
        assert_eq!(offs.entries, vec![re(1.5), re(2.0), re(2.5)]);
        let qo = ParamList::new().q_offsets(&c, -1.0, 1.0, &[0.0, 1.0]);
        assert_eq!(qo.entries, vec![re(-0.5), re(-0.25)]);
        assert_eq!(ParamList::new().cross_zpm(1.0, 2.0, 4.0).len(), 4);
    }

    #[test]
    fn ratio_rejects_zero_denominator() {
        let c = ctx(0.5);
        let den = ParamList::new().with(2.0);
        assert!(matches!(
            pochhammer_ratio(&ParamList::new(), &den, &c, Order::Finite(2)),
            Err(Error::ZeroDenominator { .. })
        ));
    }
}
