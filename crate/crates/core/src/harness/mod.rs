//! Identity registry, seeded parameter sampler and verification runner.

mod functions;
mod registry;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ctsqjacobi::relative_residual;
use crate::error::{Error, Result};
use crate::qcore::Complex;

pub use functions::{evaluate, parse_params, FUNCTIONS};
pub use registry::registry;

/// Resampling attempts before a domain is declared exhausted.
pub const MAX_RESAMPLES: usize = 100;

/// One sampled parameter assignment, keyed by parameter name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Draw {
    values: BTreeMap<String, f64>,
}

impl Draw {
    pub fn new() -> Self {
        Draw::default()
    }

    pub fn set(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), v);
    }

    pub fn with(mut self, name: &str, v: f64) -> Self {
        self.set(name, v);
        self
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.values.get(name).copied().ok_or_else(|| Error::BadParameter(format!("draw has no parameter `{name}`")))
    }

    /// An integer-valued parameter.
    pub fn index(&self, name: &str) -> Result<usize> {
        let v = self.get(name)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Error::BadParameter(format!("`{name}` = {v} is not a nonnegative integer")));
        }
        Ok(v as usize)
    }

    pub fn values(&self) -> &BTreeMap<String, f64> {
        &self.values
    }
}

/// How a single parameter is drawn. Ranges are half-open, integer ranges inclusive.
#[derive(Clone, Copy)]
pub enum Range {
    Uniform(f64, f64),
    Int(i64, i64),
    /// Integer in `0..=` the named, already drawn parameter.
    UpTo(&'static str),
    Fixed(f64),
    /// `s^2` with `s` uniform in the range; used for `q` when a formula needs `q^{1/2}`.
    Square(f64, f64),
    /// Computed from the parameters drawn before it.
    Pinned(fn(&Draw) -> f64),
}

/// Ordered parameter ranges plus an optional admissibility guard.
#[derive(Clone)]
pub struct Domain {
    pub vars: Vec<(&'static str, Range)>,
    /// Rejects draws too close to a pole; such draws are resampled.
    pub guard: Option<fn(&Draw) -> bool>,
}

impl Domain {
    pub fn new(vars: Vec<(&'static str, Range)>) -> Self {
        Domain { vars, guard: None }
    }

    pub fn guarded(mut self, guard: fn(&Draw) -> bool) -> Self {
        self.guard = Some(guard);
        self
    }

    pub fn with(mut self, name: &'static str, range: Range) -> Self {
        match self.vars.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = range,
            None => self.vars.push((name, range)),
        }
        self
    }

    /// `q` in (0.05, 0.9), `alpha`, `beta` in (-0.9, 3), `theta` in (0.05, pi - 0.05).
    pub fn jacobi() -> Self {
        Domain::new(vec![
            ("q", Range::Uniform(0.05, 0.9)),
            ("alpha", Range::Uniform(-0.9, 3.0)),
            ("beta", Range::Uniform(-0.9, 3.0)),
            ("theta", Range::Uniform(0.05, std::f64::consts::PI - 0.05)),
        ])
    }

    fn draw_once(&self, rng: &mut ChaCha8Rng) -> Result<Draw> {
        let mut d = Draw::new();
        for &(name, range) in &self.vars {
            let v = match range {
                Range::Uniform(lo, hi) => rng.gen_range(lo..hi),
                Range::Int(lo, hi) => rng.gen_range(lo..=hi) as f64,
                Range::UpTo(other) => rng.gen_range(0..=d.index(other)?) as f64,
                Range::Fixed(v) => v,
                Range::Square(lo, hi) => {
                    let s: f64 = rng.gen_range(lo..hi);
                    s * s
                }
                Range::Pinned(f) => f(&d),
            };
            d.set(name, v);
        }
        Ok(d)
    }
}

/// Deterministic draw for `(seed, trial)`, resampling rejected draws.
pub fn sample_params(domain: &Domain, seed: u64, trial: u64) -> Result<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    for _ in 0..MAX_RESAMPLES {
        let d = domain.draw_once(&mut rng)?;
        if domain.guard.is_none_or(|g| g(&d)) {
            return Ok(d);
        }
    }
    Err(Error::DomainExhausted(MAX_RESAMPLES))
}

pub type Evaluator = fn(&Draw) -> Result<Complex>;

/// A registered identity `lhs = rhs` over a sampled domain.
#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    pub domain: Domain,
    pub default_tol: f64,
    pub notes: &'static str,
    /// Known-wrong variants kept for comparison; their failures do not fail a run.
    pub report_only: bool,
    /// Draws where evaluation errors are reported rather than asserted.
    pub reported_region: Option<fn(&Draw) -> bool>,
}

pub fn find(id: &str) -> Result<IdentityRecord> {
    registry().into_iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Records whose id equals `filter` or starts with `filter.`; `"all"` selects everything.
pub fn select(filter: &str) -> Result<Vec<IdentityRecord>> {
    let all = registry();
    if filter == "all" {
        return Ok(all);
    }
    let prefix = format!("{filter}.");
    let picked: Vec<_> = all.into_iter().filter(|r| r.id == filter || r.id.starts_with(&prefix)).collect();
    if picked.is_empty() {
        return Err(Error::UnknownIdentity(format!("{filter} (empty selection)")));
    }
    Ok(picked)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Partial,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Partial => "PARTIAL",
            Status::Skipped => "SKIPPED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub params: Draw,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// `None` when no trial produced a residual.
    pub max_residual: Option<f64>,
    pub median_residual: Option<f64>,
    pub status: Status,
    pub failures: Vec<Failure>,
    /// Residuals of the successful trials, in trial order.
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Outcome {
    Residual(Draw, f64),
    Error(Option<Draw>, Error, bool),
}

fn run_trial(rec: &IdentityRecord, seed: u64, trial: u64) -> Outcome {
    let d = match sample_params(&rec.domain, seed, trial) {
        Ok(d) => d,
        Err(e) => return Outcome::Error(None, e, false),
    };
    let sides = (rec.lhs)(&d).and_then(|l| Ok((l, (rec.rhs)(&d)?)));
    match sides {
        Ok((l, r)) => Outcome::Residual(d, relative_residual(l, r)),
        Err(e) => {
            let reported = rec.reported_region.is_some_and(|f| f(&d));
            Outcome::Error(Some(d), e, reported)
        }
    }
}

#[cfg(feature = "parallel")]
fn run_trials(rec: &IdentityRecord, trials: usize, seed: u64) -> Vec<Outcome> {
    use rayon::prelude::*;
    (0..trials as u64).into_par_iter().map(|t| run_trial(rec, seed, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials(rec: &IdentityRecord, trials: usize, seed: u64) -> Vec<Outcome> {
    (0..trials as u64).map(|t| run_trial(rec, seed, t)).collect()
}

/// Runs `trials` seeded draws of one record.
pub fn verify_record(rec: &IdentityRecord, trials: usize, seed: u64, tol_override: Option<f64>) -> VerificationReport {
    let tol = tol_override.unwrap_or(rec.default_tol);
    let mut residuals = Vec::new();
    let mut failures = Vec::new();
    let (mut hard, mut soft) = (false, false);
    for (trial, outcome) in run_trials(rec, trials, seed).into_iter().enumerate() {
        match outcome {
            Outcome::Residual(d, r) => {
                residuals.push(r);
                if r.is_nan() || r > tol {
                    hard = true;
                    failures.push(Failure { params: d, residual: Some(r), error: None });
                }
            }
            Outcome::Error(d, e, reported) => {
                if reported {
                    soft = true;
                } else {
                    hard = true;
                }
                let params = d.unwrap_or_else(|| Draw::new().with("trial", trial as f64));
                failures.push(Failure { params, residual: None, error: Some(format!("{}: {e}", e.kind())) });
            }
        }
    }
    let status = if trials == 0 {
        Status::Skipped
    } else if hard {
        Status::Fail
    } else if soft {
        Status::Partial
    } else {
        Status::Pass
    };
    let max_residual = residuals.iter().copied().fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
    let median_residual = median(&residuals);
    VerificationReport { identity: rec.id.to_string(), trials, seed, tol, max_residual, median_residual, status, failures, residuals }
}

fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[k] } else { 0.5 * (v[k - 1] + v[k]) })
}

/// Verifies a registered identity by id.
pub fn verify(id: &str, trials: usize, seed: u64, tol_override: Option<f64>) -> Result<VerificationReport> {
    Ok(verify_record(&find(id)?, trials, seed, tol_override))
}

pub struct SummaryRow {
    pub report: VerificationReport,
    pub report_only: bool,
    pub seconds: f64,
}

/// Reports for a set of records, in registry order.
pub struct Summary {
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    /// True unless an asserted (not report-only) identity failed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.report_only || r.report.status != Status::Fail)
    }

    pub fn reports(&self) -> Vec<&VerificationReport> {
        self.rows.iter().map(|r| &r.report).collect()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.2e}"))
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<34} {:>7} {:>10} {:>10} {:>9} {:>8}", "identity", "status", "max", "median", "tol", "time")?;
        for row in &self.rows {
            let r = &row.report;
            let status = if row.report_only { format!("{}*", r.status) } else { r.status.to_string() };
            writeln!(
                f,
                "{:<34} {:>7} {:>10} {:>10} {:>9.0e} {:>7.2}s",
                r.identity,
                status,
                fmt_opt(r.max_residual),
                fmt_opt(r.median_residual),
                r.tol,
                row.seconds
            )?;
        }
        if self.rows.iter().any(|r| r.report_only) {
            writeln!(f, "* reported only: known-incorrect variant kept for comparison")?;
        }
        let failed = self.rows.iter().filter(|r| !r.report_only && r.report.status == Status::Fail).count();
        write!(f, "{} identities, {} failed", self.rows.len(), failed)
    }
}

/// Verifies each record in turn.
pub fn run_records(records: &[IdentityRecord], trials: usize, seed: u64, tol_override: Option<f64>) -> Summary {
    let rows = records
        .iter()
        .map(|rec| {
            let start = std::time::Instant::now();
            let report = verify_record(rec, trials, seed, tol_override);
            SummaryRow { report, report_only: rec.report_only, seconds: start.elapsed().as_secs_f64() }
        })
        .collect();
    Summary { rows }
}

/// Verifies every registered identity.
pub fn run_all(trials: usize, seed: u64) -> Summary {
    run_records(&registry(), trials, seed, None)
}

/// Self-comparison record: both sides are the same evaluator, so every residual is exactly zero.
pub fn self_check_record() -> IdentityRecord {
    fn side(d: &Draw) -> Result<Complex> {
        Ok(Complex::new(d.get("x")?, d.get("y")?))
    }
    IdentityRecord {
        id: "self.check",
        lhs: side,
        rhs: side,
        domain: Domain::new(vec![("x", Range::Uniform(-1.0, 1.0)), ("y", Range::Uniform(-1.0, 1.0))]),
        default_tol: 0.0,
        notes: "a value compared with itself",
        report_only: false,
        reported_region: None,
    }
}

/// Ids listed in the checked-in manifest.
pub fn manifest_ids() -> Vec<&'static str> {
    include_str!("../../registry_manifest.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().next().unwrap_or(l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_deterministic_and_in_range() {
        let dom = Domain::jacobi();
        let a = sample_params(&dom, 1, 0).unwrap();
        assert_eq!(a, sample_params(&dom, 1, 0).unwrap());
        assert_ne!(a, sample_params(&dom, 1, 1).unwrap());
        let q = a.get("q").unwrap();
        assert!((0.05..0.9).contains(&q));
        for k in ["alpha", "beta"] {
            assert!((-0.9..3.0).contains(&a.get(k).unwrap()));
        }
        let th = a.get("theta").unwrap();
        assert!(th > 0.05 && th < std::f64::consts::PI - 0.05);
    }

    #[test]
    fn guard_exhaustion() {
        let dom = Domain::jacobi().guarded(|_| false);
        assert_eq!(sample_params(&dom, 3, 0), Err(Error::DomainExhausted(MAX_RESAMPLES)));
    }

    #[test]
    fn self_comparison_is_exact() {
        let r = verify_record(&self_check_record(), 10, 7, None);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.max_residual, Some(0.0));
    }

    #[test]
    fn zero_trials_skip() {
        let r = verify_record(&self_check_record(), 0, 7, None);
        assert_eq!(r.status, Status::Skipped);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn unknown_ids() {
        assert!(matches!(verify("no.such", 1, 1, None), Err(Error::UnknownIdentity(_))));
        assert!(matches!(select("nothing"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn registry_sorted_and_matches_manifest() {
        let ids: Vec<_> = registry().iter().map(|r| r.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
        let mut manifest = manifest_ids();
        manifest.sort_unstable();
        assert_eq!(ids, manifest);
    }
}
