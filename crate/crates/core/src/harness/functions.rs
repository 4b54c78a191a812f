//! Single-point evaluation of the library's main functions by name.

use super::Draw;
use crate::awpolys::{aw_p, q_racah, AWParams, QRacahParams, UnitArgument};
use crate::ctsqjacobi::{ctsq_jacobi, norm_hn, rogers_sequence, weight, JacobiParams, Representation};
use crate::error::{Error, Result};
use crate::kernels::{poisson_kernel_series, poisson_kernel_threeterm, KernelPoint};
use crate::qcore::{qpochhammer, qpochhammer_inf, qpow, re, Complex, QContext};
use crate::specials::{special_value, SpecializationKind};

/// `(name, parameters)` of every function [`evaluate`] accepts.
pub const FUNCTIONS: &[(&str, &str)] = &[
    ("aw_p", "n, a, b, c, d, q, theta"),
    ("ctsq_jacobi", "n, alpha, beta, q, theta [, rep = 0..20]"),
    ("norm", "n, alpha, beta, q"),
    ("poisson_kernel", "alpha, beta, q, theta_z, theta_w, t"),
    ("poisson_kernel_threeterm", "alpha, beta, q, theta_z, theta_w, t"),
    ("q_racah", "n, m, alpha, beta, gamma, delta, q"),
    ("qpochhammer", "a, q [, n]  (infinite product without n)"),
    ("qpow", "q, s"),
    ("rogers", "n, b, q, theta"),
    ("special_value", "n, kind = 1..4, alpha, beta, q"),
    ("weight", "alpha, beta, q, theta"),
];

fn ctx(p: &Draw) -> Result<QContext> {
    QContext::new(p.get("q")?)
}

fn jp(p: &Draw) -> Result<JacobiParams> {
    Ok(JacobiParams::new(p.get("alpha")?, p.get("beta")?))
}

fn arg(p: &Draw, name: &str) -> Result<UnitArgument> {
    Ok(UnitArgument::from_angle(p.get(name)?))
}

fn kernel_point(p: &Draw) -> Result<KernelPoint> {
    let cis = |th: f64| Complex::from_polar(1.0, th);
    KernelPoint::new(cis(p.get("theta_z")?), cis(p.get("theta_w")?), p.get("t")?)
}

/// Evaluates `name` at `params`.
pub fn evaluate(name: &str, p: &Draw) -> Result<Complex> {
    match name {
        "qpow" => Ok(qpow(&ctx(p)?, re(p.get("s")?))),
        "qpochhammer" => {
            let (a, c) = (re(p.get("a")?), ctx(p)?);
            match p.values().get("n") {
                Some(_) => Ok(qpochhammer(a, &c, p.index("n")?)),
                None => qpochhammer_inf(a, &c),
            }
        }
        "aw_p" => {
            let ab = AWParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?);
            aw_p(p.index("n")?, &arg(p, "theta")?, &ab, &ctx(p)?)
        }
        "q_racah" => {
            let r = QRacahParams::new(p.get("alpha")?, p.get("beta")?, p.get("gamma")?, p.get("delta")?);
            q_racah(p.index("n")?, p.index("m")?, &r, &ctx(p)?)
        }
        "ctsq_jacobi" => {
            let rep = match p.values().get("rep") {
                Some(_) => *Representation::ALL.get(p.index("rep")?).ok_or_else(|| Error::BadParameter("rep must be 0..=20".into()))?,
                None => Representation::InterAw,
            };
            ctsq_jacobi(p.index("n")?, &arg(p, "theta")?, &jp(p)?, &ctx(p)?, rep)
        }
        "weight" => Ok(re(weight(&arg(p, "theta")?, &jp(p)?, &ctx(p)?)?)),
        "norm" => Ok(re(norm_hn(p.index("n")?, &jp(p)?, &ctx(p)?)?)),
        "special_value" => {
            let k = p.index("kind")?;
            let kind = k
                .checked_sub(1)
                .and_then(|i| SpecializationKind::ALL.get(i))
                .ok_or_else(|| Error::BadParameter("kind must be 1..=4".into()))?;
            special_value(p.index("n")?, *kind, &jp(p)?, &ctx(p)?)
        }
        "rogers" => {
            let n = p.index("n")?;
            Ok(rogers_sequence(n + 1, &arg(p, "theta")?, re(p.get("b")?), &ctx(p)?)?[n])
        }
        "poisson_kernel" => poisson_kernel_series(&kernel_point(p)?, &jp(p)?, &ctx(p)?, 4096),
        "poisson_kernel_threeterm" => poisson_kernel_threeterm(&kernel_point(p)?, &jp(p)?, &ctx(p)?),
        other => Err(Error::UnknownFunction(other.to_string())),
    }
}

/// Parses `k=v,k=v` into a draw.
pub fn parse_params(s: &str) -> Result<Draw> {
    let mut d = Draw::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::BadParameter(format!("`{part}` is not k=v")))?;
        let v: f64 = v.trim().parse().map_err(|_| Error::BadParameter(format!("`{v}` is not a number")))?;
        d.set(k.trim(), v);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_by_name() {
        let v = evaluate("qpow", &parse_params("q=0.5, s=0.5").unwrap()).unwrap();
        assert!((v.re.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        let v = evaluate("qpochhammer", &parse_params("a=0.5,q=0.5,n=2").unwrap()).unwrap();
        assert_eq!(v.re.to_f64(), 0.375);
        let v = evaluate("poisson_kernel", &parse_params("alpha=0.3,beta=0.8,q=0.5,theta_z=0.8,theta_w=1.3,t=0.4").unwrap()).unwrap();
        assert!((v.re.to_f64() - 1.022_750_756_021_505_9).abs() < 1e-14);
        for (name, _) in FUNCTIONS {
            assert!(!matches!(evaluate(name, &Draw::new()), Err(Error::UnknownFunction(_))));
        }
        assert!(matches!(evaluate("nope", &Draw::new()), Err(Error::UnknownFunction(_))));
        assert!(parse_params("q").is_err());
    }
}
