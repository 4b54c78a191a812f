//! Browser bindings: a polynomial plot, a Poisson kernel comparison and the identity runner.

use qjacobi::awpolys::UnitArgument;
use qjacobi::ctsqjacobi::{ctsq_jacobi_sequence, JacobiParams};
use qjacobi::harness;
use qjacobi::kernels::{poisson_kernel_series, poisson_kernel_threeterm, KernelPoint};
use qjacobi::{Complex, QContext};
use wasm_bindgen::prelude::*;

fn js(e: qjacobi::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `P_0 .. P_n` at `samples` equally spaced angles in `[0, pi]`.
///
/// Returns `(n + 1) * samples` real parts, one row per degree.
#[wasm_bindgen]
pub fn jacobi_curves(n: usize, alpha: f64, beta: f64, q: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    let ctx = QContext::new(q).map_err(js)?;
    let jp = JacobiParams::new(alpha, beta);
    let mut rows = vec![0.0; (n + 1) * samples];
    for i in 0..samples {
        let theta = std::f64::consts::PI * i as f64 / (samples.max(2) - 1) as f64;
        let seq = ctsq_jacobi_sequence(n + 1, &UnitArgument::from_angle(theta), &jp, &ctx).map_err(js)?;
        for (k, v) in seq.iter().enumerate() {
            rows[k * samples + i] = v.re.to_f64();
        }
    }
    Ok(rows)
}

/// Poisson kernel by its bilinear series and by the three-term form: `[series, three_term, residual]`.
#[wasm_bindgen]
pub fn poisson_kernel(alpha: f64, beta: f64, q: f64, theta_x: f64, theta_y: f64, t: f64) -> Result<Vec<f64>, JsError> {
    let ctx = QContext::new(q).map_err(js)?;
    let jp = JacobiParams::new(alpha, beta);
    let pt = KernelPoint::new(Complex::from_polar(1.0, theta_x), Complex::from_polar(1.0, theta_y), t).map_err(js)?;
    let s = poisson_kernel_series(&pt, &jp, &ctx, 4096).map_err(js)?;
    let three = poisson_kernel_threeterm(&pt, &jp, &ctx).map_err(js)?;
    let res = (s - three).norm() / s.norm().max(three.norm()).max(1e-30);
    Ok(vec![s.re.to_f64(), three.re.to_f64(), res])
}

/// Registered identity ids, newline separated.
#[wasm_bindgen]
pub fn identity_ids() -> String {
    harness::registry().iter().map(|r| r.id).collect::<Vec<_>>().join("\n")
}

/// Runs the seeded verification of one identity and returns its JSON report.
#[wasm_bindgen]
pub fn verify_identity(id: &str, trials: usize, seed: u32) -> Result<String, JsError> {
    Ok(harness::verify(id, trials, seed as u64, None).map_err(js)?.to_json())
}
