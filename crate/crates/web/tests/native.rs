use qjacobi_web::{identity_ids, jacobi_curves, poisson_kernel, verify_identity};

#[test]
fn curves_have_one_row_per_degree() {
    let rows = jacobi_curves(3, 0.5, 1.2, 0.5, 50).unwrap();
    assert_eq!(rows.len(), 4 * 50);
    assert!(rows[..50].iter().all(|&v| v == 1.0));
}

#[test]
fn kernel_forms_agree() {
    let v = poisson_kernel(0.3, 0.8, 0.5, 0.8, 1.3, 0.4).unwrap();
    assert!((v[0] - 1.022_750_756_021_505_9).abs() < 1e-14);
    assert!(v[2] < 1e-12);
}

#[test]
fn runs_registry_entries() {
    assert!(identity_ids().lines().any(|l| l == "duality.qracah"));
    let json = verify_identity("duality.qracah", 5, 7).unwrap();
    assert!(json.contains("\"status\": \"PASS\""));
}
