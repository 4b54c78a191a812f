use proptest::prelude::*;
use qjacobi::awpolys::UnitArgument;
use qjacobi::ctsqjacobi::{ctsq_jacobi, ctsq_parity_residual, relative_residual, JacobiParams, Representation};
use qjacobi::harness;
use qjacobi::qcore::{qpochhammer, qpow};
use qjacobi::{Complex, QContext};

fn params() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-0.45..2.5f64, -0.45..2.5f64, 0.1..0.9f64, 0.05..3.1f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qpochhammer_steps_by_one_factor(a in -2.0..2.0f64, q in 0.05..0.95f64, n in 0usize..30) {
        let ctx = QContext::new(q).unwrap();
        let a = Complex::from(a);
        let next = qpochhammer(a, &ctx, n + 1);
        let step = qpochhammer(a, &ctx, n) * (Complex::from(1.0) - a * qpow(&ctx, Complex::from(n as f64)));
        prop_assert!(relative_residual(next, step) < 1e-28);
    }

    #[test]
    fn degree_zero_is_one((a, b, q, theta) in params()) {
        let ctx = QContext::new(q).unwrap();
        let p = ctsq_jacobi(0, &UnitArgument::from_angle(theta), &JacobiParams::new(a, b), &ctx, Representation::InterAw).unwrap();
        prop_assert!(relative_residual(p, Complex::from(1.0)) < 1e-28);
    }

    #[test]
    fn real_and_even_in_theta((a, b, q, theta) in params(), n in 0usize..10) {
        let ctx = QContext::new(q).unwrap();
        let jp = JacobiParams::new(a, b);
        let up = ctsq_jacobi(n, &UnitArgument::from_angle(theta), &jp, &ctx, Representation::InterAw).unwrap();
        let down = ctsq_jacobi(n, &UnitArgument::from_angle(-theta), &jp, &ctx, Representation::InterAw).unwrap();
        prop_assert!(up.im.to_f64().abs() <= 1e-20 * up.norm().max(1.0));
        prop_assert!(relative_residual(up, down) < 1e-20);
    }

    #[test]
    fn parity_holds((a, b, q, theta) in params(), n in 0usize..12) {
        let ctx = QContext::new(q).unwrap();
        let r = ctsq_parity_residual(n, &UnitArgument::from_angle(theta), &JacobiParams::new(a, b), &ctx).unwrap();
        prop_assert!(r < 1e-12, "residual {r:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_depend_only_on_seed(seed in any::<u64>()) {
        let a = harness::verify("series.qbinomial", 4, seed, None).unwrap().to_json();
        let b = harness::verify("series.qbinomial", 4, seed, None).unwrap().to_json();
        prop_assert_eq!(a, b);
    }
}
