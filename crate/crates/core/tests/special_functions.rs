use std::f64::consts::FRAC_PI_2;

use hypmod::numeric::quadrature::integrate_adaptive;
use hypmod::specfun::{catalan, ti2};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inversion_identity(a in 1.0f64..=50.0) {
        let lhs = ti2(1.0 / a).unwrap().value;
        let rhs = ti2(a).unwrap().value - FRAC_PI_2 * a.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn increasing(x in 0.0f64..30.0, dx in 1e-6f64..5.0) {
        prop_assert!(ti2(x).unwrap().value < ti2(x + dx).unwrap().value);
    }

    #[test]
    fn series_matches_quadrature(x in 1e-3f64..=1.0) {
        let q = integrate_adaptive(|t: f64| if t == 0.0 { 1.0 } else { t.atan() / t }, 0.0, x, 1e-14).unwrap();
        let v = ti2(x).unwrap();
        prop_assert!((v.value - q).abs() <= 1e-12);
        prop_assert!(v.est_abs_error <= 1e-12);
    }
}

#[test]
fn catalan_is_ti2_of_one() {
    assert!((ti2(1.0).unwrap().value - 0.915965594177219).abs() <= 1e-12);
    assert_eq!(catalan(), hypmod::specfun::CATALAN);
}
