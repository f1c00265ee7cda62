use std::f64::consts::PI;

use proptest::prelude::*;
use selberg::special::{log_gamma, pole_distance, GammaProduct, Precision};
use selberg::Complex64;

/// Distance of `z` from `2πiℤ`.
fn mod_two_pi_i(z: Complex64) -> f64 {
    let turns = (z.im / (2.0 * PI)).round();
    Complex64::new(z.re, z.im - turns * 2.0 * PI).norm()
}

fn strip() -> impl Strategy<Value = Complex64> {
    (-10.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(a, b)| Complex64::new(a, b))
        .prop_filter("away from poles", |z| {
            pole_distance(*z) > 1e-3 && pole_distance(1.0 - *z) > 1e-3
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflection(z in strip()) {
        let lhs = log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap();
        let rhs = Complex64::new(PI.ln(), 0.0) - (PI * z).sin().ln();
        prop_assert!(mod_two_pi_i(lhs - rhs) < 1e-12, "{z}: {}", mod_two_pi_i(lhs - rhs));
    }

    #[test]
    fn recurrence(z in strip()) {
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        prop_assert!(mod_two_pi_i(d) < 1e-12);
    }

    #[test]
    fn numerator_and_denominator_are_reciprocal(a in strip(), b in strip(), c in strip()) {
        let single = GammaProduct::new().num(a, "a").log_value(Precision::Double).unwrap();
        let moved = GammaProduct::new().den(a, "a").recip().log_value(Precision::Double).unwrap();
        prop_assert_eq!(single, moved);
        let p = GammaProduct::new().num(a, "a").num(b, "b").den(c, "c");
        let lp = p.log_value(Precision::Double).unwrap();
        let lr = p.recip().log_value(Precision::Double).unwrap();
        prop_assert!(mod_two_pi_i(lp + lr) < 1e-13);
    }
}
