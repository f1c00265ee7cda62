use proptest::prelude::*;
use selberg::channel::{genericity_check, ExponentVector};
use selberg::hgsys::{
    coefficient_eigenchecks, hc_series, l_residual, sekiguchi_eigencheck, SeriesDump,
    TruncatedSeries, SELECTED_ACTION, SELECTED_CONVENTION,
};
use selberg::Complex64;

fn generic_eta(n: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-1.5f64..1.5, n)
        .prop_map(ExponentVector::from_real)
        .prop_filter("generic", |e| genericity_check(e, 1e-3).unwrap().pass)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn l_residual_vanishes(eta in (2usize..4).prop_flat_map(generic_eta), k in 0.1f64..0.5) {
        let s = hc_series(&eta, k, 6).unwrap();
        prop_assert_eq!(s.coeff(&vec![0; eta.len() - 1]), Complex64::new(1.0, 0.0));
        prop_assert!(l_residual(&s, &eta, k).unwrap() <= 1e-10);
    }

    #[test]
    fn two_point_gauss_recurrence(eta in generic_eta(2), k in 0.1f64..0.5) {
        let s = hc_series(&eta, k, 10).unwrap();
        let b = (s.base_exponent().entries()[0] - s.base_exponent().entries()[1]).re;
        let f = |m: u32| s.coeff(&[m]);
        for m in 1..=10u32 {
            let lhs = f(m) * (m as f64) * (m as f64 + b - k);
            let rhs: Complex64 = (1..=m).map(|r| f(m - r) * k * (b + 2.0 * (m - r) as f64)).sum();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn sekiguchi_coefficients_and_symmetry(eta in generic_eta(2), k in 0.1f64..0.5, zeta in -1.5f64..1.5) {
        let s = hc_series(&eta, k, 8).unwrap();
        for r in coefficient_eigenchecks(&s, &eta, k, SELECTED_CONVENTION, SELECTED_ACTION).unwrap() {
            prop_assert!(r.residual <= 1e-9);
        }
        let z = Complex64::new(zeta, 0.0);
        let swapped = ExponentVector::new(vec![eta.entries()[1], eta.entries()[0]]);
        let a = sekiguchi_eigencheck(&s, &eta, z, k, SELECTED_CONVENTION, SELECTED_ACTION).unwrap();
        let b = sekiguchi_eigencheck(&s, &swapped, z, k, SELECTED_CONVENTION, SELECTED_ACTION).unwrap();
        prop_assert!((a.eigenvalue - b.eigenvalue).norm() <= 1e-12);
    }
}

#[test]
fn golden_two_point_series() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/hc_series_n2.json"
    ))
    .unwrap();
    let golden: SeriesDump = serde_json::from_str(&text).unwrap();
    let meta: serde_json::Value = serde_json::from_str(&text).unwrap();
    let eta: Vec<f64> = serde_json::from_value(meta["eta"].clone()).unwrap();
    let kappa = meta["kappa"].as_f64().unwrap();
    let s = hc_series(&ExponentVector::from_real(eta), 1.0 / kappa, golden.order).unwrap();
    let want = TruncatedSeries::from_dump(&golden).unwrap();
    for (b, g) in s
        .base_exponent()
        .entries()
        .iter()
        .zip(want.base_exponent().entries())
    {
        assert!((b - g).norm() < 1e-15);
    }
    for m in 0..=golden.order {
        assert!(
            (s.coeff(&[m]) - want.coeff(&[m])).norm() < 1e-13,
            "degree {m}"
        );
    }
    let dump = s.to_dump();
    let back: SeriesDump = serde_json::from_str(&serde_json::to_string(&dump).unwrap()).unwrap();
    assert_eq!(back, dump);
}
