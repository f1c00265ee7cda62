#![allow(clippy::excessive_precision)]

use proptest::prelude::*;
use selberg::closedform::{classical_selberg_ordered, contour_beta, SelbergParams};
use selberg::oracle::{quad_loop, quad_simplex_selberg, CycleSpec, PowerProduct, QuadratureConfig};
use selberg::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn unit_loop() -> CycleSpec {
    CycleSpec::loop_around_origin(c(1.0), vec![])
}

fn beta_integrand(a: f64, b: f64) -> PowerProduct {
    PowerProduct::new()
        .real_term(0.0, a - 1.0)
        .real_term(1.0, b - 1.0)
}

/// References evaluated from the Γ-product formulas at 40 digits (mpmath).
const LOOP_BETA_REFERENCE: [((f64, f64), (f64, f64)); 4] = [
    (
        (0.37, 0.81),
        (-5.0546328851650321733, 2.1873349717855053047),
    ),
    ((1.6, 0.3), (-5.0277577318233672232, -1.633617514956696137)),
    (
        (-0.45, 1.2),
        (5.2501389345430009389, 0.83154031677365030387),
    ),
    (
        (2.3, 2.7),
        (-0.098296451400146260414, 0.071416552294218443482),
    ),
];

const SELBERG_REFERENCE: [((f64, f64, f64, usize), f64); 4] = [
    ((0.4, 0.7, 0.0, 1), 3.0265322903356178184),
    ((1.3, 0.6, 0.25, 2), 0.48474872381394858389),
    ((0.8, 1.9, 0.6, 2), 0.057260656482817525219),
    ((0.9, 1.1, 0.2, 3), 0.036345297649814466906),
];

#[test]
fn error_estimates_are_conservative() {
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-10);
    for ((a, b), (wr, wi)) in LOOP_BETA_REFERENCE {
        let r = quad_loop(&beta_integrand(a, b), &unit_loop(), &cfg).unwrap();
        let err = (r.value - Complex64::new(wr, wi)).norm();
        assert!(
            err <= r.error_estimate,
            "loop ({a},{b}): {err:e} > {:e}",
            r.error_estimate
        );
        // the double-precision closed form agrees at its own accuracy
        let cf = contour_beta(c(a), c(b)).unwrap();
        assert!((cf - Complex64::new(wr, wi)).norm() < 1e-13 * cf.norm());
    }
    for ((a, b, cc, m), want) in SELBERG_REFERENCE {
        let sp = SelbergParams::real(a, b, cc, m);
        let r = quad_simplex_selberg(&sp, &cfg).unwrap();
        let err = (r.value - c(want)).norm();
        assert!(
            err <= r.error_estimate,
            "simplex {sp:?}: {err:e} > {:e}",
            r.error_estimate
        );
        assert!((classical_selberg_ordered(&sp).unwrap() - c(want)).norm() < 1e-13 * want);
    }
}

#[test]
fn deeper_refinement_stays_within_the_estimate() {
    let shallow = QuadratureConfig {
        max_depth: 8,
        ..QuadratureConfig::with_tolerances(1e-15, 1e-9)
    };
    let deep = QuadratureConfig {
        max_depth: 16,
        ..shallow.clone()
    };
    for (a, b) in [(0.52, 0.66), (1.4, 0.2)] {
        let r1 = quad_loop(&beta_integrand(a, b), &unit_loop(), &shallow).unwrap();
        let r2 = quad_loop(&beta_integrand(a, b), &unit_loop(), &deep).unwrap();
        assert!((r1.value - r2.value).norm() <= r1.error_estimate);
    }
    let sp = SelbergParams::real(0.7, 0.9, 0.3, 2);
    let r1 = quad_simplex_selberg(&sp, &shallow).unwrap();
    let r2 = quad_simplex_selberg(&sp, &deep).unwrap();
    assert!((r1.value - r2.value).norm() <= r1.error_estimate);
}

#[test]
fn bit_identical_reruns() {
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-8);
    let sp = SelbergParams::real(0.9, 1.1, 0.2, 3);
    assert_eq!(
        quad_simplex_selberg(&sp, &cfg).unwrap(),
        quad_simplex_selberg(&sp, &cfg).unwrap()
    );
    let f = beta_integrand(0.3, 0.4);
    assert_eq!(
        quad_loop(&f, &unit_loop(), &cfg).unwrap(),
        quad_loop(&f, &unit_loop(), &cfg).unwrap()
    );

    // force the Monte Carlo fallback with a depth cap the rule cannot meet
    let capped = QuadratureConfig {
        max_depth: 3,
        seed: 5,
        ..QuadratureConfig::with_tolerances(1e-15, 1e-12)
    };
    let r1 = quad_simplex_selberg(&sp, &capped).unwrap();
    let r2 = quad_simplex_selberg(&sp, &capped).unwrap();
    assert!(r1.monte_carlo);
    assert_eq!(r1, r2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cauchy_for_polynomials(
        origin in 0u32..3,
        base in 0u32..3,
        inside in prop::collection::vec(((-0.4f64..0.4), (-0.4f64..0.4), 0u32..3), 0..3),
        outside in prop::collection::vec(((1.5f64..3.0), (0.0f64..std::f64::consts::TAU), 0u32..3), 0..3),
    ) {
        let cfg = QuadratureConfig::with_tolerances(1e-12, 1e-12);
        let mut f = PowerProduct::new().real_term(0.0, origin as f64).real_term(1.0, base as f64);
        let mut enclosed = Vec::new();
        for (x, y, e) in inside {
            let p = Complex64::new(x, y);
            prop_assume!(p.norm() > 1e-3);
            enclosed.push(p);
            f = f.term(p, c(e as f64));
        }
        for (r, th, e) in outside {
            f = f.term(Complex64::from_polar(r, th), c(e as f64));
        }
        let cyc = CycleSpec::loop_around_origin(c(1.0), enclosed);
        let v = quad_loop(&f, &cyc, &cfg).unwrap();
        prop_assert!(v.value.norm() <= cfg.abs_tol, "{}", v.value.norm());
    }
}
