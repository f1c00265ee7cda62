use std::f64::consts::PI;

use proptest::prelude::*;
use selberg::channel::{self, Channel};
use selberg::closedform::{
    classical_selberg_product, contour_beta, generalized_selberg, generalized_selberg_breakdown,
    Params, SelbergParams,
};
use selberg::special::{eval_gamma_product, GammaProduct};
use selberg::{Complex64, Error};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn params(n: usize) -> impl Strategy<Value = Params> {
    (
        2.1f64..9.7,
        prop::collection::vec(0.1f64..0.9, n),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(kappa, f, sign)| {
            let pairings = f
                .iter()
                .zip(sign)
                .map(|(x, s)| if s { x * kappa } else { -x * kappa })
                .collect();
            Params::new(pairings, kappa).unwrap()
        })
}

fn channel_and_params() -> impl Strategy<Value = (Channel, Params)> {
    (1usize..3).prop_flat_map(|n| {
        (
            prop::collection::vec(1usize..=n + 1, 1..4)
                .prop_map(move |idx| Channel::new(idx, n).unwrap()),
            params(n),
        )
    })
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

proptest! {
    #[test]
    fn factorization((ch, p) in channel_and_params()) {
        let b = match generalized_selberg_breakdown(&ch, &p) {
            Err(Error::NonGeneric(_)) | Err(Error::PoleProximity { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        for f in [b.phase, b.leading_coefficient, b.opdam_factor, b.value] {
            prop_assert!(f.re.is_finite() && f.im.is_finite());
        }
        prop_assert!(rel(b.phase * b.leading_coefficient * b.opdam_factor, b.value) < 1e-12);
    }

    #[test]
    fn contour_beta_normalization(a in -2.5f64..2.5, b in 0.05f64..3.0) {
        prop_assume!(channel::distance_to_integer(re(a)) > 1e-3 && channel::distance_to_integer(re(a + b)) > 1e-3);
        let v = contour_beta(re(a), re(b)).unwrap();
        let norm = eval_gamma_product(
            &GammaProduct::new().num(re(1.0 - a), "").num(re(a + b), "").den(re(b), ""),
        )
        .unwrap()
            / (Complex64::new(0.0, 2.0 * PI) * Complex64::from_polar(1.0, PI * a));
        prop_assert!((v * norm - 1.0).norm() < 1e-12);
    }

    #[test]
    fn one_variable_selberg_is_beta(a in 0.05f64..4.0, b in 0.05f64..4.0, c in -1.0f64..1.0) {
        let p = classical_selberg_product(&SelbergParams::real(a, b, c, 1)).unwrap();
        let beta = GammaProduct::new().num(re(a), "Γ(a+0c)").num(re(b), "Γ(b+0c)").den(re(a + b), "Γ(a+b+0c)");
        let args = |g: &GammaProduct| -> Vec<Vec<Complex64>> {
            vec![
                g.numerator.iter().map(|t| t.arg).collect(),
                g.denominator.iter().map(|t| t.arg).collect(),
            ]
        };
        prop_assert_eq!(args(&p), args(&beta));
        prop_assert_eq!(p.prefactor, beta.prefactor);
    }

    #[test]
    fn single_level_multisets_are_ordering_free(raised in 1usize..3, ones in 0usize..3, p in params(1)) {
        let mut idx = vec![2; raised];
        idx.extend(std::iter::repeat_n(1, ones));
        let mut reference = None;
        for perm in permutations(&idx) {
            let v = match generalized_selberg(&Channel::new(perm, 1).unwrap(), &p) {
                Err(Error::NonGeneric(_)) => return Ok(()),
                other => other.unwrap(),
            };
            let r = *reference.get_or_insert(v);
            prop_assert!(rel(v, r) < 1e-10);
        }
    }

    #[test]
    fn mixed_levels_differ_by_the_inversion_phase(p in params(2)) {
        let mut reference = None;
        for perm in permutations(&[3, 2, 1]) {
            let ch = Channel::new(perm, 2).unwrap();
            let v = match generalized_selberg(&ch, &p) {
                Err(Error::NonGeneric(_)) => return Ok(()),
                other => other.unwrap(),
            };
            let corrected = v * Complex64::from_polar(1.0, -PI * ch.level_inversions() as f64 / p.kappa);
            let r = *reference.get_or_insert(corrected);
            prop_assert!(rel(corrected, r) < 1e-10);
        }
    }
}
