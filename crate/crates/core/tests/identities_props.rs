use std::collections::BTreeMap;

use proptest::prelude::*;
use selberg::channel::GenericWeight;
use selberg::identities::{four_index_check, three_index_check, three_index_summands};
use selberg::{Complex64, Error};

fn kappa() -> impl Strategy<Value = f64> {
    (2.1f64..9.7).prop_filter("irrational-looking", |k| {
        !selberg::sampling::near_small_rational(*k)
    })
}

fn frac() -> impl Strategy<Value = f64> {
    (0.1f64..0.9, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The right side only depends on `B`, so trading `(λ,α₁)` for
    /// `(λ,α₁+α₂)` (i.e. `A ↦ B − A`) must leave the sum unchanged.
    #[test]
    fn four_index_role_exchange(kappa in kappa(), a in frac(), b in frac(), m in 0usize..5) {
        let lam = GenericWeight::new(vec![a * kappa, -b * kappa]);
        let mapped = GenericWeight::new(vec![(b - a) * kappa, -b * kappa]);
        let (r1, r2) = match (four_index_check(&lam, kappa, m), four_index_check(&mapped, kappa, m)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(Error::NonGeneric(_)), _) | (_, Err(Error::NonGeneric(_))) => return Ok(()),
            (x, y) => { x.unwrap(); y.unwrap(); unreachable!() }
        };
        prop_assert!((r1.rhs - r2.rhs).norm() <= 1e-14 * r1.rhs.norm());
        prop_assert!((r1.rel_residual - r2.rel_residual).abs() <= 1e-12);
        prop_assert!((r1.lhs - r2.lhs).norm() <= 1e-12 * r1.rhs.norm());
    }

    #[test]
    fn three_index_grouping(kappa in kappa(), a in frac(), m in 1usize..7) {
        let full = three_index_summands(a, kappa, m).unwrap();
        let mut by_m3: BTreeMap<usize, Vec<(usize, usize, Complex64)>> = BTreeMap::new();
        for ([m1, m2, m3], v) in &full {
            prop_assert_eq!(m1 + m2 + m3, m);
            by_m3.entry(*m3).or_default().push((*m1, *m2, *v));
        }
        // each m₃-slice is exactly the two-index set of total M − m₃
        for (m3, slice) in &by_m3 {
            let mut pairs: Vec<(usize, usize)> = slice.iter().map(|(x, y, _)| (*x, *y)).collect();
            pairs.sort_unstable();
            let want: Vec<(usize, usize)> = (0..=m - m3).map(|x| (x, m - m3 - x)).collect();
            prop_assert_eq!(pairs, want);
        }
        prop_assert_eq!(by_m3.len(), m + 1);
        let largest = full.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
        let flat: Complex64 = full.iter().map(|(_, v)| *v).sum();
        let grouped: Complex64 = by_m3.values().map(|s| s.iter().map(|(_, _, v)| *v).sum::<Complex64>()).sum();
        prop_assert!((flat - grouped).norm() <= 1e-14 * largest);
    }

    #[test]
    fn checks_are_pure(kappa in kappa(), a in frac(), b in frac(), m in 1usize..5) {
        let lam2 = GenericWeight::new(vec![a * kappa, -b * kappa]);
        if let Ok(r) = four_index_check(&lam2, kappa, m) {
            prop_assert_eq!(r, four_index_check(&lam2, kappa, m).unwrap());
        }
        let lam1 = GenericWeight::new(vec![-a * kappa]);
        if let Ok(r) = three_index_check(&lam1, kappa, m) {
            prop_assert_eq!(r, three_index_check(&lam1, kappa, m).unwrap());
        }
    }
}
