//! Harish-Chandra series for the trigonometric hypergeometric system: the
//! operator `L`, the Sekiguchi family `D(ζ,k)` and eigen-residual checks.

mod laplace;
mod sekiguchi;
mod series;

pub use laplace::{apply_l, hc_series, l_eigenvalue, l_residual, pair_step, SMALL_DIVISOR};
pub use sekiguchi::{
    apply_coefficients, apply_sekiguchi, coefficient_eigenchecks, sekiguchi_eigencheck,
    select_convention, DeltaAction, DeltaConvention, EigenReport, MAX_POINTS,
};
pub use series::{
    multi_indices, root_vector, total_degree, MultiIndex, SeriesDump, TruncatedSeries,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{self, Channel, GenericWeight};
use crate::error::Result;
use crate::special::gauss_2f1_coefficients;

/// The `δ` reading fixed by the eigenchecks.
pub const SELECTED_CONVENTION: DeltaConvention = DeltaConvention::HalfSum;
pub const SELECTED_ACTION: DeltaAction = DeltaAction::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesComparison {
    /// `(a, b, c)` of the matching Gauss series.
    pub parameters: [Complex64; 3],
    pub max_deviation: f64,
    pub order: u32,
}

/// Two-point Harish-Chandra series of the channel `I = (3,2)` (rank 2) against
/// `₂F₁(1/κ, b; b − 1/κ + 1; x)`, `b = (λ,−α₂)/κ`.
pub fn series_vs_2f1(lambda: &GenericWeight, kappa: f64, order: u32) -> Result<SeriesComparison> {
    let ch = Channel::new(vec![3, 2], 2)?;
    let mu = channel::mu(&ch, lambda, kappa)?;
    let eta = channel::eta(&mu, kappa)?;
    channel::require_generic(&eta, channel::DEFAULT_GENERICITY_TOL)?;
    let k = 1.0 / kappa;
    let s = hc_series(&eta, k, order)?;
    let b = mu.entries()[0] - mu.entries()[1];
    let a = Complex64::new(k, 0.0);
    let c = b - k + 1.0;
    let gauss = gauss_2f1_coefficients(a, b, c, order as usize)?;
    let max_deviation = gauss
        .iter()
        .enumerate()
        .map(|(m, g)| (s.coeff(&[m as u32]) - g).norm())
        .fold(0.0, f64::max);
    Ok(SeriesComparison {
        parameters: [a, b, c],
        max_deviation,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one_channel_matches_gauss() {
        let kappa = 3.7;
        let b = 0.43;
        let lam = GenericWeight::new(vec![0.61, -b * kappa]);
        let r = series_vs_2f1(&lam, kappa, 8).unwrap();
        assert!((r.parameters[1].re - b).abs() < 1e-14);
        assert!(r.max_deviation < 1e-10, "{r:?}");
        assert_eq!(series_vs_2f1(&lam, kappa, 0).unwrap().max_deviation, 0.0);
    }
}
