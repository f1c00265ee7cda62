//! The second-order operator
//! `L = Σ (z_i∂_i)² − k Σ_{i<j} (z_j+z_i)/(z_j−z_i) (z_i∂_i − z_j∂_j)`
//! on truncated series, and its Harish-Chandra eigen-series.
//!
//! In the chamber `|z_i| < |z_j|`: `(z_j+z_i)/(z_j−z_i) = 1 + 2Σ_{r≥1} y^r`,
//! `y = z_i/z_j = x_i⋯x_{j−1}`.

use num_complex::Complex64;

use super::series::{multi_indices, root_vector, total_degree, MultiIndex, TruncatedSeries};
use crate::channel::ExponentVector;
use crate::error::{Error, Result};
use crate::rootsys::rho;

/// Smallest divisor tolerated by the coefficient recursion.
pub const SMALL_DIVISOR: f64 = 1e-10;

/// Multi-index of `y_{ij} = z_i/z_j` (0-based `i < j`).
pub fn pair_step(dims: usize, i: usize, j: usize) -> MultiIndex {
    (0..dims).map(|p| u32::from(p >= i && p < j)).collect()
}

fn bilinear(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn apply_l(s: &TruncatedSeries, k: f64) -> Result<TruncatedSeries> {
    let n = s.big_n();
    if n < 2 {
        return Err(Error::Precondition(format!("L needs N ≥ 2, got {n}")));
    }
    let dims = n - 1;
    let order = s.order();
    let mut out = TruncatedSeries::zero(s.base_exponent().clone(), order);
    for (d, &c) in s.iter() {
        let nu = s.exponent_at(d);
        let mut diag = bilinear(&nu, &nu);
        for i in 0..n {
            for j in (i + 1)..n {
                let diff = nu[i] - nu[j];
                diag -= k * diff;
                let step = pair_step(dims, i, j);
                let room = order - total_degree(d);
                let per = total_degree(&step);
                let mut target = d.clone();
                for _ in 0..(room / per) {
                    for (t, st) in target.iter_mut().zip(&step) {
                        *t += st;
                    }
                    out.add_at(&target, -2.0 * k * diff * c)?;
                }
            }
        }
        out.add_at(d, diag * c)?;
    }
    Ok(out)
}

/// `(η,η) − (ρ,ρ)`.
pub fn l_eigenvalue(eta: &ExponentVector, k: f64) -> Result<Complex64> {
    let r = rho(eta.len(), 1.0 / k)?;
    Ok(eta.dot(eta) - r.dot(&r))
}

/// The series `z^{η+ρ}(1 + …)` with `L φ = ((η,η) − (ρ,ρ)) φ` to the given
/// total degree.
pub fn hc_series(eta: &ExponentVector, k: f64, order: u32) -> Result<TruncatedSeries> {
    if !(k.is_finite() && k != 0.0) {
        return Err(Error::InvalidParameter(format!(
            "coupling k must be finite and nonzero, got {k}"
        )));
    }
    let n = eta.len();
    let r = rho(n, 1.0 / k)?;
    let mu = eta.add(&r)?;
    let mut s = TruncatedSeries::monomial(mu, order);
    if n < 2 {
        return Ok(s);
    }
    let dims = n - 1;
    let two_eta: Vec<Complex64> = eta.entries().iter().map(|e| 2.0 * e).collect();
    for d in multi_indices(dims, order).into_iter().skip(1) {
        let beta = root_vector(&d, n);
        let beta_c: Vec<Complex64> = beta.iter().map(|&b| Complex64::new(b, 0.0)).collect();
        let shifted: Vec<Complex64> = beta_c.iter().zip(&two_eta).map(|(b, e)| b + e).collect();
        let divisor = bilinear(&beta_c, &shifted);
        if divisor.norm() < SMALL_DIVISOR {
            return Err(Error::NonGeneric(format!(
                "(β, β+2η) = {divisor} at multi-index {d:?}"
            )));
        }
        let mut rhs = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                let step = pair_step(dims, i, j);
                let mut prev = d.clone();
                loop {
                    if !prev.iter().zip(&step).all(|(a, b)| a >= b) {
                        break;
                    }
                    for (p, st) in prev.iter_mut().zip(&step) {
                        *p -= st;
                    }
                    let c = s.coeff(&prev);
                    if c != Complex64::default() {
                        let nu = s.exponent_at(&prev);
                        rhs += (nu[i] - nu[j]) * c;
                    }
                }
            }
        }
        s.set(&d, 2.0 * k * rhs / divisor)?;
    }
    Ok(s)
}

/// `max |(Lφ − Eφ)_d|` over `|d| ≤ order − 1`.
pub fn l_residual(s: &TruncatedSeries, eta: &ExponentVector, k: f64) -> Result<f64> {
    let e = l_eigenvalue(eta, k)?;
    let diff = apply_l(s, k)?.sub(&s.scale(e))?;
    Ok(diff.max_abs(s.order().saturating_sub(1)))
}
