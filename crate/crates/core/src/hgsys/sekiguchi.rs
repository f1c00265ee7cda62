//! The generating operator
//! `D(ζ,k) = V^{−1} Σ_w det(w) ∏_j z_j^{N−w(j)} ∏_i (ζ + z_i∂_i + (wδ)_i k)`,
//! `V = ∏_{i<j}(z_i − z_j)`, applied to truncated series.
//!
//! `V^{−1} = (−1)^{N(N−1)/2} z^{−(0,1,…,N−1)} ∏_{i<j}(1 − z_i/z_j)^{−1}`, so the
//! division is exact term by term in the chamber.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::laplace::pair_step;
use super::series::{total_degree, TruncatedSeries};
use crate::channel::ExponentVector;
use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 4;

/// Choice of `δ` in `(wδ)_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaConvention {
    /// `δ = (N−1, N−2, …, 0)`.
    Staircase,
    /// `δ = ((N−1)/2, (N−3)/2, …, (1−N)/2)`, i.e. `κρ`.
    HalfSum,
}

/// How a permutation acts on `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaAction {
    /// `(wδ)_i = δ_{w^{−1}(i)}`.
    Position,
    /// `(wδ)_i = δ_{w(i)}`.
    Value,
}

impl DeltaConvention {
    pub fn delta(self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| match self {
                DeltaConvention::Staircase => (n - 1 - i) as f64,
                DeltaConvention::HalfSum => (n as f64 - 1.0) / 2.0 - i as f64,
            })
            .collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut w = rest.clone();
            w.insert(pos, n - 1);
            out.push(w);
        }
    }
    out.sort();
    out
}

fn sign(w: &[usize]) -> f64 {
    let inv = (0..w.len())
        .flat_map(|i| ((i + 1)..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .count();
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Elementary symmetric polynomials `e_0 … e_n` of `vals`.
fn elementary(vals: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); vals.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (m, v) in vals.iter().enumerate() {
        for r in (1..=m + 1).rev() {
            e[r] = e[r] + e[r - 1] * v;
        }
    }
    e
}

fn check_points(s: &TruncatedSeries) -> Result<usize> {
    let n = s.big_n();
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(Error::Unsupported(format!(
            "Sekiguchi operators are implemented for 2 ≤ N ≤ {MAX_POINTS}, got N = {n}"
        )));
    }
    Ok(n)
}

/// The operators `D_{N−r}` multiplying `ζ^r` (`r = 0..=N`), applied to `s`.
pub fn apply_coefficients(
    s: &TruncatedSeries,
    k: f64,
    convention: DeltaConvention,
    action: DeltaAction,
) -> Result<Vec<TruncatedSeries>> {
    let n = check_points(s)?;
    let dims = n - 1;
    let delta = convention.delta(n);
    let mut parts = vec![TruncatedSeries::zero(s.base_exponent().clone(), s.order()); n + 1];
    for w in permutations(n) {
        let det = sign(&w);
        let mut inverse = vec![0; n];
        for (i, &wi) in w.iter().enumerate() {
            inverse[wi] = i;
        }
        let shift: Vec<Complex64> = (0..n)
            .map(|i| {
                let di = match action {
                    DeltaAction::Position => delta[inverse[i]],
                    DeltaAction::Value => delta[w[i]],
                };
                Complex64::new(di * k, 0.0)
            })
            .collect();
        // z^{N−w(j)} z^{−(j−1)} = x^{c}, c_i = Σ_{j≤i} (N − 1 − w(j) − j) ≥ 0
        let mut c = vec![0u32; dims];
        let mut acc: i64 = 0;
        for i in 0..dims {
            acc += n as i64 - 1 - w[i] as i64 - i as i64;
            c[i] = u32::try_from(acc)
                .map_err(|_| Error::Precondition("negative monomial shift".into()))?;
        }
        for (d, &coef) in s.iter() {
            let target: Vec<u32> = d.iter().zip(&c).map(|(a, b)| a + b).collect();
            if total_degree(&target) > s.order() {
                continue;
            }
            let vals: Vec<Complex64> = s
                .exponent_at(d)
                .iter()
                .zip(&shift)
                .map(|(v, sh)| v + sh)
                .collect();
            let e = elementary(&vals);
            for r in 0..=n {
                parts[r].add_at(&target, det * e[n - r] * coef)?;
            }
        }
    }
    let vandermonde_sign = if (n * (n - 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let mut out = Vec::with_capacity(n + 1);
    for mut part in parts {
        for i in 0..n {
            for j in (i + 1)..n {
                part = part.divide_by_one_minus(&pair_step(dims, i, j))?;
            }
        }
        out.push(part.scale(Complex64::new(vandermonde_sign, 0.0)));
    }
    Ok(out)
}

/// `D(ζ,k) s`.
pub fn apply_sekiguchi(
    s: &TruncatedSeries,
    zeta: Complex64,
    k: f64,
    convention: DeltaConvention,
    action: DeltaAction,
) -> Result<TruncatedSeries> {
    let parts = apply_coefficients(s, k, convention, action)?;
    let mut out = TruncatedSeries::zero(s.base_exponent().clone(), s.order());
    let mut power = Complex64::new(1.0, 0.0);
    for part in &parts {
        out = out.add(&part.scale(power))?;
        power *= zeta;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    pub zeta: Complex64,
    pub eigenvalue: Complex64,
    /// `max_d |(Dφ − Eφ)_d|` over `|d| ≤ max_degree`.
    pub abs_residual: f64,
    /// `abs_residual / max(1, max_d |Eφ_d|)`.
    pub residual: f64,
    pub max_degree: u32,
    pub convention: DeltaConvention,
    pub action: DeltaAction,
}

fn residual_report(
    lhs: &TruncatedSeries,
    target: &TruncatedSeries,
    zeta: Complex64,
    eigenvalue: Complex64,
    convention: DeltaConvention,
    action: DeltaAction,
) -> Result<EigenReport> {
    let max_degree = target.order().saturating_sub(2);
    let abs_residual = lhs.sub(target)?.max_abs(max_degree);
    Ok(EigenReport {
        zeta,
        eigenvalue,
        abs_residual,
        residual: abs_residual / target.max_abs(max_degree).max(1.0),
        max_degree,
        convention,
        action,
    })
}

/// Residual of `D(ζ,k) φ = ∏(ζ + η_i) φ` over degrees `≤ order − 2`.
pub fn sekiguchi_eigencheck(
    s: &TruncatedSeries,
    eta: &ExponentVector,
    zeta: Complex64,
    k: f64,
    convention: DeltaConvention,
    action: DeltaAction,
) -> Result<EigenReport> {
    if eta.len() != s.big_n() {
        return Err(Error::DimensionMismatch {
            left: eta.len(),
            right: s.big_n(),
        });
    }
    let eigenvalue: Complex64 = eta.entries().iter().map(|e| zeta + e).product();
    let lhs = apply_sekiguchi(s, zeta, k, convention, action)?;
    residual_report(
        &lhs,
        &s.scale(eigenvalue),
        zeta,
        eigenvalue,
        convention,
        action,
    )
}

/// One report per coefficient operator `D_{N−r}`, eigenvalue `e_{N−r}(η)`.
pub fn coefficient_eigenchecks(
    s: &TruncatedSeries,
    eta: &ExponentVector,
    k: f64,
    convention: DeltaConvention,
    action: DeltaAction,
) -> Result<Vec<EigenReport>> {
    let n = check_points(s)?;
    let e = elementary(eta.entries());
    let parts = apply_coefficients(s, k, convention, action)?;
    parts
        .iter()
        .enumerate()
        .map(|(r, part)| {
            let ev = e[n - r];
            residual_report(
                part,
                &s.scale(ev),
                Complex64::new(r as f64, 0.0),
                ev,
                convention,
                action,
            )
        })
        .collect()
}

/// Runs every convention/action pair and returns the reports, best first.
pub fn select_convention(
    s: &TruncatedSeries,
    eta: &ExponentVector,
    zeta: Complex64,
    k: f64,
) -> Result<Vec<EigenReport>> {
    let mut out = Vec::new();
    for convention in [DeltaConvention::Staircase, DeltaConvention::HalfSum] {
        for action in [DeltaAction::Position, DeltaAction::Value] {
            out.push(sekiguchi_eigencheck(s, eta, zeta, k, convention, action)?);
        }
    }
    out.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    Ok(out)
}
