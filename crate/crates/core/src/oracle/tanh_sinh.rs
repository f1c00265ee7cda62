//! Tanh-sinh rules on `[0,1]^m`: `u = 1/(1+e^{−π sinh s})`, with `ln u` and
//! `ln(1−u)` carried separately so integrands can be evaluated in the log
//! domain right up to the endpoints.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{QuadResult, QuadratureConfig};
use crate::error::{Error, Result};
use crate::special::{Accumulator, Precision};

/// Largest `|s|`; keeps `u`, `1−u` above `e^{−700}`.
fn s_max() -> f64 {
    (700.0 / PI).asinh()
}

fn softplus(y: f64) -> f64 {
    y.max(0.0) + (-y.abs()).exp().ln_1p()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub u: f64,
    /// `1 − u`, accurate near both ends.
    pub w: f64,
    pub ln_u: f64,
    pub ln_w: f64,
    /// Log of the rule weight, step included.
    pub ln_weight: f64,
}

impl Node {
    fn at(s: f64, h: f64) -> Self {
        let x = PI * s.sinh();
        let ln_u = -softplus(-x);
        let ln_w = -softplus(x);
        Node {
            u: ln_u.exp(),
            w: ln_w.exp(),
            ln_u,
            ln_w,
            ln_weight: h.ln() + (PI * s.cosh()).ln() + ln_u + ln_w,
        }
    }
}

pub(crate) fn nodes(level: u32) -> Vec<Node> {
    let h = (0.5f64).powi(level as i32);
    let m = (s_max() / h).floor() as i64;
    (-m..=m).map(|i| Node::at(i as f64 * h, h)).collect()
}

pub(crate) struct LevelSum {
    pub value: Complex64,
    pub magnitude: f64,
    pub evaluations: u64,
}

fn level_sum<F>(dims: usize, nodes: &[Node], precision: Precision, f: &F) -> Result<LevelSum>
where
    F: Fn(&[&Node]) -> Complex64 + Sync,
{
    let n = nodes.len();
    let partial: Vec<(Complex64, f64, bool)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut acc = Accumulator::new(precision);
            let mut magnitude = 0.0;
            let mut finite = true;
            let mut idx = vec![0usize; dims - 1];
            let mut refs: Vec<&Node> = vec![&nodes[first]; dims];
            loop {
                for (slot, &i) in idx.iter().enumerate() {
                    refs[slot + 1] = &nodes[i];
                }
                let lf = f(&refs);
                // a log of −∞ is an exact zero of the integrand
                if lf.re != f64::NEG_INFINITY {
                    let weight: f64 = refs.iter().map(|nd| nd.ln_weight).sum();
                    let v = (lf + weight).exp();
                    if v.re.is_finite() && v.im.is_finite() {
                        acc.add(v);
                        magnitude += v.norm();
                    } else {
                        finite = false;
                    }
                }
                // odometer over the remaining coordinates
                let mut d = 0;
                while d < idx.len() {
                    idx[d] += 1;
                    if idx[d] < n {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
                if d == idx.len() {
                    break;
                }
            }
            (acc.value(), magnitude, finite)
        })
        .collect();
    if partial.iter().any(|p| !p.2) {
        return Err(Error::NonConvergence(
            "integrand is not finite at a quadrature node".into(),
        ));
    }
    let mut acc = Accumulator::new(precision);
    let mut magnitude = 0.0;
    for (v, m, _) in &partial {
        acc.add(*v);
        magnitude += m;
    }
    Ok(LevelSum {
        value: acc.value(),
        magnitude,
        evaluations: (n as u64).pow(dims as u32),
    })
}

/// Refines the tanh-sinh level until successive estimates agree within the
/// configured tolerances; the reported error is that last difference.
pub(crate) fn refine<S>(dims: usize, cfg: &QuadratureConfig, mut level_sum: S) -> Result<QuadResult>
where
    S: FnMut(&[Node]) -> Result<LevelSum>,
{
    cfg.validate()?;
    if dims == 0 {
        return Err(Error::InvalidParameter(
            "cube dimension must be positive".into(),
        ));
    }
    let min_level = if dims == 1 { 3 } else { 2 };
    let mut previous: Option<Complex64> = None;
    let mut evaluations = 0u64;
    let mut last_diff = f64::INFINITY;
    for level in 0..=cfg.max_depth {
        let nodes = nodes(level);
        let count = (nodes.len() as u64).saturating_pow(dims as u32);
        if count > cfg.max_evaluations {
            break;
        }
        let sum = level_sum(&nodes)?;
        evaluations += sum.evaluations;
        if let Some(prev) = previous {
            last_diff = (sum.value - prev).norm();
            if level >= min_level && cfg.accepts(last_diff, sum.value) {
                return Ok(QuadResult {
                    value: sum.value,
                    error_estimate: last_diff.max(8.0 * f64::EPSILON * sum.magnitude),
                    level,
                    evaluations,
                    monte_carlo: false,
                });
            }
        }
        previous = Some(sum.value);
    }
    Err(Error::NonConvergence(format!(
        "tanh-sinh in {dims}D: last level difference {last_diff:e} above tolerance (abs {}, rel {}); \
         max_depth {} / evaluation cap {}",
        cfg.abs_tol, cfg.rel_tol, cfg.max_depth, cfg.max_evaluations
    )))
}

/// Integrates `exp(f(u))` over the unit cube, `f` returning the log of the
/// integrand (`−∞` for an exact zero).
pub fn integrate_cube<F>(dims: usize, cfg: &QuadratureConfig, f: F) -> Result<QuadResult>
where
    F: Fn(&[&Node]) -> Complex64 + Sync,
{
    refine(dims, cfg, |nodes| level_sum(dims, nodes, cfg.precision, &f))
}

pub fn integrate_unit<F>(cfg: &QuadratureConfig, f: F) -> Result<QuadResult>
where
    F: Fn(&Node) -> Complex64 + Sync,
{
    integrate_cube(1, cfg, |n| f(n[0]))
}
