//! The channel integrand
//! `∏ t^{(λ,−α)/κ−1} ∏ (z_l − t)^{−1/κ} ∏ (t_j − t_i)^{2/κ}` (level-one
//! variables) realized on the few cycles that can be written down directly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::loop_contour::LoopRule;
use super::tanh_sinh::{integrate_cube, Node};
use super::{quad_loop, CycleSpec, PowerProduct, QuadResult, QuadratureConfig};
use crate::channel::Channel;
use crate::closedform::Params;
use crate::error::{Error, Result};

const MAX_REAL_VARIABLES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelCycle {
    /// One variable on a loop based at `z_j` enclosing `0, z₁, …, z_{j−1}`.
    Loop,
    /// `z_{j−1} < t_j < z_j` (with `z₀ = 0`), one variable per point.
    Interlaced,
    /// `0 < t₁ < … < t_N < z₁`.
    OrderedSimplex,
    /// `N = 2`: `0 < t₁ < z₁`, and `t₂ = z₂/s` with `s` on a loop around 0
    /// based at 1, the continuation of `t₂ ∈ (z₂, ∞)`.
    Exterior,
}

const SUPPORTED: &str = "supported: channels with a single integration variable (one i_j = 2, the rest 1) \
     on a loop; all-equal channels i_j = 2 with n = 1, N ≤ 3, on the interlaced or ordered-simplex real cycle; \
     the all-equal channel (2,2) on the exterior cycle";

fn check_points(ch: &Channel, z: &[f64]) -> Result<()> {
    if z.len() != ch.big_n() {
        return Err(Error::DimensionMismatch {
            left: z.len(),
            right: ch.big_n(),
        });
    }
    let ordered = z.windows(2).all(|w| w[0] < w[1]);
    if !(ordered && z.first().is_some_and(|&v| v > 0.0) && z.iter().all(|v| v.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < z₁ < … < z_N, got {z:?}"
        )));
    }
    Ok(())
}

fn single_variable_position(ch: &Channel) -> Option<usize> {
    let raised: Vec<usize> = (0..ch.big_n()).filter(|&j| ch.indices()[j] > 1).collect();
    match raised.as_slice() {
        [j] if ch.indices()[*j] == 2 => Some(*j),
        _ => None,
    }
}

fn is_level_two_all_equal(ch: &Channel) -> bool {
    ch.big_n() >= 1 && ch.big_n() <= MAX_REAL_VARIABLES && ch.indices().iter().all(|&i| i == 2)
}

/// Integral of the channel integrand on its natural cycle: a loop for
/// single-variable channels, the exterior cycle for `(2,2)` (on which the
/// integral is an exact monomial) and the interlaced real cycle for `(2,2,2)`.
pub fn quad_channel_integral(
    ch: &Channel,
    p: &Params,
    z: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let cycle = if single_variable_position(ch).is_some() {
        ChannelCycle::Loop
    } else if ch.indices() == [2, 2] {
        ChannelCycle::Exterior
    } else if is_level_two_all_equal(ch) {
        ChannelCycle::Interlaced
    } else {
        return Err(Error::Unsupported(format!(
            "channel {:?}; {SUPPORTED}",
            ch.indices()
        )));
    };
    quad_channel_integral_on(ch, p, z, cycle, cfg)
}

pub fn quad_channel_integral_on(
    ch: &Channel,
    p: &Params,
    z: &[f64],
    cycle: ChannelCycle,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    check_points(ch, z)?;
    let a = -p.lambda.pairings[0] / p.kappa;
    let k = p.k();
    match cycle {
        ChannelCycle::Loop => {
            let j = single_variable_position(ch).ok_or_else(|| {
                Error::Unsupported(format!("loop cycle for {:?}; {SUPPORTED}", ch.indices()))
            })?;
            let mut f = PowerProduct::new().real_term(0.0, a - 1.0);
            for &zl in z {
                f = f.real_term(zl, -k);
            }
            let enclosed = z[..j].iter().map(|&v| Complex64::new(v, 0.0)).collect();
            quad_loop(
                &f,
                &CycleSpec::loop_around_origin(Complex64::new(z[j], 0.0), enclosed),
                cfg,
            )
        }
        ChannelCycle::Exterior => {
            if ch.indices() != [2, 2] {
                return Err(Error::Unsupported(format!(
                    "exterior cycle for {:?}; {SUPPORTED}",
                    ch.indices()
                )));
            }
            exterior(a, k, z[0], z[1], cfg)
        }
        ChannelCycle::Interlaced | ChannelCycle::OrderedSimplex => {
            if !is_level_two_all_equal(ch) {
                return Err(Error::Unsupported(format!(
                    "real cycle for {:?}; {SUPPORTED}",
                    ch.indices()
                )));
            }
            let real = RealIntegrand { a1: a - 1.0, k, z };
            let dims = z.len();
            if cycle == ChannelCycle::Interlaced {
                integrate_cube(dims, cfg, |nd| Complex64::new(real.interlaced(nd), 0.0))
            } else {
                integrate_cube(dims, cfg, |nd| Complex64::new(real.simplex(nd), 0.0))
            }
        }
    }
}

fn exterior(a: f64, k: f64, z1: f64, z2: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    // The real segment carries t₁^{a−1}.
    if a <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "exterior cycle needs a = −(λ,α)/κ > 0 for convergence at t₁ = 0, got {a}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let s_loop = LoopRule::new(
        &PowerProduct::new()
            .real_term(0.0, -a - 1.0)
            .real_term(1.0, -k),
        &CycleSpec::loop_around_origin(one, vec![]),
    )?;
    let (ln_z1, ln_z2) = (z1.ln(), z2.ln());
    // dt₂ = −z₂ s^{−2} ds
    let constant = Complex64::new(a * ln_z2 + ln_z1, std::f64::consts::PI);
    integrate_cube(2, cfg, |nd| {
        let (t1n, sn) = (nd[0], nd[1]);
        let t1 = z1 * t1n.u;
        let real = (a - 1.0) * (ln_z1 + t1n.ln_u) - k * (ln_z1 + t1n.ln_w) - k * (z2 - t1).ln();
        let (s, log_s) = s_loop.eval(sn);
        constant + real + log_s - k * (one - s * (z1 / z2)).ln()
            + 2.0 * k * (one - s * (t1 / z2)).ln()
    })
}

struct RealIntegrand<'a> {
    a1: f64,
    k: f64,
    z: &'a [f64],
}

impl RealIntegrand<'_> {
    /// `t_j = z_{j−1} + L_j u_j`, `L_j = z_j − z_{j−1}`; every difference is a
    /// sum of non-negative pieces.
    fn interlaced(&self, nd: &[&Node]) -> f64 {
        let z = self.z;
        let n = z.len();
        let zp = |j: usize| if j == 0 { 0.0 } else { z[j - 1] };
        let len = |j: usize| z[j] - zp(j);
        let mut log = 0.0;
        for j in 0..n {
            let (lj, u, w) = (len(j), nd[j].u, nd[j].w);
            let ln_l = lj.ln();
            log += ln_l;
            let ln_t = if j == 0 {
                ln_l + nd[j].ln_u
            } else {
                (zp(j) + lj * u).ln()
            };
            log += self.a1 * ln_t;
            for l in 0..n {
                let d = if l == j {
                    ln_l + nd[j].ln_w
                } else if l + 1 == j {
                    ln_l + nd[j].ln_u
                } else if l > j {
                    (z[l] - z[j] + lj * w).ln()
                } else {
                    (zp(j) - z[l] + lj * u).ln()
                };
                log -= self.k * d;
            }
            for i in 0..j {
                let d = lj * u + (zp(j) - z[i]) + len(i) * nd[i].w;
                log += 2.0 * self.k * d.ln();
            }
        }
        log
    }

    /// `t_j = z₁ s_j`, `s_N = u_N`, `s_j = u_j s_{j+1}`.
    fn simplex(&self, nd: &[&Node]) -> f64 {
        let z = self.z;
        let n = z.len();
        let z1 = z[0];
        let ln_z1 = z1.ln();
        let mut ln_s = [0.0; MAX_REAL_VARIABLES];
        let mut q = [0.0; MAX_REAL_VARIABLES];
        for j in (0..n).rev() {
            if j + 1 == n {
                ln_s[j] = nd[j].ln_u;
                q[j] = nd[j].w;
            } else {
                ln_s[j] = nd[j].ln_u + ln_s[j + 1];
                q[j] = nd[j].w + nd[j].u * q[j + 1];
            }
        }
        let mut log = n as f64 * ln_z1;
        for j in 0..n {
            if j >= 1 {
                log += ln_s[j];
            }
            log += self.a1 * (ln_z1 + ln_s[j]);
            for &zl in z {
                log -= self.k * ((zl - z1) + z1 * q[j]).ln();
            }
            // r = 1 − u_i⋯u_{j−1} for i < j
            let mut r = 0.0;
            for i in (0..j).rev() {
                r = nd[i].w + nd[i].u * r;
                log += 2.0 * self.k * (ln_z1 + ln_s[j] + r.ln());
            }
        }
        log
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollapseReport {
    pub deltas: Vec<f64>,
    pub values: Vec<Complex64>,
    pub extrapolated: Complex64,
    pub error_estimate: f64,
}

fn aitken(xs: &[Complex64]) -> Vec<Complex64> {
    xs.windows(3)
        .map(|w| {
            let d2 = w[2] - 2.0 * w[1] + w[0];
            if d2.norm() <= f64::EPSILON * w[2].norm() {
                w[2]
            } else {
                w[2] - (w[2] - w[1]) * (w[2] - w[1]) / d2
            }
        })
        .collect()
}

/// Ordered-simplex integral at `z_j = 1 − (N−j)δ` on the ladder
/// `δ = δ₀, δ₀/2, …`, extrapolated to `δ → 0` by iterated Aitken Δ².
pub fn collapse_simplex(
    ch: &Channel,
    p: &Params,
    delta0: f64,
    steps: usize,
    cfg: &QuadratureConfig,
) -> Result<CollapseReport> {
    if !is_level_two_all_equal(ch) {
        return Err(Error::Unsupported(format!(
            "collapse for {:?}; {SUPPORTED}",
            ch.indices()
        )));
    }
    let n = ch.big_n();
    if !(delta0 > 0.0 && (n as f64 - 1.0) * delta0 < 1.0) || steps < 3 {
        return Err(Error::InvalidParameter(format!(
            "need 0 < (N−1)δ₀ < 1 and at least 3 steps, got δ₀={delta0}, steps={steps}"
        )));
    }
    let mut deltas = Vec::with_capacity(steps);
    let mut values = Vec::with_capacity(steps);
    for s in 0..steps {
        let delta = delta0 * 0.5f64.powi(s as i32);
        let z: Vec<f64> = (0..n).map(|j| 1.0 - (n - 1 - j) as f64 * delta).collect();
        let v = quad_channel_integral_on(ch, p, &z, ChannelCycle::OrderedSimplex, cfg)?.value;
        deltas.push(delta);
        values.push(v);
    }
    let mut table = values.clone();
    let mut error_estimate = f64::INFINITY;
    while table.len() >= 3 {
        let next = aitken(&table);
        error_estimate = (next[next.len() - 1] - table[table.len() - 1]).norm();
        table = next;
    }
    if table.len() == 2 {
        error_estimate = error_estimate.min((table[1] - table[0]).norm());
    }
    Ok(CollapseReport {
        deltas,
        values,
        extrapolated: *table.last().expect("ladder is non-empty"),
        error_estimate,
    })
}
