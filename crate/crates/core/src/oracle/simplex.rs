//! The classical Selberg integrand on `0 ≤ t₁ ≤ … ≤ t_m ≤ 1`.
//!
//! Cube coordinates `t_m = u_m`, `t_k = u_k t_{k+1}` turn every singular face
//! into a coordinate face. Complements are built recursively
//! (`1 − t_k = (1−u_k) + u_k(1 − t_{k+1})`) so nothing cancels near `t = 1`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use rayon::prelude::*;

use super::tanh_sinh::{refine, LevelSum, Node};
use super::{QuadResult, QuadratureConfig};
use crate::closedform::SelbergParams;
use crate::error::{Error, Result};
use crate::special::{log_gamma, Accumulator, Precision};

const MAX_VARIABLES: usize = 3;
const MC_SAMPLES: usize = 2_000_000;
const MC_TOLERANCE: f64 = 1e-3;

struct Integrand {
    a1: Complex64,
    b1: Complex64,
    c2: Complex64,
    m: usize,
}

/// Running state for the coordinates already fixed (indices `k+1..=m`).
#[derive(Clone, Copy)]
struct State {
    ln_t: [f64; MAX_VARIABLES + 1],
    q: f64,
    /// `r[j] = 1 − u_{k+1}⋯u_{j−1}`, zero for `j = k+1`.
    r: [f64; MAX_VARIABLES + 1],
    log: Complex64,
}

impl Integrand {
    fn step(&self, k: usize, nd: &Node, st: &State) -> State {
        let mut next = *st;
        let ln_tk = nd.ln_u + if k == self.m { 0.0 } else { st.ln_t[k + 1] };
        let q = if k == self.m {
            nd.w
        } else {
            nd.w + nd.u * st.q
        };
        next.ln_t[k] = ln_tk;
        next.q = q;
        let mut log = st.log + self.a1 * ln_tk + self.b1 * q.ln() + nd.ln_weight;
        if k >= 2 {
            log += ln_tk;
        }
        for j in (k + 1)..=self.m {
            let r = nd.w + nd.u * st.r[j];
            next.r[j] = r;
            log += self.c2 * (st.ln_t[j] + r.ln());
        }
        next.r[k] = 0.0;
        next.log = log;
        next
    }

    fn descend(
        &self,
        k: usize,
        nodes: &[Node],
        st: &State,
        acc: &mut Accumulator,
        magnitude: &mut f64,
    ) {
        for nd in nodes {
            let next = self.step(k, nd, st);
            if k == 1 {
                let v = next.log.exp();
                acc.add(v);
                *magnitude += v.norm();
            } else {
                self.descend(k - 1, nodes, &next, acc, magnitude);
            }
        }
    }

    fn level(&self, nodes: &[Node], precision: Precision) -> Result<LevelSum> {
        let start = State {
            ln_t: [0.0; MAX_VARIABLES + 1],
            q: 0.0,
            r: [0.0; MAX_VARIABLES + 1],
            log: Complex64::new(0.0, 0.0),
        };
        let partial: Vec<(Complex64, f64)> = nodes
            .par_iter()
            .map(|nd| {
                let mut acc = Accumulator::new(precision);
                let mut magnitude = 0.0;
                let st = self.step(self.m, nd, &start);
                if self.m == 1 {
                    let v = st.log.exp();
                    acc.add(v);
                    magnitude += v.norm();
                } else {
                    self.descend(self.m - 1, nodes, &st, &mut acc, &mut magnitude);
                }
                (acc.value(), magnitude)
            })
            .collect();
        let mut acc = Accumulator::new(precision);
        let mut magnitude = 0.0;
        for (v, m) in partial {
            acc.add(v);
            magnitude += m;
        }
        let value = acc.value();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonConvergence("Selberg integrand overflowed".into()));
        }
        Ok(LevelSum {
            value,
            magnitude,
            evaluations: (nodes.len() as u64).pow(self.m as u32),
        })
    }

    /// Exponent of `u_k` near `u_k = 0` (Jacobian included).
    fn corner_exponent(&self, k: usize) -> f64 {
        let kf = k as f64;
        let pairs = (kf * (kf - 1.0)) / 2.0;
        (kf * self.a1.re + pairs * self.c2.re + (kf - 1.0)) + 1.0
    }

    /// Exponent of `1 − u_k` near `u_k = 1`.
    fn edge_exponent(&self, k: usize) -> f64 {
        if k == self.m {
            self.b1.re + 1.0
        } else {
            self.c2.re + 1.0
        }
    }

    /// Importance sampling with `u_k ~ Beta(p_k, q_k)`, matching the corner
    /// and edge exponents of each cube coordinate.
    fn monte_carlo(&self, seed: u64, precision: Precision) -> Result<QuadResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shapes: Vec<(f64, f64)> = (1..=self.m)
            .map(|k| {
                (
                    self.corner_exponent(k).max(0.05),
                    self.edge_exponent(k).max(0.05),
                )
            })
            .collect();
        let mut dists = Vec::with_capacity(self.m);
        let mut ln_beta = Vec::with_capacity(self.m);
        for &(p, q) in &shapes {
            dists.push(
                Beta::new(p, q)
                    .map_err(|e| Error::NonConvergence(format!("Monte Carlo sampler: {e}")))?,
            );
            let lb = log_gamma(Complex64::new(p, 0.0))? + log_gamma(Complex64::new(q, 0.0))?
                - log_gamma(Complex64::new(p + q, 0.0))?;
            ln_beta.push(lb.re);
        }
        let mut acc = Accumulator::new(precision);
        let mut sq = 0.0;
        for _ in 0..MC_SAMPLES {
            let mut st = State {
                ln_t: [0.0; MAX_VARIABLES + 1],
                q: 0.0,
                r: [0.0; MAX_VARIABLES + 1],
                log: Complex64::new(0.0, 0.0),
            };
            for k in (1..=self.m).rev() {
                let (p, q) = shapes[k - 1];
                let u: f64 = dists[k - 1].sample(&mut rng);
                let w = 1.0 - u;
                if u <= 0.0 || w <= 0.0 {
                    // both ends carry zero density and zero weight
                    st.log = Complex64::new(f64::NEG_INFINITY, 0.0);
                    continue;
                }
                let (ln_u, ln_w) = (u.ln(), w.ln());
                // reciprocal of the Beta density
                let nd = Node {
                    u,
                    w,
                    ln_u,
                    ln_w,
                    ln_weight: ln_beta[k - 1] - (p - 1.0) * ln_u - (q - 1.0) * ln_w,
                };
                st = self.step(k, &nd, &st);
            }
            let v = st.log.exp();
            acc.add(v);
            sq += v.norm_sqr();
        }
        let n = MC_SAMPLES as f64;
        let mean = acc.value() / n;
        let var = (sq / n - mean.norm_sqr()).max(0.0);
        Ok(QuadResult {
            value: mean,
            error_estimate: 3.0 * (var / n).sqrt(),
            level: 0,
            evaluations: MC_SAMPLES as u64,
            monte_carlo: true,
        })
    }
}

/// Ordered-domain Selberg integral of
/// `∏ t_i^{a−1}(1−t_i)^{b−1} ∏_{i<j}(t_j−t_i)^{2c}` for `m ≤ 3`.
///
/// For `m = 3`, if the tanh-sinh levels do not settle within the depth and
/// evaluation caps, falls back to Monte Carlo importance sampling; such
/// results carry `monte_carlo = true` and are only good to about `1e−3`.
pub fn quad_simplex_selberg(sp: &SelbergParams, cfg: &QuadratureConfig) -> Result<QuadResult> {
    if sp.m == 0 || sp.m > MAX_VARIABLES {
        return Err(Error::Unsupported(format!(
            "ordered-simplex quadrature supports 1 ≤ m ≤ {MAX_VARIABLES}, got m = {}",
            sp.m
        )));
    }
    if !(sp.a.re > 0.0 && sp.b.re > 0.0 && sp.c.re >= 0.0) {
        return Err(Error::Precondition(format!(
            "real-domain integral needs Re a > 0, Re b > 0, Re c ≥ 0; got a={}, b={}, c={}",
            sp.a, sp.b, sp.c
        )));
    }
    let f = Integrand {
        a1: sp.a - 1.0,
        b1: sp.b - 1.0,
        c2: sp.c * 2.0,
        m: sp.m,
    };
    match refine(sp.m, cfg, |nodes| f.level(nodes, cfg.precision)) {
        Err(Error::NonConvergence(msg)) if sp.m == MAX_VARIABLES => {
            let r = f.monte_carlo(cfg.seed, cfg.precision)?;
            if r.error_estimate > MC_TOLERANCE * r.value.norm() {
                return Err(Error::NonConvergence(format!(
                    "{msg}; Monte Carlo fallback also above {MC_TOLERANCE:e}"
                )));
            }
            Ok(r)
        }
        other => other,
    }
}
