//! Closed loops starting and ending at a base point and encircling the origin
//! (plus any enclosed points) anticlockwise.
//!
//! Path: `t(θ) = b·ρ(θ)·e^{iθ}`, `ρ(θ) = ρ_R + (1−ρ_R)cos²(θ/2)`, `θ ∈ [0, 2π]`.
//! Every factor's logarithm is written as its principal value at `θ = 0⁺`
//! plus an increment that stays continuous along the whole path.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::tanh_sinh::{integrate_cube, Node};
use super::{CycleKind, CycleSpec, PowerProduct, QuadResult, QuadratureConfig};
use crate::error::{Error, Result};

const SAME_POINT: f64 = 1e-14;

#[derive(Clone, Copy, Debug)]
enum Role {
    Origin,
    Base,
    Inside,
    Outside,
}

#[derive(Clone, Copy, Debug)]
struct Factor {
    role: Role,
    point: Complex64,
    exponent: Complex64,
    /// Principal log of the factor at `θ = 0`, minus the part the path
    /// formula reproduces there.
    offset: Complex64,
}

struct Path {
    base: Complex64,
    log_base: Complex64,
    rho_r: f64,
}

struct PathPoint {
    t: Complex64,
    log_t: Complex64,
    /// `log(1 − t/b)`, accurate near both ends of the loop.
    log_one_minus_tau: Complex64,
    log_dt: Complex64,
}

impl Path {
    fn at(&self, nd: &Node) -> PathPoint {
        // s = sin(θ/2), c = cos(θ/2), from whichever of u, 1−u is small
        let (s, c) = if nd.u <= 0.5 {
            ((PI * nd.u).sin(), (PI * nd.u).cos())
        } else {
            ((PI * nd.w).sin(), -(PI * nd.w).cos())
        };
        let theta = 2.0 * PI * nd.u;
        let one_r = 1.0 - self.rho_r;
        let rho = 1.0 - one_r * s * s;
        let e = Complex64::new(c * c - s * s, 2.0 * s * c);
        let t = self.base * rho * e;
        let log_t = self.log_base + Complex64::new(rho.ln(), theta);
        let inner = Complex64::new(s * (one_r + 2.0 * rho), -2.0 * rho * c);
        let log_one_minus_tau = s.ln() + inner.ln();
        // dt/dθ = b e^{iθ}(ρ' + iρ), ρ' = −(1−ρ_R) s c; dθ = 2π du
        let dt = self.base * e * Complex64::new(-one_r * s * c, rho) * (2.0 * PI);
        PathPoint {
            t,
            log_t,
            log_one_minus_tau,
            log_dt: dt.ln(),
        }
    }
}

impl Factor {
    fn classify(point: Complex64, exponent: Complex64, cyc: &CycleSpec) -> Result<Self> {
        let base = cyc.base_point;
        let near = |a: Complex64, b: Complex64| (a - b).norm() <= SAME_POINT * (1.0 + b.norm());
        let (role, offset) = if point.norm() <= SAME_POINT {
            (Role::Origin, Complex64::new(0.0, 0.0))
        } else if near(point, base) {
            (Role::Base, Complex64::new(0.0, 0.0))
        } else if cyc.enclosed_points.iter().any(|&p| near(point, p)) {
            let off = (base - point).ln() - base.ln() - (1.0 - point / base).ln();
            (Role::Inside, off)
        } else if point.norm() > base.norm() * (1.0 + SAME_POINT) {
            let off = (point - base).ln() - (1.0 - base / point).ln();
            (Role::Outside, off)
        } else {
            return Err(Error::InvalidParameter(format!(
                "point {point} is neither enclosed nor outside the loop based at {base}"
            )));
        };
        Ok(Self {
            role,
            point,
            exponent,
            offset,
        })
    }

    fn log_value(&self, path: &Path, pp: &PathPoint) -> Complex64 {
        match self.role {
            Role::Origin => pp.log_t,
            Role::Base => path.log_base + pp.log_one_minus_tau,
            Role::Inside => pp.log_t + (1.0 - self.point / pp.t).ln() + self.offset,
            Role::Outside => (1.0 - pp.t / self.point).ln() + self.offset,
        }
    }
}

/// A loop together with the classified factors of a power product on it.
pub(crate) struct LoopRule {
    path: Path,
    factors: Vec<Factor>,
}

impl LoopRule {
    pub(crate) fn new(integrand: &PowerProduct, cyc: &CycleSpec) -> Result<Self> {
        if cyc.kind != CycleKind::LoopAroundOrigin {
            return Err(Error::Unsupported(format!(
                "loop quadrature realizes loop_around_origin cycles only, got {:?}",
                cyc.kind
            )));
        }
        let base = cyc.base_point;
        let inner_max = cyc
            .enclosed_points
            .iter()
            .map(|p| p.norm())
            .fold(0.0, f64::max);
        if base.norm().partial_cmp(&inner_max) != Some(std::cmp::Ordering::Greater)
            || base.norm() == 0.0
        {
            return Err(Error::InvalidParameter(format!(
                "loop base {base} must lie farther from 0 than every enclosed point (max {inner_max})"
            )));
        }
        let mut radius = (0.5 * base.norm()).max(1.1 * inner_max);
        if radius >= base.norm() {
            radius = 0.5 * (base.norm() + inner_max);
        }
        let path = Path {
            base,
            log_base: base.ln(),
            rho_r: radius / base.norm(),
        };
        let factors = integrand
            .terms
            .iter()
            .map(|t| Factor::classify(t.point, t.exponent, cyc))
            .collect::<Result<Vec<_>>>()?;
        for f in &factors {
            if matches!(f.role, Role::Base) && f.exponent.re <= -1.0 {
                return Err(Error::Precondition(format!(
                    "non-integrable endpoint: exponent {} at the base point",
                    f.exponent
                )));
            }
        }
        Ok(Self { path, factors })
    }

    /// Point on the path and the log of `∏ factors · dt/du` there.
    pub(crate) fn eval(&self, nd: &Node) -> (Complex64, Complex64) {
        let pp = self.path.at(nd);
        let mut log = pp.log_dt;
        for f in &self.factors {
            log += f.exponent * f.log_value(&self.path, &pp);
        }
        (pp.t, log)
    }
}

/// `∮ scale·∏(factor)^{exponent} dt` along the loop described by `cyc`.
///
/// Factor orientation: `t^e` at the origin, `(t − p)^e` for enclosed points,
/// `(p − t)^e` for the base point and for points outside the loop.
pub fn quad_loop(
    integrand: &PowerProduct,
    cyc: &CycleSpec,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let rule = LoopRule::new(integrand, cyc)?;
    let mut r = integrate_cube(1, cfg, |nd| rule.eval(nd[0]).1)?;
    r.value *= integrand.scale;
    r.error_estimate *= integrand.scale.norm();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::contour_beta;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn unit_loop() -> CycleSpec {
        CycleSpec::loop_around_origin(c(1.0), vec![])
    }

    #[test]
    fn power_of_t() {
        let cfg = QuadratureConfig::default();
        let f = PowerProduct::new().real_term(0.0, -0.5);
        let r = quad_loop(&f, &unit_loop(), &cfg).unwrap();
        assert!((r.value - c(-4.0)).norm() < 1e-10, "{}", r.value);
    }

    #[test]
    fn analytic_integrand_vanishes() {
        let cfg = QuadratureConfig::with_tolerances(1e-13, 1e-12);
        let f = PowerProduct::new().real_term(0.0, 2.0);
        let r = quad_loop(&f, &unit_loop(), &cfg).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn loop_beta() {
        let cfg = QuadratureConfig::default();
        let (a, b) = (0.37, 0.81);
        let f = PowerProduct::new()
            .real_term(0.0, a - 1.0)
            .real_term(1.0, b - 1.0);
        let r = quad_loop(&f, &unit_loop(), &cfg).unwrap();
        let want = contour_beta(c(a), c(b)).unwrap();
        assert!(
            (r.value - want).norm() / want.norm() < 1e-9,
            "{} vs {want}",
            r.value
        );
    }

    #[test]
    fn enclosed_and_outside_points() {
        // integer exponents at p and q make those factors polynomial, so the
        // loop splits into contour Betas
        let cfg = QuadratureConfig::default();
        let (a, b, p) = (0.6, 0.45, 0.3);
        let cyc = CycleSpec::loop_around_origin(c(1.0), vec![c(p)]);
        let with_p = PowerProduct::new()
            .real_term(0.0, a - 1.0)
            .real_term(p, 1.0)
            .real_term(1.0, b - 1.0);
        let lhs = quad_loop(&with_p, &cyc, &cfg).unwrap().value;
        let rhs = contour_beta(c(a + 1.0), c(b)).unwrap() - p * contour_beta(c(a), c(b)).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-9);

        let outside = PowerProduct::new()
            .real_term(0.0, a - 1.0)
            .real_term(1.0, b - 1.0)
            .real_term(3.0, 1.0);
        let lhs = quad_loop(&outside, &unit_loop(), &cfg).unwrap().value;
        let rhs = 3.0 * contour_beta(c(a), c(b)).unwrap() - contour_beta(c(a + 1.0), c(b)).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-9);
    }

    #[test]
    fn rejects_bad_cycles() {
        let cfg = QuadratureConfig::default();
        let f = PowerProduct::new().real_term(0.0, -0.5);
        let bad = CycleSpec::loop_around_origin(c(1.0), vec![c(2.0)]);
        assert!(quad_loop(&f, &bad, &cfg).is_err());
        let stray = PowerProduct::new().real_term(0.7, 0.5);
        assert!(quad_loop(&stray, &unit_loop(), &cfg).is_err());
        let steep = PowerProduct::new().real_term(1.0, -1.2);
        assert!(matches!(
            quad_loop(&steep, &unit_loop(), &cfg),
            Err(Error::Precondition(_))
        ));
    }
}
