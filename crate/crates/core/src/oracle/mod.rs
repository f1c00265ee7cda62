//! Independent numerical oracles: doubly-exponential quadrature on ordered
//! simplices, loop contours with continuous branch tracking, small channel
//! integrals and exponent probing.

mod channel_integral;
mod loop_contour;
mod probe;
mod simplex;
mod tanh_sinh;

pub use channel_integral::{
    collapse_simplex, quad_channel_integral, quad_channel_integral_on, ChannelCycle, CollapseReport,
};
pub use loop_contour::quad_loop;
pub use probe::{probe_exponents, probe_with, ProbeReport, MIN_SEPARATION};
pub use simplex::quad_simplex_selberg;
pub use tanh_sinh::{integrate_cube, integrate_unit, Node};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::Precision;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Finest tanh-sinh level; the step is `2^{-level}`.
    pub max_depth: u32,
    pub precision: Precision,
    /// Seed for the Monte Carlo fallback.
    pub seed: u64,
    /// Cap on integrand evaluations per refinement level.
    pub max_evaluations: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_depth: 10,
            precision: Precision::Double,
            seed: 0,
            max_evaluations: 120_000_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must be positive (abs_tol={}, rel_tol={})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth == 0 || self.max_depth > 20 {
            return Err(Error::InvalidParameter(format!(
                "max_depth {} outside 1..=20",
                self.max_depth
            )));
        }
        Ok(())
    }

    pub(crate) fn accepts(&self, diff: f64, value: Complex64) -> bool {
        diff <= self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub level: u32,
    pub evaluations: u64,
    /// Set when the value comes from the Monte Carlo fallback.
    pub monte_carlo: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    OrderedSimplex,
    LoopAroundOrigin,
    NestedLoops,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub kind: CycleKind,
    pub base_point: Complex64,
    #[serde(default)]
    pub enclosed_points: Vec<Complex64>,
}

impl CycleSpec {
    pub fn loop_around_origin(base_point: Complex64, enclosed_points: Vec<Complex64>) -> Self {
        Self {
            kind: CycleKind::LoopAroundOrigin,
            base_point,
            enclosed_points,
        }
    }
}

/// `(t − p)^e` (enclosed points and the origin) or `(p − t)^e` (the base point
/// and points outside the loop).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub point: Complex64,
    pub exponent: Complex64,
}

/// `scale · ∏ (factor at point)^{exponent}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerProduct {
    pub terms: Vec<PowerTerm>,
    #[serde(default = "unit")]
    pub scale: Complex64,
}

fn unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl PowerProduct {
    pub fn new() -> Self {
        Self {
            terms: Vec::new(),
            scale: unit(),
        }
    }

    pub fn term(mut self, point: Complex64, exponent: Complex64) -> Self {
        self.terms.push(PowerTerm { point, exponent });
        self
    }

    pub fn real_term(self, point: f64, exponent: f64) -> Self {
        self.term(Complex64::new(point, 0.0), Complex64::new(exponent, 0.0))
    }
}

impl Default for PowerProduct {
    fn default() -> Self {
        Self::new()
    }
}
