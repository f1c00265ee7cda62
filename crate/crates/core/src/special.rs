//! Complex special functions: principal-branch log-Γ, labelled Γ-products
//! evaluated in the log domain, and the Gauss series `₂F₁`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_POLE_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_2k / (2k (2k−1)), k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Floating-point mode for long log-domain accumulations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    /// Binary double with compensated (Neumaier) accumulation of every sum.
    Extended,
}

impl Precision {
    /// Process-wide default, read once from `SELBERG_PRECISION`.
    pub fn from_env() -> Precision {
        static MODE: OnceLock<Precision> = OnceLock::new();
        *MODE.get_or_init(|| match std::env::var("SELBERG_PRECISION").as_deref() {
            Ok("extended") => Precision::Extended,
            _ => Precision::Double,
        })
    }

    pub fn parse(s: &str) -> Result<Precision> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(Error::Input(format!(
                "unknown precision {other:?}; expected double|extended"
            ))),
        }
    }
}

/// Running complex sum, optionally compensated.
#[derive(Clone, Copy, Debug)]
pub struct Accumulator {
    sum: Complex64,
    comp: Complex64,
    compensated: bool,
}

impl Accumulator {
    pub fn new(precision: Precision) -> Self {
        Self {
            sum: Complex64::new(0.0, 0.0),
            comp: Complex64::new(0.0, 0.0),
            compensated: precision == Precision::Extended,
        }
    }

    pub fn add(&mut self, v: Complex64) {
        if !self.compensated {
            self.sum += v;
            return;
        }
        self.sum.re = neumaier(self.sum.re, v.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, v.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, v: f64, comp: &mut f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}

/// Distance from `z` to the nearest non-positive integer.
pub fn pole_distance(z: Complex64) -> f64 {
    let nearest = z.re.round().min(0.0);
    (z - Complex64::new(nearest, 0.0)).norm()
}

pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    log_gamma_with(z, DEFAULT_POLE_TOL, Precision::from_env())
}

/// Principal branch of `log Γ(z)`, analytic off `(−∞, 0]`.
///
/// Shifts `z` upward until `Re ≥ 15`, subtracting principal logarithms of the
/// shifts, then applies the Stirling series through `B_20`.
pub fn log_gamma_with(z: Complex64, pole_tol: f64, precision: Precision) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("log Γ of non-finite {z}")));
    }
    if pole_distance(z) <= pole_tol {
        return Err(Error::PoleProximity {
            arg: z,
            tol: pole_tol,
            context: "log_gamma".into(),
        });
    }
    let mut acc = Accumulator::new(precision);
    let mut w = z;
    while w.re < 15.0 {
        acc.add(-w.ln());
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    acc.add((w - 0.5) * w.ln());
    acc.add(-w);
    acc.add(Complex64::new(LN_SQRT_2PI, 0.0));
    acc.add(series * inv);
    Ok(acc.value())
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// One `Γ(arg)` factor, labelled for diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaTerm {
    pub arg: Complex64,
    pub label: String,
}

impl GammaTerm {
    pub fn new(arg: Complex64, label: impl Into<String>) -> Self {
        Self {
            arg,
            label: label.into(),
        }
    }
}

/// `prefactor · ∏ Γ(num) / ∏ Γ(den)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaProduct {
    pub numerator: Vec<GammaTerm>,
    pub denominator: Vec<GammaTerm>,
    pub prefactor: Complex64,
    pub pole_tol: f64,
}

impl Default for GammaProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaProduct {
    pub fn new() -> Self {
        Self {
            numerator: Vec::new(),
            denominator: Vec::new(),
            prefactor: Complex64::new(1.0, 0.0),
            pole_tol: DEFAULT_POLE_TOL,
        }
    }

    pub fn num(mut self, arg: Complex64, label: impl Into<String>) -> Self {
        self.numerator.push(GammaTerm::new(arg, label));
        self
    }

    pub fn den(mut self, arg: Complex64, label: impl Into<String>) -> Self {
        self.denominator.push(GammaTerm::new(arg, label));
        self
    }

    pub fn times(mut self, factor: Complex64) -> Self {
        self.prefactor *= factor;
        self
    }

    /// Concatenates factors and multiplies prefactors.
    pub fn compose(mut self, other: GammaProduct) -> Self {
        self.numerator.extend(other.numerator);
        self.denominator.extend(other.denominator);
        self.prefactor *= other.prefactor;
        self.pole_tol = self.pole_tol.max(other.pole_tol);
        self
    }

    pub fn recip(self) -> Self {
        Self {
            numerator: self.denominator,
            denominator: self.numerator,
            prefactor: self.prefactor.inv(),
            pole_tol: self.pole_tol,
        }
    }

    /// First argument, in listed order, that sits on a pole.
    pub fn check_poles(&self) -> Result<()> {
        for (side, terms) in [
            ("numerator", &self.numerator),
            ("denominator", &self.denominator),
        ] {
            for t in terms.iter() {
                if pole_distance(t.arg) <= self.pole_tol {
                    return Err(Error::PoleProximity {
                        arg: t.arg,
                        tol: self.pole_tol,
                        context: format!("{side} factor {}", t.label),
                    });
                }
            }
        }
        Ok(())
    }

    /// `Σ log Γ(num) − Σ log Γ(den)`, summed in listed order, without the
    /// prefactor.
    pub fn log_gamma_sum(&self, precision: Precision) -> Result<Complex64> {
        self.check_poles()?;
        let mut acc = Accumulator::new(precision);
        for t in &self.numerator {
            acc.add(log_gamma_with(t.arg, self.pole_tol, precision)?);
        }
        for t in &self.denominator {
            acc.add(-log_gamma_with(t.arg, self.pole_tol, precision)?);
        }
        Ok(acc.value())
    }

    pub fn eval_with(&self, precision: Precision) -> Result<Complex64> {
        let s = self.log_gamma_sum(precision)?;
        if self.prefactor == Complex64::new(0.0, 0.0) {
            return Ok(self.prefactor);
        }
        Ok((s + self.prefactor.ln()).exp())
    }

    /// `log` of the value (any branch), finite unless the prefactor is zero.
    pub fn log_value(&self, precision: Precision) -> Result<Complex64> {
        Ok(self.log_gamma_sum(precision)? + self.prefactor.ln())
    }
}

pub fn eval_gamma_product(p: &GammaProduct) -> Result<Complex64> {
    p.eval_with(Precision::from_env())
}

/// `Σ_m (a)_m (b)_m / ((c)_m m!) x^m`, truncated once a term drops below
/// `tol·|partial sum|`.
pub fn gauss_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: Complex64,
    tol: f64,
) -> Result<Complex64> {
    gauss_2f1_with(a, b, c, x, tol, DEFAULT_MAX_TERMS)
}

pub fn gauss_2f1_with(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: Complex64,
    tol: f64,
    max_terms: usize,
) -> Result<Complex64> {
    if pole_distance(c) <= DEFAULT_POLE_TOL {
        return Err(Error::PoleProximity {
            arg: c,
            tol: DEFAULT_POLE_TOL,
            context: "₂F₁ lower parameter".into(),
        });
    }
    if x.norm() > 0.9 {
        return Err(Error::Precondition(format!(
            "₂F₁ series needs |x| ≤ 0.9, got |x| = {}",
            x.norm()
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 0..max_terms {
        let mf = m as f64;
        term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * x;
        sum += term;
        if term.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!(
        "₂F₁({a}, {b}; {c}; {x}) did not reach tol {tol:e} in {max_terms} terms"
    )))
}

/// Coefficients `(a)_m (b)_m / ((c)_m m!)` for `m = 0..=order`.
pub fn gauss_2f1_coefficients(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    order: usize,
) -> Result<Vec<Complex64>> {
    if pole_distance(c) <= DEFAULT_POLE_TOL {
        return Err(Error::PoleProximity {
            arg: c,
            tol: DEFAULT_POLE_TOL,
            context: "₂F₁ lower parameter".into(),
        });
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut term = Complex64::new(1.0, 0.0);
    out.push(term);
    for m in 0..order {
        let mf = m as f64;
        term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0));
        out.push(term);
    }
    Ok(out)
}

/// `π / sin(πz)` via the reflection formula, for tests and identity chains.
pub fn reflection(z: Complex64) -> Complex64 {
    Complex64::new(PI, 0.0) / (z * PI).sin()
}
