//! Closed-form values: the leading asymptotic coefficient of a channel
//! integral, the value at unity of a normalized Harish-Chandra solution, the
//! generalized Selberg integral built from both, and the one- and two-variable
//! classical comparisons.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::channel::{self, Channel, ExponentVector, GenericWeight, DEFAULT_GENERICITY_TOL};
use crate::error::{Error, Result};
use crate::rootsys::inner;
use crate::special::{eval_gamma_product, pole_distance, GammaProduct, DEFAULT_POLE_TOL};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn expi(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `λ` and `κ` (with `k = 1/κ`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub lambda: GenericWeight,
    pub kappa: f64,
    #[serde(default = "default_genericity_tol")]
    pub genericity_tol: f64,
}

fn default_genericity_tol() -> f64 {
    DEFAULT_GENERICITY_TOL
}

impl Params {
    pub fn new(pairings: Vec<f64>, kappa: f64) -> Result<Self> {
        channel::check_kappa(kappa)?;
        Ok(Self {
            lambda: GenericWeight::new(pairings),
            kappa,
            genericity_tol: DEFAULT_GENERICITY_TOL,
        })
    }

    /// `n = 1` parameters from `a = (λ, −α₁)/κ`.
    pub fn from_level_one(a: f64, kappa: f64) -> Result<Self> {
        Self::new(vec![-a * kappa], kappa)
    }

    pub fn k(&self) -> f64 {
        1.0 / self.kappa
    }

    /// `q = e^{2πi/κ}`; carried for labelling only.
    pub fn q(&self) -> Complex64 {
        expi(2.0 * PI / self.kappa)
    }

    /// `(λ, −α₁)/κ`.
    pub fn a_level_one(&self) -> f64 {
        -self.lambda.pairings[0] / self.kappa
    }
}

/// Exponents of the classical ordered-domain Selberg integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelbergParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub m: usize,
}

impl SelbergParams {
    pub fn real(a: f64, b: f64, c: f64, m: usize) -> Self {
        Self {
            a: re(a),
            b: re(b),
            c: re(c),
            m,
        }
    }
}

fn checked_eta(ch: &Channel, p: &Params) -> Result<ExponentVector> {
    let mu = channel::mu(ch, &p.lambda, p.kappa)?;
    let eta = channel::eta(&mu, p.kappa)?;
    channel::require_generic(&eta, p.genericity_tol)?;
    Ok(eta)
}

/// The leading-coefficient product with one `(j, p)` factor pair per
/// integration level:
///
/// `exp(πi[X/κ − (p−1)/κ]) · Γ(1−1/κ)·2πi / (Γ(X/κ − p/κ + 1) Γ(−X/κ + (p−1)/κ + 1))`
///
/// with `X = (λ + h_{i₁} + … + h_{i_{j−1}}, −(α_{i_j−p} + … + α_{i_j−1}))`.
pub fn leading_coefficient_product(ch: &Channel, p: &Params) -> Result<GammaProduct> {
    channel::check_kappa(p.kappa)?;
    let amb = ch.ambient()?;
    let sums = channel::partial_h_sums(ch, &amb);
    let k = p.k();
    let mut prod = GammaProduct::new();
    for (j0, &ij) in ch.indices().iter().enumerate() {
        for level in 1..ij {
            let (lo, hi) = (ij - level, ij - 1);
            let roots = amb.root_sum(lo, hi);
            let exact = -inner(&sums[j0], &roots)?.to_f64().unwrap_or(f64::NAN);
            let x = (-p.lambda.pair_root_sum(lo, hi) + exact) / p.kappa;
            let lf = level as f64;
            let tag = format!("(j={},p={level})", j0 + 1);
            prod = prod
                .times(expi(PI * (x - (lf - 1.0) * k)) * TWO_PI_I)
                .num(re(1.0 - k), format!("Γ(1−1/κ) {tag}"))
                .den(re(x - lf * k + 1.0), format!("Γ(X/κ − p/κ + 1) {tag}"))
                .den(
                    re(-x + (lf - 1.0) * k + 1.0),
                    format!("Γ(−X/κ + (p−1)/κ + 1) {tag}"),
                );
        }
    }
    Ok(prod)
}

/// Constant multiplying `z^μ` deep in the chamber `0 < z₁ ≪ … ≪ z_N`.
pub fn leading_coefficient(ch: &Channel, p: &Params) -> Result<Complex64> {
    checked_eta(ch, p)?;
    eval_gamma_product(&leading_coefficient_product(ch, p)?)
}

/// `∏_{α∈Σ₊} Γ((η,α)+1)/Γ((η,α)−1/κ+1)` divided by the same product at `η = −ρ`.
pub fn opdam_factor_product(eta: &ExponentVector, kappa: f64) -> Result<GammaProduct> {
    channel::check_kappa(kappa)?;
    let k = 1.0 / kappa;
    let e = eta.entries();
    let mut prod = GammaProduct::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let x = e[i] - e[j];
            let r = (j - i) as f64 * k;
            let tag = format!("α=e{}−e{}", i + 1, j + 1);
            prod = prod
                .num(x + 1.0, format!("Γ((η,α)+1) {tag}"))
                .den(x - k + 1.0, format!("Γ((η,α)−1/κ+1) {tag}"))
                .den(re(1.0 - r), format!("Γ(1−(ρ,α)) {tag}"))
                .num(re(1.0 - r - k), format!("Γ(1−(ρ,α)−1/κ) {tag}"));
        }
    }
    Ok(prod)
}

/// Value at `z = (1, …, 1)` of the normalized Harish-Chandra solution with
/// spectral vector `η`.
pub fn opdam_factor(eta: &ExponentVector, kappa: f64, big_n: usize) -> Result<Complex64> {
    if eta.len() != big_n {
        return Err(Error::DimensionMismatch {
            left: eta.len(),
            right: big_n,
        });
    }
    eval_gamma_product(&opdam_factor_product(eta, kappa)?)
}

/// The three factors of the generalized Selberg value, each evaluated on its
/// own, and their product evaluated in a single log-domain pass.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelbergBreakdown {
    pub phase: Complex64,
    pub leading_coefficient: Complex64,
    pub opdam_factor: Complex64,
    pub value: Complex64,
}

pub fn generalized_selberg_product(ch: &Channel, p: &Params) -> Result<GammaProduct> {
    let eta = checked_eta(ch, p)?;
    let phase = channel::analyze(ch, p.kappa)?.phase;
    Ok(leading_coefficient_product(ch, p)?
        .compose(opdam_factor_product(&eta, p.kappa)?)
        .times(phase))
}

/// `A · c_lead(ch) · φ(μ − ρ; 1)`: the integral of the channel's integrand with
/// every `z_i` set to 1, over the collapsed cycle.
pub fn generalized_selberg(ch: &Channel, p: &Params) -> Result<Complex64> {
    eval_gamma_product(&generalized_selberg_product(ch, p)?)
}

pub fn generalized_selberg_breakdown(ch: &Channel, p: &Params) -> Result<SelbergBreakdown> {
    let eta = checked_eta(ch, p)?;
    let phase = channel::analyze(ch, p.kappa)?.phase;
    Ok(SelbergBreakdown {
        phase,
        leading_coefficient: eval_gamma_product(&leading_coefficient_product(ch, p)?)?,
        opdam_factor: opdam_factor(&eta, p.kappa, ch.big_n())?,
        value: generalized_selberg(ch, p)?,
    })
}

/// `∏_{j=0}^{m−1} Γ(a+jc)Γ(b+jc)Γ((j+1)c) / (Γ(a+b+(m+j−1)c) Γ(c))`, the
/// integral over `0 ≤ t₁ ≤ … ≤ t_m ≤ 1`. For `m = 1` the `c`-factors are
/// omitted (they cancel identically).
pub fn classical_selberg_product(sp: &SelbergParams) -> Result<GammaProduct> {
    if sp.m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let SelbergParams { a, b, c, m } = *sp;
    let mut prod = GammaProduct::new();
    for j in 0..m {
        let jf = j as f64;
        prod = prod
            .num(a + c * jf, format!("Γ(a+{j}c)"))
            .num(b + c * jf, format!("Γ(b+{j}c)"))
            .den(
                a + b + c * (m as f64 + jf - 1.0),
                format!("Γ(a+b+{}c)", m + j - 1),
            );
        if m > 1 {
            prod = prod
                .num(c * (jf + 1.0), format!("Γ({}c)", j + 1))
                .den(c, "Γ(c)");
        }
    }
    Ok(prod)
}

pub fn classical_selberg_ordered(sp: &SelbergParams) -> Result<Complex64> {
    eval_gamma_product(&classical_selberg_product(sp)?)
}

/// Loop based at 1 enclosing 0 anticlockwise, of `t^{a−1}(1−t)^{b−1}`:
/// `e^{πia}·2πi·Γ(b) / (Γ(1−a)Γ(a+b))`. Vanishes for positive integer `a`.
pub fn contour_beta_product(a: Complex64, b: Complex64) -> GammaProduct {
    GammaProduct::new()
        .times((Complex64::new(0.0, PI) * a).exp() * TWO_PI_I)
        .num(b, "Γ(b)")
        .den(1.0 - a, "Γ(1−a)")
        .den(a + b, "Γ(a+b)")
}

pub fn contour_beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    if pole_distance(1.0 - a) <= DEFAULT_POLE_TOL {
        // t^{a−1} is single valued and regular inside the loop.
        if pole_distance(b) <= DEFAULT_POLE_TOL {
            return Err(Error::PoleProximity {
                arg: b,
                tol: DEFAULT_POLE_TOL,
                context: "contour_beta Γ(b)".into(),
            });
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    eval_gamma_product(&contour_beta_product(a, b))
}

fn level_one_x(lambda: &GenericWeight, kappa: f64) -> Result<f64> {
    channel::check_kappa(kappa)?;
    if lambda.pairings.len() != 1 {
        return Err(Error::DimensionMismatch {
            left: lambda.pairings.len(),
            right: 1,
        });
    }
    Ok(lambda.coordinate_difference(2, 1) / kappa)
}

/// Factor converting the ordered real-domain two-variable integral into the
/// nested-loop one; product form
/// `e^{πi/κ}2cos(π/κ) · e^{πi(x+1/κ)}2i sin(π(x+1/κ)) · e^{πix}2i sin(πx)`
/// with `x = (λ₂ − λ₁)/κ`.
pub fn contour_conversion_m2(lambda: &GenericWeight, kappa: f64) -> Result<Complex64> {
    let x = level_one_x(lambda, kappa)?;
    let k = 1.0 / kappa;
    let two_i = Complex64::new(0.0, 2.0);
    Ok(expi(PI * k)
        * 2.0
        * (PI * k).cos()
        * expi(PI * (x + k))
        * two_i
        * (PI * (x + k)).sin()
        * expi(PI * x)
        * two_i
        * (PI * x).sin())
}

/// The same factor as a sum of phases:
/// `(e^{2πix} − 1)(e^{2πi(x+1/κ)} − e^{2πi/κ} + e^{2πi(x+2/κ)} − 1)`.
pub fn contour_conversion_m2_phases(lambda: &GenericWeight, kappa: f64) -> Result<Complex64> {
    let x = level_one_x(lambda, kappa)?;
    let k = 1.0 / kappa;
    let one = re(1.0);
    let e = |t: f64| expi(2.0 * PI * t);
    Ok((e(x) - one) * (e(x + k) - e(k) + e(x + 2.0 * k) - one))
}

/// Two nested loops on `(2,2)`, `n = 1`:
/// `e^{2πi(x+1/κ)} Γ(1−1/κ)² (2πi)² / (Γ(1−x−1/κ)Γ(1−x)Γ(x+1)Γ(x+1−1/κ))`.
pub fn nested_loop_m2_product(lambda: &GenericWeight, kappa: f64) -> Result<GammaProduct> {
    let x = level_one_x(lambda, kappa)?;
    let k = 1.0 / kappa;
    Ok(GammaProduct::new()
        .times(expi(2.0 * PI * (x + k)) * TWO_PI_I * TWO_PI_I)
        .num(re(1.0 - k), "Γ(1−1/κ)")
        .num(re(1.0 - k), "Γ(1−1/κ)")
        .den(re(1.0 - x - k), "Γ(1−x−1/κ)")
        .den(re(1.0 - x), "Γ(1−x)")
        .den(re(x + 1.0), "Γ(x+1)")
        .den(re(x + 1.0 - k), "Γ(x+1−1/κ)"))
}

/// Common exponent of `z₁ ⋯ z_N` for an all-equal channel `i_j ≡ i`:
/// `((λ, e_i − e₁) − (i − 1))/κ`. Cross-checked against [`channel::mu`].
pub fn monomial_exponent(ch: &Channel, p: &Params) -> Result<Complex64> {
    if !ch.is_all_equal() || ch.big_n() == 0 {
        return Err(Error::InvalidChannel(format!(
            "monomial exponent needs a non-empty all-equal channel, got {:?}",
            ch.indices()
        )));
    }
    let i = ch.indices()[0];
    let value = (p.lambda.coordinate_difference(i, 1) - (i as f64 - 1.0)) / p.kappa;
    let mu = channel::mu(ch, &p.lambda, p.kappa)?;
    let scale = 1.0 + value.abs();
    if let Some(bad) = mu
        .entries()
        .iter()
        .find(|m| (**m - value).norm() > 1e-12 * scale)
    {
        return Err(Error::Precondition(format!(
            "μ component {bad} differs from the monomial exponent {value}"
        )));
    }
    Ok(re(value))
}
