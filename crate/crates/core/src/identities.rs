//! Numerical checks of standalone Γ identities and of agreement between the
//! closed forms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{self, distance_to_integer, Channel, GenericWeight};
use crate::closedform::{
    classical_selberg_ordered, contour_beta, contour_conversion_m2, generalized_selberg,
    nested_loop_m2_product, Params, SelbergParams,
};
use crate::error::{Error, Result};
use crate::special::{eval_gamma_product, GammaProduct, Precision};

/// Below this distance from an integer, an expected common zero switches a
/// check to the absolute metric.
pub const NEAR_ZERO_TOL: f64 = 1e-6;

/// Which residual decides pass/fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|lhs − rhs| / |rhs|`.
    Relative,
    /// `|lhs − rhs| / max |summand|`, for sums whose value is zero.
    Scaled,
    /// `|lhs − rhs|`, when both sides vanish together.
    Absolute,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    /// Relative or scaled residual, per `metric`.
    pub rel_residual: f64,
    pub metric: Metric,
    pub parameters: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    fn new(name: &str, lhs: Complex64, rhs: Complex64, metric: Metric, scale: f64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = if scale > 0.0 {
            abs_residual / scale
        } else {
            abs_residual
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            metric,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn param(mut self, key: &str, v: f64) -> Self {
        self.parameters.insert(key.into(), v);
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// The residual used for pass/fail.
    pub fn residual(&self) -> f64 {
        match self.metric {
            Metric::Absolute => self.abs_residual,
            Metric::Relative | Metric::Scaled => self.rel_residual,
        }
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.residual() <= threshold
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn factorial_den(p: GammaProduct, m: usize, label: &str) -> GammaProduct {
    p.den(re(m as f64 + 1.0), format!("{label}!"))
}

/// Sums in order of decreasing modulus; returns the sum and the largest term.
fn sorted_sum(mut terms: Vec<Complex64>) -> (Complex64, f64) {
    terms.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let largest = terms.first().map_or(0.0, |t| t.norm());
    let mut acc = crate::special::Accumulator::new(Precision::Extended);
    for t in terms {
        acc.add(t);
    }
    (acc.value(), largest)
}

fn eval_log(p: &GammaProduct) -> Result<Complex64> {
    Ok(p.log_value(Precision::Extended)?.exp())
}

fn check_generic(lambda: &GenericWeight, kappa: f64, n: usize, indices: Vec<usize>) -> Result<()> {
    let ch = Channel::new(indices, n)?;
    let mu = channel::mu(&ch, lambda, kappa)?;
    channel::require_generic(&channel::eta(&mu, kappa)?, channel::DEFAULT_GENERICITY_TOL)?;
    Ok(())
}

fn two_pairings(lambda: &GenericWeight) -> Result<(f64, f64)> {
    match lambda.pairings.as_slice() {
        [p1, p2] => Ok((*p1, *p2)),
        other => Err(Error::DimensionMismatch {
            left: other.len(),
            right: 2,
        }),
    }
}

fn one_pairing(lambda: &GenericWeight) -> Result<f64> {
    match lambda.pairings.as_slice() {
        [p] => Ok(*p),
        other => Err(Error::DimensionMismatch {
            left: other.len(),
            right: 1,
        }),
    }
}

/// Compositions of `total` into `parts` non-negative integers, lexicographic.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The four-index identity of the two-level (`n = 2`) example with channel
/// `(3,2)`, in `A = (λ,α₁)/κ`, `B = (λ,−α₂)/κ`, `C = B − A`, `k = 1/κ`:
///
/// `Γ(A+1)/Γ(A+k) · Γ(B−k+1)/Γ(B) · Γ(C+1−2k)/Γ(C−k) · 1/(Γ(k)³Γ(−2k))
///  · Σ_{m₁+…+m₄=M} Γ(C+m₁₃₄−k)/Γ(C+m₁₃₄+1−2k) · Γ(B+m₄)/Γ(B+m₄+1−k)
///  · Γ(A+k+m₂₃₄)/Γ(A+1+m₂₃₄) · Γ(k+m₁)Γ(k+m₂)Γ(−2k+m₃)Γ(k+m₄)/∏m_i!`
/// equals the `M`-th Gauss coefficient `(k)_M (B)_M / ((B−k+1)_M M!)`.
pub fn four_index_check(
    lambda: &GenericWeight,
    kappa: f64,
    big_m: usize,
) -> Result<IdentityReport> {
    channel::check_kappa(kappa)?;
    let (p1, p2) = two_pairings(lambda)?;
    check_generic(lambda, kappa, 2, vec![3, 2])?;
    let k = 1.0 / kappa;
    let a = p1 / kappa;
    let b = -p2 / kappa;
    let c = b - a;

    let prefactor = GammaProduct::new()
        .num(re(a + 1.0), "Γ(A+1)")
        .den(re(a + k), "Γ(A+k)")
        .num(re(b - k + 1.0), "Γ(B−k+1)")
        .den(re(b), "Γ(B)")
        .num(re(c + 1.0 - 2.0 * k), "Γ(C+1−2k)")
        .den(re(c - k), "Γ(C−k)")
        .den(re(k), "Γ(k)")
        .den(re(k), "Γ(k)")
        .den(re(-2.0 * k), "Γ(−2k)")
        .den(re(k), "Γ(k)");
    let mut terms = Vec::new();
    for m in compositions(big_m, 4) {
        let (m1, m2, m3, m4) = (m[0] as f64, m[1] as f64, m[2] as f64, m[3] as f64);
        let s134 = m1 + m3 + m4;
        let s234 = m2 + m3 + m4;
        let mut p = prefactor
            .clone()
            .num(re(c + s134 - k), "Γ(C+m₁+m₃+m₄−k)")
            .den(re(c + s134 + 1.0 - 2.0 * k), "Γ(C+m₁+m₃+m₄+1−2k)")
            .num(re(b + m4), "Γ(B+m₄)")
            .den(re(b + m4 + 1.0 - k), "Γ(B+m₄+1−k)")
            .num(re(a + k + s234), "Γ(A+k+m₂+m₃+m₄)")
            .den(re(a + 1.0 + s234), "Γ(A+1+m₂+m₃+m₄)")
            .num(re(k + m1), "Γ(k+m₁)")
            .num(re(k + m2), "Γ(k+m₂)")
            .num(re(-2.0 * k + m3), "Γ(−2k+m₃)")
            .num(re(k + m4), "Γ(k+m₄)");
        for (i, &mi) in m.iter().enumerate() {
            p = factorial_den(p, mi, &format!("m{}", i + 1));
        }
        terms.push(eval_log(&p)?);
    }
    let (lhs, _) = sorted_sum(terms);
    let rhs = eval_log(
        &GammaProduct::new()
            .num(re(b - k + 1.0), "Γ(B−k+1)")
            .den(re(k), "Γ(k)")
            .den(re(b), "Γ(B)")
            .num(re(k + big_m as f64), "Γ(k+M)")
            .num(re(b + big_m as f64), "Γ(B+M)")
            .den(re(b - k + 1.0 + big_m as f64), "Γ(B−k+1+M)")
            .den(re(big_m as f64 + 1.0), "M!"),
    )?;
    Ok(
        IdentityReport::new("four_index", lhs, rhs, Metric::Relative, rhs.norm())
            .param("kappa", kappa)
            .param("A", a)
            .param("B", b)
            .param("M", big_m as f64)
            .note("prefactor grouped as 1/(Γ(k)Γ(k)Γ(−2k)Γ(k)); fixed by the M = 0 balance"),
    )
}

/// Summands `(m, value)` of the three-index identity, `a = (λ,−α)/κ`:
/// `Γ(a+m₁+m₃)/Γ(a+m₁+m₃+1−k) · Γ(−a+m₂+m₃)/Γ(−a+m₂+m₃+1−k)
///  · Γ(k+m₁)Γ(k+m₂)Γ(−2k+m₃)/(m₁!m₂!m₃!)`.
pub fn three_index_summands(
    a: f64,
    kappa: f64,
    big_m: usize,
) -> Result<Vec<([usize; 3], Complex64)>> {
    channel::check_kappa(kappa)?;
    let k = 1.0 / kappa;
    compositions(big_m, 3)
        .into_iter()
        .map(|m| {
            let (m1, m2, m3) = (m[0] as f64, m[1] as f64, m[2] as f64);
            let mut p = GammaProduct::new()
                .num(re(a + m1 + m3), "Γ(a+m₁+m₃)")
                .den(re(a + m1 + m3 + 1.0 - k), "Γ(a+m₁+m₃+1−k)")
                .num(re(-a + m2 + m3), "Γ(−a+m₂+m₃)")
                .den(re(-a + m2 + m3 + 1.0 - k), "Γ(−a+m₂+m₃+1−k)")
                .num(re(k + m1), "Γ(k+m₁)")
                .num(re(k + m2), "Γ(k+m₂)")
                .num(re(-2.0 * k + m3), "Γ(−2k+m₃)");
            for (i, &mi) in m.iter().enumerate() {
                p = factorial_den(p, mi, &format!("m{}", i + 1));
            }
            Ok(([m[0], m[1], m[2]], eval_log(&p)?))
        })
        .collect()
}

/// The three-index sum vanishes for every `M > 0`; residual scaled by the
/// largest summand.
pub fn three_index_check(
    lambda: &GenericWeight,
    kappa: f64,
    big_m: usize,
) -> Result<IdentityReport> {
    if big_m == 0 {
        return Err(Error::Precondition(
            "the three-index identity needs M > 0".into(),
        ));
    }
    let p = one_pairing(lambda)?;
    check_generic(lambda, kappa, 1, vec![2, 2])?;
    let a = -p / kappa;
    let terms = three_index_summands(a, kappa, big_m)?;
    let (lhs, largest) = sorted_sum(terms.into_iter().map(|(_, v)| v).collect());
    Ok(
        IdentityReport::new("three_index", lhs, re(0.0), Metric::Scaled, largest)
            .param("kappa", kappa)
            .param("a", a)
            .param("M", big_m as f64),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    /// Ordered two-variable Selberg value times the contour conversion factor
    /// against the nested-loop Γ product.
    pub product: IdentityReport,
    /// The nested-loop Γ product against the generalized Selberg value of
    /// `I = (2,2)`, `n = 1`.
    pub closed_form: IdentityReport,
}

impl ChainReport {
    pub fn passes(&self, threshold: f64) -> bool {
        self.product.passes(threshold) && self.closed_form.passes(threshold)
    }
}

/// Two-variable chain: Selberg(a, 1−2k, k) × conversion = nested-loop product
/// = generalized Selberg for `(2,2)`.
pub fn two_variable_chain(lambda: &GenericWeight, kappa: f64) -> Result<ChainReport> {
    channel::check_kappa(kappa)?;
    let p = one_pairing(lambda)?;
    let k = 1.0 / kappa;
    let x = lambda.coordinate_difference(2, 1) / kappa;
    let near_zero = distance_to_integer(re(x)) < NEAR_ZERO_TOL
        || distance_to_integer(re(x + k)) < NEAR_ZERO_TOL;
    let metric = if near_zero {
        Metric::Absolute
    } else {
        Metric::Relative
    };

    let selberg = classical_selberg_ordered(&SelbergParams::real(x, 1.0 - 2.0 * k, k, 2))?;
    let lhs = selberg * contour_conversion_m2(lambda, kappa)?;
    let rhs = eval_gamma_product(&nested_loop_m2_product(lambda, kappa)?)?;
    let mut product = IdentityReport::new("two_variable_product", lhs, rhs, metric, rhs.norm())
        .param("kappa", kappa)
        .param("x", x);
    if near_zero {
        product = product.note("common zero: ratio test skipped");
    }

    let params = Params::new(vec![p], kappa)?;
    let closed_value = generalized_selberg(&Channel::new(vec![2, 2], 1)?, &params)?;
    let closed_form = IdentityReport::new(
        "two_variable_closed_form",
        rhs,
        closed_value,
        metric,
        closed_value.norm(),
    )
    .param("kappa", kappa)
    .param("x", x);
    Ok(ChainReport {
        product,
        closed_form,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingValue {
    pub indices: Vec<usize>,
    pub value: Complex64,
    pub level_inversions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub orderings: Vec<OrderingValue>,
    /// Largest `|v_i − v_j| / max(|v_i|,|v_j|)`.
    pub max_pairwise_deviation: f64,
    /// The same after removing `e^{πi·inv/κ}` from each value.
    pub phase_corrected_deviation: f64,
    /// The loop Beta value when the multiset has a single level-2 entry and
    /// `n = 1`.
    pub closed_form: Option<Complex64>,
    pub closed_form_deviation: Option<f64>,
    pub report: IdentityReport,
}

fn distinct_orderings(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation
    loop {
        let v = out.last().unwrap();
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            break;
        };
        let mut next = v.clone();
        let j = (i..next.len())
            .rev()
            .find(|&j| next[j] > next[i - 1])
            .unwrap();
        next.swap(i - 1, j);
        next[i..].reverse();
        out.push(next);
    }
    out
}

fn max_pairwise(values: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, u) in values.iter().enumerate() {
        for v in &values[i + 1..] {
            let scale = u.norm().max(v.norm());
            if scale > 0.0 {
                worst = worst.max((u - v).norm() / scale);
            }
        }
    }
    worst
}

/// Generalized Selberg values for every distinct ordering of `multiset`.
pub fn channel_consistency(
    multiset: &[usize],
    n: usize,
    params: &Params,
) -> Result<ConsistencyReport> {
    let orderings = distinct_orderings(multiset)
        .into_iter()
        .map(|indices| {
            let ch = Channel::new(indices.clone(), n)?;
            Ok(OrderingValue {
                value: generalized_selberg(&ch, params)?,
                level_inversions: ch.level_inversions(),
                indices,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<Complex64> = orderings.iter().map(|o| o.value).collect();
    let corrected: Vec<Complex64> = orderings
        .iter()
        .map(|o| {
            o.value * Complex64::from_polar(1.0, -PI * o.level_inversions as f64 / params.kappa)
        })
        .collect();
    let max_pairwise_deviation = max_pairwise(&values);
    let phase_corrected_deviation = max_pairwise(&corrected);

    let twos = multiset.iter().filter(|&&i| i == 2).count();
    let single_loop = n == 1 && twos == 1;
    let closed_form = if single_loop {
        let a = params.lambda.coordinate_difference(2, 1) / params.kappa;
        Some(contour_beta(
            re(a),
            re(1.0 - multiset.len() as f64 / params.kappa),
        )?)
    } else {
        None
    };
    let closed_form_deviation = closed_form.map(|c| {
        values
            .iter()
            .map(|v| (v - c).norm() / c.norm())
            .fold(0.0, f64::max)
    });

    let lhs = values.first().copied().unwrap_or(re(1.0));
    let rhs = closed_form.unwrap_or(lhs);
    let mut report = IdentityReport::new(
        "channel_consistency",
        lhs,
        rhs,
        Metric::Relative,
        rhs.norm(),
    )
    .param("kappa", params.kappa)
    .param("n", n as f64);
    report.rel_residual = closed_form_deviation
        .unwrap_or(0.0)
        .max(max_pairwise_deviation);
    report.abs_residual = report.rel_residual * rhs.norm();
    if phase_corrected_deviation < max_pairwise_deviation {
        report = report.note(format!(
            "orderings differ by e^{{πi·inv/κ}}; phase-corrected deviation {phase_corrected_deviation:e}"
        ));
    }
    Ok(ConsistencyReport {
        orderings,
        max_pairwise_deviation,
        phase_corrected_deviation,
        closed_form,
        closed_form_deviation,
        report,
    })
}
