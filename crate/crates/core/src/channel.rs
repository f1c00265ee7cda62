//! Fusion-path bookkeeping for `V_λ → V_{λ+h_{i₁}} → … → V_{λ+h_{i₁}+…+h_{i_N}}`.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rootsys::{self, inner, AmbientData, Rational};

/// Genericity threshold on distance-to-integer.
pub const DEFAULT_GENERICITY_TOL: f64 = 1e-6;

/// The ordered index set `I = (i₁, …, i_N)` with `1 ≤ i_j ≤ n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson", into = "ChannelJson")]
pub struct Channel {
    indices: Vec<usize>,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    #[serde(rename = "I")]
    indices: Vec<usize>,
    n: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    big_n: Option<usize>,
}

impl TryFrom<ChannelJson> for Channel {
    type Error = Error;
    fn try_from(j: ChannelJson) -> Result<Self> {
        if let Some(big_n) = j.big_n {
            if big_n != j.indices.len() {
                return Err(Error::InvalidChannel(format!(
                    "N = {big_n} but I has {} entries",
                    j.indices.len()
                )));
            }
        }
        Channel::new(j.indices, j.n)
    }
}

impl From<Channel> for ChannelJson {
    fn from(c: Channel) -> Self {
        let big_n = Some(c.indices.len());
        ChannelJson {
            indices: c.indices,
            n: c.n,
            big_n,
        }
    }
}

impl Channel {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidChannel("n must be positive".into()));
        }
        if let Some(bad) = indices.iter().find(|&&i| i == 0 || i > n + 1) {
            return Err(Error::InvalidChannel(format!(
                "index {bad} outside 1..={}",
                n + 1
            )));
        }
        Ok(Self { indices, n })
    }

    /// Like [`Channel::new`] but also enforces `n = max(i_j) − 1`.
    pub fn new_normalized(indices: Vec<usize>) -> Result<Self> {
        let n = indices.iter().copied().max().unwrap_or(1).saturating_sub(1);
        if n == 0 {
            return Err(Error::InvalidChannel(
                "normalized channel needs some i_j > 1".into(),
            ));
        }
        Self::new(indices, n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> usize {
        self.indices.len()
    }

    pub fn is_all_equal(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of integration variables, `Σ_j (i_j − 1)`.
    pub fn variable_count(&self) -> usize {
        self.indices.iter().map(|i| i - 1).sum()
    }

    pub fn ambient(&self) -> Result<AmbientData> {
        rootsys::build_ambient(self.n, self.big_n().max(1))
    }

    /// `s(k) = #{ i_j > k }` for `k = 1..=n`.
    pub fn s_counts(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|k| self.indices.iter().filter(|&&i| i > k).count())
            .collect()
    }

    /// `a(p) = #{ i_j > 1 : j > p }` for `p = 1..=N`.
    pub fn a_counts(&self) -> Vec<usize> {
        (1..=self.big_n())
            .map(|p| self.indices[p..].iter().filter(|&&i| i > 1).count())
            .collect()
    }

    /// Pairs `j < l` with `i_j > i_l ≥ 2`.
    pub fn level_inversions(&self) -> usize {
        let idx = &self.indices;
        let mut count = 0;
        for j in 0..idx.len() {
            for l in (j + 1)..idx.len() {
                if idx[j] > idx[l] && idx[l] >= 2 {
                    count += 1;
                }
            }
        }
        count
    }
}

/// `λ` through its pairings `(λ, α_j)`, `j = 1..=n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericWeight {
    pub pairings: Vec<f64>,
}

impl GenericWeight {
    pub fn new(pairings: Vec<f64>) -> Self {
        Self { pairings }
    }

    /// `(λ, α_lo + … + α_hi)`; zero when `lo > hi`.
    pub fn pair_root_sum(&self, lo: usize, hi: usize) -> f64 {
        if lo > hi {
            return 0.0;
        }
        self.pairings[lo - 1..hi].iter().sum()
    }

    /// `λ_i − λ_j = (λ, e_i − e_j)`.
    pub fn coordinate_difference(&self, i: usize, j: usize) -> f64 {
        if i < j {
            self.pair_root_sum(i, j - 1)
        } else {
            -self.pair_root_sum(j, i - 1)
        }
    }

    /// A representative `Σ_j (λ, α_j) Λ_j`, orthogonal to `e₁+…+e_m`.
    pub fn realize(&self, amb: &AmbientData) -> Result<Vec<f64>> {
        if self.pairings.len() > amb.fundamental_weights.len() {
            return Err(Error::DimensionMismatch {
                left: self.pairings.len(),
                right: amb.fundamental_weights.len(),
            });
        }
        let mut out = vec![0.0; amb.dim];
        for (j, p) in self.pairings.iter().enumerate() {
            for (o, c) in out.iter_mut().zip(amb.fundamental_weight(j + 1).to_f64()) {
                *o += p * c;
            }
        }
        Ok(out)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.pairings.len() != n {
            return Err(Error::DimensionMismatch {
                left: self.pairings.len(),
                right: n,
            });
        }
        if let Some(p) = self.pairings.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite pairing {p}")));
        }
        Ok(())
    }
}

/// Length-`N` vector of exponents of `z₁ … z_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentVector {
    entries: Vec<Complex64>,
}

impl ExponentVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn from_real(values: impl IntoIterator<Item = f64>) -> Self {
        Self {
            entries: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sub(&self, other: &ExponentVector) -> Result<ExponentVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(ExponentVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        let neg = ExponentVector::new(other.entries.iter().map(|v| -v).collect());
        self.sub(&neg)
    }

    /// `Σ u_i v_i` without conjugation.
    pub fn dot(&self, other: &ExponentVector) -> Complex64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// `κ·μ_j` split into its `λ`-linear part and an exact rational constant:
/// `κ μ_j = Σ_l lambda[l]·(λ, α_{l+1}) + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExponent {
    pub lambda: Vec<Rational>,
    pub constant: Rational,
}

impl AffineExponent {
    pub fn eval(&self, lambda: &GenericWeight, kappa: f64) -> f64 {
        let lin: f64 = self
            .lambda
            .iter()
            .zip(&lambda.pairings)
            .map(|(c, p)| c.to_f64().unwrap_or(f64::NAN) * p)
            .sum();
        (lin + self.constant.to_f64().unwrap_or(f64::NAN)) / kappa
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelAnalysis {
    pub s: Vec<usize>,
    pub a: Vec<usize>,
    /// The unit-modulus phase `A = exp(πi/κ · Σ_p a(p))`.
    pub phase: Complex64,
    /// `arg A` before reduction mod 2π.
    pub phase_angle: f64,
}

/// Counts `s(k)`, `a(p)` and the collapse phase `A`.
///
/// The phase is `exp(+πi/κ · Σ a(p))`: with this orientation the closed-form
/// product `A · c_lead · φ(1)` is the same for every ordering of a level-2
/// multiset.
pub fn analyze(ch: &Channel, kappa: f64) -> Result<ChannelAnalysis> {
    check_kappa(kappa)?;
    let s = ch.s_counts();
    let a = ch.a_counts();
    let total: usize = a.iter().sum();
    let phase_angle = PI * total as f64 / kappa;
    Ok(ChannelAnalysis {
        s,
        a,
        phase: Complex64::from_polar(1.0, phase_angle),
        phase_angle,
    })
}

pub(crate) fn check_kappa(kappa: f64) -> Result<()> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "κ must be finite and nonzero, got {kappa}"
        )));
    }
    Ok(())
}

/// Partial sums `h_{i₁} + … + h_{i_{j−1}}` for `j = 1..=N+1`.
pub(crate) fn partial_h_sums(ch: &Channel, amb: &AmbientData) -> Vec<rootsys::WeightVector> {
    let mut out = Vec::with_capacity(ch.big_n() + 1);
    let mut acc = rootsys::WeightVector::zero(amb.dim);
    out.push(acc.clone());
    for &i in ch.indices() {
        acc = &acc + amb.h(i);
        out.push(acc.clone());
    }
    out
}

/// Exact decomposition of `κμ` for every component.
pub fn mu_exact(ch: &Channel, amb: &AmbientData) -> Result<Vec<AffineExponent>> {
    if amb.h_vectors.len() < ch.n() + 1 {
        return Err(Error::InvalidParameter(
            "ambient data does not cover level n+1".into(),
        ));
    }
    let lam1 = amb.fundamental_weight(1);
    let sums = partial_h_sums(ch, amb);
    ch.indices()
        .iter()
        .enumerate()
        .map(|(j0, &ij)| {
            let h_prev = &sums[j0];
            let minus_roots = -&amb.root_sum(1, ij - 1);
            let shifted = h_prev - &lam1.scale(Rational::from_integer(j0 as i64));
            let constant = inner(h_prev, &minus_roots)? - Rational::from_integer(ij as i64 - 1)
                + inner(&shifted, lam1)?;
            let mut lambda = vec![Rational::zero(); ch.n()];
            for c in lambda.iter_mut().take(ij - 1) {
                *c = Rational::from_integer(-1);
            }
            Ok(AffineExponent { lambda, constant })
        })
        .collect()
}

/// Leading exponents `μ_j` of the channel integral.
pub fn mu(ch: &Channel, lambda: &GenericWeight, kappa: f64) -> Result<ExponentVector> {
    check_kappa(kappa)?;
    lambda.check_len(ch.n())?;
    let amb = ch.ambient()?;
    let exact = mu_exact(ch, &amb)?;
    Ok(ExponentVector::from_real(
        exact.iter().map(|e| e.eval(lambda, kappa)),
    ))
}

/// `η = μ − ρ`.
pub fn eta(mu: &ExponentVector, kappa: f64) -> Result<ExponentVector> {
    let rho = rootsys::rho(mu.len(), kappa)?;
    mu.sub(&rho)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    /// `min_{s≠j} dist(η_s − η_j, Z)`; `+∞` when `N < 2`.
    pub min_difference_distance: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// `min_{α ∈ Σ₊} dist((η, α), Z)`.
    pub min_root_distance: f64,
    pub worst_root: Option<(usize, usize)>,
    pub tol: f64,
    pub pass: bool,
}

pub fn distance_to_integer(z: Complex64) -> f64 {
    (z - Complex64::new(z.re.round(), 0.0)).norm()
}

/// Distance of every `η_s − η_j` and `(η, α)` from the integers.
pub fn genericity_check(eta: &ExponentVector, tol: f64) -> Result<GenericityReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let e = eta.entries();
    let mut min_diff = f64::INFINITY;
    let mut worst_pair = None;
    for s in 0..e.len() {
        for j in 0..e.len() {
            if s == j {
                continue;
            }
            let d = distance_to_integer(e[s] - e[j]);
            if d < min_diff {
                min_diff = d;
                worst_pair = Some((s + 1, j + 1));
            }
        }
    }
    let mut min_root = f64::INFINITY;
    let mut worst_root = None;
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let d = distance_to_integer(e[i] - e[j]);
            if d < min_root {
                min_root = d;
                worst_root = Some((i + 1, j + 1));
            }
        }
    }
    Ok(GenericityReport {
        min_difference_distance: min_diff,
        worst_pair,
        min_root_distance: min_root,
        worst_root,
        tol,
        pass: min_diff > tol && min_root > tol,
    })
}

/// Genericity as a hard precondition.
pub fn require_generic(eta: &ExponentVector, tol: f64) -> Result<GenericityReport> {
    let rep = genericity_check(eta, tol)?;
    if !rep.pass {
        let (s, j) = rep.worst_pair.unwrap_or((0, 0));
        return Err(Error::NonGeneric(format!(
            "η_{s} − η_{j} is within {:.3e} of an integer",
            rep.min_difference_distance
        )));
    }
    Ok(rep)
}
