//! Truncated series `z^μ Σ_d c_d x^d` in the chamber variables
//! `x_i = z_i/z_{i+1}`, `d ∈ Z_{≥0}^{N−1}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::ExponentVector;
use crate::error::{Error, Result};

pub type MultiIndex = Vec<u32>;

pub fn total_degree(d: &[u32]) -> u32 {
    d.iter().sum()
}

/// All multi-indices of length `len` with total degree `≤ order`, by
/// increasing degree and lexicographically within a degree.
pub fn multi_indices(len: usize, order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for deg in 0..=order {
        let mut cur = vec![0u32; len];
        fill(&mut cur, 0, deg, &mut out);
        if len == 0 {
            break;
        }
    }
    out
}

fn fill(cur: &mut MultiIndex, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left;
            out.push(cur.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v;
        fill(cur, pos + 1, left - v, out);
    }
    cur[pos] = 0;
}

/// `e`-coordinates of `Σ d_i α_i`.
pub fn root_vector(d: &[u32], big_n: usize) -> Vec<f64> {
    let mut b = vec![0.0; big_n];
    for (i, &di) in d.iter().enumerate() {
        b[i] += di as f64;
        b[i + 1] -= di as f64;
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    base: ExponentVector,
    coeffs: BTreeMap<MultiIndex, Complex64>,
    order: u32,
}

impl TruncatedSeries {
    pub fn zero(base: ExponentVector, order: u32) -> Self {
        Self {
            base,
            coeffs: BTreeMap::new(),
            order,
        }
    }

    /// The bare monomial `z^μ`.
    pub fn monomial(base: ExponentVector, order: u32) -> Self {
        let dims = base.len().saturating_sub(1);
        let mut s = Self::zero(base, order);
        s.coeffs.insert(vec![0; dims], Complex64::new(1.0, 0.0));
        s
    }

    pub fn base_exponent(&self) -> &ExponentVector {
        &self.base
    }

    pub fn big_n(&self) -> usize {
        self.base.len()
    }

    pub fn dims(&self) -> usize {
        self.big_n().saturating_sub(1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, d: &[u32]) -> Complex64 {
        self.coeffs.get(d).copied().unwrap_or_default()
    }

    /// Adds `v` at `d`; terms beyond the order are dropped.
    pub fn add_at(&mut self, d: &[u32], v: Complex64) -> Result<()> {
        if d.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                left: d.len(),
                right: self.dims(),
            });
        }
        if total_degree(d) <= self.order {
            *self.coeffs.entry(d.to_vec()).or_default() += v;
        }
        Ok(())
    }

    pub fn set(&mut self, d: &[u32], v: Complex64) -> Result<()> {
        if d.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                left: d.len(),
                right: self.dims(),
            });
        }
        if total_degree(d) > self.order {
            return Err(Error::InvalidParameter(format!(
                "multi-index {d:?} exceeds order {}",
                self.order
            )));
        }
        self.coeffs.insert(d.to_vec(), v);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    /// Exponent vector `μ + Σ d_i α_i` of the monomial at `d`.
    pub fn exponent_at(&self, d: &[u32]) -> Vec<Complex64> {
        let b = root_vector(d, self.big_n());
        self.base
            .entries()
            .iter()
            .zip(b)
            .map(|(m, bi)| m + bi)
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.base != other.base {
            return Err(Error::Precondition(
                "series must share base exponent and order".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, v) in &other.coeffs {
            *out.coeffs.entry(d.clone()).or_default() += v;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= s;
        }
        out
    }

    /// Largest `|c_d|` over degrees `≤ max_degree`.
    pub fn max_abs(&self, max_degree: u32) -> f64 {
        self.coeffs
            .iter()
            .filter(|(d, _)| total_degree(d) <= max_degree)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Multiplies by `(1 − y)^{−1}`, `y = x^{step}`, exactly to the order.
    pub fn divide_by_one_minus(&self, step: &[u32]) -> Result<Self> {
        if step.len() != self.dims() || total_degree(step) == 0 {
            return Err(Error::InvalidParameter(format!(
                "bad geometric step {step:?}"
            )));
        }
        let mut out = Self::zero(self.base.clone(), self.order);
        for d in multi_indices(self.dims(), self.order) {
            let mut v = self.coeff(&d);
            if d.iter().zip(step).all(|(a, b)| a >= b) {
                let prev: MultiIndex = d.iter().zip(step).map(|(a, b)| a - b).collect();
                v += out.coeff(&prev);
            }
            if v != Complex64::default() {
                out.coeffs.insert(d, v);
            }
        }
        Ok(out)
    }

    pub fn to_dump(&self) -> SeriesDump {
        SeriesDump {
            base_exponent: self.base.entries().iter().map(|z| [z.re, z.im]).collect(),
            order: self.order,
            coefficients: self
                .coeffs
                .iter()
                .map(|(d, v)| (d.clone(), v.re, v.im))
                .collect(),
        }
    }

    pub fn from_dump(dump: &SeriesDump) -> Result<Self> {
        let base = ExponentVector::new(
            dump.base_exponent
                .iter()
                .map(|p| Complex64::new(p[0], p[1]))
                .collect(),
        );
        let mut s = Self::zero(base, dump.order);
        for (d, re, im) in &dump.coefficients {
            s.set(d, Complex64::new(*re, *im))?;
        }
        Ok(s)
    }
}

/// JSON form: `{base_exponent: [[re, im]…], order, coefficients: [[[d…], re, im]…]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub base_exponent: Vec<[f64; 2]>,
    pub order: u32,
    pub coefficients: Vec<(MultiIndex, f64, f64)>,
}
