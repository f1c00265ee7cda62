//! Exact combinatorics of the root systems `A_{n}` and `A_{N−1}` realized
//! inside one ambient Euclidean space `R^m` with orthonormal basis `e_i`.
//!
//! Everything here is exact rational arithmetic; `κ` enters only through
//! [`rho`], which scales the exact half-sum of positive roots.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::channel::ExponentVector;
use crate::error::{Error, Result};

pub type Rational = Rational64;

/// Coordinates of a weight in the ambient space, exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    coords: Vec<Rational>,
}

impl WeightVector {
    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    /// Basis vector `e_i` (1-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "basis index {i} outside 1..={dim}");
        let mut v = Self::zero(dim);
        v.coords[i - 1] = Rational::from_integer(1);
        v
    }

    /// `e_1 + … + e_dim`.
    pub fn all_ones(dim: usize) -> Self {
        Self {
            coords: vec![Rational::from_integer(1); dim],
        }
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn scale(&self, r: Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Same vector with `extra` zero coordinates appended.
    pub fn padded(&self, extra: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(std::iter::repeat_n(Rational::zero(), extra));
        Self { coords }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl<'a> Add<&'a WeightVector> for &'a WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &'a WeightVector) -> WeightVector {
        assert_eq!(self.dim(), rhs.dim());
        WeightVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a WeightVector> for &'a WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &'a WeightVector) -> WeightVector {
        assert_eq!(self.dim(), rhs.dim());
        WeightVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Euclidean pairing, exact. Fails on a dimension mismatch.
pub fn inner(u: &WeightVector, v: &WeightVector) -> Result<Rational> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// Roots and weights for a channel with levels up to `n+1` and `N` tensor
/// factors.
#[derive(Clone, Debug)]
pub struct AmbientData {
    pub dim: usize,
    pub n: usize,
    pub big_n: usize,
    /// `α_1 … α_{dim−1}`; `simple_roots[i-1] = α_i`.
    pub simple_roots: Vec<WeightVector>,
    /// `Λ_1 … Λ_{dim−1}`.
    pub fundamental_weights: Vec<WeightVector>,
    /// `h_1 … h_{n+1}` with `h_1 = Λ_1`, `h_{i+1} = h_i − α_i`.
    pub h_vectors: Vec<WeightVector>,
    /// `e_i − e_j` for `1 ≤ i < j ≤ N`, in lexicographic order of `(i, j)`.
    pub positive_roots_n: Vec<WeightVector>,
}

/// Ambient data for levels `1..=n+1` and `N` points. The dimension is
/// `max(n+1, N)`: `h_{n+1}` needs `α_n`, which lives in `R^{n+1}`.
pub fn build_ambient(n: usize, big_n: usize) -> Result<AmbientData> {
    build_ambient_with_dim(n, big_n, (n + 1).max(big_n).max(2))
}

/// Same as [`build_ambient`] but with an explicitly chosen (larger) ambient
/// dimension. Pairings that involve a root do not depend on the choice;
/// `(h_i, h_j) = δ_ij − 1/dim` does.
pub fn build_ambient_with_dim(n: usize, big_n: usize, dim: usize) -> Result<AmbientData> {
    if n == 0 && big_n == 0 {
        return Err(Error::InvalidParameter(
            "n and N cannot both be zero".into(),
        ));
    }
    if dim < (n + 1).max(big_n).max(2) {
        return Err(Error::InvalidParameter(format!(
            "ambient dimension {dim} too small for n={n}, N={big_n}"
        )));
    }
    let e = |i: usize| WeightVector::basis(dim, i);
    let simple_roots: Vec<_> = (1..dim).map(|i| &e(i) - &e(i + 1)).collect();
    let ones = WeightVector::all_ones(dim);
    let fundamental_weights: Vec<_> = (1..dim)
        .map(|i| {
            let mut head = WeightVector::zero(dim);
            for l in 1..=i {
                head = &head + &e(l);
            }
            &head - &ones.scale(Rational::new(i as i64, dim as i64))
        })
        .collect();
    let mut h_vectors = vec![fundamental_weights[0].clone()];
    for i in 1..=n {
        let next = &h_vectors[i - 1] - &simple_roots[i - 1];
        h_vectors.push(next);
    }
    let mut positive_roots_n = Vec::with_capacity(big_n * big_n.saturating_sub(1) / 2);
    for i in 1..=big_n {
        for j in (i + 1)..=big_n {
            positive_roots_n.push(&e(i) - &e(j));
        }
    }
    Ok(AmbientData {
        dim,
        n,
        big_n,
        simple_roots,
        fundamental_weights,
        h_vectors,
        positive_roots_n,
    })
}

impl AmbientData {
    pub fn e(&self, i: usize) -> WeightVector {
        WeightVector::basis(self.dim, i)
    }

    pub fn simple_root(&self, i: usize) -> &WeightVector {
        &self.simple_roots[i - 1]
    }

    pub fn fundamental_weight(&self, i: usize) -> &WeightVector {
        &self.fundamental_weights[i - 1]
    }

    pub fn h(&self, i: usize) -> &WeightVector {
        &self.h_vectors[i - 1]
    }

    /// `α_lo + … + α_hi`; zero when `lo > hi`.
    pub fn root_sum(&self, lo: usize, hi: usize) -> WeightVector {
        (lo..=hi).fold(WeightVector::zero(self.dim), |acc, i| {
            &acc + self.simple_root(i)
        })
    }

    /// Half the sum of `Σ₊(N−1)`, exact and unscaled.
    pub fn half_sum_positive(&self) -> WeightVector {
        let total = self
            .positive_roots_n
            .iter()
            .fold(WeightVector::zero(self.dim), |acc, r| &acc + r);
        total.scale(Rational::new(1, 2))
    }
}

/// `κρ = (N−1, N−3, …, 1−N)/2`, exact.
pub fn rho_exact(big_n: usize) -> Vec<Rational> {
    (1..=big_n)
        .map(|i| Rational::new(big_n as i64 + 1 - 2 * i as i64, 2))
        .collect()
}

/// `ρ = (1/2κ)(N−1, N−3, …, 1−N)`.
pub fn rho(big_n: usize, kappa: f64) -> Result<ExponentVector> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "κ must be finite and nonzero, got {kappa}"
        )));
    }
    Ok(ExponentVector::from_real(
        rho_exact(big_n)
            .iter()
            .map(|r| r.to_f64().unwrap_or(f64::NAN) / kappa),
    ))
}
