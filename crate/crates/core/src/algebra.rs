//! Measures over a finite ground set `{c_0, ..., c_n}` and the convolution
//! algebra induced by a structure-constant tensor.
//!
//! A [`Hypergroup`] stores the full `(n+1)^3` tensor `m[i][j][k]`, the
//! coefficient of `δ_k` in `δ_i ∘ δ_j`, unit rows included. Constructing a
//! value only checks dimensions; the axioms are decided by
//! [`crate::validate`].

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An involutive permutation of `{0, ..., n}` fixing `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarInvolution {
    perm: Vec<usize>,
}

impl StarInvolution {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        if perm.is_empty() {
            return Err(Error::ZeroOrder);
        }
        if perm[0] != 0 {
            return Err(Error::InvalidInvolution(format!("star(0) = {}, expected 0", perm[0])));
        }
        let n = perm.len();
        for (i, &image) in perm.iter().enumerate() {
            if image >= n {
                return Err(Error::InvalidInvolution(format!("star({i}) = {image} is out of range for order {n}")));
            }
            if perm[image] != i {
                return Err(Error::InvalidInvolution(format!("star(star({i})) = {} ≠ {i}", perm[image])));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(order: usize) -> Self {
        Self { perm: (0..order).collect() }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Number of 2-cycles.
    pub fn transpositions(&self) -> usize {
        self.perm.iter().enumerate().filter(|&(i, &j)| i < j).count()
    }
}

/// Coefficient vector over the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    coeffs: Vec<Rational>,
}

impl Measure {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i).collect()
    }

    /// Nonnegative coefficients summing to one.
    pub fn is_probability(&self) -> bool {
        self.coeffs.iter().all(|a| !a.is_negative())
            && self.coeffs.iter().fold(Rational::zero(), |acc, a| acc + a).is_one()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * factor).collect() }
    }
}

impl std::ops::Index<usize> for Measure {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }
}

impl Add for &Measure {
    type Output = Measure;

    fn add(self, rhs: &Measure) -> Measure {
        assert_eq!(self.len(), rhs.len(), "measure lengths differ");
        Measure { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Measure {
    type Output = Measure;

    fn sub(self, rhs: &Measure) -> Measure {
        assert_eq!(self.len(), rhs.len(), "measure lengths differ");
        Measure { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&Measure> for &Rational {
    type Output = Measure;

    fn mul(self, rhs: &Measure) -> Measure {
        rhs.scale(self)
    }
}

/// Dirac measure at `c_i`.
pub fn delta(i: usize, order: usize) -> Result<Measure> {
    if i >= order {
        return Err(Error::IndexOutOfRange { index: i, order });
    }
    let mut coeffs = vec![Rational::zero(); order];
    coeffs[i] = Rational::one();
    Ok(Measure { coeffs })
}

/// Finite ground set with an involution and a structure-constant tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergroup {
    order: usize,
    star: StarInvolution,
    table: Vec<Rational>,
}

impl Hypergroup {
    /// `table` is laid out row-major as `[i][j][k]`.
    pub fn new(star: StarInvolution, table: Vec<Rational>) -> Result<Self> {
        let order = star.order();
        let expected = order * order * order;
        if table.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: table.len() });
        }
        Ok(Self { order, star, table })
    }

    pub fn from_fn(star: StarInvolution, mut entry: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let order = star.order();
        let mut table = Vec::with_capacity(order * order * order);
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    table.push(entry(i, j, k));
                }
            }
        }
        Self { order, star, table }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn star(&self) -> &StarInvolution {
        &self.star
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.order + j) * self.order + k]
    }

    /// Coefficients of `δ_i ∘ δ_j`.
    #[inline]
    pub fn row(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.order + j) * self.order;
        &self.table[start..start + self.order]
    }

    pub fn product(&self, i: usize, j: usize) -> Measure {
        Measure::new(self.row(i, j).to_vec())
    }

    fn check_len(&self, mu: &Measure) -> Result<()> {
        if mu.len() != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, actual: mu.len() });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants:
    /// `(μ ∘ ν)_k = Σ_{i,j} μ_i ν_j m[i][j][k]`.
    pub fn convolve(&self, mu: &Measure, nu: &Measure) -> Result<Measure> {
        self.check_len(mu)?;
        self.check_len(nu)?;
        let mut out = vec![Rational::zero(); self.order];
        for (i, a) in mu.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nu.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (slot, m) in out.iter_mut().zip(self.row(i, j)) {
                    if !m.is_zero() {
                        *slot += &ab * m;
                    }
                }
            }
        }
        Ok(Measure::new(out))
    }

    /// Pushforward along the involution: `result[star(j)] = μ[j]`.
    pub fn star_measure(&self, mu: &Measure) -> Result<Measure> {
        self.check_len(mu)?;
        let mut out = vec![Rational::zero(); self.order];
        for (j, a) in mu.coeffs.iter().enumerate() {
            out[self.star.apply(j)] = a.clone();
        }
        Ok(Measure::new(out))
    }

    /// `1 / m[i][star(i)][0]`.
    pub fn weight(&self, i: usize) -> Result<Rational> {
        if i >= self.order {
            return Err(Error::IndexOutOfRange { index: i, order: self.order });
        }
        let a0 = self.entry(i, self.star.apply(i), 0);
        if a0.is_zero() {
            return Err(Error::ZeroUnitCoefficient { index: i });
        }
        Ok(a0.recip())
    }

    pub fn total_weight(&self) -> Result<Rational> {
        (0..self.order).try_fold(Rational::zero(), |acc, i| Ok(acc + self.weight(i)?))
    }
}
