//! Truncated formal power series in `z` over ℚ(i).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::GaussianRational;

/// The series `coeffs[0] + coeffs[1] z + ... + coeffs[N] z^N + O(z^{N+1})`.
///
/// Always holds exactly `order + 1` coefficients. Binary operations truncate
/// to the smaller operand order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncatedSeries {
    coeffs: Vec<GaussianRational>,
}

impl TruncatedSeries {
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![GaussianRational::zero(); order + 1],
        }
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    /// The monomial `c z^power`, which vanishes if `power > order`.
    pub fn monomial(c: GaussianRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// `c / (1 - ratio z)`, i.e. `coeffs[k] = c ratio^k`.
    pub fn geometric_like(c: &GaussianRational, ratio: &GaussianRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = c.clone();
        for _ in 0..=order {
            let next = &term * ratio;
            coeffs.push(term);
            term = next;
        }
        Self { coeffs }
    }

    /// `z / (1 - z)^2`, i.e. `coeffs[k] = k`.
    pub fn z_over_one_minus_z_squared(order: usize) -> Self {
        Self {
            coeffs: (0..=order as i64)
                .map(GaussianRational::from_integer)
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&GaussianRational> {
        self.coeffs.get(k)
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Indices at which the coefficients differ, up to the common order.
    pub fn mismatched_indices(&self, other: &Self) -> Vec<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(k, _)| k)
            .collect()
    }

    /// Equality modulo polynomials: the coefficients must agree at every
    /// index `k >= d` up to the common order.
    pub fn equal_mod_poly(&self, other: &Self, d: usize) -> bool {
        self.mismatched_indices(other).into_iter().all(|k| k < d)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &rhs.coeffs[k - j]).sum())
            .collect();
        TruncatedSeries { coeffs }
    }
}

macro_rules! forward_series_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_series_binop!(Add, add);
forward_series_binop!(Sub, sub);
forward_series_binop!(Mul, mul);
