//! Rising factorials `(a)_k` and q-Pochhammer symbols `(a;q)_k` for every
//! integer `k`, plus exact integer powers.
//!
//! Negative indices follow the functional equations
//! `(a)_{k+1} = (a)_k (a+k)` and `(a;q)_{k+1} = (a;q)_k (1 - a q^k)`, so
//! `(a)_{-n} = 1 / ((a-1)(a-2)...(a-n))` and
//! `(a;q)_{-n} = 1 / ((1 - a/q)(1 - a/q^2)...(1 - a/q^n))`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::GaussianRational;

/// `(a)_k`.
pub fn rising_factorial(a: &GaussianRational, k: i64) -> Result<GaussianRational> {
    if k >= 0 {
        let mut acc = GaussianRational::one();
        let mut factor = a.clone();
        let one = GaussianRational::one();
        for _ in 0..k {
            acc *= &factor;
            factor += &one;
        }
        return Ok(acc);
    }
    let mut denom = GaussianRational::one();
    for j in 1..=-k {
        let factor = a - GaussianRational::from_integer(j);
        if factor.is_zero() {
            return Err(Error::PoleEncountered(format!("({a})_{k}")));
        }
        denom *= &factor;
    }
    denom.inv()
}

/// `(a;q)_k`.
pub fn q_pochhammer(
    a: &GaussianRational,
    q: &GaussianRational,
    k: i64,
) -> Result<GaussianRational> {
    let one = GaussianRational::one();
    if k >= 0 {
        let mut acc = one.clone();
        let mut term = a.clone();
        for _ in 0..k {
            acc *= &(&one - &term);
            term *= q;
        }
        return Ok(acc);
    }
    let q_inv = q.inv()?;
    let mut denom = one.clone();
    let mut term = a * &q_inv;
    for _ in 1..=-k {
        let factor = &one - &term;
        if factor.is_zero() {
            return Err(Error::PoleEncountered(format!("({a};{q})_{k}")));
        }
        denom *= &factor;
        term *= &q_inv;
    }
    denom.inv()
}

/// `x^n` by repeated squaring; negative `n` requires `x != 0`.
pub fn integer_power(x: &GaussianRational, n: i64) -> Result<GaussianRational> {
    let base = if n < 0 { x.inv()? } else { x.clone() };
    let mut exp = n.unsigned_abs();
    let mut acc = GaussianRational::one();
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(acc)
}
