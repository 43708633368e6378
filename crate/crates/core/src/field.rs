//! Exact arithmetic over the rationals and the Gaussian rationals ℚ(i).
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. [`GaussianRational`] pairs two of
//! them and is the scalar type of every other module in the crate.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the canonical rational `numer / denom`.
///
/// Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(s.to_string());
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer = numer.strip_prefix('+').unwrap_or(numer);
    let numer: BigInt = numer.parse().map_err(|_| err())?;
    let denom: BigInt = denom.parse().map_err(|_| err())?;
    if denom.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(numer, denom))
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::real(rational(numer, denom))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    /// True iff the value lies in ℤ.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re² + im²`, exactly.
    pub fn norm_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_squared();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Lossy conversion to a pair of doubles `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> Self::Output {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> Self::Output {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &GaussianRational) -> Self::Output {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &GaussianRational) -> Self::Output {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: &GaussianRational) -> Self::Output {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> Self::Output {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> Self::Output {
                (&self).$method(rhs)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> Self::Output {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        *self += &rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a GaussianRational>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for GaussianRational {
    /// `"re"` when real, otherwise `"re+im*i"` / `"re-im*i"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if self.im.is_zero() {
            return Ok(());
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}*i", sign, self.im.abs())
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&compact)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // The imaginary part starts at the last sign that is not leading.
        let split = body
            .char_indices()
            .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx)
            .next_back();
        let (re, im) = match split {
            Some(idx) => (parse_rational(&body[..idx])?, &body[idx..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other).map_err(|_| Error::Parse(s.to_string()))?,
        };
        Ok(Self { re, im })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // Integers are accepted bare as well as quoted.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Self::from_integer(n)),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(g("1/2") + g("1/3"), g("5/6"));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GaussianRational::i() * GaussianRational::i(), g("-1"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(g("2").inv().unwrap(), g("1/2"));
        let x = g("1+1*i");
        let inv = x.inv().unwrap();
        assert_eq!(inv, g("1/2-1/2*i"));
        assert_eq!(&x * &inv, GaussianRational::one());
        assert_eq!(GaussianRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn integrality() {
        assert!(g("3").is_integer());
        assert!(g("-6/2").is_integer());
        assert!(!g("3/2").is_integer());
        assert!(!g("1+1*i").is_integer());
    }

    #[test]
    fn norm_squared_examples() {
        assert_eq!(g("1/2").norm_squared(), rational(1, 4));
        assert_eq!(g("3/5+4/5*i").norm_squared(), rational(1, 1));
        assert!(GaussianRational::zero().norm_squared().is_zero());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(g("1/2-3/4*i").to_string(), "1/2-3/4*i");
        assert_eq!(g("4/8").to_string(), "1/2");
        assert_eq!(g("2/-4").to_string(), "-1/2");
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), -GaussianRational::i());
        assert_eq!(g("3*i").to_string(), "0+3*i");
        assert_eq!(g("-1/3 + 2 * i"), g("-1/3+2*i"));
        assert_eq!(g("-2-i").to_string(), "-2-1*i");
        for bad in ["", "1/0", "x", "1+", "1/2/3", "1+2*j"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn json_accepts_strings_and_integers() {
        let v: Vec<GaussianRational> = serde_json::from_str(r#"["1/2+i", 3, "-4"]"#).unwrap();
        assert_eq!(v, vec![g("1/2+1*i"), g("3"), g("-4")]);
        assert_eq!(serde_json::to_string(&v[0]).unwrap(), r#""1/2+1*i""#);
    }

    pub(crate) fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rational(n, d))
    }

    pub(crate) fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (small_rational(), small_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    proptest! {
        #[test]
        fn field_axioms(x in gaussian(), y in gaussian(), z in gaussian()) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + GaussianRational::zero(), x.clone());
            prop_assert_eq!(&x - &x, GaussianRational::zero());
        }

        #[test]
        fn inverse_is_involutive(x in gaussian()) {
            prop_assume!(!x.is_zero());
            let inv = x.inv().unwrap();
            prop_assert_eq!(&x * &inv, GaussianRational::one());
            prop_assert_eq!(inv.inv().unwrap(), x);
        }

        #[test]
        fn text_round_trip(x in gaussian()) {
            let printed = x.to_string();
            let parsed: GaussianRational = printed.parse().unwrap();
            prop_assert_eq!(&parsed, &x);
            prop_assert_eq!(parsed.to_string(), printed);
        }

        #[test]
        fn canonical_form_is_stable(n in -50i64..50, d in 1i64..50, k in 1i64..7) {
            let once = rational(n * k, d * k);
            let twice = BigRational::new(once.numer().clone(), once.denom().clone());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.denom().is_positive());
            prop_assert_eq!(once, rational(n, d));
        }
    }
}
