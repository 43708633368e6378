//! Coefficient generators for the hypergeometric series `pFr` and the basic
//! hypergeometric series `r+1 phi r`, and a double-precision evaluator.
//!
//! Coefficients are produced by the term ratio, one field multiplication per
//! parameter per index. [`pfr_term`] and [`qphi_term`] compute a single
//! coefficient directly from Pochhammer quotients and serve as a check on
//! the incremental route.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::GaussianRational;
use crate::pochhammer::{integer_power, q_pochhammer, rising_factorial};
use crate::series::TruncatedSeries;

/// Parameter rows of a (basic) hypergeometric series together with the
/// constant multiplying its argument, so that the series variable is always
/// the shared `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricSpec {
    pub upper: Vec<GaussianRational>,
    pub lower: Vec<GaussianRational>,
    pub argument_scale: GaussianRational,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<GaussianRational>, lower: Vec<GaussianRational>) -> Self {
        Self {
            upper,
            lower,
            argument_scale: GaussianRational::one(),
        }
    }

    pub fn with_scale(mut self, scale: GaussianRational) -> Self {
        self.argument_scale = scale;
        self
    }
}

/// `sum_k scale^k prod (upper)_k / (prod (lower)_k k!) z^k` up to `z^order`.
pub fn pfr_series(spec: &HypergeometricSpec, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = GaussianRational::one();
    for k in 0..order {
        let shift = GaussianRational::from_integer(k as i64);
        let mut numer = spec.argument_scale.clone();
        for b in &spec.upper {
            numer *= &(b + &shift);
        }
        let mut denom = GaussianRational::from_integer(k as i64 + 1);
        for a in &spec.lower {
            let factor = a + &shift;
            if factor.is_zero() {
                return Err(Error::PoleEncountered(format!(
                    "lower parameter {a} at index {k}"
                )));
            }
            denom *= &factor;
        }
        let next = &term * &numer.checked_div(&denom)?;
        coeffs.push(term);
        term = next;
    }
    coeffs.push(term);
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// The coefficient of `z^k` in [`pfr_series`], from the Pochhammer quotient.
pub fn pfr_term(spec: &HypergeometricSpec, k: usize) -> Result<GaussianRational> {
    let k = k as i64;
    let mut numer = integer_power(&spec.argument_scale, k)?;
    for b in &spec.upper {
        numer *= &rising_factorial(b, k)?;
    }
    let mut denom = rising_factorial(&GaussianRational::one(), k)?;
    for a in &spec.lower {
        denom *= &rising_factorial(a, k)?;
    }
    if denom.is_zero() {
        return Err(Error::PoleEncountered(format!(
            "zero denominator at index {k}"
        )));
    }
    numer.checked_div(&denom)
}

/// `sum_k scale^k prod (upper;q)_k / (prod (lower;q)_k (q;q)_k) z^k` up to
/// `z^order`.
pub fn qphi_series(
    spec: &HypergeometricSpec,
    q: &GaussianRational,
    order: usize,
) -> Result<TruncatedSeries> {
    let one = GaussianRational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = one.clone();
    // q^k
    let mut qk = one.clone();
    for k in 0..order {
        let mut numer = spec.argument_scale.clone();
        for b in &spec.upper {
            numer *= &(&one - &(b * &qk));
        }
        let next_qk = &qk * q;
        let mut denom = &one - &next_qk;
        if denom.is_zero() {
            return Err(Error::PoleEncountered(format!("(q;q)_{} vanishes", k + 1)));
        }
        for a in &spec.lower {
            let factor = &one - &(a * &qk);
            if factor.is_zero() {
                return Err(Error::PoleEncountered(format!(
                    "lower q-parameter {a} at index {k}"
                )));
            }
            denom *= &factor;
        }
        let next = &term * &numer.checked_div(&denom)?;
        coeffs.push(term);
        term = next;
        qk = next_qk;
    }
    coeffs.push(term);
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// The coefficient of `z^k` in [`qphi_series`], from the q-Pochhammer quotient.
pub fn qphi_term(
    spec: &HypergeometricSpec,
    q: &GaussianRational,
    k: usize,
) -> Result<GaussianRational> {
    let k = k as i64;
    let mut numer = integer_power(&spec.argument_scale, k)?;
    for b in &spec.upper {
        numer *= &q_pochhammer(b, q, k)?;
    }
    let mut denom = q_pochhammer(q, q, k)?;
    for a in &spec.lower {
        denom *= &q_pochhammer(a, q, k)?;
    }
    if denom.is_zero() {
        return Err(Error::PoleEncountered(format!(
            "zero q-denominator at index {k}"
        )));
    }
    numer.checked_div(&denom)
}

/// Horner evaluation of the truncated polynomial at `z` in double precision.
pub fn eval_float(series: &TruncatedSeries, z: Complex64) -> Complex64 {
    series
        .coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| {
            let (re, im) = c.to_f64_pair();
            acc * z + Complex64::new(re, im)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::tests::gaussian;
    use proptest::prelude::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn series(coeffs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|s| g(s)).collect())
    }

    #[test]
    fn exponential_series() {
        let spec = HypergeometricSpec::new(vec![], vec![]);
        assert_eq!(
            pfr_series(&spec, 3).unwrap(),
            series(&["1", "1", "1/2", "1/6"])
        );
    }

    #[test]
    fn geometric_series() {
        let spec = HypergeometricSpec::new(vec![g("1")], vec![]);
        assert_eq!(pfr_series(&spec, 3).unwrap(), series(&["1", "1", "1", "1"]));
    }

    #[test]
    fn terminating_series() {
        let spec = HypergeometricSpec::new(vec![g("-1")], vec![g("2")]);
        assert_eq!(
            pfr_series(&spec, 3).unwrap(),
            series(&["1", "-1/2", "0", "0"])
        );
    }

    #[test]
    fn argument_scale_alternates_signs() {
        let spec = HypergeometricSpec::new(vec![g("1")], vec![]).with_scale(g("-1"));
        assert_eq!(
            pfr_series(&spec, 3).unwrap(),
            series(&["1", "-1", "1", "-1"])
        );
    }

    #[test]
    fn lower_pole_is_reported() {
        let spec = HypergeometricSpec::new(vec![g("1/2")], vec![g("-1")]);
        assert!(matches!(
            pfr_series(&spec, 3),
            Err(Error::PoleEncountered(_))
        ));
        // the pole at index 1 is not reached at order 1
        assert!(pfr_series(&spec, 1).is_ok());
    }

    #[test]
    fn q_series_examples() {
        let q = g("1/3");
        let empty = HypergeometricSpec::new(vec![], vec![]);
        let one = g("1");
        let expected = vec![
            one.clone(),
            (&one - &q).inv().unwrap(),
            ((&one - &q) * (&one - &q * &q)).inv().unwrap(),
        ];
        assert_eq!(
            qphi_series(&empty, &q, 2).unwrap(),
            TruncatedSeries::from_coeffs(expected)
        );

        let upper_q = HypergeometricSpec::new(vec![q.clone()], vec![]);
        assert_eq!(
            qphi_series(&upper_q, &q, 2).unwrap(),
            series(&["1", "1", "1"])
        );

        let any = HypergeometricSpec::new(vec![g("2/7")], vec![g("5")]).with_scale(g("3"));
        assert_eq!(qphi_series(&any, &q, 0).unwrap(), series(&["1"]));
    }

    #[test]
    fn float_evaluation() {
        let s = series(&["1", "1"]);
        assert!(
            (eval_float(&s, Complex64::new(0.5, 0.0)) - Complex64::new(1.5, 0.0)).norm() < 1e-15
        );
        let geo = TruncatedSeries::geometric_like(&g("1"), &g("1"), 12);
        let direct: f64 = (0..=12).map(|k| 0.1f64.powi(k)).sum();
        assert!((eval_float(&geo, Complex64::new(0.1, 0.0)).re - direct).abs() < 1e-15);
        assert!((eval_float(&geo, Complex64::new(0.1, 0.0)).re - 1.111111111111).abs() < 1e-12);
        let s = series(&["-3/7+2*i", "5", "9"]);
        assert_eq!(
            eval_float(&s, Complex64::new(0.0, 0.0)),
            Complex64::new(-3.0 / 7.0, 2.0)
        );
    }

    fn arb_spec() -> impl Strategy<Value = HypergeometricSpec> {
        (
            proptest::collection::vec(gaussian(), 0..4),
            proptest::collection::vec(gaussian(), 0..4),
            gaussian(),
        )
            .prop_map(|(upper, lower, scale)| {
                HypergeometricSpec::new(upper, lower).with_scale(scale)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ratio_route_matches_pochhammer_quotients(spec in arb_spec()) {
            if let Ok(s) = pfr_series(&spec, 6) {
                for (k, c) in s.coeffs().iter().enumerate() {
                    prop_assert_eq!(c, &pfr_term(&spec, k).unwrap());
                }
            }
        }

        #[test]
        fn q_ratio_route_matches_q_pochhammer_quotients(spec in arb_spec(), qn in 1i64..9, qd in 10i64..13) {
            let q = GaussianRational::from_ratio(qn, qd);
            if let Ok(s) = qphi_series(&spec, &q, 5) {
                for (k, c) in s.coeffs().iter().enumerate() {
                    prop_assert_eq!(c, &qphi_term(&spec, &q, k).unwrap());
                }
            }
        }

        #[test]
        fn terminating_upper_parameter(n in 0i64..5, lower in proptest::collection::vec(gaussian(), 0..3)) {
            let lower: Vec<_> = lower.into_iter().map(|a| a + GaussianRational::new(num_traits::Zero::zero(), crate::field::rational(1, 3))).collect();
            let spec = HypergeometricSpec::new(vec![GaussianRational::from_integer(-n)], lower);
            let s = pfr_series(&spec, 8).unwrap();
            for k in (n as usize + 1)..=8 {
                prop_assert!(s.coeffs()[k].is_zero());
            }
        }
    }
}
