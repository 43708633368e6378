//! The nonlocal derangement identity.
//!
//! For a set `A` of distinct points and a multiset `B` with `|A| >= |B|`,
//!
//! ```text
//! sum_{a in A} prod_{x in B} (a - x) / prod_{y in A \ {a}} (a - y)
//!     = 0               if |A| > |B| + 1
//!     = 1               if |A| = |B| + 1
//!     = sum A - sum B   if |A| = |B|
//! ```
//!
//! [`derangement_sum`] evaluates the left side term by term and
//! [`predicted_sum`] the right side; nothing is shared between them.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::GaussianRational;

/// Pairwise distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    elements: Vec<GaussianRational>,
}

impl PointSet {
    pub fn new(elements: Vec<GaussianRational>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(elements.len());
        for x in &elements {
            if !seen.insert(x) {
                return Err(Error::DistinctnessViolation(format!(
                    "{x} occurs more than once"
                )));
            }
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[GaussianRational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GaussianRational) -> bool {
        self.elements.contains(x)
    }
}

/// Points with repetition allowed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointMultiset {
    elements: Vec<GaussianRational>,
}

impl PointMultiset {
    pub fn new(elements: Vec<GaussianRational>) -> Self {
        Self { elements }
    }

    pub fn elements(&self) -> &[GaussianRational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `prod_{x in B} (a - x) / prod_{y in A \ {a}} (a - y)`, empty products
/// being one.
pub fn gamma_coeff(
    a: &GaussianRational,
    set: &PointSet,
    multiset: &PointMultiset,
) -> Result<GaussianRational> {
    if !set.contains(a) {
        return Err(Error::ElementNotInSet(a.to_string()));
    }
    let numer: GaussianRational = multiset.elements.iter().map(|x| a - x).product();
    let denom: GaussianRational = set
        .elements
        .iter()
        .filter(|y| *y != a)
        .map(|y| a - y)
        .product();
    numer.checked_div(&denom)
}

fn check_domain(set: &PointSet, multiset: &PointMultiset) -> Result<()> {
    if set.len() < multiset.len() {
        return Err(Error::DomainViolation {
            n_a: set.len(),
            n_b: multiset.len(),
        });
    }
    Ok(())
}

/// `sum_{a in A} gamma_coeff(a, A, B)` by direct summation.
pub fn derangement_sum(set: &PointSet, multiset: &PointMultiset) -> Result<GaussianRational> {
    check_domain(set, multiset)?;
    set.elements
        .iter()
        .map(|a| gamma_coeff(a, set, multiset))
        .sum::<Result<GaussianRational>>()
}

/// The closed-form value of [`derangement_sum`].
pub fn predicted_sum(set: &PointSet, multiset: &PointMultiset) -> Result<GaussianRational> {
    check_domain(set, multiset)?;
    let (n_a, n_b) = (set.len(), multiset.len());
    Ok(if n_a > n_b + 1 {
        GaussianRational::zero()
    } else if n_a == n_b + 1 {
        GaussianRational::one()
    } else {
        set.elements.iter().sum::<GaussianRational>()
            - multiset.elements.iter().sum::<GaussianRational>()
    })
}

/// Which branch of the identity a pair of sizes falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaRegime {
    /// `n_A > n_B + 1`
    Vanishing,
    /// `n_A = n_B + 1`
    Unit,
    /// `n_A = n_B`
    Balanced,
}

impl LemmaRegime {
    pub fn classify(n_a: usize, n_b: usize) -> Option<Self> {
        match n_a.checked_sub(n_b)? {
            0 => Some(Self::Balanced),
            1 => Some(Self::Unit),
            _ => Some(Self::Vanishing),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Vanishing => "nA>nB+1",
            Self::Unit => "nA=nB+1",
            Self::Balanced => "nA=nB",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::tests::gaussian;
    use proptest::prelude::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn set(xs: &[&str]) -> PointSet {
        PointSet::new(xs.iter().map(|s| g(s)).collect()).unwrap()
    }

    fn multiset(xs: &[&str]) -> PointMultiset {
        PointMultiset::new(xs.iter().map(|s| g(s)).collect())
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(
            gamma_coeff(&g("0"), &set(&["0", "1"]), &multiset(&["5"])).unwrap(),
            g("5")
        );
        assert_eq!(
            gamma_coeff(&g("0"), &set(&["0"]), &multiset(&[])).unwrap(),
            g("1")
        );
        assert_eq!(
            gamma_coeff(&g("2"), &set(&["0", "2"]), &multiset(&["5", "7"])).unwrap(),
            g("15/2")
        );
        assert!(matches!(
            gamma_coeff(&g("3"), &set(&["0", "2"]), &multiset(&[])),
            Err(Error::ElementNotInSet(_))
        ));
    }

    #[test]
    fn derangement_examples() {
        assert_eq!(
            derangement_sum(&set(&["0", "1"]), &multiset(&[])).unwrap(),
            g("0")
        );
        assert_eq!(
            derangement_sum(&set(&["0", "1"]), &multiset(&["5"])).unwrap(),
            g("1")
        );
        assert_eq!(
            derangement_sum(&set(&["0", "2"]), &multiset(&["5", "7"])).unwrap(),
            g("-10")
        );
        assert_eq!(
            derangement_sum(&set(&["0"]), &multiset(&["1", "2"])),
            Err(Error::DomainViolation { n_a: 1, n_b: 2 })
        );
    }

    #[test]
    fn predicted_examples() {
        let five = set(&["1", "2", "3", "4", "5"]);
        assert_eq!(
            predicted_sum(&five, &multiset(&["7", "7"])).unwrap(),
            g("0")
        );
        assert_eq!(
            predicted_sum(&set(&["1", "2", "3"]), &multiset(&["7", "7"])).unwrap(),
            g("1")
        );
        assert_eq!(
            predicted_sum(&set(&["1", "2"]), &multiset(&["0", "0"])).unwrap(),
            g("3")
        );
        assert!(predicted_sum(&set(&[]), &multiset(&["1"])).is_err());
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(matches!(
            PointSet::new(vec![g("1/2"), g("2/4")]),
            Err(Error::DistinctnessViolation(_))
        ));
        assert!(PointSet::new(vec![g("1/2"), g("1/2+i")]).is_ok());
    }

    #[test]
    fn regimes() {
        assert_eq!(LemmaRegime::classify(3, 0), Some(LemmaRegime::Vanishing));
        assert_eq!(LemmaRegime::classify(3, 2), Some(LemmaRegime::Unit));
        assert_eq!(LemmaRegime::classify(0, 0), Some(LemmaRegime::Balanced));
        assert_eq!(LemmaRegime::classify(1, 2), None);
    }

    fn arb_pair() -> impl Strategy<Value = (PointSet, PointMultiset)> {
        (1usize..=7)
            .prop_flat_map(|n_a| {
                (
                    proptest::collection::hash_set(gaussian(), n_a),
                    proptest::collection::vec(gaussian(), 0..=n_a),
                )
            })
            .prop_map(|(a, b)| {
                (
                    PointSet::new(a.into_iter().collect()).unwrap(),
                    PointMultiset::new(b),
                )
            })
    }

    proptest! {
        #[test]
        fn identity_holds((a, b) in arb_pair()) {
            prop_assert_eq!(derangement_sum(&a, &b).unwrap(), predicted_sum(&a, &b).unwrap());
        }

        #[test]
        fn dropping_one_point_from_a_balanced_pair_gives_one((a, b) in arb_pair()) {
            prop_assume!(a.len() == b.len() && !b.is_empty());
            let shorter = PointMultiset::new(b.elements()[1..].to_vec());
            prop_assert_eq!(derangement_sum(&a, &shorter).unwrap(), GaussianRational::one());
        }

        #[test]
        fn permutation_invariance((a, b) in arb_pair(), rot in 0usize..8) {
            let mut xs = a.elements().to_vec();
            let k = rot % xs.len();
            xs.rotate_left(k);
            xs.reverse();
            let mut ys = b.elements().to_vec();
            ys.reverse();
            let permuted = derangement_sum(&PointSet::new(xs).unwrap(), &PointMultiset::new(ys)).unwrap();
            prop_assert_eq!(permuted, derangement_sum(&a, &b).unwrap());
        }
    }
}
