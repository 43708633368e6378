//! Bilinear sums of `pFr` products and their closed forms.
//!
//! For distinct-mod-ℤ points `a_1..a_{r+1}`, parameters `b_1..b_p` and integer
//! shifts `m_1..m_p`, the sum
//!
//! ```text
//! H(z) = sum_i c_i pFr(1+a_i+m_j-b_j ; 1+a_i-a_l (l != i) ; z)
//!              pFr(b_j-a_i ; 1+a_l-a_i (l != i) ; (-1)^{p+r+1} z)
//! ```
//!
//! collapses to `0`, `1`, `1/(1-z)`, `C`, `C+z` or
//! `(α-β+p) z/(1-z)^2 + C/(1-z)` depending on `M = sum m_j` and `p`.
//! The coefficient of `z^k` is a sum of derangement terms over the point sets
//! `A = {a_i + j : 0 <= j <= k}` and `B = {b_l + s : -m_l <= s <= k-1}`,
//! which [`ClassicalDualityInstance::proof_chain`] checks index by index.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::derangement::{derangement_sum, predicted_sum, PointMultiset, PointSet};
use crate::error::{Error, Result};
use crate::field::GaussianRational;
use crate::hypergeometric::{pfr_series, HypergeometricSpec};
use crate::pochhammer::rising_factorial;
use crate::report::{ProofStep, Theorem, VerificationReport};
use crate::series::TruncatedSeries;

/// The six cells of the classical closed-form table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalCase {
    /// `M < r`: `H ≡ 0`.
    Vanishing,
    /// `M = r`, `p <= r`: `H ≡ 1`.
    UnitConstant,
    /// `M = r`, `p = r + 1`: `H ≡ 1/(1-z)`.
    UnitGeometric,
    /// `M = r + 1`, `p <= r - 1`: `H ≡ C`.
    ShiftConstant,
    /// `M = r + 1`, `p = r`: `H ≡ C + z`.
    ShiftLinear,
    /// `M = r + 1`, `p = r + 1`: `H ≡ (α-β+p) z/(1-z)^2 + C/(1-z)`.
    ShiftRational,
}

impl ClassicalCase {
    pub const ALL: [ClassicalCase; 6] = [
        Self::Vanishing,
        Self::UnitConstant,
        Self::UnitGeometric,
        Self::ShiftConstant,
        Self::ShiftLinear,
        Self::ShiftRational,
    ];

    /// `None` when `M > r + 1`.
    pub fn classify(p: usize, r: usize, total_shift: i64) -> Option<Self> {
        let r_signed = r as i64;
        let full = p == r + 1;
        if total_shift < r_signed {
            Some(Self::Vanishing)
        } else if total_shift == r_signed {
            Some(if full {
                Self::UnitGeometric
            } else {
                Self::UnitConstant
            })
        } else if total_shift == r_signed + 1 {
            Some(if full {
                Self::ShiftRational
            } else if p == r {
                Self::ShiftLinear
            } else {
                Self::ShiftConstant
            })
        } else {
            None
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Vanishing => "M<r",
            Self::UnitConstant => "M=r,p<=r",
            Self::UnitGeometric => "M=r,p=r+1",
            Self::ShiftConstant => "M=r+1,p<=r-1",
            Self::ShiftLinear => "M=r+1,p=r",
            Self::ShiftRational => "M=r+1,p=r+1",
        }
    }
}

impl fmt::Display for ClassicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Validated parameters `(a, b, m)`; `r = a.len() - 1` and `p = b.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassicalInstanceJson", into = "ClassicalInstanceJson")]
pub struct ClassicalDualityInstance {
    a: Vec<GaussianRational>,
    b: Vec<GaussianRational>,
    m: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ClassicalInstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    a: Vec<GaussianRational>,
    #[serde(default)]
    b: Vec<GaussianRational>,
    #[serde(default)]
    m: Vec<i64>,
}

impl TryFrom<ClassicalInstanceJson> for ClassicalDualityInstance {
    type Error = Error;

    fn try_from(raw: ClassicalInstanceJson) -> Result<Self> {
        if raw.p.is_some_and(|p| p != raw.b.len()) {
            return Err(Error::InvalidInstance(format!(
                "p = {:?} but b has {} entries",
                raw.p,
                raw.b.len()
            )));
        }
        if raw.r.is_some_and(|r| r + 1 != raw.a.len()) {
            return Err(Error::InvalidInstance(format!(
                "r = {:?} but a has {} entries",
                raw.r,
                raw.a.len()
            )));
        }
        Self::new(raw.a, raw.b, raw.m)
    }
}

impl From<ClassicalDualityInstance> for ClassicalInstanceJson {
    fn from(inst: ClassicalDualityInstance) -> Self {
        Self {
            p: Some(inst.p()),
            r: Some(inst.r()),
            a: inst.a,
            b: inst.b,
            m: inst.m,
        }
    }
}

fn sign(parity: usize) -> GaussianRational {
    GaussianRational::from_integer(if parity.is_multiple_of(2) { 1 } else { -1 })
}

impl ClassicalDualityInstance {
    pub fn new(a: Vec<GaussianRational>, b: Vec<GaussianRational>, m: Vec<i64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need r >= 1, got {} points a",
                a.len()
            )));
        }
        if b.len() != m.len() {
            return Err(Error::InvalidInstance(format!(
                "b has {} entries but m has {}",
                b.len(),
                m.len()
            )));
        }
        if b.len() > a.len() {
            return Err(Error::InvalidInstance(format!(
                "p = {} exceeds r + 1 = {}",
                b.len(),
                a.len()
            )));
        }
        for (i, ai) in a.iter().enumerate() {
            for aj in &a[i + 1..] {
                if (ai - aj).is_integer() {
                    return Err(Error::InvalidInstance(format!(
                        "a-difference {ai} - {aj} is an integer"
                    )));
                }
            }
        }
        Ok(Self { a, b, m })
    }

    pub fn a(&self) -> &[GaussianRational] {
        &self.a
    }

    pub fn b(&self) -> &[GaussianRational] {
        &self.b
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn p(&self) -> usize {
        self.b.len()
    }

    pub fn r(&self) -> usize {
        self.a.len() - 1
    }

    /// `M = sum m_j`.
    pub fn total_shift(&self) -> i64 {
        self.m.iter().sum()
    }

    /// `m̂ = min m_j`, zero when `p = 0`.
    pub fn min_shift(&self) -> i64 {
        self.m.iter().copied().min().unwrap_or(0)
    }

    /// Coefficients below this index are allowed to differ.
    pub fn mod_degree(&self) -> usize {
        self.min_shift().min(0).unsigned_abs() as usize
    }

    pub fn alpha(&self) -> GaussianRational {
        self.a.iter().sum()
    }

    pub fn beta(&self) -> GaussianRational {
        self.b.iter().sum()
    }

    /// `C = α + sum m_j (m_j + 1 - 2 b_j) / 2`.
    pub fn c_constant(&self) -> GaussianRational {
        let half = GaussianRational::from_ratio(1, 2);
        let correction: GaussianRational = self
            .m
            .iter()
            .zip(&self.b)
            .map(|(&mj, bj)| {
                let mj_g = GaussianRational::from_integer(mj);
                &mj_g * &(GaussianRational::from_integer(mj + 1) - bj - bj) * &half
            })
            .sum();
        self.alpha() + correction
    }

    pub fn case(&self) -> Result<ClassicalCase> {
        ClassicalCase::classify(self.p(), self.r(), self.total_shift()).ok_or(
            Error::CaseOutOfRange {
                m: self.total_shift(),
                r: self.r(),
            },
        )
    }

    pub fn translated(&self, t: &GaussianRational) -> Self {
        Self {
            a: self.a.iter().map(|x| x + t).collect(),
            b: self.b.iter().map(|x| x + t).collect(),
            m: self.m.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("instance serialization is infallible")
    }

    fn others(&self, i: usize) -> impl Iterator<Item = &GaussianRational> {
        self.a
            .iter()
            .enumerate()
            .filter(move |&(l, _)| l != i)
            .map(|(_, x)| x)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.r() {
            return Err(Error::Precondition(format!(
                "index {i} out of range 0..={}",
                self.r()
            )));
        }
        Ok(())
    }

    /// `c_i = prod_j (1+a_i-b_j)_{m_j} / prod_{l != i} (a_i - a_l)`, with `i`
    /// zero-based.
    pub fn coefficient_c(&self, i: usize) -> Result<GaussianRational> {
        self.check_index(i)?;
        let ai = &self.a[i];
        let one = GaussianRational::one();
        let mut numer = one.clone();
        for (bj, &mj) in self.b.iter().zip(&self.m) {
            numer *= &rising_factorial(&(&one + ai - bj), mj)?;
        }
        let denom: GaussianRational = self.others(i).map(|al| ai - al).product();
        numer.checked_div(&denom)
    }

    /// `pFr(1+a_i+m_j-b_j ; 1+a_i-a_l ; z)`.
    pub fn first_factor(&self, i: usize) -> HypergeometricSpec {
        let ai = &self.a[i];
        let one = GaussianRational::one();
        let upper = self
            .b
            .iter()
            .zip(&self.m)
            .map(|(bj, &mj)| GaussianRational::from_integer(1 + mj) + ai - bj)
            .collect();
        let lower = self.others(i).map(|al| &one + ai - al).collect();
        HypergeometricSpec::new(upper, lower)
    }

    /// `pFr(b_j-a_i ; 1+a_l-a_i ; (-1)^{p+r+1} z)`.
    pub fn second_factor(&self, i: usize) -> HypergeometricSpec {
        let ai = &self.a[i];
        let one = GaussianRational::one();
        let upper = self.b.iter().map(|bj| bj - ai).collect();
        let lower = self.others(i).map(|al| &one + al - ai).collect();
        HypergeometricSpec::new(upper, lower).with_scale(sign(self.p() + self.r() + 1))
    }

    /// The bilinear sum `H(z)` to order `z^order`.
    pub fn build_h(&self, order: usize) -> Result<TruncatedSeries> {
        let mut total = TruncatedSeries::zero(order);
        for i in 0..=self.r() {
            let c = self.coefficient_c(i)?;
            let first = pfr_series(&self.first_factor(i), order)?;
            let second = pfr_series(&self.second_factor(i), order)?;
            total = &total + &(&first * &second).scale(&c);
        }
        Ok(total)
    }

    /// The predicted closed form of `H(z)`.
    pub fn expected_h(&self, order: usize) -> Result<TruncatedSeries> {
        let one = GaussianRational::one();
        Ok(match self.case()? {
            ClassicalCase::Vanishing => TruncatedSeries::zero(order),
            ClassicalCase::UnitConstant => TruncatedSeries::one(order),
            ClassicalCase::UnitGeometric => TruncatedSeries::geometric_like(&one, &one, order),
            ClassicalCase::ShiftConstant => TruncatedSeries::constant(self.c_constant(), order),
            ClassicalCase::ShiftLinear => {
                &TruncatedSeries::constant(self.c_constant(), order)
                    + &TruncatedSeries::monomial(one, 1, order)
            }
            ClassicalCase::ShiftRational => {
                let slope =
                    self.alpha() - self.beta() + GaussianRational::from_integer(self.p() as i64);
                &TruncatedSeries::z_over_one_minus_z_squared(order).scale(&slope)
                    + &TruncatedSeries::geometric_like(&self.c_constant(), &one, order)
            }
        })
    }

    /// Builds `H`, builds its closed form, and compares them modulo
    /// polynomials of degree below `max(0, -m̂)`.
    pub fn verify(&self, order: usize) -> Result<VerificationReport> {
        let case = self.case()?;
        let built = self.build_h(order)?;
        let expected = self.expected_h(order)?;
        Ok(VerificationReport::compare(
            Theorem::Classical,
            self.to_json(),
            case.label(),
            built,
            expected,
            self.min_shift(),
        ))
    }

    fn check_proof_index(&self, k: usize) -> Result<()> {
        if (k as i64) < -self.min_shift() {
            return Err(Error::Precondition(format!(
                "k = {k} is below -m̂ = {}",
                -self.min_shift()
            )));
        }
        Ok(())
    }

    /// The closed form of `γ(a_i + j; A, B)` for the proof sets at index `k`.
    pub fn gamma_ijk(&self, i: usize, j: usize, k: usize) -> Result<GaussianRational> {
        self.check_index(i)?;
        if j > k {
            return Err(Error::Precondition(format!("j = {j} exceeds k = {k}")));
        }
        self.check_proof_index(k)?;
        let ai = &self.a[i];
        let one = GaussianRational::one();
        let (j_i, rest) = (j as i64, (k - j) as i64);

        let mut head = rising_factorial(&one, j_i)?;
        let mut head_numer = one.clone();
        for (bl, &ml) in self.b.iter().zip(&self.m) {
            head_numer *=
                &rising_factorial(&(GaussianRational::from_integer(1 + ml) + ai - bl), j_i)?;
        }
        let mut tail = rising_factorial(&one, rest)?;
        let mut tail_numer = sign((k - j) * (self.p() + self.r() + 1));
        for bl in &self.b {
            tail_numer *= &rising_factorial(&(bl - ai), rest)?;
        }
        for al in self.others(i) {
            head *= &rising_factorial(&(&one + ai - al), j_i)?;
            tail *= &rising_factorial(&(&one - ai + al), rest)?;
        }
        Ok(self.coefficient_c(i)?
            * head_numer.checked_div(&head)?
            * tail_numer.checked_div(&tail)?)
    }

    /// `A = {a_i + j : 0 <= j <= k}`, `B = {b_l + s : -m_l <= s <= k-1}`.
    pub fn proof_sets(&self, k: usize) -> Result<(PointSet, PointMultiset)> {
        self.check_proof_index(k)?;
        let set = self
            .a
            .iter()
            .flat_map(|ai| (0..=k as i64).map(move |j| ai + GaussianRational::from_integer(j)))
            .collect();
        let multiset = self
            .b
            .iter()
            .zip(&self.m)
            .flat_map(|(bl, &ml)| {
                (-ml..k as i64).map(move |s| bl + GaussianRational::from_integer(s))
            })
            .collect();
        Ok((PointSet::new(set)?, PointMultiset::new(multiset)))
    }

    /// Cross-checks every index `max(0, -m̂) <= k <= k_max` through the
    /// closed-form gammas, the derangement identity, and the built series.
    pub fn proof_chain(&self, k_max: usize) -> Result<Vec<ProofStep>> {
        let series = self.build_h(k_max)?;
        (self.mod_degree()..=k_max)
            .map(|k| {
                let mut gamma_total = GaussianRational::zero();
                for i in 0..=self.r() {
                    for j in 0..=k {
                        gamma_total += self.gamma_ijk(i, j, k)?;
                    }
                }
                let (set, multiset) = self.proof_sets(k)?;
                Ok(ProofStep {
                    k,
                    gamma_total,
                    derangement_sum: derangement_sum(&set, &multiset)?,
                    predicted_sum: predicted_sum(&set, &multiset)?,
                    series_coeff: series.coeffs()[k].clone(),
                })
            })
            .collect()
    }
}
