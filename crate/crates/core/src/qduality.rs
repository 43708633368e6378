//! The q-analogue: bilinear sums of `r+1 phi r` products.
//!
//! ```text
//! G(z) = sum_i c_i phi(q^{1+m_l} a_i/b_l ; q a_i/a_l (l != i) ; w z)
//!              phi(b_l/a_i ; q a_l/a_i (l != i) ; z)
//! w    = q^{-r} prod_l b_l/a_l
//! ```
//!
//! with closed forms `0`, `1/(1-z)` and
//! `(C/(1-z) - (qα-β)/(1-qz)) / (1-q)` for `M < r`, `M = r`, `M = r+1`.
//! The proof sets are the geometric progressions `A = {a_i q^j}` and
//! `B = {b_l q^s : -m_l <= s <= k-1}`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::derangement::{derangement_sum, predicted_sum, PointMultiset, PointSet};
use crate::error::{Error, Result};
use crate::field::{GaussianRational, Rational};
use crate::hypergeometric::{qphi_series, HypergeometricSpec};
use crate::pochhammer::{integer_power, q_pochhammer};
use crate::report::{ProofStep, Theorem, VerificationReport};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QCase {
    /// `M < r`: `G ≡ 0`.
    Vanishing,
    /// `M = r`: `G ≡ 1/(1-z)`.
    Unit,
    /// `M = r + 1`: `G ≡ (C/(1-z) - (qα-β)/(1-qz)) / (1-q)`.
    Shift,
}

impl QCase {
    pub const ALL: [QCase; 3] = [Self::Vanishing, Self::Unit, Self::Shift];

    pub fn classify(r: usize, total_shift: i64) -> Option<Self> {
        let r = r as i64;
        match total_shift - r {
            d if d < 0 => Some(Self::Vanishing),
            0 => Some(Self::Unit),
            1 => Some(Self::Shift),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Vanishing => "M<r",
            Self::Unit => "M=r",
            Self::Shift => "M=r+1",
        }
    }
}

impl fmt::Display for QCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Exponent bound used when none is given: enough to cover a truncation
/// order of [`DEFAULT_ORDER`](crate::DEFAULT_ORDER).
pub fn default_exponent_bound(order: usize, m: &[i64]) -> u32 {
    let max_shift = m.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    (order as u64 + max_shift + 4) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QInstanceJson", into = "QInstanceJson")]
pub struct QDualityInstance {
    q: GaussianRational,
    a: Vec<GaussianRational>,
    b: Vec<GaussianRational>,
    m: Vec<i64>,
    exponent_bound: u32,
}

#[derive(Serialize, Deserialize)]
struct QInstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    q: GaussianRational,
    a: Vec<GaussianRational>,
    b: Vec<GaussianRational>,
    m: Vec<i64>,
}

impl TryFrom<QInstanceJson> for QDualityInstance {
    type Error = Error;

    fn try_from(raw: QInstanceJson) -> Result<Self> {
        if raw.r.is_some_and(|r| r + 1 != raw.a.len()) {
            return Err(Error::InvalidInstance(format!(
                "r = {:?} but a has {} entries",
                raw.r,
                raw.a.len()
            )));
        }
        Self::new(raw.q, raw.a, raw.b, raw.m)
    }
}

impl From<QDualityInstance> for QInstanceJson {
    fn from(inst: QDualityInstance) -> Self {
        Self {
            r: Some(inst.r()),
            q: inst.q,
            a: inst.a,
            b: inst.b,
            m: inst.m,
        }
    }
}

impl QDualityInstance {
    pub fn new(
        q: GaussianRational,
        a: Vec<GaussianRational>,
        b: Vec<GaussianRational>,
        m: Vec<i64>,
    ) -> Result<Self> {
        let bound = default_exponent_bound(crate::DEFAULT_ORDER, &m);
        Self::with_exponent_bound(q, a, b, m, bound)
    }

    /// Validates the parameters, testing `a_i/a_j != q^e` for `|e| <= bound`.
    pub fn with_exponent_bound(
        q: GaussianRational,
        a: Vec<GaussianRational>,
        b: Vec<GaussianRational>,
        m: Vec<i64>,
        bound: u32,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        if a.len() < 2 {
            return invalid(format!("need r >= 1, got {} points a", a.len()));
        }
        if b.len() != a.len() || m.len() != a.len() {
            return invalid(format!(
                "a, b, m must have equal lengths ({}, {}, {})",
                a.len(),
                b.len(),
                m.len()
            ));
        }
        if q.is_zero() || q.norm_squared() >= Rational::one() {
            return invalid(format!("q = {q} must satisfy 0 < |q| < 1"));
        }
        if let Some(x) = a.iter().chain(&b).find(|x| x.is_zero()) {
            return invalid(format!("parameter {x} must be nonzero"));
        }
        let inst = Self {
            q,
            a,
            b,
            m,
            exponent_bound: 0,
        };
        inst.check_ratios(bound)?;
        Ok(Self {
            exponent_bound: bound,
            ..inst
        })
    }

    fn check_ratios(&self, bound: u32) -> Result<()> {
        let q_inv = self.q.inv()?;
        let mut powers = vec![GaussianRational::one()];
        let (mut up, mut down) = (GaussianRational::one(), GaussianRational::one());
        for _ in 0..bound {
            up *= &self.q;
            down *= &q_inv;
            powers.push(up.clone());
            powers.push(down.clone());
        }
        for (i, ai) in self.a.iter().enumerate() {
            for (j, aj) in self.a.iter().enumerate() {
                if i == j {
                    continue;
                }
                let ratio = ai.checked_div(aj)?;
                if powers.contains(&ratio) {
                    return Err(Error::InvalidInstance(format!(
                        "a-ratio {ai} / {aj} is a power of q = {} with exponent at most {bound}",
                        self.q
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-validates the ratio condition when `order` needs a wider
    /// exponent range than the instance was built with.
    pub fn ensure_exponent_bound(&mut self, order: usize) -> Result<()> {
        let needed = default_exponent_bound(order, &self.m);
        if needed > self.exponent_bound {
            self.check_ratios(needed)?;
            self.exponent_bound = needed;
        }
        Ok(())
    }

    pub fn q(&self) -> &GaussianRational {
        &self.q
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

    pub fn exponent_bound(&self) -> u32 {
        self.exponent_bound
    }

    pub fn r(&self) -> usize {
        self.a.len() - 1
    }

    pub fn total_shift(&self) -> i64 {
        self.m.iter().sum()
    }

    /// `M_2 = sum m_i (m_i + 1) / 2`.
    pub fn triangular_shift(&self) -> i64 {
        self.m.iter().map(|&x| x * (x + 1) / 2).sum()
    }

    pub fn min_shift(&self) -> i64 {
        self.m.iter().copied().min().unwrap_or(0)
    }

    pub fn mod_degree(&self) -> usize {
        self.min_shift().min(0).unsigned_abs() as usize
    }

    /// `w = q^{-r} prod b_i / a_i`.
    pub fn w(&self) -> GaussianRational {
        let mut w = integer_power(&self.q, -(self.r() as i64)).expect("q is nonzero");
        for (bi, ai) in self.b.iter().zip(&self.a) {
            w *= &bi.checked_div(ai).expect("a is nonzero");
        }
        w
    }

    pub fn alpha(&self) -> GaussianRational {
        self.a.iter().sum()
    }

    pub fn beta(&self) -> GaussianRational {
        self.b.iter().sum()
    }

    /// `C = α - sum b_i q^{-m_i}`.
    pub fn c_constant(&self) -> GaussianRational {
        let shifted: GaussianRational = self
            .b
            .iter()
            .zip(&self.m)
            .map(|(bi, &mi)| bi * &integer_power(&self.q, -mi).expect("q is nonzero"))
            .sum();
        self.alpha() - shifted
    }

    pub fn case(&self) -> Result<QCase> {
        QCase::classify(self.r(), self.total_shift()).ok_or(Error::CaseOutOfRange {
            m: self.total_shift(),
            r: self.r(),
        })
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

    /// `c_i = (-1)^M q^{-M_2} prod_j b_j^{m_j} (q a_i/b_j;q)_{m_j} / prod_{j != i} (a_i - a_j)`.
    pub fn coefficient_c_q(&self, i: usize) -> Result<GaussianRational> {
        self.check_index(i)?;
        let ai = &self.a[i];
        let q = &self.q;
        let parity = if self.total_shift().rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let mut numer =
            GaussianRational::from_integer(parity) * integer_power(q, -self.triangular_shift())?;
        for (bj, &mj) in self.b.iter().zip(&self.m) {
            numer *= &integer_power(bj, mj)?;
            numer *= &q_pochhammer(&(q * ai).checked_div(bj)?, q, mj)?;
        }
        let denom: GaussianRational = self.others(i).map(|al| ai - al).product();
        numer.checked_div(&denom)
    }

    /// `phi(q^{1+m_l} a_i/b_l ; q a_i/a_l ; w z)`.
    pub fn first_factor(&self, i: usize) -> Result<HypergeometricSpec> {
        let ai = &self.a[i];
        let q = &self.q;
        let upper = self
            .b
            .iter()
            .zip(&self.m)
            .map(|(bl, &ml)| Ok(integer_power(q, 1 + ml)? * ai.checked_div(bl)?))
            .collect::<Result<_>>()?;
        let lower = self
            .others(i)
            .map(|al| (q * ai).checked_div(al))
            .collect::<Result<_>>()?;
        Ok(HypergeometricSpec::new(upper, lower).with_scale(self.w()))
    }

    /// `phi(b_l/a_i ; q a_l/a_i ; z)`.
    pub fn second_factor(&self, i: usize) -> Result<HypergeometricSpec> {
        let ai = &self.a[i];
        let upper = self
            .b
            .iter()
            .map(|bl| bl.checked_div(ai))
            .collect::<Result<_>>()?;
        let lower = self
            .others(i)
            .map(|al| (&self.q * al).checked_div(ai))
            .collect::<Result<_>>()?;
        Ok(HypergeometricSpec::new(upper, lower))
    }

    /// The bilinear sum `G(z)` to order `z^order`.
    pub fn build_g(&self, order: usize) -> Result<TruncatedSeries> {
        let mut total = TruncatedSeries::zero(order);
        for i in 0..=self.r() {
            let c = self.coefficient_c_q(i)?;
            let first = qphi_series(&self.first_factor(i)?, &self.q, order)?;
            let second = qphi_series(&self.second_factor(i)?, &self.q, order)?;
            total = &total + &(&first * &second).scale(&c);
        }
        Ok(total)
    }

    pub fn expected_g(&self, order: usize) -> Result<TruncatedSeries> {
        let one = GaussianRational::one();
        Ok(match self.case()? {
            QCase::Vanishing => TruncatedSeries::zero(order),
            QCase::Unit => TruncatedSeries::geometric_like(&one, &one, order),
            QCase::Shift => {
                let norm = (&one - &self.q).inv()?;
                let drift = &self.q * &self.alpha() - self.beta();
                &TruncatedSeries::geometric_like(&(self.c_constant() * &norm), &one, order)
                    - &TruncatedSeries::geometric_like(&(drift * &norm), &self.q, order)
            }
        })
    }

    pub fn verify(&self, order: usize) -> Result<VerificationReport> {
        let mut checked = self.clone();
        checked.ensure_exponent_bound(order)?;
        let case = checked.case()?;
        let built = checked.build_g(order)?;
        let expected = checked.expected_g(order)?;
        Ok(VerificationReport::compare(
            Theorem::Q,
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

    /// The closed form of `γ(a_i q^j; A, B)` for the proof sets at index `k`.
    pub fn gamma_ijk_q(&self, i: usize, j: usize, k: usize) -> Result<GaussianRational> {
        self.check_index(i)?;
        if j > k {
            return Err(Error::Precondition(format!("j = {j} exceeds k = {k}")));
        }
        self.check_proof_index(k)?;
        let ai = &self.a[i];
        let q = &self.q;
        let (j_i, rest) = (j as i64, (k - j) as i64);

        let mut head_numer = integer_power(&self.w(), j_i)?;
        for (bl, &ml) in self.b.iter().zip(&self.m) {
            let upper = integer_power(q, 1 + ml)? * ai.checked_div(bl)?;
            head_numer *= &q_pochhammer(&upper, q, j_i)?;
        }
        let mut head = q_pochhammer(q, q, j_i)?;
        let mut tail_numer = GaussianRational::one();
        for bl in &self.b {
            tail_numer *= &q_pochhammer(&bl.checked_div(ai)?, q, rest)?;
        }
        let mut tail = q_pochhammer(q, q, rest)?;
        for al in self.others(i) {
            head *= &q_pochhammer(&(q * ai).checked_div(al)?, q, j_i)?;
            tail *= &q_pochhammer(&(q * al).checked_div(ai)?, q, rest)?;
        }
        Ok(self.coefficient_c_q(i)?
            * head_numer.checked_div(&head)?
            * tail_numer.checked_div(&tail)?)
    }

    /// `A = {a_i q^j : 0 <= j <= k}`, `B = {b_l q^s : -m_l <= s <= k-1}`.
    ///
    /// A `DistinctnessViolation` here means the ratio check's exponent
    /// bound was too small for this `k`.
    pub fn proof_sets_q(&self, k: usize) -> Result<(PointSet, PointMultiset)> {
        self.check_proof_index(k)?;
        let q = &self.q;
        let mut set = Vec::with_capacity(self.a.len() * (k + 1));
        for ai in &self.a {
            for j in 0..=k as i64 {
                set.push(ai * &integer_power(q, j)?);
            }
        }
        let mut multiset = Vec::new();
        for (bl, &ml) in self.b.iter().zip(&self.m) {
            for s in -ml..k as i64 {
                multiset.push(bl * &integer_power(q, s)?);
            }
        }
        Ok((PointSet::new(set)?, PointMultiset::new(multiset)))
    }

    /// `s_k = (α - sum b_l q^{-m_l} - (qα - β) q^k) / (1 - q)`, the balanced
    /// value of the derangement identity over the proof sets.
    pub fn s_k(&self, k: usize) -> Result<GaussianRational> {
        let one = GaussianRational::one();
        let drift = &self.q * &self.alpha() - self.beta();
        let value = self.c_constant() - drift * integer_power(&self.q, k as i64)?;
        value.checked_div(&(&one - &self.q))
    }

    pub fn proof_chain(&self, k_max: usize) -> Result<Vec<ProofStep>> {
        let mut checked = self.clone();
        checked.ensure_exponent_bound(k_max)?;
        let series = checked.build_g(k_max)?;
        (checked.mod_degree()..=k_max)
            .map(|k| {
                let mut gamma_total = GaussianRational::zero();
                for i in 0..=checked.r() {
                    for j in 0..=k {
                        gamma_total += checked.gamma_ijk_q(i, j, k)?;
                    }
                }
                let (set, multiset) = checked.proof_sets_q(k)?;
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
