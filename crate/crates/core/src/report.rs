//! Machine-readable verification outcomes shared by both duality engines.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::field::GaussianRational;
use crate::hypergeometric::eval_float;
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Classical,
    Q,
    Lemma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Built series against the predicted closed form.
    Series,
    /// Closed-form gamma sums against the derangement identity, per index.
    ProofChain,
    /// The derangement identity alone.
    Lemma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub got: GaussianRational,
    pub expected: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatCheck {
    pub z: [f64; 2],
    pub abs_error: f64,
    pub tol: f64,
    pub within_tol: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub kind: CheckKind,
    pub instance: serde_json::Value,
    pub case_label: String,
    pub order: usize,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Coefficients below this index may differ.
    pub mod_degree: usize,
    /// Smallest index from which every coefficient agrees.
    pub agreement_from: usize,
    /// Every disagreeing index, including the permitted ones below `mod_degree`.
    pub mismatches: Vec<Mismatch>,
    /// Whether the coefficient at index `-m̂` agreed; absent when `m̂ >= 0`.
    pub boundary_flag: Option<bool>,
    pub float_check: Option<FloatCheck>,
    #[serde(skip)]
    pub built: Option<TruncatedSeries>,
    #[serde(skip)]
    pub expected: Option<TruncatedSeries>,
}

impl VerificationReport {
    /// Compares `built` against `expected`, allowing disagreement below
    /// `max(0, -min_shift)`.
    pub fn compare(
        theorem: Theorem,
        instance: serde_json::Value,
        case_label: impl Into<String>,
        built: TruncatedSeries,
        expected: TruncatedSeries,
        min_shift: i64,
    ) -> Self {
        let mod_degree = min_shift.min(0).unsigned_abs() as usize;
        let mismatches: Vec<Mismatch> = built
            .mismatched_indices(&expected)
            .into_iter()
            .map(|k| Mismatch {
                index: k,
                got: built.coeffs()[k].clone(),
                expected: expected.coeffs()[k].clone(),
            })
            .collect();
        let matched = mismatches.iter().all(|mm| mm.index < mod_degree);
        let agreement_from = mismatches.last().map_or(0, |mm| mm.index + 1);
        let order = built.order().min(expected.order());
        let boundary_flag = (min_shift < 0 && mod_degree <= order)
            .then(|| mismatches.iter().all(|mm| mm.index != mod_degree));
        Self {
            theorem,
            kind: CheckKind::Series,
            instance,
            case_label: case_label.into(),
            order,
            matched,
            mod_degree,
            agreement_from,
            mismatches,
            boundary_flag,
            float_check: None,
            built: Some(built),
            expected: Some(expected),
        }
    }

    /// Evaluates the built and expected truncations at `z` in double
    /// precision and records the absolute difference. Coefficients below
    /// `mod_degree` are dropped from both, since there the two series may
    /// differ by a polynomial.
    pub fn float_crosscheck(&mut self, z: Complex64, tol: f64) {
        let (Some(built), Some(expected)) = (&self.built, &self.expected) else {
            return;
        };
        let d = self.mod_degree;
        let abs_error = (tail_eval(built, d, z) - tail_eval(expected, d, z)).norm();
        self.float_check = Some(FloatCheck {
            z: [z.re, z.im],
            abs_error,
            tol,
            within_tol: abs_error <= tol,
        });
    }

    /// True when the exact comparison matched and any float check passed.
    pub fn passed(&self) -> bool {
        self.matched && self.float_check.as_ref().is_none_or(|f| f.within_tol)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

fn tail_eval(series: &TruncatedSeries, from: usize, z: Complex64) -> Complex64 {
    let mut coeffs = series.coeffs().to_vec();
    for c in coeffs.iter_mut().take(from) {
        *c = GaussianRational::zero();
    }
    eval_float(&TruncatedSeries::from_coeffs(coeffs), z)
}

/// One index of the proof-level cross-check: the closed-form gamma total,
/// the derangement sum over the proof's point sets, the identity's predicted
/// value, and the coefficient of the built series, which must all agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub k: usize,
    pub gamma_total: GaussianRational,
    pub derangement_sum: GaussianRational,
    pub predicted_sum: GaussianRational,
    pub series_coeff: GaussianRational,
}

impl ProofStep {
    pub fn consistent(&self) -> bool {
        self.gamma_total == self.derangement_sum
            && self.derangement_sum == self.predicted_sum
            && self.predicted_sum == self.series_coeff
    }
}

/// Packs a sequence of proof steps into a report.
pub fn proof_chain_report(
    theorem: Theorem,
    instance: serde_json::Value,
    case_label: impl Into<String>,
    steps: &[ProofStep],
) -> VerificationReport {
    let mismatches: Vec<Mismatch> = steps
        .iter()
        .filter(|s| !s.consistent())
        .map(|s| Mismatch {
            index: s.k,
            got: s.gamma_total.clone(),
            expected: s.predicted_sum.clone(),
        })
        .collect();
    let first_k = steps.first().map_or(0, |s| s.k);
    VerificationReport {
        theorem,
        kind: CheckKind::ProofChain,
        instance,
        case_label: case_label.into(),
        order: steps.last().map_or(0, |s| s.k),
        matched: mismatches.is_empty(),
        mod_degree: first_k,
        agreement_from: mismatches.last().map_or(first_k, |mm| mm.index + 1),
        mismatches,
        boundary_flag: None,
        float_check: None,
        built: None,
        expected: None,
    }
}
