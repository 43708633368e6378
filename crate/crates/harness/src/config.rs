use duality_core::DEFAULT_ORDER;
use serde::Serialize;

use crate::error::{HarnessError, Result};

/// Parameters of a suite run. Every field is part of the determinism
/// contract: equal configs give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Truncation order of every built series.
    pub order: usize,
    pub per_cell: usize,
    /// Largest `r` drawn for the classical engine.
    pub r_max: usize,
    /// Largest `r` drawn for the q engine.
    pub q_r_max: usize,
    /// Bound on numerators and denominators of random rationals.
    pub denominator_bound: i64,
    /// `|e|` bound for the `a_i/a_j != q^e` test; derived from the order when absent.
    pub exponent_bound: Option<u32>,
    pub proof_instances: usize,
    pub proof_k_max: usize,
    pub lemma_pairs: usize,
    pub lemma_max_points: usize,
    pub float_z: f64,
    pub float_tol: f64,
    pub max_attempts: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            order: DEFAULT_ORDER,
            per_cell: 25,
            r_max: 4,
            q_r_max: 3,
            denominator_bound: 20,
            exponent_bound: None,
            proof_instances: 10,
            proof_k_max: 8,
            lemma_pairs: 500,
            lemma_max_points: 8,
            float_z: 0.1,
            float_tol: 1e-9,
            max_attempts: 1000,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(HarnessError::Usage(format!("{what} must be positive")));
        if self.r_max == 0 {
            return bad("r_max");
        }
        if self.q_r_max == 0 {
            return bad("q_r_max");
        }
        if self.denominator_bound < 2 {
            return Err(HarnessError::Usage(
                "denominator_bound must be at least 2".into(),
            ));
        }
        if self.exponent_bound == Some(0) {
            return bad("exponent_bound");
        }
        if self.max_attempts == 0 {
            return bad("max_attempts");
        }
        if self.lemma_max_points == 0 {
            return bad("lemma_max_points");
        }
        if self.float_tol.is_nan() || self.float_tol <= 0.0 || !self.float_z.is_finite() {
            return Err(HarnessError::Usage(
                "float tolerance must be positive and z finite".into(),
            ));
        }
        if self.float_z.abs() > 0.25 {
            return Err(HarnessError::Usage(
                "float check point must satisfy |z| <= 1/4".into(),
            ));
        }
        Ok(())
    }
}
