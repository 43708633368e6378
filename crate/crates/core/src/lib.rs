//! Exact construction and verification of bilinear hypergeometric duality
//! sums.
//!
//! The two engines, [`classical`] and [`qduality`], build a finite sum of
//! products of two (basic) hypergeometric series as a truncated power series
//! over ℚ(i), build the predicted closed form, and compare them coefficient
//! by coefficient. [`derangement`] provides the independent identity both
//! closed forms reduce to.

pub mod classical;
pub mod derangement;
pub mod error;
pub mod field;
pub mod hypergeometric;
pub mod pochhammer;
pub mod qduality;
pub mod report;
pub mod series;

pub use classical::{ClassicalCase, ClassicalDualityInstance};
pub use derangement::{
    derangement_sum, gamma_coeff, predicted_sum, LemmaRegime, PointMultiset, PointSet,
};
pub use error::{Error, Result};
pub use field::{GaussianRational, Rational};
pub use qduality::{QCase, QDualityInstance};
pub use report::{CheckKind, FloatCheck, Mismatch, ProofStep, Theorem, VerificationReport};
pub use series::TruncatedSeries;

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 12;
