//! Seeded instance generation and the case-matrix verification suite.

pub mod config;
pub mod error;
pub mod generator;
pub mod suite;

pub use config::SuiteConfig;
pub use error::{HarnessError, Result};
pub use generator::{random_classical_instance, random_lemma_pair, random_q_instance};
pub use suite::{run_suite, Cell, CellError, SuiteOutcome};
