//! The case-matrix suite: every closed-form cell of both engines, the
//! proof-level cross-check, and a batch of derangement-identity pairs.
//!
//! Each cell draws from its own ChaCha stream keyed by `(seed, cell id)`,
//! so cells run in parallel and still produce the same reports as a serial
//! run.

use std::fmt::Write as _;
use std::thread;

use duality_core::report::proof_chain_report;
use duality_core::{
    derangement_sum, predicted_sum, CheckKind, ClassicalCase, LemmaRegime, Mismatch, PointMultiset,
    PointSet, QCase, Theorem, VerificationReport,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::SuiteConfig;
use crate::error::{HarnessError, Result};
use crate::generator::{random_classical_instance, random_lemma_pair, random_q_instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Classical { case: ClassicalCase, negative: bool },
    Q { case: QCase, negative: bool },
    ClassicalProof,
    QProof,
    Lemma,
}

impl Cell {
    /// Every cell, in report order.
    pub fn all() -> Vec<Cell> {
        let mut cells = Vec::new();
        for negative in [false, true] {
            cells.extend(ClassicalCase::ALL.map(|case| Cell::Classical { case, negative }));
        }
        for negative in [false, true] {
            cells.extend(QCase::ALL.map(|case| Cell::Q { case, negative }));
        }
        cells.extend([Cell::ClassicalProof, Cell::QProof, Cell::Lemma]);
        cells
    }

    /// Stream id of the cell's random generator.
    pub fn id(self) -> u64 {
        Self::all()
            .iter()
            .position(|&c| c == self)
            .expect("cell is enumerated") as u64
    }

    pub fn label(self) -> String {
        let neg = |negative: bool| if negative { " m̂<0" } else { "" };
        match self {
            Cell::Classical { case, negative } => {
                format!("classical {}{}", case.label(), neg(negative))
            }
            Cell::Q { case, negative } => format!("q {}{}", case.label(), neg(negative)),
            Cell::ClassicalProof => "classical proof-chain".to_string(),
            Cell::QProof => "q proof-chain".to_string(),
            Cell::Lemma => "lemma".to_string(),
        }
    }

    fn rng(self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.id());
        rng
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellError {
    pub cell: String,
    pub error: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub errors: Vec<CellError>,
}

impl SuiteOutcome {
    pub fn all_matched(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }

    /// 0 when everything matched, 1 on any mismatch, 2 when a cell could
    /// not be generated.
    pub fn exit_code(&self) -> i32 {
        if !self.all_matched() {
            1
        } else if !self.errors.is_empty() {
            2
        } else {
            0
        }
    }

    /// One JSON object per line: reports first, then cell errors.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for report in &self.reports {
            out.push_str(&report.to_json_line());
            out.push('\n');
        }
        for error in &self.errors {
            out.push_str(&serde_json::to_string(error).expect("error serialization is infallible"));
            out.push('\n');
        }
        out
    }

    /// Per-cell counts as a plain-text table.
    pub fn summary_table(&self) -> String {
        let mut rows: Vec<(String, usize, usize, f64)> = Vec::new();
        for report in &self.reports {
            let key = format!(
                "{}/{}",
                format!("{:?}", report.theorem).to_lowercase(),
                report.case_label
            );
            let key = match report.kind {
                CheckKind::Series if report.mod_degree > 0 || report.boundary_flag.is_some() => {
                    format!("{key} m̂<0")
                }
                CheckKind::ProofChain => format!("{key} proof-chain"),
                _ => key,
            };
            let err = report.float_check.as_ref().map_or(0.0, |f| f.abs_error);
            match rows.iter_mut().find(|row| row.0 == key) {
                Some(row) => {
                    row.1 += 1;
                    row.2 += usize::from(report.passed());
                    row.3 = row.3.max(err);
                }
                None => rows.push((key, 1, usize::from(report.passed()), err)),
            }
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<36} {:>6} {:>6} {:>12}",
            "cell", "runs", "pass", "max |Δf|"
        );
        for (key, runs, pass, err) in &rows {
            let _ = writeln!(out, "{key:<36} {runs:>6} {pass:>6} {err:>12.3e}");
        }
        for error in &self.errors {
            let _ = writeln!(out, "{:<36} error: {}", error.cell, error.error);
        }
        let total: usize = rows.iter().map(|r| r.1).sum();
        let passed: usize = rows.iter().map(|r| r.2).sum();
        let _ = writeln!(
            out,
            "{total} checks, {passed} passed, {} generation errors",
            self.errors.len()
        );
        out
    }
}

fn finish_series_report(cfg: &SuiteConfig, mut report: VerificationReport) -> VerificationReport {
    report.float_crosscheck(Complex64::new(cfg.float_z, 0.0), cfg.float_tol);
    report
}

fn lemma_report(set: &PointSet, multiset: &PointMultiset) -> Result<VerificationReport> {
    let got = derangement_sum(set, multiset)?;
    let expected = predicted_sum(set, multiset)?;
    let regime =
        LemmaRegime::classify(set.len(), multiset.len()).expect("pair is in the lemma's domain");
    let matched = got == expected;
    let mismatches = if matched {
        Vec::new()
    } else {
        vec![Mismatch {
            index: 0,
            got,
            expected,
        }]
    };
    Ok(VerificationReport {
        theorem: Theorem::Lemma,
        kind: CheckKind::Lemma,
        instance: serde_json::json!({ "A": set.elements(), "B": multiset.elements() }),
        case_label: regime.label().to_string(),
        order: 0,
        matched,
        mod_degree: 0,
        agreement_from: usize::from(!matched),
        mismatches,
        boundary_flag: None,
        float_check: None,
        built: None,
        expected: None,
    })
}

/// Checks `count` random pairs with `n_A` in `1..=max_points` and `n_B` in
/// `0..=n_A`.
pub fn lemma_batch<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    max_points: usize,
    bound: i64,
) -> Result<Vec<VerificationReport>> {
    (0..count)
        .map(|_| {
            let n_a = rng.gen_range(1..=max_points);
            let n_b = rng.gen_range(0..=n_a);
            let (set, multiset) = random_lemma_pair(rng, n_a, n_b, bound);
            lemma_report(&set, &multiset)
        })
        .collect()
}

/// Checks one random pair of the given sizes.
pub fn lemma_single<R: Rng + ?Sized>(
    rng: &mut R,
    n_a: usize,
    n_b: usize,
    bound: i64,
) -> Result<VerificationReport> {
    if n_a < n_b || n_a == 0 {
        return Err(HarnessError::Usage(format!(
            "need 1 <= n_B <= n_A, got n_A = {n_a}, n_B = {n_b}"
        )));
    }
    let (set, multiset) = random_lemma_pair(rng, n_a, n_b, bound);
    lemma_report(&set, &multiset)
}

fn run_cell(cfg: &SuiteConfig, cell: Cell) -> Result<Vec<VerificationReport>> {
    let mut rng = cell.rng(cfg.seed);
    match cell {
        Cell::Classical { case, negative } => (0..cfg.per_cell)
            .map(|_| {
                let inst = random_classical_instance(cfg, &mut rng, case, negative)?;
                Ok(finish_series_report(cfg, inst.verify(cfg.order)?))
            })
            .collect(),
        Cell::Q { case, negative } => (0..cfg.per_cell)
            .map(|_| {
                let inst = random_q_instance(cfg, &mut rng, case, negative)?;
                Ok(finish_series_report(cfg, inst.verify(cfg.order)?))
            })
            .collect(),
        Cell::ClassicalProof => (0..cfg.proof_instances)
            .map(|t| {
                let case = ClassicalCase::ALL[t % ClassicalCase::ALL.len()];
                let inst = random_classical_instance(cfg, &mut rng, case, t % 2 == 1)?;
                let steps = inst.proof_chain(cfg.proof_k_max)?;
                Ok(proof_chain_report(
                    Theorem::Classical,
                    inst.to_json(),
                    case.label(),
                    &steps,
                ))
            })
            .collect(),
        Cell::QProof => (0..cfg.proof_instances)
            .map(|t| {
                let case = QCase::ALL[t % QCase::ALL.len()];
                let inst = random_q_instance(cfg, &mut rng, case, t % 2 == 1)?;
                let steps = inst.proof_chain(cfg.proof_k_max)?;
                Ok(proof_chain_report(
                    Theorem::Q,
                    inst.to_json(),
                    case.label(),
                    &steps,
                ))
            })
            .collect(),
        Cell::Lemma => lemma_batch(
            &mut rng,
            cfg.lemma_pairs,
            cfg.lemma_max_points,
            cfg.denominator_bound,
        ),
    }
}

/// Runs every cell. A cell that fails to generate is recorded in
/// [`SuiteOutcome::errors`] without stopping the others.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let cells = Cell::all();
    let results: Vec<Result<Vec<VerificationReport>>> = thread::scope(|scope| {
        let handles: Vec<_> = cells
            .iter()
            .map(|&cell| scope.spawn(move || run_cell(cfg, cell)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("cell worker panicked"))
            .collect()
    });
    let mut outcome = SuiteOutcome::default();
    for (cell, result) in cells.into_iter().zip(results) {
        match result {
            Ok(reports) => outcome.reports.extend(reports),
            Err(err) => outcome.errors.push(CellError {
                cell: cell.label(),
                error: err.to_string(),
            }),
        }
    }
    Ok(outcome)
}

/// Parses `"x"` or `"x,y"` as a complex point.
pub fn parse_point(s: &str) -> Result<Complex64> {
    let bad = || HarnessError::Usage(format!("cannot parse complex point {s:?}"));
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}
