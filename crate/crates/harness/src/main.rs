use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use duality_core::{ClassicalDualityInstance, QDualityInstance, VerificationReport, DEFAULT_ORDER};
use duality_harness::suite::{lemma_batch, lemma_single, parse_point};
use duality_harness::{run_suite, HarnessError, Result, SuiteConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

/// Exact verification of bilinear hypergeometric duality sums.
#[derive(Parser)]
#[command(name = "duality", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one classical instance
    VerifyClassical(VerifyArgs),
    /// Verify one q-instance
    VerifyQ(VerifyArgs),
    /// Check the derangement identity on random point sets
    LemmaCheck(LemmaArgs),
    /// Run the full case matrix
    Suite(SuiteArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to a JSON file, or the JSON itself
    #[arg(long)]
    instance: String,
    #[arg(long, env = "DUALITY_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Print the report as one JSON line
    #[arg(long)]
    json: bool,
    /// Evaluate both truncations at Z ("x" or "x,y") and compare within TOL
    #[arg(long, num_args = 2, value_names = ["Z", "TOL"])]
    float_check: Option<Vec<String>>,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, requires = "nb", conflicts_with = "random")]
    na: Option<usize>,
    #[arg(long, requires = "na")]
    nb: Option<usize>,
    /// Number of random pairs
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, env = "DUALITY_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, env = "DUALITY_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, env = "DUALITY_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, env = "DUALITY_PER_CELL", default_value_t = 25)]
    per_cell: usize,
    #[arg(long, env = "DUALITY_R_MAX", default_value_t = 4)]
    r_max: usize,
    /// Write line-delimited JSON reports here
    #[arg(long, env = "DUALITY_JSON_OUT")]
    json_out: Option<PathBuf>,
}

fn read_instance<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn print_report(report: &VerificationReport, json: bool) {
    if json {
        println!("{}", report.to_json_line());
        return;
    }
    println!("case       {}", report.case_label);
    println!("instance   {}", report.instance);
    println!("order      {}", report.order);
    println!("mod degree {}", report.mod_degree);
    if let Some(flag) = report.boundary_flag {
        println!("boundary   {}", if flag { "agrees" } else { "differs" });
    }
    for m in &report.mismatches {
        let note = if m.index < report.mod_degree {
            " (polynomial part)"
        } else {
            ""
        };
        println!(
            "  [{}] got {} expected {}{note}",
            m.index, m.got, m.expected
        );
    }
    if let Some(f) = &report.float_check {
        println!(
            "float      |Δ| = {:.3e} at z = {}{:+}i (tol {:e})",
            f.abs_error, f.z[0], f.z[1], f.tol
        );
    }
    println!("{}", if report.passed() { "MATCH" } else { "MISMATCH" });
}

fn apply_float_check(report: &mut VerificationReport, spec: &Option<Vec<String>>) -> Result<()> {
    if let Some(values) = spec {
        let z = parse_point(&values[0])?;
        if z.norm() > 0.25 {
            return Err(HarnessError::Usage(
                "float check point must satisfy |z| <= 1/4".into(),
            ));
        }
        let tol: f64 = values[1]
            .parse()
            .map_err(|_| HarnessError::Usage(format!("bad tolerance {:?}", values[1])))?;
        report.float_crosscheck(z, tol);
    }
    Ok(())
}

fn status(passed: bool) -> u8 {
    if passed {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::VerifyClassical(args) => {
            let inst: ClassicalDualityInstance = read_instance(&args.instance)?;
            let mut report = inst.verify(args.order)?;
            apply_float_check(&mut report, &args.float_check)?;
            print_report(&report, args.json);
            Ok(status(report.passed()))
        }
        Command::VerifyQ(args) => {
            let inst: QDualityInstance = read_instance(&args.instance)?;
            let mut report = inst.verify(args.order)?;
            apply_float_check(&mut report, &args.float_check)?;
            print_report(&report, args.json);
            Ok(status(report.passed()))
        }
        Command::LemmaCheck(args) => {
            let bound = SuiteConfig::default().denominator_bound;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let reports = match (args.na, args.nb) {
                (Some(na), Some(nb)) => vec![lemma_single(&mut rng, na, nb, bound)?],
                _ => lemma_batch(
                    &mut rng,
                    args.random.unwrap_or(1),
                    SuiteConfig::default().lemma_max_points,
                    bound,
                )?,
            };
            for report in &reports {
                if args.json {
                    println!("{}", report.to_json_line());
                } else if !report.matched || reports.len() == 1 {
                    println!(
                        "{} {} {}",
                        report.case_label,
                        report.instance,
                        if report.matched { "MATCH" } else { "MISMATCH" }
                    );
                }
            }
            let passed = reports.iter().filter(|r| r.matched).count();
            if !args.json {
                println!("{passed}/{} pairs agree", reports.len());
            }
            Ok(status(passed == reports.len()))
        }
        Command::Suite(args) => {
            let cfg = SuiteConfig {
                seed: args.seed,
                order: args.order,
                per_cell: args.per_cell,
                r_max: args.r_max,
                ..SuiteConfig::default()
            };
            let outcome = run_suite(&cfg)?;
            if let Some(path) = &args.json_out {
                fs::write(path, outcome.to_json_lines())?;
            }
            print!("{}", outcome.summary_table());
            Ok(outcome.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
