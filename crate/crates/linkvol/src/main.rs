//! Command-line front end.
//!
//! Exit codes: 0 success, 1 falsified invariant or failed claim, 2 input
//! or usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linkvol::corpus::{batch, read_corpus, render_report};
use linkvol::jones;
use linkvol::plat::{PlatClass, PlatSpec};
use linkvol::report::{analyze, gen_plat, AnalysisInput, AnalysisOptions};

#[derive(Parser)]
#[command(
    name = "linkvol",
    about = "State graphs, twist censuses, and volume bounds for link diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one diagram and print its JSON report.
    Analyze {
        /// PD file (whitespace-separated X(a,b,c,d) / U(a) terms).
        #[arg(long, conflicts_with = "plat")]
        pd: Option<PathBuf>,
        /// Plat spec file (`n k` header, then 2k+1 rows).
        #[arg(long)]
        plat: Option<PathBuf>,
        /// Also run the bracket oracle.
        #[arg(long)]
        oracle: bool,
        /// Alternating-diagram twist number for two-bridge bounds.
        #[arg(long)]
        t_alt: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a plat diagram and check its classification claims.
    GenPlat {
        #[arg(long)]
        spec: PathBuf,
        /// Verify the claims of this classification.
        #[arg(long, value_enum)]
        expect: Option<ExpectClass>,
    },
    /// Print the Kauffman bracket and stable-coefficient comparison.
    Oracle {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long, default_value_t = jones::DEFAULT_CROSSING_LIMIT)]
        max_crossings: usize,
    },
    /// Run a corpus CSV and write per-record reports plus a summary.
    Batch {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 16)]
        oracle_limit: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectClass {
    StronglyNegative,
    MixedSign,
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            pd,
            plat,
            oracle,
            t_alt,
            json,
        } => {
            let input = match (pd, plat) {
                (Some(path), None) => {
                    let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    AnalysisInput::Pd(text)
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    AnalysisInput::Plat(PlatSpec::parse(&text).map_err(|e| e.to_string())?)
                }
                _ => return Err("exactly one of --pd / --plat is required".into()),
            };
            let options = AnalysisOptions {
                oracle,
                t_alt,
                ..Default::default()
            };
            let report = analyze(&input, &options).map_err(|e| e.to_string())?;
            let rendered = render_report(&report);
            match json {
                Some(path) => fs::write(path, &rendered).map_err(|e| e.to_string())?,
                None => print!("{rendered}"),
            }
            Ok(if report.falsified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::GenPlat { spec, expect } => {
            let text = fs::read_to_string(&spec).map_err(|e| e.to_string())?;
            let spec = PlatSpec::parse(&text).map_err(|e| e.to_string())?;
            let expect = expect.map(|e| match e {
                ExpectClass::StronglyNegative => PlatClass::StronglyNegative,
                ExpectClass::MixedSign => PlatClass::MixedSign,
            });
            let verdicts = gen_plat(&spec, expect).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&verdicts).unwrap());
            Ok(if verdicts.all_claims_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { pd, max_crossings } => {
            let text = fs::read_to_string(&pd).map_err(|e| e.to_string())?;
            let diagram = linkvol::parse_pd(&text).map_err(|e| e.to_string())?;
            let bracket = jones::kauffman_bracket(&diagram, max_crossings).map_err(|e| e.to_string())?;
            let check = jones::verify_stable_coefficient(&diagram, max_crossings)
                .map_err(|e| e.to_string())?;
            let terms: Vec<serde_json::Value> = bracket
                .terms()
                .map(|(e, c)| serde_json::json!({ "exponent": e, "coefficient": c.to_string() }))
                .collect();
            let out = serde_json::json!({
                "crossings": diagram.crossing_count(),
                "bracket": terms,
                "max_degree": bracket.max_degree(),
                "min_degree": bracket.min_degree(),
                "beta_prime": {
                    "expected": check.expected,
                    "observed": check.observed,
                    "matches": check.matches,
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if check.matches {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Batch {
            corpus,
            out,
            oracle_limit,
        } => {
            let records = read_corpus(&corpus).map_err(|e| e.to_string())?;
            let summary = batch(&records, oracle_limit, Some(&out)).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            Ok(if summary.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{}", error_json(&message));
            ExitCode::from(2)
        }
    }
}
