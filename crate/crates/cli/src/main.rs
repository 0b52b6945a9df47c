//! `radred`: command-line front end. Every subcommand prints one JSON
//! document on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use radred::coeffs::{CoeffFamily, Family};
use radred::exact_num::parse_rational;
use radred::identity::{verify_all, VerificationReport};
use radred::numeric::{NumericConfig, DEFAULT_BITS};
use radred::reduce::{
    classify, construct_example, euclid_biquadratic, euclid_denest, numeric_check, reduce_radical,
};
use radred::{Error, Rational};

mod selftest;

#[derive(Parser, Debug)]
#[command(
    name = "radred",
    version,
    about = "Degree reduction of the radical (d + sqrt(R))^(1/p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce (d + sqrt(R))^(1/p) to a zero u of f and the real p-th root z of D.
    #[command(allow_negative_numbers = true)]
    Reduce {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        d: String,
        #[arg(long = "R")]
        r: String,
        /// Add high-precision residual and zero-correspondence checks.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = DEFAULT_BITS)]
        bits: u32,
        /// Accept residuals below 2^-E (default: bits - 56).
        #[arg(long = "tolerance-exp")]
        tolerance_exp: Option<u32>,
    },
    /// Build an instance whose f has the prescribed rational zero u.
    #[command(allow_negative_numbers = true)]
    Construct {
        #[arg(long)]
        p: i64,
        #[arg(long = "D")]
        big_d: String,
        #[arg(long)]
        u: String,
    },
    /// Euclid's denesting of sqrt(d + sqrt(R)), or of its fourth root with --fourth.
    #[command(allow_negative_numbers = true)]
    Euclid {
        #[arg(long)]
        d: String,
        #[arg(long = "R")]
        r: String,
        #[arg(long)]
        fourth: bool,
    },
    /// Quadratic-field and p-th-power case split for an instance.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        d: String,
        #[arg(long = "R")]
        r: String,
    },
    /// Coefficient family for a given p.
    Coeffs {
        #[arg(long)]
        p: i64,
        /// One of c, a, cprime, C, u.
        #[arg(long)]
        family: String,
    },
    /// Exact identity and recurrence checks for every odd p in [3, N].
    Verify {
        #[arg(long = "p-max")]
        p_max: i64,
    },
    /// Reproduce the golden examples.
    Selftest,
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Reduce {
            p,
            d,
            r,
            numeric,
            bits,
            tolerance_exp,
        } => {
            let (d, r) = (rational_arg("d", &d)?, rational_arg("R", &r)?);
            let result = reduce_radical(p, d, r)?;
            let mut out = to_value(&result);
            if numeric {
                let config = NumericConfig {
                    bits,
                    tolerance_exp,
                };
                let check = numeric_check(&result, &config)?;
                let passed = check.passed;
                out["numeric"] = to_value(&check);
                if !passed {
                    return Err(Failure::Verification(out));
                }
            }
            Ok(out)
        }
        Command::Construct { p, big_d, u } => {
            let (big_d, u) = (rational_arg("D", &big_d)?, rational_arg("u", &u)?);
            Ok(to_value(&construct_example(p, big_d, u)?))
        }
        Command::Euclid { d, r, fourth } => {
            let (d, r) = (rational_arg("d", &d)?, rational_arg("R", &r)?);
            let (formula, data) = if fourth {
                (
                    "fourth-root",
                    euclid_biquadratic(&d, &r)?.map(|e| to_value(&e)),
                )
            } else {
                ("square-root", euclid_denest(&d, &r)?.map(|e| to_value(&e)))
            };
            Ok(match data {
                Some(data) => json!({ "formula": formula, "criterion": "holds", "data": data }),
                None => json!({ "formula": formula, "criterion": "fails" }),
            })
        }
        Command::Classify { p, d, r } => {
            let (d, r) = (rational_arg("d", &d)?, rational_arg("R", &r)?);
            Ok(to_value(&classify(p, d, r)?))
        }
        Command::Coeffs { p, family } => {
            let family: Family = family.parse().map_err(Failure::Usage)?;
            Ok(to_value(&CoeffFamily::compute(p, family)?))
        }
        Command::Verify { p_max } => {
            if p_max < 3 {
                return Err(Failure::Usage(format!("--p-max {p_max}: need at least 3")));
            }
            let ps: Vec<i64> = (3..=p_max).step_by(2).collect();
            let mut reports: Vec<VerificationReport> = ps
                .par_iter()
                .map(|&p| verify_all(p))
                .collect::<Result<_, _>>()?;
            reports.sort_by_key(|r| r.p);
            let passed = reports.iter().all(VerificationReport::passed);
            let out = to_value(&reports);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Selftest => {
            let report = selftest::run();
            let out = to_value(&report);
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn print(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print(&v);
            eprintln!("radred: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("radred: {msg}");
            ExitCode::from(2)
        }
    }
}
