//! Batch command-line front end: construct, verify, bound-check and
//! grid-scan, with machine-readable outputs.
//!
//! Exit codes: 0 success, 1 invalid input, 2 search exhausted,
//! 3 verification or expectation mismatch.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hullcode::bounds;
use hullcode::construct::{construct, ConstructError, ConstructionParams};
use hullcode::wire::{BoundReportWire, CodeWire, ConstructionResultWire};

mod scan;

pub(crate) const EXIT_OK: u8 = 0;
pub(crate) const EXIT_INVALID: u8 = 1;
pub(crate) const EXIT_EXHAUSTED: u8 = 2;
pub(crate) const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hullcode",
    about = "Linear codes over GF(q) with prescribed hull dimension and minimum distance",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code with hull dimension t and guaranteed distance.
    Construct(ConstructArgs),
    /// Re-verify a code file: hull dimension (both methods) and distance.
    Verify(VerifyArgs),
    /// Evaluate the existence condition and related bounds exactly.
    Bound(BoundArgs),
    /// Sweep a parameter grid, one result row per point.
    Scan(scan::ScanArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Field size, a prime power.
    #[arg(long)]
    q: u64,
    /// Sampling length of the orthogonal set.
    #[arg(long)]
    m: usize,
    /// Code dimension.
    #[arg(long)]
    k: usize,
    /// Requested hull dimension, 0..=k.
    #[arg(long)]
    t: usize,
    /// Distance floor for the sampled set.
    #[arg(long)]
    d: usize,
    /// Seed for the deterministic sampler.
    #[arg(long)]
    seed: u64,
    /// Write the result JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    max_attempts: u64,
    #[arg(long, default_value_t = 100)]
    max_restarts: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code JSON (either a bare code or a construction result).
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// Expect exactly this hull dimension.
    #[arg(long)]
    expect_hull: Option<usize>,
    /// Expect a minimum distance of at least this value.
    #[arg(long)]
    expect_distance: Option<usize>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, required_unless_present = "rate_threshold")]
    m: Option<u64>,
    #[arg(long, required_unless_present = "rate_threshold")]
    k: Option<u64>,
    #[arg(long, required_unless_present = "rate_threshold")]
    d: Option<u64>,
    /// Evaluate the simplified sufficient condition instead.
    #[arg(long)]
    simplified: bool,
    /// With --simplified: keep the (q-1)^d factor (tighter intermediate form).
    #[arg(long)]
    intermediate: bool,
    /// Print the asymptotic rate threshold ε₀(δ, q) instead of a bound report.
    #[arg(long)]
    rate_threshold: bool,
    /// δ for --rate-threshold, in (0, 1/2) strictly.
    #[arg(long)]
    delta: Option<f64>,
}

fn main() -> ExitCode {
    // clap's own usage-error exit code would collide with the
    // search-exhausted code; remap flag errors to invalid input
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Scan(args) => scan::cmd_scan(args),
    };
    ExitCode::from(code)
}

pub(crate) fn fail(code: u8, msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    code
}

fn emit(out: Option<&PathBuf>, payload: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => fs::write(path, payload),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())?;
            stdout.write_all(b"\n")
        }
    }
}

fn cmd_construct(args: ConstructArgs) -> u8 {
    let mut params = ConstructionParams::new(args.q, args.m, args.k, args.t, args.d, args.seed);
    params.max_attempts_per_vector = args.max_attempts;
    params.max_restarts = args.max_restarts;
    match construct(&params) {
        Ok(res) => {
            let wire = ConstructionResultWire::from_result(&res);
            let json = serde_json::to_string_pretty(&wire).expect("serializable");
            if let Err(e) = emit(args.out.as_ref(), &json) {
                return fail(EXIT_INVALID, format!("cannot write output: {e}"));
            }
            EXIT_OK
        }
        Err(e @ ConstructError::SearchExhausted { .. }) => fail(EXIT_EXHAUSTED, e),
        Err(e @ ConstructError::InvalidParams(_)) => fail(EXIT_INVALID, e),
        Err(e) => fail(EXIT_MISMATCH, e),
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let raw = match fs::read_to_string(&args.r#in) {
        Ok(s) => s,
        Err(e) => {
            return fail(
                EXIT_INVALID,
                format!("cannot read {}: {e}", args.r#in.display()),
            )
        }
    };
    // accept either a construction result or a bare code
    let code_wire: CodeWire = match serde_json::from_str::<ConstructionResultWire>(&raw) {
        Ok(res) => res.code,
        Err(_) => match serde_json::from_str(&raw) {
            Ok(code) => code,
            Err(e) => return fail(EXIT_INVALID, format!("not a code file: {e}")),
        },
    };
    let code = match code_wire.to_code() {
        Ok(c) => c,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let report = match code.verify() {
        Ok(r) => r,
        Err(e) => return fail(EXIT_MISMATCH, format!("verification failed: {e}")),
    };
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    println!("{json}");
    if let Some(expect) = args.expect_hull {
        if report.hull_dim_gram != expect {
            return fail(
                EXIT_MISMATCH,
                format!(
                    "hull dimension {} ≠ expected {expect}",
                    report.hull_dim_gram
                ),
            );
        }
    }
    if let Some(expect) = args.expect_distance {
        if report.min_distance < expect {
            return fail(
                EXIT_MISMATCH,
                format!(
                    "minimum distance {} < expected {expect}",
                    report.min_distance
                ),
            );
        }
    }
    EXIT_OK
}

fn cmd_bound(args: BoundArgs) -> u8 {
    if args.rate_threshold {
        let Some(delta) = args.delta else {
            return fail(EXIT_INVALID, "--rate-threshold requires --delta");
        };
        return match bounds::epsilon0(delta, args.q) {
            Ok(eps0) => {
                println!(
                    "{}",
                    serde_json::json!({ "q": args.q, "delta": delta, "epsilon0": eps0 })
                );
                EXIT_OK
            }
            Err(e) => fail(EXIT_INVALID, e),
        };
    }
    let (m, k, d) = (
        args.m.expect("required by clap"),
        args.k.expect("required by clap"),
        args.d.expect("required by clap"),
    );
    let report = if args.simplified {
        if args.intermediate {
            bounds::simplified_condition_intermediate(args.q, m, k, d)
        } else {
            bounds::simplified_condition(args.q, m, k, d)
        }
    } else {
        bounds::gv_condition(args.q, m, k, d)
    };
    match report {
        Ok(r) => {
            let wire = BoundReportWire::from_report(&r);
            println!(
                "{}",
                serde_json::to_string_pretty(&wire).expect("serializable")
            );
            EXIT_OK
        }
        Err(e) => fail(EXIT_INVALID, e),
    }
}
