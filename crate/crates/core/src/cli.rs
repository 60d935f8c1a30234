//! Command-line front end. Results go to stdout as JSON, progress and
//! summaries to stderr. Exit status: 0 success, 1 verification failed,
//! 2 bad usage or input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::congruence::safe_residue_system;
use crate::construct::{
    construct_elasticity, construct_grid, construct_lengths, construct_short_long, construct_x_multiple,
    verify_certificate_with, Certificate, Parity, VerificationReport,
};
use crate::error::{Error, Result};
use crate::fixed_divisor::fixed_divisor;
use crate::lift::{lift_family, verify_lift, DEFAULT_SUBSET_BUDGET};
use crate::monoid::{enumerate_factorizations_with, EnumerationConfig, IvpElement, LengthProfile};
use crate::poly::{parse_poly, IntPoly};

#[derive(Parser, Debug)]
#[command(name = "intz", version, about = "Factorizations and sets of lengths in Int(Z)")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the self-check of the emitted certificate.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element whose factorization lengths are exactly the given multiset.
    Construct {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Re-check a certificate from scratch (`-` reads stdin).
    Verify {
        file: PathBuf,
        /// Sub-products examined exhaustively when re-checking a lift.
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        subset_budget: usize,
    },
    /// Sets of lengths of an element given as JSON.
    Lengths {
        #[arg(long)]
        element: PathBuf,
        /// Accept factors whose irreducibility is only asserted.
        #[arg(long)]
        trust_asserted: bool,
        #[arg(long)]
        show_factorizations: bool,
    },
    /// Fixed divisor of a polynomial.
    Fixdiv {
        #[arg(long)]
        poly: String,
    },
    /// Complete residue system modulo a prime that is incomplete modulo
    /// every other prime.
    Residues {
        #[arg(long)]
        prime: u64,
    },
    /// Lift a family of monic polynomials to Eisenstein polynomials.
    Lift {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_verify: bool,
    },
    /// Two factorizations, of lengths 2 and n + 2.
    Example7 {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Two factorizations, of lengths m + 1 and n + 1.
    Example8 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Element with the given elasticity, written as num/den.
    Elasticity {
        #[arg(long)]
        ratio: String,
        #[command(flatten)]
        output: Output,
    },
    /// Irreducible H such that x·H has a factorization of length n + 1.
    Theorem10 {
        #[arg(long)]
        n: usize,
        /// Make all roots odd instead of even (fails verification).
        #[arg(long, hide = true)]
        odd: bool,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Construct { lengths, output } => emit(construct_lengths(&lengths)?, &output),
        Command::Example7 { n, output } => emit(Certificate::ShortLong(construct_short_long(n)?), &output),
        Command::Example8 { m, n, output } => emit(Certificate::Grid(construct_grid(m, n)?), &output),
        Command::Elasticity { ratio, output } => {
            let (num, den) = parse_ratio(&ratio)?;
            emit(Certificate::Grid(construct_elasticity(num, den)?), &output)
        }
        Command::Theorem10 { n, odd, output } => {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            emit(Certificate::XMultiple(construct_x_multiple(n, parity)?), &output)
        }
        Command::Verify { file, subset_budget } => {
            let cert = Certificate::from_json(&read(&file)?)?;
            let report = verify_certificate_with(&cert, subset_budget);
            print_json(&serde_json::to_string_pretty(&report).expect("report serializes"));
            summarize(&report)
        }
        Command::Lengths { element, trust_asserted, show_factorizations } => {
            let e: IvpElement = serde_json::from_str(&read(&element)?).map_err(Error::from)?;
            lengths(&e, trust_asserted, show_factorizations)
        }
        Command::Fixdiv { poly } => {
            let f = parse_poly(&poly)?;
            let d = fixed_divisor(&f)?;
            print_json(&serde_json::to_string(&d).expect("fixed divisor serializes"));
            Ok(())
        }
        Command::Residues { prime } => {
            let rs = safe_residue_system(prime)?;
            let check = rs.check();
            print_json(&serde_json::to_string(&rs).expect("residue system serializes"));
            if check.passed {
                Ok(())
            } else {
                eprintln!("residue system check failed: {check:?}");
                Err(Failure::Verification)
            }
        }
        Command::Lift { family, out, no_verify } => {
            let family = read_family(&read(&family)?)?;
            let cert = lift_family(&family)?;
            let text = serde_json::to_string_pretty(&cert).expect("lift certificate serializes");
            write_out(&text, out.as_ref())?;
            if no_verify {
                return Ok(());
            }
            let report = verify_lift(&cert, DEFAULT_SUBSET_BUDGET);
            for f in report.failures() {
                eprintln!("FAIL {}: {}", f.check, f.detail);
            }
            if report.passed() {
                eprintln!("lift verified ({} checks)", report.items.len());
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn parse_ratio(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidArgument(format!("expected a ratio like 7/3, got {text:?}"));
    let (a, b) = text.split_once('/').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Reads a file, or stdin when the path is `-`.
fn read(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display()))),
        None => {
            print_json(text);
            Ok(())
        }
    }
}

fn print_json(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}");
}

/// A family is a JSON array whose entries are either coefficient arrays or
/// polynomial strings such as `"x^2 - 3x + 2"`.
fn read_family(text: &str) -> Result<Vec<IntPoly>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Coefficients(IntPoly),
        Text(String),
    }
    let entries: Vec<Entry> = serde_json::from_str(text)?;
    entries
        .into_iter()
        .map(|e| match e {
            Entry::Coefficients(p) => Ok(p),
            Entry::Text(s) => parse_poly(&s),
        })
        .collect()
}

fn emit(cert: Certificate, output: &Output) -> CliResult {
    let start = Instant::now();
    let text = cert.to_json();
    write_out(&text, output.out.as_ref())?;
    eprintln!(
        "constructed {} certificate, degree {} ({:.2?})",
        cert.kind(),
        cert.element().degree(),
        start.elapsed()
    );
    if output.no_verify {
        return Ok(());
    }
    let report = verify_certificate_with(&cert, DEFAULT_SUBSET_BUDGET);
    summarize(&report)
}

fn summarize(report: &VerificationReport) -> CliResult {
    for f in report.failures() {
        eprintln!("FAIL {}: {}", f.check, f.detail);
    }
    if let Some(profile) = &report.profile {
        eprintln!("lengths {:?}, elasticity {}", profile.lengths, profile.elasticity);
    }
    if report.passed {
        eprintln!("{} certificate verified ({} checks)", report.kind, report.items.len());
        Ok(())
    } else {
        eprintln!("{} certificate FAILED verification", report.kind);
        Err(Failure::Verification)
    }
}

fn lengths(e: &IvpElement, trust_asserted: bool, show: bool) -> CliResult {
    let cfg = EnumerationConfig { allow_asserted: trust_asserted, ..EnumerationConfig::default() };
    let fs = enumerate_factorizations_with(e, &cfg)?;
    let profile = LengthProfile::from_lengths(fs.iter().map(|f| f.length()).collect());
    let mut value = json!({
        "lengths": profile.lengths,
        "length_set": profile.length_set,
        "elasticity": format!("{}/{}", profile.elasticity.numer(), profile.elasticity.denom()),
    });
    if show {
        value["factorizations"] = fs.iter().map(|f| json!(f.render(e))).collect();
    }
    print_json(&serde_json::to_string_pretty(&value).expect("json value"));
    Ok(())
}
