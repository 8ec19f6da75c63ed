//! Command-line front end for `qcoinv`.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or size-guard error.

pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcoinv::coact::CoactionKind;
use qcoinv::exactnum::parse_rational;
use qcoinv::fft::{classical_baseline, verify, ExperimentParams, Report, DEFAULT_CEILING};
use qcoinv::qalgebra::{Deformation, Fault};
use qcoinv::Error;

#[derive(Parser, Debug)]
#[command(name = "qcoinv", version, about = "Degree-by-degree checks of quantum invariant theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an experiment at generic q.
    Verify(ExperimentArgs),
    /// Rerun an experiment at q = 1 and compare with the generic run.
    Baseline(ExperimentArgs),
    /// Run the algebra property suites.
    Selftest(Common),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Interior,
    Slr,
    Conjugation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "x-fault", hide = true)]
    fault: Option<String>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    dmax: Option<usize>,
    /// Largest graded component dimension allowed (default 4000).
    #[arg(long, env = "QCOINV_CEILING")]
    ceiling: Option<u128>,
    /// Extra specialization point such as 3/2; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Vec<String>,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CeilingExceeded { .. } | Error::InvalidParams(_) | Error::Parse(_) | Error::ZeroSpecialization => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Verification(other.to_string()),
        }
    }
}

fn fault(common: &Common) -> Result<Option<Fault>, Failure> {
    match &common.fault {
        None => Ok(None),
        Some(name) => Fault::from_name(name)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("unknown fault `{name}`"))),
    }
}

fn params(a: &ExperimentArgs) -> Result<ExperimentParams, Failure> {
    let kind = match a.kind {
        Kind::Interior => CoactionKind::Interior {
            m: a.m.unwrap_or(2),
            n: a.n.unwrap_or(2),
            t: a.t.unwrap_or(1),
        },
        Kind::Slr => CoactionKind::Slr {
            n: a.n.unwrap_or(4),
            r: a.r.unwrap_or(2),
        },
        Kind::Conjugation => CoactionKind::Conjugation { n: a.n.unwrap_or(2) },
    };
    let mut p = ExperimentParams::new(kind, a.dmax.unwrap_or(4));
    p.ceiling = a.ceiling.unwrap_or(DEFAULT_CEILING);
    p.lambdas = a
        .lambda
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    p.validate()?;
    Ok(p)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Markdown => report.to_markdown(),
    }
}

fn selftest_text(suites: &[selftest::Suite], format: Format) -> String {
    let ok = suites.iter().all(|s| s.ok());
    match format {
        Format::Json => {
            let items: Vec<String> = suites
                .iter()
                .map(|s| {
                    format!(
                        "    {{\"suite\": \"{}\", \"passed\": {}, \"total\": {}}}",
                        s.name, s.passed, s.total
                    )
                })
                .collect();
            format!(
                "{{\n  \"suites\": [\n{}\n  ],\n  \"verdict\": \"{}\"\n}}\n",
                items.join(",\n"),
                if ok { "pass" } else { "fail" }
            )
        }
        Format::Markdown => {
            let mut s = String::from("| suite | passed | total |\n|---|---|---|\n");
            for x in suites {
                s += &format!("| {} | {} | {} |\n", x.name, x.passed, x.total);
            }
            s + &format!("\nverdict: **{}**\n", if ok { "pass" } else { "fail" })
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify(a) => {
            let p = params(&a)?;
            let def = Deformation::GENERIC.with_fault(fault(&a.common)?);
            let report = verify(&p, def)?;
            emit(&a.common, &render(&report, a.common.format))?;
            Ok(report.passed())
        }
        Command::Baseline(a) => {
            let p = params(&a)?;
            if a.common.fault.is_some() {
                return Err(Failure::Usage("faults apply to verify and selftest".into()));
            }
            let report = classical_baseline(&p)?;
            emit(&a.common, &render(&report, a.common.format))?;
            Ok(report.passed())
        }
        Command::Selftest(c) => {
            let def = Deformation::GENERIC.with_fault(fault(&c)?);
            let suites = selftest::run_all(c.seed, def)?;
            emit(&c, &selftest_text(&suites, c.format))?;
            Ok(suites.iter().all(|s| s.ok()))
        }
    }
}

/// Parses `argv` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification error: {msg}");
            1
        }
    }
}
