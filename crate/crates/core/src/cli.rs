//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams.
//!
//! Exit codes: 0 success, 1 the datum failed validation (the report is
//! still written), 2 unreadable input or refused parameters, 3 an internal
//! consistency failure, a theorem violation, or an oracle disagreement.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builtins::{builtin, Params, EXAMPLE4_NOTE, NAMES};
use crate::datum::AlgebraicDatum;
use crate::document::{parse_datum, DatumDocument};
use crate::error::{Error, Result};
use crate::hodge::hodge_diamond;
use crate::oracle::DEFAULT_CAP;
use crate::report::{self, Aut0Report, HodgeSection, KernelsReport, Report, ValidationSection};
use crate::search::{survey, SearchSpec, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "isogenous", version, about = "Hodge numbers and Aut_0 of threefolds isogenous to a product")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// cross-check every computation against the brute-force oracle
    #[arg(long, global = true)]
    pub oracle: bool,
    /// seed for shuffling the search partition; results do not depend on it
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check minimality, generating vectors and freeness
    Validate { file: PathBuf },
    /// Full report: validation, invariants, Hodge diamond, Aut_0
    Report { file: PathBuf },
    /// Aut_0 with generators and the admissible characters
    Aut0 { file: PathBuf },
    /// Kernels of the representations on H^{p,q}
    Kernels { file: PathBuf },
    /// Hodge diamond
    Hodge { file: PathBuf },
    /// Report on a built-in datum, or print it with --datum
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
        name: String,
        /// n1=..,n2=..,n3=.. or n=..
        #[arg(long, default_value = "")]
        param: String,
        /// print the datum document instead of the report
        #[arg(long)]
        datum: bool,
    },
    /// Survey Aut_0 over a bounded search space
    Search { spec: PathBuf },
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) => 1,
        Error::Consistency(_) | Error::TheoremViolation(_) => 3,
        _ => 2,
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    error: ErrorBody<'a>,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load(path: &PathBuf) -> Result<AlgebraicDatum> {
    parse_datum(&read_input(path)?)
}

struct Output {
    text: String,
    code: i32,
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String, code: i32) -> Output {
    let text = match format {
        Format::Json => report::to_json(value),
        Format::Text => text(value),
    };
    Output { text, code }
}

fn validity(d: &AlgebraicDatum) -> i32 {
    if d.report().is_valid() {
        0
    } else {
        1
    }
}

fn full_report(cli: &Cli, d: &AlgebraicDatum, note: Option<&str>) -> Result<Output> {
    let r = Report::build(d, note, cli.oracle.then_some(DEFAULT_CAP))?;
    let mut code = validity(d);
    if r.oracle.as_ref().is_some_and(|o| o.disagrees()) {
        code = 3;
    }
    Ok(emit(cli.format, &r, report::render_report, code))
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { file } => {
            let d = load(file)?;
            let v = ValidationSection::new(&d);
            Ok(emit(cli.format, &v, report::render_validation, validity(&d)))
        }
        Command::Report { file } => full_report(cli, &load(file)?, None),
        Command::Aut0 { file } => {
            let d = load(file)?;
            let a = Aut0Report::new(&d)?;
            Ok(emit(cli.format, &a, report::render_aut0_report, validity(&d)))
        }
        Command::Kernels { file } => {
            let d = load(file)?;
            let k = KernelsReport::new(&d)?;
            let code = if k.chain_holds { validity(&d) } else { 3 };
            Ok(emit(cli.format, &k, report::render_kernels, code))
        }
        Command::Hodge { file } => {
            let d = load(file)?;
            let h: HodgeSection = hodge_diamond(&d)?.into();
            Ok(emit(cli.format, &h, report::render_hodge, validity(&d)))
        }
        Command::Example { name, param, datum } => {
            let d = builtin(name, &Params::parse(param)?)?;
            if *datum {
                return Ok(Output {
                    text: DatumDocument::from_datum(&d).to_json(),
                    code: 0,
                });
            }
            let note = (name == "example4").then_some(EXAMPLE4_NOTE);
            full_report(cli, &d, note)
        }
        Command::Search { spec } => {
            let spec = SearchSpec::from_json(&read_input(spec)?)?;
            let s = survey(&spec, cli.seed)?;
            Ok(emit(cli.format, &s, render_survey, 0))
        }
    }
}

fn render_survey(s: &crate::search::Survey) -> String {
    use std::fmt::Write as _;
    let mut t = format!(
        "search over {:?}: {} candidate triples, {} valid data\n",
        s.group, s.candidates, s.count
    );
    for h in &s.histogram {
        let name = if h.factors.is_empty() {
            "trivial".to_string()
        } else {
            format!("{:?}", h.factors)
        };
        writeln!(t, "  {name}: {}", h.count).unwrap();
    }
    for (status, n) in &s.statuses {
        writeln!(t, "  status {}: {n}", serde_json::to_value(status).unwrap().as_str().unwrap_or("")).unwrap();
    }
    if let Some(e) = &s.extremal {
        writeln!(t, "largest: {:?}\n{}", e.factors, e.datum.to_json().trim_end()).unwrap();
    }
    t
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Json => err.write_all(
                    report::to_json(&ErrorDocument {
                        error: ErrorBody {
                            code: e.code(),
                            message: e.to_string(),
                        },
                    })
                    .as_bytes(),
                ),
                Format::Text => writeln!(err, "error[{}]: {e}", e.code()),
            };
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["isogenous"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn example_report() {
        let (code, out, _) = call(&["example", "example1", "--param", "n1=1,n2=1,n3=1", "--format", "json"]);
        assert_eq!(code, 0);
        let r: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(r.aut0.unwrap().factors, vec![2, 2]);
    }

    #[test]
    fn non_free_example_exits_one() {
        let (code, out, _) = call(&["example", "example3", "--param", "n=2"]);
        assert_eq!(code, 1);
        assert!(out.contains("non_free_kernel_only"));
        assert!(out.contains("aut0: Z4"));
    }

    #[test]
    fn bad_parameters() {
        let (code, _, err) = call(&["example", "example2b", "--param", "n1=1"]);
        assert_eq!(code, 2);
        assert!(err.contains("n1 >= 2"));
        let (code, _, _) = call(&["example", "example9"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn example4_carries_note() {
        let (code, out, _) = call(&["example", "example4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("note: example4"));
    }
}
