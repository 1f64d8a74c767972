//! The `hodgecalc` command-line front end: parses a problem document,
//! dispatches to the engine and renders a report.
//!
//! Exit codes: 0 when a computation succeeds or a check passes, 1 when a
//! check fails (including engine errors that witness a failed mathematical
//! condition, such as a leading part that does not factor), 2 on input
//! errors.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Read;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use hodgecalc_core::document::ProblemDocument;
use hodgecalc_core::{fixtures, Error};

use args::{Cli, Format};
use report::Report;

/// Exit status of a failed check.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status of malformed input.
pub const EXIT_INPUT_ERROR: u8 = 2;

/// Engine errors that report a failed mathematical condition rather than
/// malformed input.
pub fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NoFactorization(_)
            | Error::NotSpanned
            | Error::NotMhs(_)
            | Error::NotEffective(_)
            | Error::DegenerateDet(_)
            | Error::NoSolution(_)
    )
}

/// Reads the document named by `--input` or `--fixture`; `None` when the
/// command runs without one and neither flag is given.
pub fn load_document(cli: &Cli) -> Result<Option<ProblemDocument>, Error> {
    if let Some(name) = &cli.fixture {
        let text = fixtures::document_text(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::DOCUMENTS.iter().map(|(n, _)| *n).collect();
            Error::InvalidArgument(format!("unknown fixture {name:?} (available: {})", names.join(", ")))
        })?;
        return ProblemDocument::parse(text).map(Some);
    }
    let text = match &cli.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?,
        Some(_) => read_stdin()?,
        None if cli.command.document_optional() => return Ok(None),
        None => read_stdin()?,
    };
    ProblemDocument::parse(&text).map(Some)
}

fn read_stdin() -> Result<String, Error> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
    Ok(s)
}

/// Runs the command and builds its report.
pub fn execute(cli: &Cli) -> Result<Report, Error> {
    let start = Instant::now();
    let doc = load_document(cli)?;
    let outcome = commands::dispatch(cli, doc.as_ref())?;
    let inputs = json!({
        "command": cli.command.name(),
        "document": doc.as_ref().map_or(Value::Null, ProblemDocument::to_json),
        "options": commands::options_json(cli),
    });
    let timings = cli.timings.then(|| json!({"elapsedMs": start.elapsed().as_secs_f64() * 1000.0}));
    Ok(Report {
        command: cli.command.name(),
        inputs_digest: report::digest(&inputs),
        status: outcome.status,
        findings: outcome.findings,
        timings,
    })
}

/// Full CLI entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.render_json(),
                Format::Text => report.render_text(),
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return EXIT_INPUT_ERROR;
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_check_failure(&e) {
                EXIT_CHECK_FAILED
            } else {
                EXIT_INPUT_ERROR
            }
        }
    }
}
