//! The `cartankit` command line: parse JSON inputs, dispatch, and emit a
//! [`Report`] as JSON or as text rendered from the same JSON.
//!
//! Exit codes: 0 when every embedded check passed, 1 when some check
//! failed, 2 for unreadable or malformed input.

mod args;
mod commands;
mod text;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use args::{Cli, Command, OutputMode};
pub use text::render_text;

use crate::cartan::ValidationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

pub const CLOSURE_CAP_ENV: &str = "CARTANKIT_CLOSURE_CAP";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// The parsed arguments, echoed back.
    pub args: Value,
    pub results: Value,
    pub checks: Option<ValidationReport>,
    pub exit_status: i32,
}

impl Report {
    fn new(command: &str, args: Value, results: Value, checks: Option<ValidationReport>) -> Self {
        let exit_status = match &checks {
            Some(c) if !c.valid() => EXIT_CHECKS_FAILED,
            _ => EXIT_OK,
        };
        Report { command: command.into(), args, results, checks, exit_status }
    }

    fn input_error(command: &str, args: Value, message: String) -> Self {
        Report {
            command: command.into(),
            args,
            results: serde_json::json!({ "error": message }),
            checks: None,
            exit_status: EXIT_INPUT_ERROR,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Json => self.to_json(),
            OutputMode::Text => render_text(&serde_json::to_value(self).expect("reports serialize")),
        }
    }
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Report {
    commands::dispatch(&cli.command)
}

/// Parses `argv` (including the program name) and runs it. Argument errors
/// become an exit-2 report; `--help` and `--version` are reported as text
/// with exit 0.
pub fn run<I, T>(argv: I) -> (Report, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let r = execute(&cli);
            let code = r.exit_status;
            (r, code)
        }
        Err(e) => {
            let message = e.render().to_string();
            if parse_exit(&e) == EXIT_OK {
                let r = Report::new("", Value::Null, serde_json::json!({ "message": message }), None);
                (r, EXIT_OK)
            } else {
                (Report::input_error("", Value::Null, message), EXIT_INPUT_ERROR)
            }
        }
    }
}

fn parse_exit(e: &clap::Error) -> i32 {
    use clap::error::ErrorKind::*;
    match e.kind() {
        DisplayHelp | DisplayVersion => EXIT_OK,
        _ => EXIT_INPUT_ERROR,
    }
}

/// Entry point for the binary: prints the report and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let r = execute(&cli);
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{}", r.render(cli.out));
            r.exit_status
        }
        Err(e) => {
            let _ = e.print();
            parse_exit(&e)
        }
    }
}
