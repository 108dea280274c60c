//! The `depnet` command line.
//!
//! Exit codes: 0 on success, 1 when inputs fail validation, 2 on usage errors.
//! Data goes to stdout or `--out`, diagnostics to stderr. With
//! `--format json` errors are printed to stderr as a JSON object.

pub mod args;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use args::Cli;
use output::RunMeta;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "DEPNET_THREADS";

/// Output stream handed to commands.
pub type Sink = dyn Write + Send;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Inputs or parameters rejected; `kind` names the failing stage.
    Invalid {
        kind: &'static str,
        message: String,
    },
}

impl CliError {
    pub fn invalid(kind: &'static str, err: impl fmt::Display) -> Self {
        CliError::Invalid {
            kind,
            message: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid { .. } => EXIT_INVALID,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Invalid { kind, .. } => kind,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid { message: m, .. } => m,
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: &'a str,
    exit_code: i32,
}

fn wants_json(argv: &[String]) -> bool {
    argv.iter()
        .zip(argv.iter().skip(1))
        .any(|(a, b)| a == "--format" && b == "json")
        || argv.iter().any(|a| a == "--format=json")
}

fn report_error(err: &CliError, json: bool, stderr: &mut Sink) {
    if json {
        let body = ErrorJson {
            error: err.kind(),
            message: err.message().trim_end(),
            exit_code: err.exit_code(),
        };
        let _ = serde_json::to_writer(&mut *stderr, &body);
        let _ = writeln!(stderr);
    } else {
        let _ = writeln!(stderr, "depnet: {}", err.message().trim_end());
    }
}

fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdout(), &mut io::stderr())
}

pub fn run_with<I, T>(argv: I, stdout: &mut Sink, stderr: &mut Sink) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let text_args: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let json = wants_json(&text_args);

    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let err = CliError::Usage(e.render().to_string());
                    report_error(&err, json, stderr);
                    EXIT_USAGE
                }
            };
        }
    };

    let result = thread_count().and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::invalid("threads", e))?;
        let meta = RunMeta::new(text_args, threads);
        pool.install(|| commands::dispatch(cli.command, &meta, stdout, stderr))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(err) => {
            report_error(&err, json, stderr);
            err.exit_code()
        }
    }
}
