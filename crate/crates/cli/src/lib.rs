//! The `qfold` command line. [`run`] parses arguments and returns the exit
//! code with everything that would be printed, so it can be driven from
//! tests without spawning a process.

use std::ffi::OsString;

use clap::Parser;

mod args;
mod commands;
mod input;
mod table;

pub use args::Cli;

/// Success.
pub const EXIT_OK: i32 = 0;
/// Malformed arguments or input.
pub const EXIT_INPUT: i32 = 1;
/// A checked property does not hold.
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    commands::dispatch(&cli)
}
