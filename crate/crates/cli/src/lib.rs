//! The `gquant` command line: JSON front ends to the core operations, law
//! sweeps over a generated corpus, and the cyclic counterexamples.

pub mod args;
mod commands;
pub mod counterexample;
pub mod instances;
pub mod laws;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub use output::{Failure, Outcome, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

/// Runs a generic function at the scalar type named by a field descriptor.
/// Only a fixed list of primes is compiled in.
#[macro_export]
macro_rules! with_field {
    ($field:expr, $f:ident ( $($arg:expr),* $(,)? )) => {{
        use gquant_core::{Field, Fp, Rational};
        match $field {
            Field::Rationals => $f::<Rational>($($arg),*),
            Field::PrimeField(2) => $f::<Fp<2>>($($arg),*),
            Field::PrimeField(3) => $f::<Fp<3>>($($arg),*),
            Field::PrimeField(5) => $f::<Fp<5>>($($arg),*),
            Field::PrimeField(7) => $f::<Fp<7>>($($arg),*),
            Field::PrimeField(11) => $f::<Fp<11>>($($arg),*),
            Field::PrimeField(13) => $f::<Fp<13>>($($arg),*),
            Field::PrimeField(p) => Err($crate::output::Failure::input(
                "UnsupportedPrime",
                format!("fp:{p} is not supported; use one of 2, 3, 5, 7, 11, 13"),
            )),
        }
    }};
}

/// Parses `args`, runs the command and writes its report; returns the exit
/// code. Errors go to stderr as JSON.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli.command) {
        Ok(outcome) => match output::write_json(&output::with_schema(outcome.report.clone()), cli.command.report_path()) {
            Ok(()) => outcome.exit_code(),
            Err(f) => report_failure(&f),
        },
        Err(f) => report_failure(&f),
    }
}

fn report_failure(f: &Failure) -> i32 {
    eprintln!("{}", serde_json::to_string_pretty(&f.to_json()).unwrap_or_else(|_| f.message.clone()));
    f.exit
}
