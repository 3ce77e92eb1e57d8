//! Command-line front end: argument parsing and subcommand dispatch.

use std::ffi::OsString;

/// Runs the CLI and returns the process exit code:
/// 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(_argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    2
}
