//! File formats and the `pellcode` command-line tool for Pell matrix codes.
//!
//! The arithmetic lives in `pellcode-core`; this crate adds the PELLE and
//! PELLK text formats, report rendering and the CLI.

pub mod cli;
pub mod formats;
pub mod report;

pub use cli::run;
