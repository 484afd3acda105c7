//! Instance files, random generation and the check suites behind the `spantrace` binary.

pub mod format;
pub mod generate;
pub mod resolve;
pub mod report;
pub mod suites;
