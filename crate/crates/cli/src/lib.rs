//! Library surface of the CLI: the structure file format, the built-in
//! counterexample fixtures, the report type and the argument dispatch.

pub mod app;
pub mod document;
pub mod fixtures;
pub mod report;
pub mod termsyntax;
