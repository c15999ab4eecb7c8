//! Command-line front end: reports, golden tables and the invariant suite.

pub mod app;
pub mod checks;
pub mod output;
pub mod table;
