//! Command-line driver: JSON input parsing, per-command reports and the
//! acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod io;
pub mod report;
