//! Command-line front end and verification harness for `amalgam-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod input;
pub mod pins;
pub mod report;
pub mod suites;

pub use commands::{run, Outcome};
pub use report::VerificationReport;
