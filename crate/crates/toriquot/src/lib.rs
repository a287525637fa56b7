//! Command-line front end for `toriquot-core`: JSON input and output,
//! analysis and map-verification reports, and reproduction scripts for
//! published examples.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod reproduce;

pub use error::{CliError, Result};
