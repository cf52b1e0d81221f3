//! Command-line front end for the Nahm-equation toolkit: JSON configs in,
//! JSON/CSV artifacts and exit codes out.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod sampling;
