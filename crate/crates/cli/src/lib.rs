//! Command-line front end for `hardy-core`: evaluation, classification,
//! ratio traces, witness search and the extended-precision growth report.

pub mod commands;
pub mod error;
pub mod number;
pub mod record;
pub mod spec;
