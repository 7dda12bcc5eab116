//! File formats and command-line plumbing around `padetype-core`.
//!
//! Problem specs and model files are JSON with complex numbers written as
//! `[re, im]` pairs. Grids and tables are CSV with 17 significant digits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod io;
pub mod model;
pub mod reference;
pub mod spec;
pub mod table;

pub use commands::{run, Command, Flags};
pub use error::{CliError, CliResult};
