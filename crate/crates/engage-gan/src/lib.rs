//! File formats, run directories and the `engage-gan` command line on top
//! of [`engage_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod model;
pub mod plot;
pub mod rundir;
pub mod wav;

pub use error::{Error, Result};
