#![no_std]
// `!(x > 0.0)` is used on purpose so NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

mod error;
mod math;

pub mod affect;
pub mod cognitive;
pub mod data;
pub mod eval;
pub mod fusion;
pub mod nn;
pub mod segments;
pub mod signal;
pub mod ssgan;

pub use error::{Error, Result};
