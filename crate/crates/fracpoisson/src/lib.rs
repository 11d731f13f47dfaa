#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod frac_ops;
pub mod gamma;
pub mod laplace;
pub mod limits;
pub mod montecarlo;
pub mod processes;
pub mod quad;
pub mod renewal;
pub mod report;
pub mod rng;
pub mod specfun;
pub mod stable;
pub mod verify;
pub mod xprec;

pub use error::{Error, Result};
