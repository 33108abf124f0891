//! Exact evaluation of lower and upper bounds on Ihara's constant `A(q)` and
//! end-to-end verification of explicit class field tower certificates.

pub mod arith;
pub mod bounds;
pub mod certify;
pub mod cli;
pub mod error;
pub mod covers;
pub mod ffield;
pub mod places;
pub mod towers;

pub use error::{Error, Result};
