//! Toeplitz kernels with rational symbols, model spaces and the action of
//! composition and multiplication operators on them.

pub mod blaschke;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod ratfun;
pub mod symbols;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::ToleranceConfig;
