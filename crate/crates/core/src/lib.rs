//! Finite, exact model of cohomological correspondences over finite sets.

pub mod basefunc;
pub mod chainalg;
pub mod cli;
pub mod corrcat;
pub mod dualtrace;
pub mod error;
pub mod finspan;
pub mod sheafops;

pub use error::{Error, Result};
