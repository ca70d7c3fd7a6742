//! Radial limits of the universal mock theta function g₃ at roots of unity.

pub mod error;
pub mod exact;
pub mod numeric;
pub mod qseries;
pub mod mocktheta;
pub mod radial;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
