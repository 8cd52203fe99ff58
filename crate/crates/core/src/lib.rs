//! Exact integer engine for T-duality of principal circle bundles carrying
//! an H-flux and a B-class.

pub mod abelian;
pub mod catalog;
pub mod classifying;
pub mod cochain;
pub mod duality;
pub mod error;
pub mod gysin;
pub mod labels;

pub use error::{Error, Result};
