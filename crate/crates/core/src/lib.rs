//! Perfect-secrecy authentication systems built from t-designs and cyclic
//! difference families, with exact verification of their security.

pub mod analysis;
pub mod apa;
pub mod balancing;
pub mod catalog;
pub mod cli;
pub mod combin;
pub mod designs;
pub mod difference_families;
mod error;
pub mod io;
pub mod verification;

pub use error::{Error, Result};
