//! Exact character-table columns of S_n and H^n ⋊ S_n.

pub mod chain;
pub mod cli;
pub mod engine;
pub mod error;
pub mod hgroup;
pub mod lifting;
pub mod mckay;
pub mod partition;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
