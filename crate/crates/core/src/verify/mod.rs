//! Independent oracles and the constraint suites.

pub mod constraints;
pub mod ingest;
pub mod mn;
pub mod suite;
