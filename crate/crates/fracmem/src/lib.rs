//! Std companion to `fracmem-core`: CSV ingestion and export, the
//! command-line front end and the built-in oracle suite behind `check`.

pub mod check;
pub mod cli;
pub mod csvio;
pub mod error;
pub mod format;

pub use error::AppError;
