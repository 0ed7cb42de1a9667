//! Certification pipelines, file formats and the command-line driver
//! built on `pwkit-core`.

pub mod checks;
pub mod cli;
pub mod config;
pub mod io;
pub mod report;
pub mod suite;
