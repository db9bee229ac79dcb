//! Std companion to `hetk-core`: point files, generator strings, experiment
//! configs, parallel bound evaluation, CSV/JSON reports and the verification
//! suites behind the `hetk` binary.

pub mod config;
pub mod error;
pub mod generator;
pub mod parallel;
pub mod pointfile;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
