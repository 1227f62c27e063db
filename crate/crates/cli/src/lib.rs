//! Command-line front end: scenario loading, cross-checks and self-tests.

pub mod app;
pub mod chicheck;
pub mod compare;
pub mod error;
pub mod generate;
pub mod report;
pub mod scenario;
pub mod selftest;
