//! File formats, command-line front end and batch self-test for
//! `coreep-core`.

pub mod cli;
pub mod format;
pub mod selftest;
