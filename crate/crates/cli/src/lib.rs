//! Report types shared between the `ccc` binary and its tests.

pub mod report;
