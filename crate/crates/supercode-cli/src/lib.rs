//! Serialization formats shared by the `supercode` binary and its tests.

pub mod format;
pub mod report;
