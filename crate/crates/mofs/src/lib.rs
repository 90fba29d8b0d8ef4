//! File format, parallel search and command line for mutually orthogonal
//! frequency squares, on top of [`mofs_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{decode, encode, FormatError};
