#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod fixtures;
pub mod pretzel;
pub mod records;
pub mod report;
pub mod seifert;
pub mod unknotting;
pub mod witt;

pub use error::{Error, Result};
