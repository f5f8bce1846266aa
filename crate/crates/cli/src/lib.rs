//! Command-line frontend for [`f2hit`].

pub mod commands;
pub mod parse;

pub use commands::{run, Outcome};
pub use parse::{parse_poly, ParseError};
