//! Front end for `psdual`: the density mini-language and the `solve`,
//! `verify` and `table` commands.
//!
//! Every run ends in one of four exit codes: 0 (success), 2 (invalid input),
//! 3 (not bound) or 4 (verification failed).

#![allow(non_snake_case)]

pub mod commands;
pub mod density;

pub use commands::{run, Command, Format, Outcome, RunConfig};
pub use density::{parse_density, render_density, DensityError};
