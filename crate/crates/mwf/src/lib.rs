//! Command-line front end for `mwf-core`.

pub mod batch;
pub mod cli;
pub mod families;
pub mod render;

pub use cli::{run, Outcome};
