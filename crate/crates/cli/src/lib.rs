//! File formats and command-line front end for the chase scripting
//! language. The language itself lives in `chase-core`.

pub mod app;
pub mod docs;
pub mod output;

pub use app::{run, Cli, Command};
