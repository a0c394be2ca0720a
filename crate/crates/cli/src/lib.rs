//! The `cherednik-lab` command-line harness: subcommands over the exact
//! engine, a registry of named checks with JSON reports, and a
//! content-addressed result cache.

pub mod cache;
pub mod checks;
pub mod cli;
pub mod report;

pub use cli::main_with;
