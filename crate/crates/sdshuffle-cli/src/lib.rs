//! Library surface of the command-line tool: CSV I/O, configuration
//! resolution, report documents, the timing harness, and the subcommand
//! implementations. The binary in `main.rs` is a thin clap wrapper over
//! `commands`.

pub mod bench;
pub mod commands;
pub mod config;
pub mod errors;
pub mod io;
pub mod report;
