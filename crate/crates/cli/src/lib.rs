//! Library side of the `rayleigh` command: subcommand implementations and
//! the output record they share.

pub mod commands;
pub mod output;
