//! Command-line audit of graphs returned by language models.
//!
//! `fetch` is the only command that talks to endpoints or writes to the
//! transcript store; everything else reads the store and writes reports.

pub mod cli;
pub mod client;
pub mod commands;
pub mod config;
pub mod manifest;
pub mod store;

pub use cli::{run, Cli};
