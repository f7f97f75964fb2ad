//! Command-line front end: config resolution, file formats and the commands.

pub mod commands;
pub mod config;
pub mod edgelist;
pub mod error;
pub mod output;
pub mod pipeline;
