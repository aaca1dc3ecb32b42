//! Command-line driver: configuration, bundled data, reports and the worked-example verifiers.

pub mod commands;
pub mod config;
pub mod data;
pub mod report;
pub mod worked;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book {}
