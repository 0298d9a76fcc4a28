//! Command-line layer: configuration, reports, caching and the acceptance
//! criteria.

pub mod cache;
pub mod commands;
pub mod config;
pub mod criteria;
pub mod error;
pub mod report;

pub use config::{Config, Format};
pub use error::CliError;
pub use report::Report;
