//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use kvcs_core::ledger::Ledger;
use kvcs_core::simplicial::Variant;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Config {
    /// Truncation `N` (letter count).
    pub degree: usize,
    pub variant: Variant,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub ledger: Ledger,
}

impl Config {
    pub fn new(degree: usize) -> Result<Self, CliError> {
        if degree < 2 {
            return Err(CliError::Usage(format!(
                "--degree must be at least 2, got {degree}"
            )));
        }
        Ok(Config {
            degree,
            variant: Variant::NonAbelian,
            cache_dir: None,
            format: Format::Text,
            ledger: Ledger::default(),
        })
    }

    /// Settings that can change results. The cache location is left out so
    /// cached and fresh runs report identically.
    pub fn snapshot(&self) -> Vec<(String, String)> {
        vec![
            ("degree".into(), self.degree.to_string()),
            ("variant".into(), self.variant.to_string()),
        ]
    }

    pub fn ledger_hash(&self) -> String {
        ledger_hash(&self.ledger)
    }
}

/// First 16 hex digits of the SHA-256 of the canonical ledger text.
pub fn ledger_hash(ledger: &Ledger) -> String {
    let digest = Sha256::digest(ledger.canonical().as_bytes());
    hex::encode(&digest[..8])
}
