//! On-disk cache of solver output, one file per (N, ledger hash).

use std::fs;
use std::path::{Path, PathBuf};

use kvcs_core::kv::{kv_solve, GaugeChoice, KvSolution};
use kvcs_core::tangential::TangentialAutomorphism;
use kvcs_core::text::{format_derivation, parse_derivation};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CACHE_ENV: &str = "KVCS_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    truncation: usize,
    ledger_hash: String,
    /// Components of `log g`.
    log: Vec<String>,
    gauge: Vec<GaugeChoice>,
}

pub fn cache_path(dir: &Path, n: usize, ledger_hash: &str) -> PathBuf {
    dir.join(format!("kv-solve-N{n}-{ledger_hash}.json"))
}

fn encode(sol: &KvSolution, ledger_hash: &str) -> String {
    let e = Entry {
        truncation: sol.truncation,
        ledger_hash: ledger_hash.to_string(),
        log: format_derivation(sol.g.log()),
        gauge: sol.gauge.clone(),
    };
    serde_json::to_string_pretty(&e).expect("cache entry serializes")
}

fn decode(text: &str, n: usize, ledger_hash: &str) -> Option<KvSolution> {
    let e: Entry = serde_json::from_str(text).ok()?;
    if e.truncation != n || e.ledger_hash != ledger_hash {
        return None;
    }
    let log = parse_derivation(&e.log, n).ok()?;
    Some(KvSolution {
        g: TangentialAutomorphism::exp(log),
        truncation: n,
        gauge: e.gauge,
    })
}

/// Loads `kv_solve(n)` from `dir` when present and valid, otherwise solves
/// and stores it. Cache activity is reported on stderr only.
pub fn kv_solution(
    n: usize,
    ledger_hash: &str,
    dir: Option<&Path>,
) -> Result<KvSolution, CliError> {
    let Some(dir) = dir else {
        return Ok(kv_solve(n)?);
    };
    let path = cache_path(dir, n, ledger_hash);
    if let Ok(text) = fs::read_to_string(&path) {
        match decode(&text, n, ledger_hash) {
            Some(sol) => {
                eprintln!("cache: loaded {}", path.display());
                return Ok(sol);
            }
            None => eprintln!("cache: ignoring unreadable entry {}", path.display()),
        }
    }
    let sol = kv_solve(n)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, encode(&sol, ledger_hash))?;
    fs::rename(&tmp, &path)?;
    eprintln!("cache: stored {}", path.display());
    Ok(sol)
}
