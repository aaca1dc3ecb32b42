//! Job configuration and flag parsing.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("ingestion: {0}")]
    Ingest(String),
    #[error("computation: {0}")]
    Compute(String),
}

impl CliError {
    /// 2 for configuration and ingestion problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Ingest(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

pub fn compute_err(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub prime: Option<u64>,
    /// Coefficient precision `M`.
    pub m: u32,
    /// Degree precision `D`; defaults to `p`.
    pub d: Option<usize>,
    pub newforms: Vec<PathBuf>,
    pub chars: Vec<String>,
    pub branches: Option<(i64, i64)>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            prime: None,
            m: 8,
            d: None,
            newforms: Vec::new(),
            chars: Vec::new(),
            branches: None,
            cache_dir: None,
            out: None,
        }
    }
}

/// `M,D` or just `M`.
pub fn parse_precision(s: &str) -> Result<(u32, Option<usize>), CliError> {
    let bad = || CliError::Config(format!("precision {s:?}: expected M,D"));
    let mut it = s.split(',').map(str::trim);
    let m: u32 = it.next().and_then(|x| x.parse().ok()).filter(|&m| m > 0).ok_or_else(bad)?;
    let d = match it.next() {
        Some(x) => Some(x.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(bad)?),
        None => None,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((m, d))
}

/// `a..b` inclusive, or a single integer.
pub fn parse_branches(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Config(format!("branches {s:?}: expected a..b"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let a: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok((a, a))
        }
    }
}

impl JobConfig {
    pub fn require_prime(&self) -> Result<u64, CliError> {
        let p = self.prime.ok_or_else(|| CliError::Config("--prime is required".into()))?;
        if p == 2 || !iwr_core::arith::ntheory::is_prime(p) {
            return Err(CliError::Config(format!("--prime {p} must be an odd prime")));
        }
        Ok(p)
    }

    /// Branch labels reduced into `0..p-1`, deduplicated in first-seen order.
    pub fn branch_list(&self, p: u64) -> Vec<u64> {
        let (a, b) = self.branches.unwrap_or((0, p as i64 - 2));
        let mut out = Vec::new();
        for j in a..=b {
            let r = j.rem_euclid(p as i64 - 1) as u64;
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn degree_precision(&self, p: u64) -> usize {
        self.d.unwrap_or(p as usize)
    }
}
