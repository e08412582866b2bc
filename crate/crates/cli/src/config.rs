//! Key = value defaults file and the shared validation rules. Every
//! rejection names the offending field so misconfigured runs fail loudly
//! and precisely.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Keys a defaults file may set; command-specific geometry flags are
/// CLI-only.
const KNOWN_KEYS: &[&str] = &[
    "nmin", "nmax", "primes", "eps", "t", "out", "format", "seed", "jobs", "threshold", "scale",
    "degree",
];

/// Parsed defaults file: raw values plus the line they came from, for
/// error messages.
#[derive(Debug, Default)]
pub struct FileConfig {
    entries: BTreeMap<String, (String, usize)>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(FileConfig::default()) };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("config: cannot read {}", path.display()))?;
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config: line {} is not `key = value`: {line:?}", idx + 1);
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("config: unknown key {key:?} on line {}", idx + 1);
            }
            entries.insert(key, (value.trim().to_string(), idx + 1));
        }
        Ok(FileConfig { entries })
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((raw, line)) => raw.parse().map(Some).map_err(|_| {
                anyhow::anyhow!("{key}: invalid value {raw:?} in config (line {line})")
            }),
        }
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>> {
        self.parsed(key)
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        self.parsed(key)
    }

    pub fn u8(&self, key: &str) -> Result<Option<u8>> {
        self.parsed(key)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        self.parsed(key)
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>> {
        self.parsed(key)
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.entries.get(key).map(|(raw, _)| raw.clone())
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some((raw, line)) = self.entries.get(key) else { return Ok(None) };
        raw.split(',')
            .map(|part| {
                part.trim().parse().map_err(|_| {
                    anyhow::anyhow!(
                        "{key}: invalid list entry {:?} in config (line {line})",
                        part.trim()
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()
            .map(Some)
    }
}

pub fn check_eps(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.1) {
        bail!("eps: must lie in (0, 0.1], got {eps}");
    }
    Ok(eps)
}

pub fn check_t_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        bail!("t: grid must be nonempty");
    }
    if let Some(&bad) = grid.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        bail!("t: grid values must be positive and finite, got {bad}");
    }
    Ok(())
}

pub fn check_jobs(jobs: usize) -> Result<usize> {
    if jobs == 0 {
        bail!("jobs: must be at least 1");
    }
    Ok(jobs)
}

/// The levels a family selection denotes, in increasing order; errors name
/// `nmax` since that is the flag that usually cuts the range empty.
pub fn resolve_levels(nmin: u64, nmax: u64, primes: bool) -> Result<Vec<u64>> {
    if nmin > nmax {
        bail!("nmax: level range is empty (nmin {nmin} > nmax {nmax})");
    }
    if nmin < 1 {
        bail!("nmin: levels start at 1, got {nmin}");
    }
    let levels: Vec<u64> = if primes {
        orbilab::arith::primes_in(nmin, nmax)
    } else {
        (nmin..=nmax).collect()
    };
    if levels.is_empty() {
        bail!("nmax: no prime levels in [{nmin}, {nmax}]");
    }
    Ok(levels)
}
