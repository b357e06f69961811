//! Defaults from an optional JSON config file; command-line flags win.

use std::path::Path;

use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const WORKERS_ENV: &str = "AMALGAM_WORKERS";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub corpus_size: Option<usize>,
    pub workers: Option<usize>,
    pub grid: Option<String>,
    pub l1_window: Option<String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))
    }
}

/// Flag, then `AMALGAM_WORKERS`, then config, then the machine's parallelism.
pub fn resolve_workers(flag: Option<usize>, config: &Config) -> CliResult<usize> {
    let env =
        match std::env::var(WORKERS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))
            })?),
            Err(_) => None,
        };
    let workers = flag
        .or(env)
        .or(config.workers)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(CliError::Usage("worker count must be positive".into()));
    }
    Ok(workers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"seed": 7, "corpus_size": 5, "tol": 1e-9}"#).unwrap();
        let cfg = Config::load(Some(&path)).unwrap();
        assert_eq!((cfg.seed, cfg.corpus_size, cfg.tol), (Some(7), Some(5), Some(1e-9)));
        std::fs::write(&path, r#"{"sed": 7}"#).unwrap();
        assert!(matches!(Config::load(Some(&path)), Err(CliError::Parse(_))));
        assert_eq!(Config::load(None).unwrap(), Config::default());
    }

    #[test]
    fn flag_beats_config() {
        let cfg = Config { workers: Some(3), ..Config::default() };
        assert_eq!(resolve_workers(Some(2), &cfg).unwrap(), 2);
        assert!(resolve_workers(Some(0), &cfg).is_err());
    }
}
