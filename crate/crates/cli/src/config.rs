//! Flat key-value config files.
//!
//! One `key = value` pair per line, `#` comments, keys named exactly like
//! the CLI flags they mirror. Command-line flags override file values.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

const KNOWN_KEYS: &[&str] = &[
    "net",
    "graph",
    "n",
    "k-avg",
    "m",
    "delta",
    "alpha",
    "alpha-start",
    "alpha-stop",
    "alpha-step",
    "realizations",
    "seed-count",
    "rng-seed",
    "paired",
    "g-star",
    "out",
    "svg",
    "workers",
];

/// Parsed config file; empty when no `--config` was given.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{}:{}: expected `key = value`, got `{line}`",
                    path.display(),
                    idx + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "{}:{}: unknown key `{key}`",
                    path.display(),
                    idx + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    /// Typed lookup; a malformed value is a config error.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        debug_assert!(KNOWN_KEYS.contains(&key));
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Config(format!("config key `{key}` = `{raw}`: {e}"))),
        }
    }
}
