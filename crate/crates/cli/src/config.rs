//! `key = value` configuration files and flag/config/default layering.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "epsilon",
    "phi",
    "psi",
    "alpha-min",
    "alpha-max",
    "alpha-steps",
    "alpha-arg",
    "alpha",
    "orders",
    "witness",
    "out",
    "truncation-tol",
    "tol",
    "kerr-mode",
    "dim",
    "transmissivity",
    "theta",
    "phi-xpm",
];

/// Parsed configuration file. Keys use the long flag spelling; `_` is
/// accepted for `-`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("config line {}: unknown key `{key}`", lineno + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, else the config entry, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key).map(|raw| parse_value(key, raw)).transpose()
    }

    pub fn pick_list<T: FromStr>(&self, flag: Option<Vec<T>>, key: &str, default: Vec<T>) -> Result<Vec<T>, CliError> {
        if let Some(list) = flag {
            return Ok(list);
        }
        match self.get(key) {
            Some(raw) => raw.split(',').map(|item| parse_value(key, item.trim())).collect(),
            None => Ok(default),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| CliError::usage(format!("config key `{key}`: cannot parse `{raw}`")))
}
