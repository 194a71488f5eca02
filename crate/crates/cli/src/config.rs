//! Layered run configuration.
//!
//! Settings come from three places, weakest first: the `[global]` section
//! of a config file, the per-command section, and command-line flags.
//! Later layers shadow earlier ones key by key.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// Parsed config file: section name to key-value pairs.
///
/// Keys outside any section header land in the `global` section.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str, origin: &Path) -> CliResult<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = "global".to_string();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    CliError::config(format!(
                        "{}:{}: unterminated section header",
                        origin.display(),
                        lineno + 1
                    ))
                })?;
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!(
                    "{}:{}: expected `key = value`",
                    origin.display(),
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config(format!(
                    "{}:{}: empty key",
                    origin.display(),
                    lineno + 1
                )));
            }
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { sections })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
        Self::parse(&text, path)
    }

    fn section(&self, name: &str) -> Option<&BTreeMap<String, String>> {
        self.sections.get(name)
    }
}

/// Effective settings for one command after layering.
#[derive(Debug, Default, Clone)]
pub struct Settings {
    values: BTreeMap<String, String>,
    /// Directory of the config file, used to resolve relative paths in it.
    config_dir: Option<PathBuf>,
    /// Keys that came from command-line flags resolve against the cwd.
    from_flags: BTreeMap<String, bool>,
}

impl Settings {
    /// Layers `[global]`, then the command section, then flag overrides.
    pub fn resolve(
        file: Option<&ConfigFile>,
        config_path: Option<&Path>,
        command: &str,
        flags: Vec<(&'static str, Option<String>)>,
    ) -> Settings {
        let mut values = BTreeMap::new();
        let mut from_flags = BTreeMap::new();
        if let Some(file) = file {
            for name in ["global", command] {
                if let Some(section) = file.section(name) {
                    for (k, v) in section {
                        values.insert(k.clone(), v.clone());
                        from_flags.insert(k.clone(), false);
                    }
                }
            }
        }
        for (key, value) in flags {
            if let Some(value) = value {
                values.insert(key.to_string(), value);
                from_flags.insert(key.to_string(), true);
            }
        }
        Settings {
            values,
            config_dir: config_path.and_then(|p| p.parent().map(Path::to_path_buf)),
            from_flags,
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> CliResult<&str> {
        self.get(key)
            .ok_or_else(|| CliError::config(format!("missing required setting `{key}`")))
    }

    /// Paths from the config file are relative to that file, paths from
    /// flags are relative to the working directory.
    fn resolve_path(&self, key: &str, value: &str) -> PathBuf {
        let p = PathBuf::from(value);
        if p.is_absolute() || self.from_flags.get(key).copied().unwrap_or(true) {
            return p;
        }
        match &self.config_dir {
            Some(dir) => dir.join(p),
            None => p,
        }
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|v| self.resolve_path(key, v))
    }

    pub fn require_path(&self, key: &str) -> CliResult<PathBuf> {
        let value = self.require(key)?;
        Ok(self.resolve_path(key, value))
    }

    pub fn parse<T>(&self, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                CliError::config(format!("setting `{key}` has invalid value `{raw}`: {e}"))
            }),
        }
    }

    pub fn parse_or<T>(&self, key: &str, default: T) -> CliResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    /// Stable snapshot used for run-directory hashing and provenance.
    pub fn canonical_lines(&self) -> Vec<String> {
        self.values
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect()
    }

    #[cfg(test)]
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Settings {
        let mut values = BTreeMap::new();
        for (k, v) in pairs {
            values.insert(k.to_string(), v.to_string());
        }
        Settings {
            values,
            config_dir: None,
            from_flags: BTreeMap::new(),
        }
    }
}

/// Parses an inclusive `A..B` range as used by `--sweep-n`.
pub fn parse_span(raw: &str) -> CliResult<(usize, usize)> {
    let err = || {
        CliError::config(format!(
            "expected an inclusive range like `1..5`, got `{raw}`"
        ))
    };
    let (lo, hi) = raw.split_once("..").ok_or_else(err)?;
    let lo: usize = lo.trim().parse().map_err(|_| err())?;
    let hi: usize = hi.trim().parse().map_err(|_| err())?;
    if lo == 0 || hi < lo {
        return Err(CliError::config(format!(
            "range `{raw}` must satisfy 1 <= A <= B"
        )));
    }
    Ok((lo, hi))
}
