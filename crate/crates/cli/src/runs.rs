//! Run directories.
//!
//! Every command writes its outputs into a directory named after a hash of
//! its effective settings, so reruns with identical configuration land in
//! the same place and differing runs never collide.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::config::Settings;
use crate::error::{CliError, CliResult};

/// Length of the hash prefix used in directory names.
const HASH_PREFIX: usize = 12;

pub struct RunDir {
    pub path: PathBuf,
}

impl RunDir {
    /// Creates `<out_root>/<command>-<hash>` and records the effective
    /// settings inside it for provenance.
    pub fn create(out_root: &Path, command: &str, settings: &Settings) -> CliResult<RunDir> {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update(b"\n");
        for line in settings.canonical_lines() {
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        let digest = hex::encode(hasher.finalize());
        let path = out_root.join(format!("{command}-{}", &digest[..HASH_PREFIX]));
        fs::create_dir_all(&path).map_err(|e| CliError::write(&path, e))?;
        let manifest = path.join("effective.conf");
        let mut body = format!("[{command}]\n");
        for line in settings.canonical_lines() {
            body.push_str(&line);
            body.push('\n');
        }
        fs::write(&manifest, body).map_err(|e| CliError::write(&manifest, e))?;
        Ok(RunDir { path })
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.path.join(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_settings_same_dir_different_settings_different_dir() {
        let tmp = tempfile::tempdir().unwrap();
        let a = Settings::from_pairs(&[("n", "2"), ("method", "next_n")]);
        let b = Settings::from_pairs(&[("n", "3"), ("method", "next_n")]);
        let ra = RunDir::create(tmp.path(), "detect-scope", &a).unwrap();
        let ra2 = RunDir::create(tmp.path(), "detect-scope", &a).unwrap();
        let rb = RunDir::create(tmp.path(), "detect-scope", &b).unwrap();
        assert_eq!(ra.path, ra2.path);
        assert_ne!(ra.path, rb.path);
        assert!(ra.file("effective.conf").exists());
    }

    #[test]
    fn command_name_is_part_of_the_identity() {
        let tmp = tempfile::tempdir().unwrap();
        let s = Settings::from_pairs(&[("seed", "42")]);
        let a = RunDir::create(tmp.path(), "split", &s).unwrap();
        let b = RunDir::create(tmp.path(), "train-bow", &s).unwrap();
        assert_ne!(a.path, b.path);
    }
}
