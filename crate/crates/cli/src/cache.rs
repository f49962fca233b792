use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

const LOG: &str = "runs.jsonl";

/// One completed run, appended to the log as a single line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub key: String,
    pub command_line: Vec<String>,
    pub group_spec: Option<String>,
    pub config_hash: String,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub payload: Value,
    pub version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Cache key over the normalized command, config hash, seed and the
/// digests of every data file involved.
pub fn cache_key(command: &str, config_hash: &str, seed: u64, digests: &[String]) -> String {
    let material = serde_json::json!({
        "command": command,
        "config": config_hash,
        "seed": seed,
        "data": digests,
        "version": env!("CARGO_PKG_VERSION"),
    });
    sha256_hex(material.to_string().as_bytes())
}

pub fn file_digest(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(sha256_hex(&bytes))
}

/// Append-only JSON-lines log in a directory.
#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(Cache { path: dir.join(LOG) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The first record stored under `key`. Lines that fail to parse are
    /// skipped.
    pub fn lookup(&self, key: &str) -> Result<Option<RunRecord>, CliError> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::Io(format!("{}: {e}", self.path.display()))),
        };
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| CliError::Io(e.to_string()))?;
            if let Ok(rec) = serde_json::from_str::<RunRecord>(&line) {
                if rec.key == key {
                    return Ok(Some(rec));
                }
            }
        }
        Ok(None)
    }

    pub fn append(&self, record: &RunRecord) -> Result<(), CliError> {
        let mut line = serde_json::to_string(record).map_err(|e| CliError::Io(e.to_string()))?;
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::Io(format!("{}: {e}", self.path.display())))?;
        f.write_all(line.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
    }
}
