//! Driver for the `tql` binary: argument parsing, dispatch, the run log
//! and the reproduction suites.

pub mod args;
pub mod cache;
pub mod commands;
pub mod output;
pub mod repro;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;
use tql_core::episearch::SearchConfig;

use args::{Cli, Command};
use cache::{cache_key, file_digest, sha256_hex, Cache, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DATA: i32 = 4;
pub const EXIT_REPRO: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Repro(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] tql_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Repro(_) => EXIT_REPRO,
            CliError::Io(_) => EXIT_OTHER,
            CliError::Core(e) => match e {
                tql_core::Error::CapExceeded { .. } => EXIT_CAP,
                tql_core::Error::Io { .. } => EXIT_DATA,
                e if e.is_data_integrity() => EXIT_DATA,
                _ => EXIT_USAGE,
            },
        }
    }
}

/// Everything a command needs besides its own arguments.
#[derive(Debug, Clone)]
pub struct Context {
    pub cfg: SearchConfig,
    pub seed: u64,
    pub attempts: u64,
    pub cache: Option<Cache>,
    pub data_dir: PathBuf,
}

impl Context {
    /// Hash of the settings that can change a result. The thread count
    /// is left out: results do not depend on it.
    pub fn config_hash(&self) -> String {
        let normalized = serde_json::json!({
            "enumeration_cap": self.cfg.enumeration_cap,
            "involution_cap": self.cfg.involution_cap,
            "attempts": self.attempts,
        });
        sha256_hex(normalized.to_string().as_bytes())
    }

    /// Runs `compute` unless the log already holds a result for the same
    /// key. Returns the payload and whether it came from the log.
    pub fn cached(
        &self,
        command: &str,
        command_line: &[String],
        group_spec: Option<String>,
        files: &[PathBuf],
        compute: impl FnOnce() -> Result<Value, CliError>,
    ) -> Result<(Value, bool), CliError> {
        let Some(cache) = &self.cache else {
            return compute().map(|v| (v, false));
        };
        let digests = files.iter().map(|f| file_digest(f)).collect::<Result<Vec<_>, _>>()?;
        let config_hash = self.config_hash();
        let key = cache_key(command, &config_hash, self.seed, &digests);
        if let Some(rec) = cache.lookup(&key)? {
            return Ok((rec.payload, true));
        }
        let start = Instant::now();
        let payload = compute()?;
        cache.append(&RunRecord {
            key,
            command_line: command_line.to_vec(),
            group_spec,
            config_hash,
            seed: self.seed,
            elapsed_ms: start.elapsed().as_millis() as u64,
            payload: payload.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        })?;
        Ok((payload, false))
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn default_data_dir() -> PathBuf {
    let local = PathBuf::from("data");
    if local.is_dir() {
        local
    } else {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let command_line: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match dispatch(&cli, &command_line) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("tql: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli, command_line: &[String]) -> Result<(i32, String), CliError> {
    let cfg = SearchConfig {
        threads: cli.threads,
        ..SearchConfig::default()
    };
    let cache = cli.cache.as_deref().map(Cache::open).transpose()?;
    let ctx = Context {
        cfg,
        seed: cli.seed,
        attempts: cli.attempts,
        cache,
        data_dir: cli.data.clone().unwrap_or_else(default_data_dir),
    };
    if let Command::Repro { suite } = &cli.command {
        let results = repro::run_suite(*suite, &ctx)?;
        let code = if results.iter().any(|r| r.status == repro::Status::Fail) {
            EXIT_REPRO
        } else {
            EXIT_OK
        };
        let text = match cli.format {
            args::Format::Table => repro::summary(&results),
            args::Format::Json => output::render(&serde_json::to_value(&results).expect("serializable"), cli.format),
        };
        return Ok((code, text));
    }
    let (spec, files) = commands::group_spec(&cli.command);
    let (payload, _) = ctx.cached(
        &format!("{:?}", cli.command),
        command_line,
        spec.as_ref().map(|s| s.to_string()),
        &files,
        || commands::execute(&cli.command, &ctx),
    )?;
    Ok((EXIT_OK, output::render(&payload, cli.format)))
}
