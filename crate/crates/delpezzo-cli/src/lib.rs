//! Command implementations behind the `delpezzo` binary.

pub mod commands;
pub mod suites;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: exit::INPUT,
            message: msg.into(),
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Failure {
            code: exit::INTERNAL,
            message: msg.into(),
        }
    }
}

impl From<delpezzo::Error> for Failure {
    fn from(e: delpezzo::Error) -> Self {
        let code = match e {
            delpezzo::Error::Input(_) | delpezzo::Error::Io(_) => exit::INPUT,
            delpezzo::Error::Invariant(_) | delpezzo::Error::Resource(_) => exit::INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(format!("parse error: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Everything that determines a run's output; echoed into every output file.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub degree: Option<i32>,
    pub surfaces: Vec<String>,
    pub sequence: Option<String>,
    pub mode: Option<String>,
    pub workers: Option<usize>,
    pub input: Option<String>,
    pub out: Option<String>,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// Hex SHA-256 of the JSON form, ignoring the output path and verbosity.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        c.verbosity = 0;
        let digest = Sha256::digest(c.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn header_lines(&self) -> Vec<String> {
        vec![
            format!("delpezzo {VERSION} config-sha256 {}", self.hash()),
            format!("config {}", self.to_json()),
        ]
    }

    pub fn provenance(&self) -> serde_json::Value {
        serde_json::json!({ "version": VERSION, "config_sha256": self.hash(), "config": self })
    }
}

/// Writes `body` to `path` after `#`-prefixed header lines.
pub fn write_with_header(path: &str, cfg: &RunConfig, body: &str) -> CliResult<()> {
    let mut text = String::new();
    for l in cfg.header_lines() {
        text.push_str("# ");
        text.push_str(&l);
        text.push('\n');
    }
    text.push_str(body);
    std::fs::write(path, text)?;
    Ok(())
}

/// Writes a JSON document with a provenance field.
pub fn write_json(path: &str, cfg: &RunConfig, value: serde_json::Value) -> CliResult<()> {
    let doc = serde_json::json!({ "provenance": cfg.provenance(), "result": value });
    std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}
