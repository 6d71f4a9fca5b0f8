//! Per-run bookkeeping: input digests, named artifacts, the manifest and exit statuses.

use std::cell::RefCell;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const EXIT_AUDIT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Lib(hyperreg::Error),
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<hyperreg::Error> for CliError {
    fn from(e: hyperreg::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(hyperreg::Error::Capacity(_) | hyperreg::Error::Infeasible(_)) => EXIT_CAPACITY,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Digest256 {
    pub path: String,
    pub sha256: String,
}

pub struct Artifact {
    pub name: String,
    pub content: String,
}

/// What a subcommand produced. The first artifact is the one printed when no output
/// directory is given.
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub audit_failed: bool,
}

impl Outcome {
    pub fn new() -> Outcome {
        Outcome { artifacts: Vec::new(), audit_failed: false }
    }

    pub fn add(&mut self, name: &str, content: String) {
        self.artifacts.push(Artifact { name: name.to_string(), content });
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) {
        let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
        self.add(name, text);
    }
}

#[derive(Default)]
pub struct Inputs {
    seen: RefCell<Vec<Digest256>>,
}

impl Inputs {
    pub fn read(&self, path: &str) -> CliResult<String> {
        let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let digest = Digest256 { path: path.to_string(), sha256: sha256_hex(&bytes) };
        let mut seen = self.seen.borrow_mut();
        if !seen.iter().any(|d| d.path == digest.path) {
            seen.push(digest);
        }
        String::from_utf8(bytes).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }

    pub fn digests(&self) -> Vec<Digest256> {
        self.seen.borrow().clone()
    }
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub flags: serde_json::Value,
    pub seed: Option<u64>,
    pub inputs: Vec<Digest256>,
    pub outputs: Vec<Digest256>,
    pub exit_status: u8,
    pub wall_secs: f64,
    pub version: String,
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for a in artifacts {
        let p = dir.join(&a.name);
        fs::write(&p, &a.content).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}
