use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_SIZE: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<gallai::Error> for CliError {
    fn from(e: gallai::Error) -> Self {
        use gallai::Error::*;
        let code = match &e {
            InvalidArgument(_) | Parse { .. } => EXIT_INVALID,
            SizeLimit(_) => EXIT_SIZE,
            PreconditionViolation(_) => EXIT_VERIFY,
            Invariant(_) => EXIT_INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced.
pub struct Report {
    /// Text for stdout.
    pub human: String,
    /// Structured form for `--json` and for `--out` when there is no artifact.
    pub json: Value,
    /// File contents for `--out` (colouring, CSV, ...).
    pub artifact: Option<String>,
    /// Print the artifact itself when there is no `--out`.
    pub artifact_to_stdout: bool,
    /// A failed check; the process exits 3 after writing everything.
    pub failure: Option<String>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(human: impl Into<String>, json: impl Serialize) -> CliResult<Self> {
        Ok(Report {
            human: human.into(),
            json: to_value(json)?,
            artifact: None,
            artifact_to_stdout: false,
            failure: None,
            seed: None,
        })
    }

    pub fn artifact(mut self, text: String) -> Self {
        self.artifact = Some(text);
        self
    }

    pub fn construction(mut self, text: String) -> Self {
        self.artifact = Some(text);
        self.artifact_to_stdout = true;
        self
    }

    pub fn fail_if(mut self, failed: bool, message: impl Into<String>) -> Self {
        if failed {
            self.failure = Some(message.into());
        }
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

pub fn to_value(v: impl Serialize) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::internal(format!("serialising report: {e}")))
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

#[derive(Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub wall_time_secs: f64,
    pub output: PathBuf,
    /// Hex SHA-256 of the output file.
    pub output_sha256: String,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::internal(format!("writing {}: {e}", path.display())))
}

/// Print or write the report; returns the exit code.
pub fn emit(report: Report, out: Option<&Path>, json: bool, subcommand: &str, elapsed: Duration) -> CliResult<i32> {
    match out {
        Some(path) => {
            let bytes = match &report.artifact {
                Some(a) => a.clone(),
                None => to_json_text(&report.json),
            };
            write(path, bytes.as_bytes())?;
            let manifest = RunManifest {
                subcommand: subcommand.to_string(),
                argv: std::env::args().collect(),
                seed: report.seed,
                version: env!("CARGO_PKG_VERSION"),
                wall_time_secs: elapsed.as_secs_f64(),
                output: path.to_path_buf(),
                output_sha256: sha256_hex(bytes.as_bytes()),
            };
            write(&manifest_path(path), to_json_text(&to_value(&manifest)?).as_bytes())?;
            if json {
                print!("{}", to_json_text(&report.json));
            } else {
                println!("{}", report.human);
            }
        }
        None if json => print!("{}", to_json_text(&report.json)),
        None => match (&report.artifact, report.artifact_to_stdout) {
            (Some(a), true) => print!("{a}"),
            _ => println!("{}", report.human),
        },
    }
    if let Some(msg) = report.failure {
        eprintln!("verification failed: {msg}");
        return Ok(EXIT_VERIFY);
    }
    Ok(0)
}
