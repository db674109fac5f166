use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ExperimentConfig;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Parse(format!("unknown format `{other}` (csv or json)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool_version: &'static str,
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub tolerances: Value,
    pub units: &'static str,
}

impl Metadata {
    pub fn new(command: &str, cfg: &ExperimentConfig, tolerances: Value) -> Self {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config_hash: cfg.hash(),
            seed: cfg.seed(),
            tolerances,
            units: if cfg.bits() { "bits" } else { "nats" },
        }
    }
}

/// The result of one command in both encodings.
pub struct Report {
    pub json: Value,
    pub csv: String,
}

/// Writes the report. CSV files get a `.meta.json` sidecar; CSV on stdout
/// carries the metadata as a leading `#` comment line.
pub fn emit(report: &Report, meta: &Metadata, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let meta_json = serde_json::to_value(meta).expect("metadata serializes");
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "metadata": meta_json, "result": report.json }))
                .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report.csv.clone(),
    };
    match out {
        Some(path) => {
            write(path, &body)?;
            if format == Format::Csv {
                let mut side = serde_json::to_string_pretty(&meta_json).expect("metadata serializes");
                side.push('\n');
                write(&sidecar(path), &side)?;
            }
        }
        None => {
            if format == Format::Csv {
                println!("# {}", serde_json::to_string(&meta_json).expect("metadata serializes"));
            }
            print!("{body}");
        }
    }
    Ok(())
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn write(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Two-column CSV from a flat JSON object.
pub fn key_value_csv(v: &Value) -> String {
    let mut s = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let cell = match val {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            let cell = if cell.contains(',') { format!("\"{}\"", cell.replace('"', "\"\"")) } else { cell };
            let _ = writeln!(s, "{k},{cell}");
        }
    }
    s
}
