//! Artifacts: CSV tables, the JSON bounds file and the manifest.
//!
//! Nothing here records time, host or worker count, so identical configs
//! give identical bytes.

use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A CSV table held as formatted strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file: &str, header: &[&str]) -> Self {
        Table {
            file: file.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
    }
}

/// Shortest round-trip decimal.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Certified or empirical two-sided bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
    pub witness: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct FileEntry {
    name: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    scenario: &'a str,
    config_sha256: String,
    seeds: &'a [u64],
    arithmetic: &'a str,
    wwlab_version: &'static str,
    files: Vec<FileEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Artifacts<'a> {
    pub scenario: &'a str,
    pub config_text: &'a str,
    pub seeds: &'a [u64],
    pub arithmetic: &'a str,
    pub tables: &'a [Table],
    pub bounds: Option<&'a [Bound]>,
}

/// Writes `config.toml`, the tables, `bounds.json` and `manifest.json`.
pub fn write_all(dir: &Path, a: &Artifacts) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let mut files = vec![("config.toml".to_string(), a.config_text.as_bytes().to_vec())];
    for t in a.tables {
        files.push((t.file.clone(), t.to_bytes()?));
    }
    if let Some(b) = a.bounds {
        let mut text = serde_json::to_vec_pretty(b).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        text.push(b'\n');
        files.push(("bounds.json".to_string(), text));
    }
    let mut entries = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        fs::write(dir.join(name), bytes)?;
        entries.push(FileEntry {
            name: name.clone(),
            sha256: sha256_hex(bytes),
        });
    }
    let manifest = Manifest {
        scenario: a.scenario,
        config_sha256: sha256_hex(a.config_text.as_bytes()),
        seeds: a.seeds,
        arithmetic: a.arithmetic,
        wwlab_version: env!("CARGO_PKG_VERSION"),
        files: entries,
    };
    let mut text = serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    text.push(b'\n');
    fs::write(dir.join("manifest.json"), text)?;
    Ok(())
}
