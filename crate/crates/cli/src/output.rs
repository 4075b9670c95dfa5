// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV tables and JSON manifests.
//!
//! CSV files are UTF-8 and comma separated. Metadata lines start with `#`
//! and precede the header. Floats are written with 17 significant digits
//! so that reruns compare byte for byte. Files are written through a
//! temporary file in the target directory and renamed into place.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

pub const SERIES_SCHEMA: &str = "qlgt-series/1";
pub const MANIFEST_SCHEMA: &str = "qlgt-manifest/1";
pub const UNIT: &str = "natural-units-eq7";

/// Column-oriented numeric table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<(String, Vec<f64>)>,
}

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // keep −0 out of the files
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

impl Table {
    pub fn new(schema: &str) -> Self {
        let mut t = Table::default();
        t.meta("schema", schema);
        t
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.columns.push((name.into(), values));
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.1.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.0 == name).map(|c| c.1.as_slice())
    }

    pub fn header(&self) -> Vec<String> {
        self.columns.iter().map(|c| c.0.clone()).collect()
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let rows = self.rows();
        if let Some((name, _)) = self.columns.iter().find(|c| c.1.len() != rows) {
            return Err(CliError::Numerical(format!("column {name} has a different length")));
        }
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.header().join(","));
        out.push('\n');
        for r in 0..rows {
            let line: Vec<String> = self.columns.iter().map(|c| format_float(c.1[r])).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses text written by [`Table::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut t = Table::default();
        let mut lines = text.lines();
        let mut header = None;
        for line in lines.by_ref() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest.split_once(": ").ok_or_else(|| CliError::Config(format!("bad metadata {line}")))?;
                t.meta(k, v);
            } else {
                header = Some(line);
                break;
            }
        }
        let header = header.ok_or_else(|| CliError::Config("csv has no header".into()))?;
        t.columns = header.split(',').map(|h| (h.to_string(), Vec::new())).collect();
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != t.columns.len() {
                return Err(CliError::Config(format!("row has {} cells, header {}", cells.len(), t.columns.len())));
            }
            for (col, cell) in t.columns.iter_mut().zip(cells) {
                col.1.push(cell.parse().map_err(|_| CliError::Config(format!("bad number {cell}")))?);
            }
        }
        Ok(t)
    }
}

/// Writes `contents` to `path` via a temporary file and an atomic rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
