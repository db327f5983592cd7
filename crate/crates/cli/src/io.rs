//! JSONL input, atomic output.
//!
//! Outputs are written to a temporary file in the target directory and
//! renamed into place, so a failing command never leaves a partial file.
//! Relative output paths resolve against `ORDSEQ_OUT_DIR` when it is set.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use ordseq_core::sequence::{Item, Sequence};

use crate::errors::CliError;

pub const OUT_DIR_ENV: &str = "ORDSEQ_OUT_DIR";

/// A parsed JSONL row with its 1-based line number for error reporting.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: T = serde_json::from_str(line).map_err(|e| {
            CliError::Parse(format!("{} line {}: {e}", path.display(), idx + 1))
        })?;
        rows.push((idx + 1, row));
    }
    Ok(rows)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Write to `path` atomically, or to stdout when `path` is None.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_out(path);
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = dir {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            }
            let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
                .map_err(|e| CliError::Io(e.to_string()))?;
            use std::io::Write;
            tmp.write_all(contents.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
            tmp.persist(&path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(())
        }
    }
}

/// Render rows as JSONL.
pub fn to_jsonl<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut out = String::new();
    for row in rows {
        let line = serde_json::to_string(row)
            .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// One input sequence row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqRow {
    pub id: String,
    pub items: Vec<Item>,
}

impl SeqRow {
    pub fn sequence(&self, line: usize) -> Result<Sequence, CliError> {
        Sequence::new(self.items.clone())
            .map_err(|e| CliError::from(e).with_line_context(&self.id, line))
    }
}

impl CliError {
    /// Keep the error kind but point at the offending row.
    pub fn with_line_context(self, id: &str, line: usize) -> CliError {
        match self {
            CliError::Domain(m) => {
                CliError::Domain(format!("row {id:?} (line {line}): {m}"))
            }
            other => other,
        }
    }
}

/// Parse comma-separated items: all-numeric becomes numbers, otherwise tokens.
pub fn parse_items(text: &str) -> Result<Vec<Item>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Parse(format!("empty item in list {text:?}")));
    }
    let numbers: Option<Vec<f64>> = parts.iter().map(|p| p.parse().ok()).collect();
    Ok(match numbers {
        Some(values) => values.into_iter().map(Item::Number).collect(),
        None => parts.into_iter().map(|p| Item::Token(p.to_string())).collect(),
    })
}

pub fn parse_u32_list(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("bad integer {:?} in list", p.trim())))
        })
        .collect()
}

pub fn parse_string_list(text: &str) -> Vec<String> {
    text.split(',').map(|p| p.trim().to_string()).collect()
}
