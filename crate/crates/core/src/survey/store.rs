//! Append-only JSONL of analysis records, one checksummed object per line.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::AnalysisRecord;
use crate::error::{Error, Result};

fn checksum(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `{"key", "sha256", "record"}` with the digest taken over the compact
/// serialization of `record`.
pub fn encode_line(record: &AnalysisRecord) -> Result<String> {
    let value = serde_json::to_value(record)?;
    let text = serde_json::to_string(&value)?;
    Ok(serde_json::to_string(&json!({
        "key": record.key,
        "sha256": checksum(&text),
        "record": value,
    }))?)
}

/// Parse one line, verifying its checksum and key.
pub fn decode_line(line: &str) -> std::result::Result<AnalysisRecord, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let record = value.get("record").ok_or("missing record")?;
    let digest = value.get("sha256").and_then(Value::as_str).ok_or("missing sha256")?;
    let text = serde_json::to_string(record).map_err(|e| e.to_string())?;
    if checksum(&text) != digest {
        return Err("checksum mismatch".into());
    }
    let record: AnalysisRecord = serde_json::from_value(record.clone()).map_err(|e| e.to_string())?;
    if value.get("key").and_then(Value::as_str) != Some(record.key.as_str()) {
        return Err("key does not match record".into());
    }
    Ok(record)
}

/// Every record in `path`; any bad line is an error.
pub fn load_records(path: &Path) -> Result<Vec<AnalysisRecord>> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_line(l).map_err(|reason| Error::CorruptCheckpoint { line: i + 1, reason }))
        .collect()
}

pub struct JsonlStore {
    path: PathBuf,
    out: BufWriter<File>,
}

impl JsonlStore {
    /// Start a fresh file, replacing any existing one.
    pub fn create(path: &Path) -> Result<Self> {
        Ok(JsonlStore {
            path: path.to_path_buf(),
            out: BufWriter::new(File::create(path)?),
        })
    }

    /// Reopen for appending and return the records already present.
    ///
    /// A damaged final line is cut off so that graph is processed again;
    /// damage anywhere else is reported as a corrupt checkpoint.
    pub fn resume(path: &Path) -> Result<(Self, Vec<AnalysisRecord>)> {
        if !path.exists() {
            return Ok((Self::create(path)?, Vec::new()));
        }
        let mut text = String::new();
        File::open(path)?.read_to_string(&mut text)?;
        let mut records = Vec::new();
        let mut keep = 0usize;
        let mut offset = 0usize;
        let lines: Vec<&str> = text.split_inclusive('\n').collect();
        for (i, raw) in lines.iter().enumerate() {
            let line = raw.trim_end_matches(['\n', '\r']);
            let end = offset + raw.len();
            offset = end;
            if line.trim().is_empty() {
                keep = end;
                continue;
            }
            match decode_line(line) {
                Ok(r) if raw.ends_with('\n') => {
                    records.push(r);
                    keep = end;
                }
                Ok(_) | Err(_) if i + 1 == lines.len() => {
                    log::warn!("{}: dropping incomplete line {}", path.display(), i + 1);
                }
                Ok(_) => unreachable!("only the last line can lack a newline"),
                Err(reason) => return Err(Error::CorruptCheckpoint { line: i + 1, reason }),
            }
        }
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(keep as u64)?;
        drop(file);
        let out = OpenOptions::new().append(true).open(path)?;
        Ok((
            JsonlStore {
                path: path.to_path_buf(),
                out: BufWriter::new(out),
            },
            records,
        ))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&mut self, record: &AnalysisRecord) -> Result<()> {
        writeln!(self.out, "{}", encode_line(record)?)?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}
