//! Line-oriented text records used for suite descriptions, key files,
//! transcripts, signatures and game reports.
//!
//! One `key value` pair per line, keys free of whitespace, values running to
//! end of line. Blank lines and lines starting with `#` are skipped. Order is
//! preserved and keys may repeat.

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("line {line}: expected `key value`")]
    Syntax { line: usize },
    #[error("missing field `{0}`")]
    Missing(String),
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl RecordError {
    pub fn invalid(field: &str, reason: impl fmt::Display) -> Self {
        RecordError::Invalid { field: field.to_string(), reason: reason.to_string() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        debug_assert!(!key.is_empty() && !key.contains(char::is_whitespace));
        self.entries.push((key.to_string(), value.into()));
    }

    /// Appends every entry of `other`.
    pub fn extend(&mut self, other: &Record) {
        self.entries.extend(other.entries.iter().cloned());
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, RecordError> {
        self.get(key).ok_or_else(|| RecordError::Missing(key.to_string()))
    }

    pub fn parse_u64(&self, key: &str) -> Result<u64, RecordError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| RecordError::invalid(key, format!("not an integer: {v}")))
    }

    pub fn parse_hex(&self, key: &str) -> Result<Vec<u8>, RecordError> {
        let v = self.require(key)?;
        hex::decode(v).map_err(|e| RecordError::invalid(key, e))
    }

    pub fn expect_value(&self, key: &str, expected: &str) -> Result<(), RecordError> {
        let v = self.require(key)?;
        if v != expected {
            return Err(RecordError::invalid(key, format!("expected {expected}, found {v}")));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, RecordError> {
        let mut record = Record::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let line = line.trim_start();
            let (key, value) = match line.split_once(char::is_whitespace) {
                Some((k, v)) => (k, v.trim()),
                None => (line, ""),
            };
            if key.is_empty() {
                return Err(RecordError::Syntax { line: i + 1 });
            }
            record.entries.push((key.to_string(), value.to_string()));
        }
        Ok(record)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            if v.is_empty() {
                writeln!(f, "{k}")?;
            } else {
                writeln!(f, "{k} {v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "# header\nscheme OWFID\n\np 11\nnote two words\n";
        let r = Record::parse(text).unwrap();
        assert_eq!(r.get("scheme"), Some("OWFID"));
        assert_eq!(r.parse_u64("p").unwrap(), 11);
        assert_eq!(r.get("note"), Some("two words"));
        assert_eq!(Record::parse(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn missing_and_invalid() {
        let r = Record::parse("p eleven").unwrap();
        assert!(matches!(r.parse_u64("p"), Err(RecordError::Invalid { .. })));
        assert_eq!(r.require("q"), Err(RecordError::Missing("q".into())));
    }
}
