//! Instance files.
//!
//! Two encodings are accepted. A JSON object:
//!
//! ```text
//! { "jumps": [1, 2, 4], "forbidden": [1, 3], "mode": "classic" }
//! ```
//!
//! or line-oriented `key: values` text, with `#` comments:
//!
//! ```text
//! jumps: 1 2 4
//! forbidden: 1 3
//! mode: classic
//! ```
//!
//! `forbidden` defaults to empty and `mode` to `generalized`. Values may be
//! separated by spaces or commas.

use std::path::Path;

use thiserror::Error;

use crate::instance::{Instance, Mode, RawInstance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

pub fn parse_instance(text: &str) -> Result<RawInstance, FormatError> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        parse_text(text)
    }
}

fn parse_values(line: usize, body: &str) -> Result<Vec<u64>, FormatError> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|e| FormatError::Line {
                line,
                message: format!("bad value {t:?}: {e}"),
            })
        })
        .collect()
}

fn parse_text(text: &str) -> Result<RawInstance, FormatError> {
    let mut jumps = None;
    let mut forbidden = Vec::new();
    let mut mode = Mode::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, body) = content.split_once(':').ok_or_else(|| FormatError::Line {
            line,
            message: "expected `key: values`".into(),
        })?;
        match key.trim() {
            "jumps" => jumps = Some(parse_values(line, body)?),
            "forbidden" | "M" => forbidden = parse_values(line, body)?,
            "mode" => {
                mode = body
                    .parse()
                    .map_err(|message| FormatError::Line { line, message })?
            }
            other => {
                return Err(FormatError::Line {
                    line,
                    message: format!("unknown key {other:?}"),
                })
            }
        }
    }
    let jumps = jumps.ok_or(FormatError::Line {
        line: 0,
        message: "missing `jumps` line".into(),
    })?;
    Ok(RawInstance::new(jumps, forbidden, mode))
}

pub fn read_instance(path: &Path) -> Result<RawInstance, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

/// Compact single-line JSON, newline-terminated.
pub fn instance_to_json(inst: &Instance) -> String {
    let mut s = serde_json::to_string(inst).expect("instance serializes");
    s.push('\n');
    s
}

pub fn instance_to_text(inst: &Instance) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "jumps: {}\nforbidden: {}\nmode: {}\n",
        join(inst.jumps()),
        join(inst.forbidden().values()),
        inst.mode()
    )
}
