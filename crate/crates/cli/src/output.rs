use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;

use crate::{Format, RunConfig};

/// Largest integer every JSON consumer reads exactly.
const MAX_SAFE: u64 = 1 << 53;

pub struct Report {
    pub json: Value,
    /// Lines for `--format text`; the flattened JSON when empty.
    pub text: Vec<String>,
    pub code: u8,
}

impl Report {
    pub fn new(json: Value, code: u8) -> Report {
        Report {
            json,
            text: Vec::new(),
            code,
        }
    }

    pub fn with_text(mut self, text: Vec<String>) -> Report {
        self.text = text;
        self
    }
}

/// Replaces integers beyond 2^53 by decimal strings.
pub fn safe_integers(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let big = n.as_u64().is_some_and(|x| x > MAX_SAFE) || n.as_i64().is_some_and(|x| x < -(MAX_SAFE as i64));
            if big {
                Value::String(n.to_string())
            } else {
                Value::Number(n)
            }
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(safe_integers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, safe_integers(v))).collect()),
        other => other,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push(format!("{prefix}: {other}")),
    }
}

pub fn render(format: Format, report: &Report) -> anyhow::Result<String> {
    let json = safe_integers(report.json.clone());
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json)? + "\n",
        Format::Text => {
            let mut lines = report.text.clone();
            if lines.is_empty() {
                flatten("", &json, &mut lines);
            }
            lines.join("\n") + "\n"
        }
    })
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?
        .to_string_lossy();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let res = (|| -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res.with_context(|| format!("writing {}", path.display()))
}

pub fn emit(cfg: &RunConfig, report: &Report) -> anyhow::Result<()> {
    let s = render(cfg.format, report)?;
    match &cfg.output {
        Some(p) => write_atomic(p, s.as_bytes()),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}
