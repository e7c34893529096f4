//! Versioned JSON I/O, failures with exit codes, and command outcomes.

use std::fs;
use std::path::Path;

use gquant_core::Error;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

/// Exit code for successful runs.
pub const EXIT_PASS: i32 = 0;
/// Exit code when a law or weight check fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: String,
    pub message: String,
    pub exit: i32,
}

impl Failure {
    pub fn input(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.to_owned(),
            message: message.into(),
            exit: EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> Value {
        with_schema(json!({ "error": { "code": self.code, "message": self.message } }))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::NonInvertibleDelta(_) => EXIT_FAIL,
            _ => EXIT_INPUT,
        };
        Failure {
            code: e.code().to_owned(),
            message: e.to_string(),
            exit,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input("Io", e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input("Json", e.to_string())
    }
}

/// A command result: the report and whether every check in it passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn pass(report: Value) -> Self {
        Outcome { report, passed: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Puts `"schema": 1` in front of an object's keys; other values are
/// wrapped as `{"schema": 1, "result": ...}`.
pub fn with_schema(v: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                if k != "schema" {
                    m.insert(k, v);
                }
            }
        }
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

pub fn to_value<T: serde::Serialize>(t: &T) -> Result<Value, Failure> {
    Ok(serde_json::to_value(t)?)
}

/// Pretty JSON with a trailing newline, to `out` or stdout.
pub fn write_json(v: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Reads a JSON file, checking and dropping a top-level `schema` field so
/// that command outputs can be fed back as inputs.
pub fn read_value(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))?;
    let mut v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::input("Json", format!("{}: {e}", path.display())))?;
    if let Value::Object(o) = &mut v {
        if let Some(s) = o.remove("schema") {
            if s != json!(SCHEMA) {
                return Err(Failure::input("Schema", format!("{}: unsupported schema {s}", path.display())));
            }
        }
    }
    Ok(v)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    from_value(read_value(path)?, path)
}

pub fn from_value<T: DeserializeOwned>(v: Value, path: &Path) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::input("Invalid", format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_comes_first() {
        let v = with_schema(json!({"a": 1, "schema": 7}));
        assert_eq!(v.to_string(), r#"{"schema":1,"a":1}"#);
        assert_eq!(with_schema(json!([1])), json!({"schema": 1, "result": [1]}));
    }

    #[test]
    fn delta_failures_are_law_failures() {
        let f: Failure = Error::NonInvertibleDelta(vec!["x".into()]).into();
        assert_eq!(f.exit, EXIT_FAIL);
        let f: Failure = Error::Parse("x".into()).into();
        assert_eq!(f.exit, EXIT_INPUT);
    }
}
