use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde_json::{Number, Value};
use superapollonian::geometry::fmt12;

/// 12 significant digits, everywhere.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    fmt12(x).parse::<f64>().ok().and_then(Number::from_f64).map(Value::Number).unwrap_or(Value::Null)
}

pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64 number")),
        Value::Array(xs) => Value::Array(xs.into_iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

/// Small integers as numbers, the rest as decimal strings.
pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_floats(v)).expect("json values serialize");
    s.push('\n');
    s
}

/// CSV with the resolved configuration as a leading comment line.
pub fn csv_text(config: &Value, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner()?)?;
    Ok(format!("# config: {}\n{body}", serde_json::to_string(&round_floats(config.clone()))?))
}
