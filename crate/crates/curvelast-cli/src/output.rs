//! Number formatting and output sinks.

use std::io::Write;

use serde_json::Value;

/// Rounds to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Text form of `v` with at most 12 significant digits and a `.` decimal
/// separator; `nan` for missing values.
pub fn fmt12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    format!("{:?}", round12(v))
}

/// JSON number with at most 12 significant digits (`null` when not finite).
pub fn json12(v: f64) -> Value {
    let r = round12(v);
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

/// CSV text with a header and LF line endings.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes `text` to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&str>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
