//! Output documents and their table form.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::exit;

/// A finished command: both renderings plus the exit code.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub table: String,
    pub code: i32,
}

impl Report {
    pub fn new(doc: &impl Serialize, table: String, code: i32) -> Self {
        let mut json = serde_json::to_value(doc).expect("documents serialize");
        if let Value::Object(map) = &mut json {
            map.insert("timings".into(), Value::Null);
        }
        Report { json, table, code }
    }

    /// The text to print. Timings appear only when requested, so that
    /// default output is byte-identical across runs.
    pub fn render(&self, format: Format, elapsed: Option<Duration>) -> String {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let (Some(t), Value::Object(map)) = (elapsed, &mut json) {
                    map.insert("timings".into(), serde_json::json!({ "total_ms": t.as_secs_f64() * 1e3 }));
                }
                let mut s = serde_json::to_string_pretty(&json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut s = self.table.clone();
                if let Some(t) = elapsed {
                    let _ = writeln!(s, "time: {:.1} ms", t.as_secs_f64() * 1e3);
                }
                s
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.code == exit::OK
    }
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// `GF(13)`, or `GF(2^3), modulus 1,1,0,1` for extension fields.
pub fn field_text(descriptor: &str) -> String {
    match etgrs_core::FieldSpec::parse(descriptor) {
        Ok(f) if f.m() > 1 => format!("{f}, modulus {}", join(f.modulus(), ",")),
        Ok(f) => f.to_string(),
        Err(_) => descriptor.to_string(),
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces, trailing space trimmed.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut l = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                l.push_str("  ");
            }
            let _ = write!(l, "{c:<w$}", w = widths[i]);
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bbb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(t, "a     bbb\nlong  x\n");
    }

    #[test]
    fn timings_are_null_unless_requested() {
        let r = Report::new(&serde_json::json!({"x": 1}), "x\n".into(), 0);
        let quiet: Value = serde_json::from_str(&r.render(Format::Json, None)).unwrap();
        assert!(quiet["timings"].is_null());
        let timed: Value = serde_json::from_str(&r.render(Format::Json, Some(Duration::from_millis(3)))).unwrap();
        assert!(timed["timings"]["total_ms"].as_f64().unwrap() >= 3.0);
        assert_eq!(r.render(Format::Table, None), "x\n");
    }
}
