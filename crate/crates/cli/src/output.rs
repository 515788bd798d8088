use std::fmt::Write as _;

use serde_json::Value;

use crate::args::Format;

/// Rows for the csv and text renderings.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a command produced, and whether its checks held.
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
    pub passed: bool,
}

impl Output {
    pub fn new(json: Value) -> Self {
        Output {
            json,
            table: None,
            passed: true,
        }
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.header).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in flatten(&self.json) {
                    w.write_record([k, v]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    fn text(&self) -> String {
        let mut out = String::new();
        // with a table, nested members are already in its rows
        let scalars: Vec<(String, String)> = match (&self.table, &self.json) {
            (Some(_), Value::Object(m)) => m
                .iter()
                .filter(|(_, v)| !v.is_object() && !v.is_array())
                .map(|(k, v)| (k.clone(), scalar(v)))
                .collect(),
            (Some(_), _) => Vec::new(),
            (None, v) => flatten(v),
        };
        let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &scalars {
            writeln!(out, "{k:width$}  {v}").expect("string write");
        }
        if let Some(t) = &self.table {
            if !scalars.is_empty() {
                out.push('\n');
            }
            let widths: Vec<usize> = (0..t.header.len())
                .map(|i| {
                    t.rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([t.header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(t.header.clone())).expect("string write");
            for r in &t.rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))
                    .expect("string write");
            }
        }
        out
    }
}

/// Dotted-path leaves of a JSON value, in document order.
fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: String, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push((prefix, items.join(" ")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => out.push((prefix, scalar(v))),
        }
    }
    let mut out = Vec::new();
    walk(String::new(), v, &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
