use serde::Serialize;
use serde_json::{json, Map, Value};

use deephole_core::DeepHoleClass;

use crate::args::Format;

/// Output of one verb: the JSON document, an optional CSV table and
/// whether a verification found a mismatch.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub mismatch: bool,
}

#[derive(Debug)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value) -> Report {
        Report { json, table: None, mismatch: false }
    }

    pub fn with_table(mut self, table: Table) -> Report {
        self.table = Some(table);
        self
    }

    pub fn mismatch(mut self, mismatch: bool) -> Report {
        self.mismatch = mismatch;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => match &self.table {
                Some(t) => render_csv(&t.header, &t.rows),
                None => {
                    let rows = match &self.json {
                        Value::Object(map) => map.iter().map(|(k, v)| vec![k.clone(), scalar(v)]).collect(),
                        other => vec![vec!["value".into(), scalar(other)]],
                    };
                    render_csv(&["key".into(), "value".into()], &rows)
                }
            },
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Counts may exceed `u64`; those are emitted as decimal strings.
pub fn count_json(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(n) => json!(n),
        Err(_) => json!(n.to_string()),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn class_row(c: &DeepHoleClass) -> Vec<String> {
    let (kind, delta) = match c.witness {
        deephole_core::Witness::Rnc(d) => ("rnc", d.to_string()),
        deephole_core::Witness::Nucleus => ("nucleus", String::new()),
        deephole_core::Witness::Other => ("other", String::new()),
    };
    vec![c.syndrome.to_string(), kind.into(), delta]
}

/// CSV columns `method,syndrome,witness,delta`.
pub fn class_table(groups: &[(&str, &[DeepHoleClass])]) -> Table {
    let header = ["method", "syndrome", "witness", "delta"].map(String::from).to_vec();
    let rows = groups
        .iter()
        .flat_map(|(method, classes)| {
            classes.iter().map(move |c| {
                let mut row = vec![method.to_string()];
                row.extend(class_row(c));
                row
            })
        })
        .collect();
    Table { header, rows }
}
