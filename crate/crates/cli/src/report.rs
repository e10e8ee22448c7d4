//! Report rows and their json, csv, and table renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use bgslab::{
    CounterexampleResult, Natural, SearchStatus, CODEC_VERSION, MACHINE_ENCODING_VERSION,
};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown output format {s:?} (json, csv, table)")),
        }
    }
}

pub type Row = Map<String, Value>;

/// Naturals are emitted as decimal strings so that codes wider than 64 bits
/// survive every json reader.
pub fn nat(v: &Natural) -> Value {
    Value::String(v.to_string())
}

/// Appends the version tags every row carries.
pub fn tagged(mut row: Row) -> Row {
    row.insert("codec_version".into(), json!(CODEC_VERSION));
    row.insert(
        "machine_encoding_version".into(),
        json!(MACHINE_ENCODING_VERSION),
    );
    row
}

pub fn status(r: &CounterexampleResult) -> &'static str {
    match r.status {
        SearchStatus::Found => "found",
        SearchStatus::Exhausted => "exhausted",
    }
}

pub struct Report {
    pub kind: &'static str,
    pub rows: Vec<Row>,
    /// One-record commands render as a bare object in json.
    pub single: bool,
    /// Plain rendering used instead of a table.
    pub text: Option<String>,
    pub summary: Option<Row>,
}

impl Report {
    pub fn one(kind: &'static str, row: Row) -> Self {
        Report {
            kind,
            rows: vec![tagged(row)],
            single: true,
            text: None,
            summary: None,
        }
    }

    pub fn many(kind: &'static str, rows: Vec<Row>, summary: Row) -> Self {
        Report {
            kind,
            rows: rows.into_iter().map(tagged).collect(),
            single: false,
            text: None,
            summary: Some(summary),
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    /// The json document; also what `--out` files contain.
    pub fn json(&self) -> String {
        let value = if self.single {
            Value::Object(self.rows[0].clone())
        } else {
            json!({
                "kind": self.kind,
                "codec_version": CODEC_VERSION,
                "machine_encoding_version": MACHINE_ENCODING_VERSION,
                "rows": self.rows,
                "summary": self.summary.clone().unwrap_or_default(),
            })
        };
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.rows.first() {
            w.write_record(first.keys()).expect("in-memory write");
            for row in &self.rows {
                w.write_record(row.values().map(cell))
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn table(&self) -> String {
        if let Some(text) = &self.text {
            return text.clone();
        }
        let Some(first) = self.rows.first() else {
            return String::new();
        };
        let header: Vec<String> = first.keys().cloned().collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.values().map(|v| abbreviate(cell(v))).collect())
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for line in std::iter::once(&header).chain(&body) {
            let mut s = String::new();
            for (c, w) in line.iter().zip(&widths) {
                let _ = write!(s, "{c:<w$}  ");
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Long codes are cut in tables; json and csv keep them whole.
fn abbreviate(s: String) -> String {
    const KEEP: usize = 16;
    let len = s.chars().count();
    if len <= KEEP + 8 {
        return s;
    }
    let head: String = s.chars().take(KEEP).collect();
    format!("{head}..({len} chars)")
}
