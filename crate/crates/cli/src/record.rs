//! Versioned flat records written as CSV or JSON lines.
//!
//! Reals are written as strings in their shortest round-trip form,
//! integers and booleans as themselves. Absent values are `null` in JSON
//! and empty in CSV.

use std::io::Write;

use clap::ValueEnum;

use crate::error::CliResult;
use crate::number::round_trip;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Real(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Value {
    fn csv_field(&self) -> String {
        match self {
            Self::Int(n) => n.to_string(),
            Self::Real(x) => round_trip(*x),
            Self::Text(s) => s.clone(),
            Self::Bool(b) => b.to_string(),
            Self::Null => String::new(),
        }
    }

    fn write_json(&self, out: &mut String) {
        match self {
            Self::Int(n) => out.push_str(&n.to_string()),
            Self::Real(x) => push_json_str(out, &round_trip(*x)),
            Self::Text(s) => push_json_str(out, s),
            Self::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Self::Null => out.push_str("null"),
        }
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Self::Int(n)
    }
}

impl From<u32> for Value {
    fn from(n: u32) -> Self {
        Self::Int(n.into())
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Self::Real(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Self::Bool(b)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Self::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Self::Text(s.into())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Self::Null, Into::into)
    }
}

fn push_json_str(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub schema: &'static str,
    pub fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new(schema: &'static str) -> Self {
        Self {
            schema,
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"schema\":");
        push_json_str(&mut out, self.schema);
        for (k, v) in &self.fields {
            out.push(',');
            push_json_str(&mut out, k);
            out.push(':');
            v.write_json(&mut out);
        }
        out.push('}');
        out
    }
}

/// Writes records of one schema; the CSV header comes from the first record.
pub struct RecordWriter<W: Write> {
    inner: Sink<W>,
    header_written: bool,
}

enum Sink<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Jsonl(W),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        let inner = match format {
            Format::Csv => Sink::Csv(Box::new(
                csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .flexible(true)
                    .from_writer(out),
            )),
            Format::Jsonl => Sink::Jsonl(out),
        };
        Self {
            inner,
            header_written: false,
        }
    }

    pub fn write(&mut self, rec: &Record) -> CliResult<()> {
        match &mut self.inner {
            Sink::Csv(w) => {
                if !self.header_written {
                    w.write_record(
                        std::iter::once("schema").chain(rec.fields.iter().map(|(k, _)| *k)),
                    )?;
                    self.header_written = true;
                }
                w.write_record(
                    std::iter::once(rec.schema.to_string())
                        .chain(rec.fields.iter().map(|(_, v)| v.csv_field())),
                )?;
            }
            Sink::Jsonl(w) => {
                w.write_all(rec.to_json().as_bytes())?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn flush(&mut self) -> CliResult<()> {
        match &mut self.inner {
            Sink::Csv(w) => w.flush()?,
            Sink::Jsonl(w) => w.flush()?,
        }
        Ok(())
    }
}
