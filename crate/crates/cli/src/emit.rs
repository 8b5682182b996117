//! Table emission: RFC-4180-style CSV (header row mandatory, `.` decimal
//! separator) and newline-delimited JSON, one object per record. Every
//! exact value is printed both in `numerator/2^exponent` textual form and
//! as a float derived from it, never computed independently.

use std::fs::File;
use std::io::{self, BufWriter, Stdout, Write};
use std::path::Path;

use walshkit::dyadic::DyadicRational;

pub enum Sink {
    Stdout(BufWriter<Stdout>),
    File(BufWriter<File>),
}

impl Sink {
    pub fn stdout() -> Sink {
        Sink::Stdout(BufWriter::new(io::stdout()))
    }

    pub fn file(path: &Path) -> io::Result<Sink> {
        Ok(Sink::File(BufWriter::new(File::create(path)?)))
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(w) => w.write(buf),
            Sink::File(w) => w.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(w) => w.flush(),
            Sink::File(w) => w.flush(),
        }
    }
}

/// One CSV/JSON cell value. Floats use Rust's shortest round-trip formatting,
/// so identical runs emit identical bytes.
pub enum Field {
    Uint(u64),
    Float(f64),
    Bool(bool),
    Text(&'static str),
    Exact(DyadicRational),
    /// An integer too large for i64, already rendered as decimal text.
    Big(String),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Uint(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Bool(v) => v.to_string(),
            Field::Text(v) => (*v).to_string(),
            Field::Exact(v) => v.to_string(),
            Field::Big(v) => v.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Field::Uint(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Bool(v) => v.to_string(),
            Field::Text(v) => format!("\"{v}\""),
            Field::Exact(v) => format!("\"{v}\""),
            Field::Big(v) => v.clone(),
        }
    }
}

fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        // CSV has no standard for non-finite values; none are expected.
        format!("\"{v}\"")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Sequential table writer: header once, then one line per record.
pub struct Table<'a> {
    sink: &'a mut Sink,
    format: Format,
    columns: &'static [&'static str],
    wrote_header: bool,
}

impl<'a> Table<'a> {
    pub fn new(sink: &'a mut Sink, format: Format, columns: &'static [&'static str]) -> Table<'a> {
        Table {
            sink,
            format,
            columns,
            wrote_header: false,
        }
    }

    pub fn row(&mut self, fields: &[Field]) -> io::Result<()> {
        assert_eq!(fields.len(), self.columns.len(), "column count mismatch");
        match self.format {
            Format::Csv => {
                if !self.wrote_header {
                    writeln!(self.sink, "{}", self.columns.join(","))?;
                    self.wrote_header = true;
                }
                let cells: Vec<String> = fields.iter().map(Field::csv).collect();
                writeln!(self.sink, "{}", cells.join(","))
            }
            Format::Json => {
                let pairs: Vec<String> = self
                    .columns
                    .iter()
                    .zip(fields)
                    .map(|(name, value)| format!("\"{}\":{}", name, value.json()))
                    .collect();
                writeln!(self.sink, "{{{}}}", pairs.join(","))
            }
        }
    }
}

/// Exact value split into numerator/exponent columns plus the derived float.
pub fn exact_columns(value: &DyadicRational) -> [Field; 3] {
    [
        Field::Big(value.numerator().to_string()),
        Field::Uint(u64::from(value.exponent())),
        Field::Float(value.to_f64()),
    ]
}
