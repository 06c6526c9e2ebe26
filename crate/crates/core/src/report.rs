//! Tabular results, their text/CSV/JSON renderings, and cell-by-cell
//! comparison against reference tables.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_rational::Rational64;
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    Text,
    Integer,
    Rational,
    Real,
}

/// Digits shown in the text rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Fixed(usize),
    Scientific(usize),
    Plain,
}

/// How a computed cell is compared with a reference cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    Exact,
    Absolute(f64),
    Relative(f64),
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Exact => f.write_str("exact"),
            Tolerance::Absolute(t) => write!(f, "abs {t:e}"),
            Tolerance::Relative(t) => write!(f, "rel {t:e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub tolerance: Tolerance,
    /// Compare `|computed|` with the reference (which is printed unsigned).
    pub magnitude: bool,
}

impl Check {
    pub const fn exact() -> Self {
        Self {
            tolerance: Tolerance::Exact,
            magnitude: false,
        }
    }

    pub const fn absolute(t: f64) -> Self {
        Self {
            tolerance: Tolerance::Absolute(t),
            magnitude: false,
        }
    }

    pub const fn relative(t: f64) -> Self {
        Self {
            tolerance: Tolerance::Relative(t),
            magnitude: false,
        }
    }

    pub const fn on_magnitude(self) -> Self {
        Self {
            magnitude: true,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub kind: ColumnKind,
    pub key: bool,
    pub precision: Precision,
    pub check: Option<Check>,
}

impl Column {
    pub const fn key(name: &'static str, kind: ColumnKind) -> Self {
        Self {
            name,
            kind,
            key: true,
            precision: Precision::Plain,
            check: None,
        }
    }

    pub const fn value(name: &'static str, kind: ColumnKind, precision: Precision) -> Self {
        Self {
            name,
            kind,
            key: false,
            precision,
            check: None,
        }
    }

    pub const fn checked(self, check: Check) -> Self {
        Self {
            check: Some(check),
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Text(String),
    Integer(i64),
    Rational(Rational64),
    Real(f64),
    /// A line forbidden by selection rules (printed `*`).
    Forbidden,
    Missing,
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Integer(i) => Some(*i as f64),
            Value::Rational(r) => Some(*r.numer() as f64 / *r.denom() as f64),
            Value::Real(x) => Some(*x),
            _ => None,
        }
    }

    pub fn optional(x: Option<f64>) -> Self {
        x.map_or(Value::Missing, Value::Real)
    }

    /// Lossless text form, parsed back by [`Value::parse`].
    pub fn to_plain(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Integer(i) => i.to_string(),
            Value::Rational(r) => format_rational(r),
            Value::Real(x) => format_real_exact(*x),
            Value::Forbidden => "*".to_owned(),
            Value::Missing => String::new(),
        }
    }

    fn to_display(&self, precision: Precision) -> String {
        match (self, precision) {
            (Value::Real(x), Precision::Fixed(d)) => format!("{x:+.d$}"),
            (Value::Real(x), Precision::Scientific(d)) => format!("{x:+.d$e}"),
            _ => self.to_plain(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Text(s) => json!(s),
            Value::Integer(i) => json!(i),
            Value::Rational(r) => json!(format_rational(r)),
            Value::Real(x) => json!(x),
            Value::Forbidden => json!("forbidden"),
            Value::Missing => Json::Null,
        }
    }

    pub fn parse(text: &str, kind: ColumnKind) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::parse("table cell", format!("`{t}` is not a valid {kind:?} value"));
        if t.is_empty() {
            return Ok(Value::Missing);
        }
        if t == "*" {
            return Ok(Value::Forbidden);
        }
        Ok(match kind {
            ColumnKind::Text => Value::Text(t.to_owned()),
            ColumnKind::Integer => Value::Integer(t.trim_start_matches('+').parse().map_err(|_| bad())?),
            ColumnKind::Rational => Value::Rational(parse_rational(t).ok_or_else(bad)?),
            ColumnKind::Real => Value::Real(f64::from_str(t.trim_start_matches('+')).map_err(|_| bad())?),
        })
    }
}

/// `+1/9`, `-1/5`, `+1`, `0`.
pub fn format_rational(r: &Rational64) -> String {
    let sign = if *r.numer() > 0 { "+" } else { "" };
    if *r.denom() == 1 {
        format!("{sign}{}", r.numer())
    } else {
        format!("{sign}{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(t: &str) -> Option<Rational64> {
    let t = t.trim_start_matches('+');
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational64::new(n, d))
        }
        None => Some(Rational64::from_integer(t.parse().ok()?)),
    }
}

/// Shortest representation that parses back to the same bits.
fn format_real_exact(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-3..1e7).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::validation("format", format!("`{s}` is not text, csv or json"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: Vec<Column>) -> Self {
        Self {
            title: title.into(),
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the columns");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&Value> {
        self.rows.get(row)?.get(self.column_index(column)?)
    }

    fn row_key(&self, row: &[Value]) -> Vec<String> {
        self.columns
            .iter()
            .zip(row)
            .filter(|(c, _)| c.key)
            .map(|(_, v)| v.to_plain())
            .collect()
    }

    fn row_label(&self, row: &[Value]) -> String {
        self.columns
            .iter()
            .zip(row)
            .filter(|(c, _)| c.key)
            .map(|(c, v)| format!("{}={}", c.name, v.to_plain()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("json rendering") + "\n",
        }
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&self.columns)
                    .map(|(v, c)| v.to_display(c.precision))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.name.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        writeln!(out, "{}", self.title).ok();
        let line = |out: &mut String, items: Vec<&str>| {
            let parts: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            writeln!(out, "{}", parts.join("  ").trim_end()).ok();
        };
        line(&mut out, self.columns.iter().map(|c| c.name).collect());
        for r in &cells {
            line(&mut out, r.iter().map(String::as_str).collect());
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").ok();
        }
        out
    }

    /// Full-precision delimited rendering; [`Table::from_csv`] reads it back.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| c.name))
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Value::to_plain)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.name.to_owned(), v.to_json()))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        json!({
            "title": self.title,
            "columns": self.columns.iter().map(|c| c.name).collect::<Vec<_>>(),
            "rows": rows,
            "notes": self.notes,
        })
    }

    /// Reads CSV text whose header matches `columns`.
    pub fn from_csv(text: &str, title: impl Into<String>, columns: Vec<Column>, origin: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = rdr.headers().map_err(|e| Error::parse(origin, e))?.clone();
        if header.iter().ne(columns.iter().map(|c| c.name)) {
            return Err(Error::parse(
                origin,
                format!(
                    "expected header `{}`",
                    columns.iter().map(|c| c.name).collect::<Vec<_>>().join(",")
                ),
            ));
        }
        let mut table = Table::new(title, columns);
        for (n, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::parse(origin, e))?;
            let row = rec
                .iter()
                .zip(&table.columns)
                .map(|(cell, c)| {
                    Value::parse(cell, c.kind).map_err(|e| Error::parse(origin, format!("row {}: {e}", n + 2)))
                })
                .collect::<Result<Vec<_>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Outcome of one compared cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellDiff {
    pub row: String,
    pub column: &'static str,
    pub computed: Value,
    pub reference: Value,
    /// `|computed − reference|` (or the relative deviation for relative checks).
    pub deviation: Option<f64>,
    pub check: Check,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiffReport {
    pub title: String,
    pub cells: Vec<CellDiff>,
    /// Reference rows with no computed counterpart.
    pub unmatched: Vec<String>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.cells.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellDiff> {
        self.cells.iter().filter(|c| !c.passed)
    }

    /// Largest deviation seen in one column.
    pub fn max_deviation(&self, column: &str) -> Option<f64> {
        self.cells
            .iter()
            .filter(|c| c.column == column)
            .filter_map(|c| c.deviation)
            .fold(None, |m, d| Some(m.map_or(d, |m: f64| m.max(d))))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let total = self.cells.len();
        let failed = self.failures().count();
        writeln!(
            out,
            "diff: {} ({} cells compared, {} outside tolerance)",
            self.title, total, failed
        )
        .ok();
        let mut columns: Vec<&'static str> = Vec::new();
        for c in &self.cells {
            if !columns.contains(&c.column) {
                columns.push(c.column);
            }
        }
        for col in columns {
            let check = self.cells.iter().find(|c| c.column == col).map(|c| c.check);
            let dev = self
                .max_deviation(col)
                .map_or_else(|| "-".to_owned(), |d| format!("{d:.3e}"));
            if let Some(check) = check {
                let mag = if check.magnitude { ", magnitudes" } else { "" };
                writeln!(out, "  {col}: max deviation {dev} ({}{mag})", check.tolerance).ok();
            }
        }
        for c in self.failures() {
            writeln!(
                out,
                "  FAIL {} {}: computed {} reference {} deviation {}",
                c.row,
                c.column,
                c.computed.to_plain(),
                c.reference.to_plain(),
                c.deviation.map_or_else(|| "n/a".to_owned(), |d| format!("{d:.3e}"))
            )
            .ok();
        }
        for r in &self.unmatched {
            writeln!(out, "  MISSING row {r}").ok();
        }
        writeln!(out, "  result: {}", if self.passed() { "PASS" } else { "FAIL" }).ok();
        out
    }
}

fn compare(computed: &Value, reference: &Value, check: Check) -> (Option<f64>, bool) {
    match (computed, reference) {
        (_, Value::Missing) => (None, true),
        (Value::Forbidden, Value::Forbidden) => (None, true),
        (Value::Forbidden, _) | (_, Value::Forbidden) => (None, false),
        (Value::Rational(a), Value::Rational(b)) if check.tolerance == Tolerance::Exact => (
            Some((Value::Rational(*a).as_f64().unwrap() - Value::Rational(*b).as_f64().unwrap()).abs()),
            a == b,
        ),
        (Value::Text(a), Value::Text(b)) => (None, a == b),
        _ => {
            let (Some(mut a), Some(mut b)) = (computed.as_f64(), reference.as_f64()) else {
                return (None, false);
            };
            if check.magnitude {
                (a, b) = (a.abs(), b.abs());
            }
            let abs = (a - b).abs();
            match check.tolerance {
                Tolerance::Exact => (Some(abs), a == b),
                Tolerance::Absolute(t) => (Some(abs), abs <= t),
                Tolerance::Relative(t) => {
                    let rel = if b == 0.0 { abs } else { abs / b.abs() };
                    (Some(rel), rel <= t)
                }
            }
        }
    }
}

/// Compares every checked column of `reference` with `computed`, matching
/// rows by their key columns. Columns are looked up by name in `computed`.
pub fn diff_tables(computed: &Table, reference: &Table) -> DiffReport {
    let mut report = DiffReport {
        title: reference.title.clone(),
        ..Default::default()
    };
    for rrow in &reference.rows {
        let key = reference.row_key(rrow);
        let label = reference.row_label(rrow);
        let Some(crow) = computed.rows.iter().find(|r| computed.row_key(r) == key) else {
            report.unmatched.push(label);
            continue;
        };
        for (i, col) in reference.columns.iter().enumerate() {
            let Some(check) = col.check else { continue };
            let Some(ci) = computed.column_index(col.name) else {
                continue;
            };
            let (deviation, passed) = compare(&crow[ci], &rrow[i], check);
            report.cells.push(CellDiff {
                row: label.clone(),
                column: col.name,
                computed: crow[ci].clone(),
                reference: rrow[i].clone(),
                deviation,
                check,
                passed,
            });
        }
    }
    report
}
