//! CSV encoding of sweep rows.
//!
//! Line 1 is `# unit=<convention> version=<version>`, line 2 the column names, then one
//! record per row. Floats carry 12 significant digits; absent measures are empty fields.

use std::io::Write;

use crate::model::{ModelParams, UnitConvention};
use crate::optimize::{SweepKind, SweepRow};
use crate::states::TieRule;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COLUMNS: [&str; 14] = [
    "kind",
    "eps_m",
    "eps1",
    "eps2",
    "lam1",
    "lam2",
    "temperature",
    "negativity",
    "concurrence",
    "qmi",
    "qmi_closed_form",
    "tie_rule",
    "degenerate",
    "boundary_hit",
];

/// 1-based column number of `name`, as plotting tools count.
pub fn column(name: &str) -> usize {
    COLUMNS
        .iter()
        .position(|&c| c == name)
        .map(|i| i + 1)
        .unwrap_or_else(|| panic!("no column named {name}"))
}

/// Twelve significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    // no negative zero in the data stream
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// `x` rounded to twelve significant digits, printed in the shortest form that reads
/// back to the rounded value.
pub fn fmt_value(x: f64) -> String {
    let rounded: f64 = fmt_float(x).parse().unwrap_or(x);
    format!("{rounded:?}")
}

pub fn header_line(units: UnitConvention) -> String {
    format!("# unit={} version={VERSION}", units.label())
}

pub fn write_csv(out: impl Write, units: UnitConvention, kind: SweepKind, rows: &[SweepRow]) -> Result<(), csv::Error> {
    let mut out = out;
    writeln!(out, "{}", header_line(units))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
    for r in rows {
        let p = &r.params;
        w.write_record([
            kind.label().to_string(),
            fmt_float(p.eps_m),
            fmt_float(p.eps1),
            fmt_float(p.eps2),
            fmt_float(p.lam1),
            fmt_float(p.lam2),
            fmt_float(p.temperature),
            opt(r.negativity),
            opt(r.concurrence),
            opt(r.qmi),
            opt(r.qmi_closed_form),
            r.tie_rule.label().to_string(),
            r.degenerate.to_string(),
            r.boundary_hit.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_bytes(units: UnitConvention, kind: SweepKind, rows: &[SweepRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(&mut buf, units, kind, rows).expect("writing to memory cannot fail");
    buf
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("missing or malformed header line")]
    Header,
    #[error("column mismatch: expected {expected:?}")]
    Columns { expected: Vec<&'static str> },
    #[error("row {row}: {message}")]
    Field { row: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A parsed CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub units: UnitConvention,
    pub version: String,
    pub rows: Vec<(SweepKind, SweepRow)>,
}

pub fn read_csv(data: &[u8]) -> Result<Table, TableError> {
    let text = std::str::from_utf8(data).map_err(|_| TableError::Header)?;
    let (first, rest) = text.split_once('\n').ok_or(TableError::Header)?;
    let mut units = None;
    let mut version = None;
    for token in first.strip_prefix("# ").ok_or(TableError::Header)?.split_whitespace() {
        if let Some(u) = token.strip_prefix("unit=") {
            units = u.parse::<UnitConvention>().ok();
        } else if let Some(v) = token.strip_prefix("version=") {
            version = Some(v.to_string());
        }
    }
    let (Some(units), Some(version)) = (units, version) else {
        return Err(TableError::Header);
    };

    let mut reader = csv::Reader::from_reader(rest.as_bytes());
    if reader.headers()?.iter().ne(COLUMNS) {
        return Err(TableError::Columns {
            expected: COLUMNS.to_vec(),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let err = |message: String| TableError::Field { row: i + 1, message };
        let field = |name: &str| record.get(column(name) - 1).unwrap_or("");
        let num = |name: &str| {
            field(name)
                .parse::<f64>()
                .map_err(|_| err(format!("bad number in `{name}`")))
        };
        let opt = |name: &str| match field(name) {
            "" => Ok(None),
            _ => num(name).map(Some),
        };
        let flag = |name: &str| match field(name) {
            "true" => Ok(Some(true)),
            "false" => Ok(Some(false)),
            "" => Ok(None),
            other => Err(err(format!("bad flag `{other}` in `{name}`"))),
        };
        let kind: SweepKind = field("kind").parse().map_err(err)?;
        let params = ModelParams::new(
            num("eps_m")?,
            num("eps1")?,
            num("eps2")?,
            num("lam1")?,
            num("lam2")?,
            num("temperature")?,
        )
        .map_err(|e| err(e.to_string()))?;
        let tie_rule: TieRule = field("tie_rule").parse().map_err(err)?;
        let row = SweepRow {
            params,
            negativity: opt("negativity")?,
            concurrence: opt("concurrence")?,
            qmi: opt("qmi")?,
            qmi_closed_form: opt("qmi_closed_form")?,
            tie_rule,
            degenerate: flag("degenerate")?.ok_or_else(|| err("missing degenerate flag".into()))?,
            boundary_hit: flag("boundary_hit")?,
        };
        rows.push((kind, row));
    }
    Ok(Table { units, version, rows })
}
