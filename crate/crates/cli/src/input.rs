//! CSV series input.

use std::fs::File;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

/// Which column holds the observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl Column {
    /// Numeric selectors are 0-based indices; anything else is a header name.
    pub fn parse(s: &str) -> Self {
        match s.parse() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        }
    }
}

/// Reads one numeric column from a delimited file.
///
/// A first row whose selected field is not a number is taken as a header.
/// Blank lines are skipped. Parse errors report the 1-based line number.
pub fn read_series(path: &Path, column: Option<&Column>, delimiter: u8) -> Result<Vec<f64>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_from(file, column, delimiter).with_context(|| format!("reading {}", path.display()))
}

pub fn read_from<R: std::io::Read>(
    reader: R,
    column: Option<&Column>,
    delimiter: u8,
) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut index = match column {
        Some(Column::Index(i)) => Some(*i),
        _ => None,
    };
    let mut values = Vec::new();
    let mut first = true;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if first {
            first = false;
            if let Some(Column::Name(name)) = column {
                let pos = record
                    .iter()
                    .position(|f| f == name)
                    .ok_or_else(|| anyhow!("line {line}: no column named {name:?} in header"))?;
                index = Some(pos);
                continue;
            }
            let field = record.get(index.unwrap_or(0)).unwrap_or("");
            if field.parse::<f64>().is_err() {
                continue;
            }
        }
        let i = index.unwrap_or(0);
        let field = record
            .get(i)
            .ok_or_else(|| anyhow!("line {line}: missing column {i}"))?;
        let value: f64 = field
            .parse()
            .map_err(|_| anyhow!("line {line}: cannot parse {field:?} as a number"))?;
        if !value.is_finite() {
            bail!("line {line}: non-finite value {field:?}");
        }
        values.push(value);
    }
    Ok(values)
}

/// Writes a single-column series with a `value` header.
pub fn write_series(path: &Path, values: &[f64]) -> Result<()> {
    let mut out = String::with_capacity(values.len() * 20 + 6);
    out.push_str("value\n");
    for v in values {
        // Display for f64 is the shortest representation that round-trips
        out.push_str(&format!("{v}\n"));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}
