use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{AttrKind, TableError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    pub delimiter: u8,
    /// Cell texts (after trimming) treated as missing.
    pub missing_markers: Vec<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            missing_markers: vec!["?".to_string(), String::new()],
        }
    }
}

/// Which column holds the decision attribute.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DecisionColumn {
    #[default]
    Last,
    Named(String),
    Index(usize),
}

impl DecisionColumn {
    /// Interprets a command-line value: a header name, or a 0-based index
    /// when no header matches.
    pub fn from_arg(value: &str) -> Self {
        DecisionColumn::Named(value.to_string())
    }

    fn resolve(&self, headers: &[String]) -> Result<usize, TableError> {
        match self {
            DecisionColumn::Last => Ok(headers.len() - 1),
            DecisionColumn::Index(i) if *i < headers.len() => Ok(*i),
            DecisionColumn::Index(i) => Err(TableError::UnknownDecisionColumn(i.to_string())),
            DecisionColumn::Named(name) => {
                if let Some(i) = headers.iter().position(|h| h == name) {
                    return Ok(i);
                }
                match name.parse::<usize>() {
                    Ok(i) if i < headers.len() => Ok(i),
                    _ => Err(TableError::UnknownDecisionColumn(name.clone())),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Continuous(Vec<Option<f64>>),
    Categorical(Vec<Option<String>>),
}

impl ColumnData {
    pub fn kind(&self) -> AttrKind {
        match self {
            ColumnData::Continuous(_) => AttrKind::Continuous,
            ColumnData::Categorical(_) => AttrKind::Categorical,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ColumnData::Continuous(v) => v.len(),
            ColumnData::Categorical(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn missing_count(&self) -> usize {
        match self {
            ColumnData::Continuous(v) => v.iter().filter(|c| c.is_none()).count(),
            ColumnData::Categorical(v) => v.iter().filter(|c| c.is_none()).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawColumn {
    pub name: String,
    pub data: ColumnData,
}

/// A parsed but not yet preprocessed table. Cells may be missing.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub columns: Vec<RawColumn>,
    pub decision: usize,
}

impl RawTable {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.data.len())
    }
}

pub fn parse_csv(
    path: impl AsRef<Path>,
    decision: &DecisionColumn,
    options: &CsvOptions,
) -> Result<RawTable, TableError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv_reader(file, decision, options)
}

pub fn parse_csv_reader<R: Read>(
    reader: R,
    decision: &DecisionColumn,
    options: &CsvOptions,
) -> Result<RawTable, TableError> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);
    let headers: Vec<String> = rdr
        .headers()
        .map_err(map_csv_error)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() || headers.iter().all(|h| h.is_empty()) {
        return Err(TableError::Empty);
    }
    let mut cells: Vec<Vec<Option<String>>> = vec![Vec::new(); headers.len()];
    for record in rdr.records() {
        let record = record.map_err(map_csv_error)?;
        for (col, field) in record.iter().enumerate() {
            let field = field.trim();
            let value = if options.missing_markers.iter().any(|m| m == field) {
                None
            } else {
                Some(field.to_string())
            };
            cells[col].push(value);
        }
    }
    if cells[0].is_empty() {
        return Err(TableError::Empty);
    }
    if headers.len() < 2 {
        return Err(TableError::TooFewColumns);
    }
    let decision = decision.resolve(&headers)?;
    let columns = headers
        .into_iter()
        .zip(cells)
        .map(|(name, col)| RawColumn {
            name,
            data: infer_column(col),
        })
        .collect();
    Ok(RawTable { columns, decision })
}

fn map_csv_error(e: csv::Error) -> TableError {
    match e.kind() {
        csv::ErrorKind::UnequalLengths {
            pos,
            expected_len,
            len,
        } => TableError::Ragged {
            record: pos.as_ref().map_or(0, |p| p.record()),
            expected: *expected_len as usize,
            found: *len as usize,
        },
        csv::ErrorKind::Io(io) => TableError::Csv(io.to_string()),
        _ => TableError::Csv(e.to_string()),
    }
}

/// A column is continuous iff every present cell parses as a finite number
/// and at least one cell is present.
fn infer_column(cells: Vec<Option<String>>) -> ColumnData {
    let parsed: Option<Vec<Option<f64>>> = cells
        .iter()
        .map(|c| match c {
            None => Some(None),
            Some(s) => s.parse::<f64>().ok().filter(|v| v.is_finite()).map(Some),
        })
        .collect();
    match parsed {
        Some(values) if values.iter().any(Option::is_some) => ColumnData::Continuous(values),
        _ => ColumnData::Categorical(cells),
    }
}
