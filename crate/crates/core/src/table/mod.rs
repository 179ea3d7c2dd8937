//! Decision tables: CSV ingestion, preprocessing and the immutable
//! [`DecisionTable`] every other module reads from.

mod config;
mod input;
mod preprocess;

pub use config::{DatasetConfig, PreprocessConfig, DEFAULT_BINS};
pub use input::{
    parse_csv, parse_csv_reader, ColumnData, CsvOptions, DecisionColumn, RawColumn, RawTable,
};
pub use preprocess::{discretize_equal_frequency, equal_frequency_cuts, impute_missing};

use std::path::Path;

use thiserror::Error;

use crate::partition::AttrSet;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("I/O error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(String),
    #[error("empty input: a header row and at least one data row are required")]
    Empty,
    #[error("record {record} has {found} fields, header has {expected}")]
    Ragged {
        record: u64,
        expected: usize,
        found: usize,
    },
    #[error("decision column {0:?} not found")]
    UnknownDecisionColumn(String),
    #[error("at least one condition column and one decision column are required")]
    TooFewColumns,
    #[error("column {0:?} has no present values to impute from")]
    AllMissing(String),
    #[error("column {0:?} still has missing cells (enable imputation)")]
    MissingCells(String),
    #[error("bin count must be at least 2, got {0}")]
    InvalidBins(usize),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid table: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrKind {
    Categorical,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrRole {
    Condition,
    Decision,
}

/// Column metadata. Condition attributes carry ids `0..|C|`; the decision
/// attribute comes last with id `|C|`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AttributeMeta {
    pub id: usize,
    pub name: String,
    pub kind: AttrKind,
    pub role: AttrRole,
}

/// An immutable, fully coded decision table.
///
/// Every cell is a category code `< labels(attr).len()`, and every
/// attribute's codes are contiguous from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    n_objects: usize,
    attrs: Vec<AttributeMeta>,
    // column-major; the decision column is last
    columns: Vec<Vec<u32>>,
    labels: Vec<Vec<String>>,
}

impl DecisionTable {
    /// Builds a table from per-column codes and labels.
    ///
    /// `columns` and `labels` list the condition attributes first and the
    /// decision attribute last. Codes are re-packed so that each column uses
    /// exactly the codes `0..k` (unused labels are dropped).
    pub fn from_columns(
        names: Vec<String>,
        kinds: Vec<AttrKind>,
        columns: Vec<Vec<u32>>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, TableError> {
        let width = columns.len();
        if width < 2 {
            return Err(TableError::TooFewColumns);
        }
        if names.len() != width || kinds.len() != width || labels.len() != width {
            return Err(TableError::Invalid(
                "names, kinds, columns and labels must have equal length".into(),
            ));
        }
        let n_objects = columns[0].len();
        if n_objects == 0 {
            return Err(TableError::Empty);
        }
        let mut packed_columns = Vec::with_capacity(width);
        let mut packed_labels = Vec::with_capacity(width);
        for (col, (codes, col_labels)) in columns.into_iter().zip(labels).enumerate() {
            if codes.len() != n_objects {
                return Err(TableError::Invalid(format!(
                    "column {} has {} cells, expected {}",
                    names[col],
                    codes.len(),
                    n_objects
                )));
            }
            let mut used = vec![false; col_labels.len()];
            for &c in &codes {
                let slot = used.get_mut(c as usize).ok_or_else(|| {
                    TableError::Invalid(format!("code {c} out of range in column {}", names[col]))
                })?;
                *slot = true;
            }
            let mut remap = vec![u32::MAX; col_labels.len()];
            let mut kept = Vec::new();
            for (old, label) in col_labels.into_iter().enumerate() {
                if used[old] {
                    remap[old] = kept.len() as u32;
                    kept.push(label);
                }
            }
            packed_columns.push(codes.iter().map(|&c| remap[c as usize]).collect());
            packed_labels.push(kept);
        }
        let n_cond = width - 1;
        let attrs = names
            .into_iter()
            .zip(kinds)
            .enumerate()
            .map(|(id, (name, kind))| AttributeMeta {
                id,
                name,
                kind,
                role: if id == n_cond {
                    AttrRole::Decision
                } else {
                    AttrRole::Condition
                },
            })
            .collect();
        Ok(DecisionTable {
            n_objects,
            attrs,
            columns: packed_columns,
            labels: packed_labels,
        })
    }

    /// Builds a categorical table from row-major codes; the last entry of
    /// each row is the decision. Labels are the decimal codes.
    pub fn from_rows(names: &[&str], rows: &[Vec<u32>]) -> Result<Self, TableError> {
        let width = names.len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(TableError::Invalid("row width differs from header".into()));
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); width];
        for row in rows {
            for (col, &v) in row.iter().enumerate() {
                columns[col].push(v);
            }
        }
        let labels = columns
            .iter()
            .map(|c| {
                let max = c.iter().copied().max().unwrap_or(0);
                (0..=max).map(|v| v.to_string()).collect()
            })
            .collect();
        Self::from_columns(
            names.iter().map(|s| s.to_string()).collect(),
            vec![AttrKind::Categorical; width],
            columns,
            labels,
        )
    }

    /// Runs the full ingestion pipeline: parse, impute (if enabled), discretize.
    pub fn load(path: impl AsRef<Path>, config: &DatasetConfig) -> Result<Self, TableError> {
        let raw = parse_csv(path, &config.decision_column, &config.csv)?;
        Self::from_raw(raw, &config.preprocess)
    }

    pub fn from_raw(raw: RawTable, config: &PreprocessConfig) -> Result<Self, TableError> {
        let raw = if config.impute {
            impute_missing(raw)?
        } else {
            raw
        };
        discretize_equal_frequency(&raw, config)
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_conditions(&self) -> usize {
        self.attrs.len() - 1
    }

    /// Number of decision classes `|U/D|`.
    pub fn n_classes(&self) -> usize {
        self.labels[self.n_conditions()].len()
    }

    pub fn attributes(&self) -> &[AttributeMeta] {
        &self.attrs
    }

    pub fn condition(&self, id: usize) -> &AttributeMeta {
        assert!(id < self.n_conditions(), "not a condition attribute: {id}");
        &self.attrs[id]
    }

    pub fn decision_attr(&self) -> &AttributeMeta {
        &self.attrs[self.n_conditions()]
    }

    pub fn condition_names(&self) -> impl Iterator<Item = &str> {
        self.attrs[..self.n_conditions()]
            .iter()
            .map(|a| a.name.as_str())
    }

    pub fn column(&self, attr: usize) -> &[u32] {
        &self.columns[attr]
    }

    pub fn decision_column(&self) -> &[u32] {
        &self.columns[self.n_conditions()]
    }

    pub fn value(&self, object: usize, attr: usize) -> u32 {
        self.columns[attr][object]
    }

    pub fn decision(&self, object: usize) -> u32 {
        self.columns[self.n_conditions()][object]
    }

    /// Code-to-label dictionary of an attribute.
    pub fn labels(&self, attr: usize) -> &[String] {
        &self.labels[attr]
    }

    pub fn all_conditions(&self) -> AttrSet {
        AttrSet::full(self.n_conditions())
    }

    pub fn no_conditions(&self) -> AttrSet {
        AttrSet::empty(self.n_conditions())
    }

    /// Looks up condition attributes by name.
    pub fn attr_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttrSet, TableError> {
        let mut set = self.no_conditions();
        for name in names {
            let id = self.attrs[..self.n_conditions()]
                .iter()
                .position(|a| a.name == name.as_ref())
                .ok_or_else(|| {
                    TableError::Invalid(format!("no condition attribute {:?}", name.as_ref()))
                })?;
            set.insert(id);
        }
        Ok(set)
    }

    /// Attribute names of a set, in id order.
    pub fn names_of(&self, set: &AttrSet) -> Vec<String> {
        set.iter().map(|a| self.attrs[a].name.clone()).collect()
    }
}
