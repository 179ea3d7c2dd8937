use std::path::Path;

use super::input::{CsvOptions, DecisionColumn};
use super::TableError;

/// Default equal-frequency bin count.
pub const DEFAULT_BINS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessConfig {
    pub bins: usize,
    pub impute: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            bins: DEFAULT_BINS,
            impute: true,
        }
    }
}

impl PreprocessConfig {
    pub fn validate(&self) -> Result<(), TableError> {
        if self.bins < 2 {
            return Err(TableError::InvalidBins(self.bins));
        }
        Ok(())
    }
}

/// Everything needed to turn a CSV file into a [`super::DecisionTable`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DatasetConfig {
    pub csv: CsvOptions,
    pub decision_column: DecisionColumn,
    pub preprocess: PreprocessConfig,
}

impl DatasetConfig {
    /// Reads a flat `key = value` file. Recognised keys: `bins`, `impute`,
    /// `missing_markers` (comma separated), `decision_column`, `delimiter`.
    /// Blank lines and `#` comments are ignored.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, TableError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut config = DatasetConfig::default();
        config.apply_str(&text)?;
        Ok(config)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<(), TableError> {
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| TableError::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "bins" => {
                    self.preprocess.bins = value
                        .parse()
                        .map_err(|_| err(format!("bins must be an integer, got {value:?}")))?;
                }
                "impute" => {
                    self.preprocess.impute = match value.to_ascii_lowercase().as_str() {
                        "true" | "yes" | "1" | "on" => true,
                        "false" | "no" | "0" | "off" => false,
                        _ => return Err(err(format!("impute must be a boolean, got {value:?}"))),
                    };
                }
                "missing_markers" => {
                    self.csv.missing_markers =
                        value.split(',').map(|m| m.trim().to_string()).collect();
                }
                "decision_column" => {
                    self.decision_column = DecisionColumn::from_arg(value);
                }
                "delimiter" => {
                    self.csv.delimiter = match value {
                        "tab" | "\\t" => b'\t',
                        v if v.len() == 1 => v.as_bytes()[0],
                        _ => return Err(err(format!("delimiter must be one byte, got {value:?}"))),
                    };
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        self.preprocess.validate()
    }
}
