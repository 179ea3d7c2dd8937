use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::input::{ColumnData, RawColumn, RawTable};
use super::{AttrKind, DecisionTable, PreprocessConfig, TableError};

/// Fills missing cells: continuous columns with the mean of the present
/// values, categorical columns with the mode (ties go to the label that
/// sorts first, i.e. the smallest category code).
pub fn impute_missing(mut raw: RawTable) -> Result<RawTable, TableError> {
    for col in &mut raw.columns {
        if col.data.missing_count() == 0 {
            continue;
        }
        match &mut col.data {
            ColumnData::Continuous(values) => {
                let present: Vec<f64> = values.iter().flatten().copied().collect();
                if present.is_empty() {
                    return Err(TableError::AllMissing(col.name.clone()));
                }
                let mean = present.iter().sum::<f64>() / present.len() as f64;
                for v in values.iter_mut().filter(|v| v.is_none()) {
                    *v = Some(mean);
                }
            }
            ColumnData::Categorical(values) => {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for v in values.iter().flatten() {
                    *counts.entry(v.as_str()).or_default() += 1;
                }
                if counts.is_empty() {
                    return Err(TableError::AllMissing(col.name.clone()));
                }
                let mut labels: Vec<&str> = counts.keys().copied().collect();
                sort_labels(&mut labels);
                let best = labels.iter().map(|l| counts[l]).max().unwrap_or(0);
                let mode = labels
                    .into_iter()
                    .find(|l| counts[l] == best)
                    .map(str::to_string)
                    .unwrap_or_default();
                for v in values.iter_mut().filter(|v| v.is_none()) {
                    *v = Some(mode.clone());
                }
            }
        }
    }
    Ok(raw)
}

/// Category order: numeric when every label is a number, else lexicographic.
fn sort_labels(labels: &mut [&str]) {
    let numeric: Option<Vec<f64>> = labels.iter().map(|l| l.parse::<f64>().ok()).collect();
    if numeric.is_some() {
        labels.sort_by(|a, b| {
            let (x, y) = (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap());
            x.partial_cmp(&y)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.cmp(b))
        });
    } else {
        labels.sort();
    }
}

/// Cut points for equal-frequency discretization of `values` into at most
/// `bins` intervals.
///
/// Cuts sit at midpoints between adjacent distinct values, so equal values
/// always land in the same bin. With at most `bins` distinct values every
/// distinct value gets its own bin. Otherwise exactly `bins` intervals are
/// formed, choosing the cuts that minimise `Σ |count − n/bins|` over the
/// intervals. Among optimal placements the last cut is taken as early as
/// possible, then the one before it, and so on.
pub fn equal_frequency_cuts(values: &[f64], bins: usize) -> Vec<f64> {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match groups.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => groups.push((v, 1)),
        }
    }
    if groups.len() <= 1 {
        return Vec::new();
    }
    // cut index s sits between groups s-1 and s
    let midpoint = |s: usize| (groups[s - 1].0 + groups[s].0) / 2.0;
    let g = groups.len();
    if g <= bins {
        return (1..g).map(midpoint).collect();
    }
    let n = values.len();
    let mut prefix = vec![0usize; g + 1];
    for (i, &(_, c)) in groups.iter().enumerate() {
        prefix[i + 1] = prefix[i] + c;
    }
    // deviations scaled by `bins` to stay in integers
    let cost = |from: usize, to: usize| ((prefix[to] - prefix[from]) * bins).abs_diff(n);
    // best[b][e]: least cost of splitting groups[..e] into b bins
    let mut best = vec![vec![usize::MAX; g + 1]; bins + 1];
    best[0][0] = 0;
    for b in 1..=bins {
        for e in b..=g {
            best[b][e] = (b - 1..e)
                .filter(|&s| best[b - 1][s] != usize::MAX)
                .map(|s| best[b - 1][s] + cost(s, e))
                .min()
                .unwrap_or(usize::MAX);
        }
    }
    let mut cuts = Vec::with_capacity(bins - 1);
    let mut end = g;
    for b in (2..=bins).rev() {
        let s = (b - 1..end)
            .find(|&s| {
                best[b - 1][s] != usize::MAX && best[b - 1][s] + cost(s, end) == best[b][end]
            })
            .expect("an optimal split exists");
        cuts.push(s);
        end = s;
    }
    cuts.reverse();
    cuts.into_iter().map(midpoint).collect()
}

fn format_value(v: f64) -> String {
    format!("{v}")
}

fn bin_labels(values: &[f64], cuts: &[f64]) -> Vec<String> {
    let mut members: Vec<Vec<f64>> = vec![Vec::new(); cuts.len() + 1];
    for &v in values {
        members[bin_of(v, cuts)].push(v);
    }
    members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let first = m.first().copied();
            if let Some(f) = first {
                if m.iter().all(|&v| v == f) {
                    return format_value(f);
                }
            }
            let lo = if i == 0 {
                "-inf".to_string()
            } else {
                format_value(cuts[i - 1])
            };
            let hi = if i == cuts.len() {
                "inf".to_string()
            } else {
                format_value(cuts[i])
            };
            format!("({lo},{hi}]")
        })
        .collect()
}

fn bin_of(v: f64, cuts: &[f64]) -> usize {
    cuts.partition_point(|&c| c < v)
}

/// Codes a complete raw table. Continuous condition columns are
/// discretized; categorical columns and the decision column are coded by
/// category order.
pub fn discretize_equal_frequency(
    raw: &RawTable,
    config: &PreprocessConfig,
) -> Result<DecisionTable, TableError> {
    config.validate()?;
    if raw.n_rows() == 0 {
        return Err(TableError::Empty);
    }
    if raw.columns.len() < 2 {
        return Err(TableError::TooFewColumns);
    }
    for col in &raw.columns {
        if col.data.missing_count() > 0 {
            return Err(TableError::MissingCells(col.name.clone()));
        }
    }
    // conditions in file order, decision last
    let order: Vec<usize> = (0..raw.columns.len())
        .filter(|&c| c != raw.decision)
        .chain(std::iter::once(raw.decision))
        .collect();
    let mut names = Vec::new();
    let mut kinds = Vec::new();
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for &c in &order {
        let col = &raw.columns[c];
        let is_decision = c == raw.decision;
        let (codes, dict) = code_column(col, config.bins, is_decision);
        names.push(col.name.clone());
        kinds.push(col.data.kind());
        columns.push(codes);
        labels.push(dict);
    }
    DecisionTable::from_columns(names, kinds, columns, labels)
}

fn code_column(col: &RawColumn, bins: usize, is_decision: bool) -> (Vec<u32>, Vec<String>) {
    match &col.data {
        ColumnData::Continuous(values) => {
            let values: Vec<f64> = values.iter().map(|v| v.expect("imputed")).collect();
            if is_decision {
                // pass through: one code per distinct value
                let cuts = equal_frequency_cuts(&values, usize::MAX);
                let codes = values.iter().map(|&v| bin_of(v, &cuts) as u32).collect();
                (codes, bin_labels(&values, &cuts))
            } else {
                let cuts = equal_frequency_cuts(&values, bins);
                let codes = values.iter().map(|&v| bin_of(v, &cuts) as u32).collect();
                (codes, bin_labels(&values, &cuts))
            }
        }
        ColumnData::Categorical(values) => {
            let mut dict: Vec<&str> = values
                .iter()
                .map(|v| v.as_deref().expect("imputed"))
                .collect();
            sort_labels(&mut dict);
            let mut uniq: Vec<&str> = Vec::new();
            for l in dict {
                if uniq.last() != Some(&l) {
                    uniq.push(l);
                }
            }
            let codes = values
                .iter()
                .map(|v| {
                    uniq.iter()
                        .position(|u| *u == v.as_deref().unwrap())
                        .unwrap() as u32
                })
                .collect();
            (codes, uniq.into_iter().map(str::to_string).collect())
        }
    }
}

impl AttrKind {
    pub fn is_continuous(self) -> bool {
        self == AttrKind::Continuous
    }
}
