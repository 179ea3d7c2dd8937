//! Shared fixtures for unit tests.

use proptest::prelude::*;

use crate::approx::Thresholds;
use crate::fraction::Fraction;
use crate::partition::ObjectSet;
use crate::table::DecisionTable;

const NAMES: [&str; 7] = ["a1", "a2", "a3", "a4", "a5", "a6", "d"];

pub fn table1() -> DecisionTable {
    let rows = [
        [1, 1, 1, 1, 0, 0, 0],
        [0, 1, 1, 0, 1, 0, 0],
        [0, 1, 1, 1, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 1, 0],
        [0, 0, 1, 1, 1, 1, 1],
        [0, 0, 1, 1, 0, 1, 1],
        [1, 1, 0, 0, 1, 1, 0],
        [1, 1, 0, 0, 1, 1, 1],
        [1, 1, 0, 0, 0, 0, 1],
        [1, 1, 0, 0, 0, 0, 1],
    ];
    DecisionTable::from_rows(&NAMES, &rows.map(|r| r.to_vec())).unwrap()
}

pub fn table2() -> DecisionTable {
    let rows = [
        [1, 0, 0, 1, 1, 0, 0],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 1, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 1, 0, 1],
        [0, 1, 1, 1, 0, 0, 1],
        [1, 0, 0, 1, 0, 1, 0],
        [1, 0, 0, 1, 0, 1, 1],
        [1, 0, 0, 0, 1, 1, 0],
        [1, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 1, 0, 1],
        [1, 0, 0, 0, 1, 0, 1],
    ];
    DecisionTable::from_rows(&NAMES, &rows.map(|r| r.to_vec())).unwrap()
}

/// 1-based object labels `x₁…` to 0-based indices.
pub fn x(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|l| l - 1).collect()
}

pub fn os(n: usize, labels: &[usize]) -> ObjectSet {
    ObjectSet::from_indices(n, x(labels))
}

pub fn frac(s: &str) -> Fraction {
    Fraction::parse(s).unwrap()
}

pub fn arb_table(
    max_objects: usize,
    max_conditions: usize,
    max_values: u32,
) -> impl Strategy<Value = DecisionTable> {
    (1..=max_objects, 1..=max_conditions, 1..=3u32)
        .prop_flat_map(move |(n, k, m)| {
            let row = (proptest::collection::vec(0..max_values, k), 0..m);
            (Just(k), proptest::collection::vec(row, n))
        })
        .prop_map(|(k, rows)| {
            let rows: Vec<Vec<u32>> = rows
                .into_iter()
                .map(|(mut cond, d)| {
                    cond.push(d);
                    cond
                })
                .collect();
            let names: Vec<String> = (0..k)
                .map(|i| format!("a{}", i + 1))
                .chain(["d".to_string()])
                .collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            DecisionTable::from_rows(&names, &rows).unwrap()
        })
}

pub fn arb_thresholds() -> impl Strategy<Value = Thresholds> {
    (2u64..=12)
        .prop_flat_map(|den| (Just(den), 0..den))
        .prop_flat_map(|(den, beta)| (Just(den), Just(beta), beta + 1..=den))
        .prop_map(|(den, beta, alpha)| {
            Thresholds::new(
                Fraction::new(alpha, den).unwrap(),
                Fraction::new(beta, den).unwrap(),
            )
            .unwrap()
        })
}
