//! Random decision tables for property tests and benchmarks.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::approx::{prob_positive_region, Thresholds};
use crate::fraction::Fraction;
use crate::partition::{decision_partition, partition_by, AttrSet};
use crate::table::DecisionTable;

/// Upper bounds for randomly drawn table dimensions (each at least 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableShape {
    pub max_objects: usize,
    pub max_conditions: usize,
    pub max_values: u32,
    pub max_classes: u32,
}

impl TableShape {
    pub fn new(max_objects: usize, max_conditions: usize, max_values: u32) -> Self {
        TableShape {
            max_objects,
            max_conditions,
            max_values,
            max_classes: 3,
        }
    }
}

fn names(k: usize) -> Vec<String> {
    (1..=k)
        .map(|i| format!("a{i}"))
        .chain(std::iter::once("d".to_string()))
        .collect()
}

fn build(k: usize, rows: Vec<Vec<u32>>) -> DecisionTable {
    let names = names(k);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    DecisionTable::from_rows(&names, &rows).expect("generated rows are well formed")
}

fn random_conditions<R: Rng>(rng: &mut R, shape: &TableShape) -> (usize, Vec<Vec<u32>>) {
    let n = rng.gen_range(1..=shape.max_objects);
    let k = rng.gen_range(1..=shape.max_conditions);
    let arity: Vec<u32> = (0..k)
        .map(|_| rng.gen_range(1..=shape.max_values))
        .collect();
    let rows = (0..n)
        .map(|_| arity.iter().map(|&v| rng.gen_range(0..v)).collect())
        .collect();
    (k, rows)
}

/// A table with uniformly random cells.
pub fn random_table<R: Rng>(rng: &mut R, shape: &TableShape) -> DecisionTable {
    let (k, mut rows) = random_conditions(rng, shape);
    let m = rng.gen_range(1..=shape.max_classes);
    for row in &mut rows {
        row.push(rng.gen_range(0..m));
    }
    build(k, rows)
}

/// A table whose condition classes are all decision-pure, so the classical
/// positive region of `C` is `U`.
pub fn random_consistent_table<R: Rng>(rng: &mut R, shape: &TableShape) -> DecisionTable {
    let (k, mut rows) = random_conditions(rng, shape);
    let m = rng.gen_range(1..=shape.max_classes);
    let mut labels: HashMap<Vec<u32>, u32> = HashMap::new();
    for row in &mut rows {
        let d = *labels
            .entry(row.clone())
            .or_insert_with(|| rng.gen_range(0..m));
        row.push(d);
    }
    build(k, rows)
}

/// Thresholds with small denominators, so block probabilities often land
/// exactly on α or β.
pub fn random_thresholds<R: Rng>(rng: &mut R) -> Thresholds {
    let den = rng.gen_range(2..=12u64);
    let beta = rng.gen_range(0..den);
    let alpha = rng.gen_range(beta + 1..=den);
    Thresholds::new(
        Fraction::new(alpha, den).unwrap(),
        Fraction::new(beta, den).unwrap(),
    )
    .expect("0 <= beta < alpha <= 1 by construction")
}

/// Searches random tables for a subset `R ⊂ C` whose `(α,β)` positive
/// region is not contained in that of `C`.
pub fn find_positive_region_witness(
    seed: u64,
    tries: usize,
) -> Option<(DecisionTable, AttrSet, Thresholds)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let shape = TableShape::new(12, 4, 3);
    for _ in 0..tries {
        let table = random_table(&mut rng, &shape);
        let th = random_thresholds(&mut rng);
        let k = table.n_conditions();
        let dec = decision_partition(&table);
        let pos_c = prob_positive_region(&partition_by(&table, &table.all_conditions()), &dec, &th);
        for mask in 0..(1u64 << k) - 1 {
            let r = AttrSet::from_mask(k, mask);
            let pos_r = prob_positive_region(&partition_by(&table, &r), &dec, &th);
            if !pos_r.is_subset(&pos_c) {
                return Some((table, r, th));
            }
        }
    }
    None
}
