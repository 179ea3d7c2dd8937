//! Classical and (α,β) probabilistic approximations, positive regions, and
//! the distribution vectors that distribution reducts preserve.

use std::fmt;

use thiserror::Error;

use crate::fraction::Fraction;
use crate::partition::{block_prob, decision_classes, partition_by, AttrSet, ObjectSet, Partition};
use crate::table::DecisionTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("thresholds must satisfy 0 <= beta < alpha <= 1, got alpha={alpha}, beta={beta}")]
pub struct ThresholdError {
    pub alpha: Fraction,
    pub beta: Fraction,
}

/// A validated `(α, β)` pair with `0 ≤ β < α ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Thresholds {
    alpha: Fraction,
    beta: Fraction,
}

impl Thresholds {
    pub fn new(alpha: Fraction, beta: Fraction) -> Result<Self, ThresholdError> {
        if beta < alpha && alpha <= Fraction::ONE {
            Ok(Thresholds { alpha, beta })
        } else {
            Err(ThresholdError { alpha, beta })
        }
    }

    /// α = 1, β = 0: the Pawlak approximations.
    pub fn pawlak() -> Self {
        Thresholds {
            alpha: Fraction::ONE,
            beta: Fraction::ZERO,
        }
    }

    pub fn alpha(&self) -> Fraction {
        self.alpha
    }

    pub fn beta(&self) -> Fraction {
        self.beta
    }
}

impl fmt::Display for Thresholds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Which side of the approximation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproxSide {
    Lower,
    Upper,
}

/// Per-decision-class approximations `(apr(Y₁), …, apr(Y_M))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionVector {
    pub side: ApproxSide,
    pub sets: Vec<ObjectSet>,
}

fn union_of_blocks(p: &Partition, mut keep: impl FnMut(&[usize]) -> bool) -> ObjectSet {
    let mut out = ObjectSet::empty(p.universe());
    for block in p.blocks() {
        if keep(block) {
            for &o in block {
                out.insert(o);
            }
        }
    }
    out
}

/// Union of the blocks fully contained in `x_set`.
pub fn lower_approx(p: &Partition, x_set: &ObjectSet) -> ObjectSet {
    union_of_blocks(p, |b| b.iter().all(|&o| x_set.contains(o)))
}

/// Union of the blocks meeting `x_set`.
pub fn upper_approx(p: &Partition, x_set: &ObjectSet) -> ObjectSet {
    union_of_blocks(p, |b| b.iter().any(|&o| x_set.contains(o)))
}

/// Blocks whose conditional probability reaches α.
pub fn prob_lower(p: &Partition, class: &ObjectSet, t: &Thresholds) -> ObjectSet {
    union_of_blocks(p, |b| block_prob(b, class) >= t.alpha)
}

/// Blocks whose conditional probability exceeds β.
pub fn prob_upper(p: &Partition, class: &ObjectSet, t: &Thresholds) -> ObjectSet {
    union_of_blocks(p, |b| block_prob(b, class) > t.beta)
}

/// `POS_P(D)`: union of the classical lower approximations of the classes.
pub fn positive_region(p: &Partition, dec: &Partition) -> ObjectSet {
    let mut out = ObjectSet::empty(p.universe());
    for class in dec.block_sets() {
        out.union_with(&lower_approx(p, &class));
    }
    out
}

/// `POS_P^(α,β)(D)`.
pub fn prob_positive_region(p: &Partition, dec: &Partition, t: &Thresholds) -> ObjectSet {
    let mut out = ObjectSet::empty(p.universe());
    for class in dec.block_sets() {
        out.union_with(&prob_lower(p, &class, t));
    }
    out
}

/// The `(α,β)` distribution vector of `U/attrs` against each decision class.
pub fn distribution(
    table: &DecisionTable,
    attrs: &AttrSet,
    t: &Thresholds,
    side: ApproxSide,
) -> DistributionVector {
    let p = partition_by(table, attrs);
    distribution_of(&p, &decision_classes(table), t, side)
}

pub(crate) fn distribution_of(
    p: &Partition,
    classes: &[ObjectSet],
    t: &Thresholds,
    side: ApproxSide,
) -> DistributionVector {
    let sets = classes
        .iter()
        .map(|y| match side {
            ApproxSide::Lower => prob_lower(p, y, t),
            ApproxSide::Upper => prob_upper(p, y, t),
        })
        .collect();
    DistributionVector { side, sets }
}
