//! Fitness functions and significance measures.
//!
//! `η` and `μ` re-approximate the full-attribute `(α,β)` distribution with
//! the classical approximations of a coarser partition; they are kept exact.
//! `Gη` and `Gμ` weight them by an expected granularity of the partition and
//! are only used for ranking, so they are plain `f64`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::approx::{
    distribution_of, lower_approx, upper_approx, ApproxSide, DistributionVector, Thresholds,
};
use crate::fraction::Fraction;
use crate::partition::{decision_classes, partition_by, AttrSet, ObjectSet, Partition};
use crate::table::DecisionTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("attribute {0} is already in the subset")]
    AlreadyPresent(usize),
    #[error("unknown granularity kind {0:?} (expected ce, kg or cg)")]
    UnknownKind(String),
    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),
}

/// Instances of the expected granularity of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GranularityKind {
    /// Co-entropy, `Σ |X|/|U| · log₂|X|`.
    Ce,
    /// Knowledge granulation, `Σ |X|² / |U|²`.
    Kg,
    /// Combination granulation, `Σ |X|/|U| · C(|X|,2)/C(|U|,2)`.
    Cg,
}

impl GranularityKind {
    pub const ALL: [GranularityKind; 3] = [
        GranularityKind::Ce,
        GranularityKind::Kg,
        GranularityKind::Cg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GranularityKind::Ce => "ce",
            GranularityKind::Kg => "kg",
            GranularityKind::Cg => "cg",
        }
    }
}

impl fmt::Display for GranularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GranularityKind {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ce" => Ok(GranularityKind::Ce),
            "kg" | "gk" => Ok(GranularityKind::Kg),
            "cg" => Ok(GranularityKind::Cg),
            _ => Err(MeasureError::UnknownKind(s.to_string())),
        }
    }
}

/// The four fitness functions. `η` and `Gη` grow as partitions refine,
/// `μ` and `Gμ` shrink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Measure {
    Eta,
    Mu,
    GEta,
    GMu,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Eta, Measure::Mu, Measure::GEta, Measure::GMu];

    pub fn is_increasing(self) -> bool {
        matches!(self, Measure::Eta | Measure::GEta)
    }

    pub fn is_granular(self) -> bool {
        matches!(self, Measure::GEta | Measure::GMu)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Eta => "eta",
            Measure::Mu => "mu",
            Measure::GEta => "geta",
            Measure::GMu => "gmu",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "eta" => Ok(Measure::Eta),
            "mu" => Ok(Measure::Mu),
            "geta" => Ok(Measure::GEta),
            "gmu" => Ok(Measure::GMu),
            _ => Err(MeasureError::UnknownMeasure(s.to_string())),
        }
    }
}

fn pairs(n: usize) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

/// `EG_m(π) = Σ m(X) · |X|/|U|` for the chosen granularity `m`.
pub fn expected_granularity(p: &Partition, kind: GranularityKind) -> f64 {
    let n = p.universe() as f64;
    match kind {
        GranularityKind::Ce => p
            .block_sizes()
            .filter(|&s| s > 1)
            .map(|s| s as f64 / n * (s as f64).log2())
            .sum(),
        GranularityKind::Kg => p.block_sizes().map(|s| (s * s) as f64).sum::<f64>() / (n * n),
        GranularityKind::Cg => {
            let total = pairs(p.universe());
            if total == 0.0 {
                // a single-object universe has no pairs
                return 0.0;
            }
            p.block_sizes()
                .map(|s| s as f64 / n * (pairs(s) / total))
                .sum()
        }
    }
}

/// `EG_m(Π₁)`, the granularity of the one-block partition of `n` objects.
pub fn coarsest_granularity(n_objects: usize, kind: GranularityKind) -> f64 {
    match kind {
        GranularityKind::Ce => (n_objects as f64).log2(),
        GranularityKind::Kg => 1.0,
        GranularityKind::Cg => {
            if n_objects > 1 {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Caches the decision classes and the full-attribute distributions for one
/// table and threshold pair, then evaluates fitness for any subset.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    table: &'a DecisionTable,
    thresholds: Thresholds,
    classes: Vec<ObjectSet>,
    lower_full: DistributionVector,
    upper_full: DistributionVector,
}

impl<'a> Evaluator<'a> {
    pub fn new(table: &'a DecisionTable, thresholds: Thresholds) -> Self {
        let classes = decision_classes(table);
        let full = partition_by(table, &table.all_conditions());
        let lower_full = distribution_of(&full, &classes, &thresholds, ApproxSide::Lower);
        let upper_full = distribution_of(&full, &classes, &thresholds, ApproxSide::Upper);
        Evaluator {
            table,
            thresholds,
            classes,
            lower_full,
            upper_full,
        }
    }

    pub fn table(&self) -> &'a DecisionTable {
        self.table
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    pub fn classes(&self) -> &[ObjectSet] {
        &self.classes
    }

    /// `apr_C^(α,β)` for the requested side.
    pub fn full_distribution(&self, side: ApproxSide) -> &DistributionVector {
        match side {
            ApproxSide::Lower => &self.lower_full,
            ApproxSide::Upper => &self.upper_full,
        }
    }

    pub fn partition(&self, attrs: &AttrSet) -> Partition {
        partition_by(self.table, attrs)
    }

    /// The `(α,β)` distribution vector of `U/attrs`.
    pub fn distribution(&self, attrs: &AttrSet, side: ApproxSide) -> DistributionVector {
        distribution_of(
            &self.partition(attrs),
            &self.classes,
            &self.thresholds,
            side,
        )
    }

    fn normaliser(&self) -> usize {
        self.table.n_objects() * self.classes.len()
    }

    /// `η` of a partition straight from the formula, without the `R = ∅`
    /// convention.
    pub fn eta_of(&self, p: &Partition) -> Fraction {
        let hits: usize = self
            .lower_full
            .sets
            .iter()
            .map(|s| lower_approx(p, s).len())
            .sum();
        Fraction::ratio(hits, self.normaliser())
    }

    /// `μ` of a partition straight from the formula.
    pub fn mu_of(&self, p: &Partition) -> Fraction {
        let hits: usize = self
            .upper_full
            .sets
            .iter()
            .map(|s| upper_approx(p, s).len())
            .sum();
        Fraction::ratio(hits, self.normaliser())
    }

    /// `η_R^(α,β)`; defined as 0 for `R = ∅`.
    pub fn eta(&self, attrs: &AttrSet) -> Fraction {
        if attrs.is_empty() {
            return Fraction::ZERO;
        }
        self.eta_of(&self.partition(attrs))
    }

    /// `μ_R^(α,β)`; defined as 1 for `R = ∅`.
    pub fn mu(&self, attrs: &AttrSet) -> Fraction {
        if attrs.is_empty() {
            return Fraction::ONE;
        }
        self.mu_of(&self.partition(attrs))
    }

    fn coarsest(&self, kind: GranularityKind) -> f64 {
        coarsest_granularity(self.table.n_objects(), kind)
    }

    /// `Gη = EG(Π₁) − (1 − η)·EG(U/R)`; 0 for `R = ∅`.
    pub fn g_eta(&self, attrs: &AttrSet, kind: GranularityKind) -> f64 {
        if attrs.is_empty() {
            return 0.0;
        }
        let p = self.partition(attrs);
        let eta = self.eta_of(&p);
        self.coarsest(kind) - (1.0 - eta.to_f64()) * expected_granularity(&p, kind)
    }

    /// `Gμ = μ·EG(U/R)`; `EG(Π₁)` for `R = ∅`.
    pub fn g_mu(&self, attrs: &AttrSet, kind: GranularityKind) -> f64 {
        if attrs.is_empty() {
            return self.coarsest(kind);
        }
        let p = self.partition(attrs);
        self.mu_of(&p).to_f64() * expected_granularity(&p, kind)
    }

    /// Value of `measure` on `attrs`. `kind` is ignored for `η`/`μ`.
    pub fn fitness(&self, attrs: &AttrSet, measure: Measure, kind: GranularityKind) -> f64 {
        match measure {
            Measure::Eta => self.eta(attrs).to_f64(),
            Measure::Mu => self.mu(attrs).to_f64(),
            Measure::GEta => self.g_eta(attrs, kind),
            Measure::GMu => self.g_mu(attrs, kind),
        }
    }

    /// Gain from adding `a` to `attrs`, oriented so that larger is better:
    /// `f(R ∪ {a}) − f(R)` for `η`/`Gη`, `f(R) − f(R ∪ {a})` for `μ`/`Gμ`.
    pub fn sig_add(
        &self,
        a: usize,
        attrs: &AttrSet,
        measure: Measure,
        kind: GranularityKind,
    ) -> Result<f64, MeasureError> {
        if attrs.contains(a) {
            return Err(MeasureError::AlreadyPresent(a));
        }
        let grown = attrs.with(a);
        let gain = match measure {
            Measure::Eta => self.eta(&grown).diff_f64(&self.eta(attrs)),
            Measure::Mu => self.mu(attrs).diff_f64(&self.mu(&grown)),
            Measure::GEta => self.g_eta(&grown, kind) - self.g_eta(attrs, kind),
            Measure::GMu => self.g_mu(attrs, kind) - self.g_mu(&grown, kind),
        };
        Ok(gain)
    }

    /// Significance of a single attribute on its own: `η_{a}`, `1 − μ_{a}`,
    /// `Gη_{a}` or `EG(Π₁) − Gμ_{a}`.
    pub fn sig_single(&self, a: usize, measure: Measure, kind: GranularityKind) -> f64 {
        let single = AttrSet::from_ids(self.table.n_conditions(), [a]);
        match measure {
            Measure::Eta => self.eta(&single).to_f64(),
            Measure::Mu => Fraction::ONE.diff_f64(&self.mu(&single)),
            Measure::GEta => self.g_eta(&single, kind),
            Measure::GMu => self.coarsest(kind) - self.g_mu(&single, kind),
        }
    }
}

pub fn eta(table: &DecisionTable, attrs: &AttrSet, t: &Thresholds) -> Fraction {
    Evaluator::new(table, *t).eta(attrs)
}

pub fn mu(table: &DecisionTable, attrs: &AttrSet, t: &Thresholds) -> Fraction {
    Evaluator::new(table, *t).mu(attrs)
}

pub fn g_eta(table: &DecisionTable, attrs: &AttrSet, t: &Thresholds, kind: GranularityKind) -> f64 {
    Evaluator::new(table, *t).g_eta(attrs, kind)
}

pub fn g_mu(table: &DecisionTable, attrs: &AttrSet, t: &Thresholds, kind: GranularityKind) -> f64 {
    Evaluator::new(table, *t).g_mu(attrs, kind)
}

pub fn sig_add(
    a: usize,
    attrs: &AttrSet,
    table: &DecisionTable,
    t: &Thresholds,
    measure: Measure,
    kind: GranularityKind,
) -> Result<f64, MeasureError> {
    Evaluator::new(table, *t).sig_add(a, attrs, measure, kind)
}

pub fn sig_single(
    a: usize,
    table: &DecisionTable,
    t: &Thresholds,
    measure: Measure,
    kind: GranularityKind,
) -> f64 {
    Evaluator::new(table, *t).sig_single(a, measure, kind)
}
