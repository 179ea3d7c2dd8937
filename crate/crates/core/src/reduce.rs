//! Attribute core, the addition-deletion and deletion reducers, the ranking
//! baseline and the exhaustive reduct oracle.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::approx::{ApproxSide, Thresholds};
use crate::fraction::Fraction;
use crate::measure::{Evaluator, GranularityKind, Measure};
use crate::partition::AttrSet;
use crate::table::DecisionTable;

/// Default cap on `|C|` for [`enumerate_all_reducts`].
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("k must lie in 1..={n_conditions}, got {k}")]
    RankOutOfRange { k: usize, n_conditions: usize },
    #[error("exhaustive search over {n_conditions} attributes exceeds the limit of {limit}")]
    LimitExceeded { n_conditions: usize, limit: usize },
    #[error("unknown target {0:?} (expected lower or upper)")]
    UnknownTarget(String),
}

/// Which distribution a reduct preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Lower,
    Upper,
}

impl Target {
    pub const ALL: [Target; 2] = [Target::Lower, Target::Upper];

    pub fn side(self) -> ApproxSide {
        match self {
            Target::Lower => ApproxSide::Lower,
            Target::Upper => ApproxSide::Upper,
        }
    }

    /// `η` for the lower target, `μ` for the upper one.
    pub fn fitness(self) -> Measure {
        match self {
            Target::Lower => Measure::Eta,
            Target::Upper => Measure::Mu,
        }
    }

    /// The granular fitness used to rank candidates.
    pub fn granular(self) -> Measure {
        match self {
            Target::Lower => Measure::GEta,
            Target::Upper => Measure::GMu,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Lower => "lower",
            Target::Upper => "upper",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = ReduceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lower" => Ok(Target::Lower),
            "upper" => Ok(Target::Upper),
            _ => Err(ReduceError::UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Add,
    Delete,
    /// Visited in the deletion pass but needed.
    Keep,
}

/// One step of a reducer run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub attribute: usize,
    pub significance: f64,
    /// `Δ` of the working set after the step.
    pub delta_after: Fraction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductResult {
    pub reduct: AttrSet,
    pub core: AttrSet,
    pub trace: Vec<Step>,
    pub target: Target,
    pub thresholds: Thresholds,
    pub kind: GranularityKind,
    pub verified: bool,
}

/// Shared state for reducer runs on one table, threshold pair and target.
#[derive(Debug, Clone)]
pub struct Reducer<'a> {
    eval: Evaluator<'a>,
    target: Target,
    delta_full: Fraction,
}

impl<'a> Reducer<'a> {
    pub fn new(table: &'a DecisionTable, thresholds: Thresholds, target: Target) -> Self {
        let eval = Evaluator::new(table, thresholds);
        let full = eval.partition(&table.all_conditions());
        let delta_full = match target {
            Target::Lower => eval.eta_of(&full),
            Target::Upper => eval.mu_of(&full),
        };
        Reducer {
            eval,
            target,
            delta_full,
        }
    }

    pub fn evaluator(&self) -> &Evaluator<'a> {
        &self.eval
    }

    pub fn target(&self) -> Target {
        self.target
    }

    fn n_conditions(&self) -> usize {
        self.eval.table().n_conditions()
    }

    /// `Δ(C)`.
    pub fn delta_full(&self) -> Fraction {
        self.delta_full
    }

    /// `Δ(R)` evaluated from the formula on `U/R`. For `R = ∅` this is the
    /// value over `Π₁`, not the fitness convention, so that sufficiency of
    /// the empty set is judged on the same footing as any other subset.
    pub fn delta(&self, attrs: &AttrSet) -> Fraction {
        let p = self.eval.partition(attrs);
        match self.target {
            Target::Lower => self.eval.eta_of(&p),
            Target::Upper => self.eval.mu_of(&p),
        }
    }

    pub fn consistent_by_delta(&self, attrs: &AttrSet) -> bool {
        self.delta(attrs) == self.delta_full
    }

    pub fn consistent_by_distribution(&self, attrs: &AttrSet) -> bool {
        let side = self.target.side();
        self.eval.distribution(attrs, side) == *self.eval.full_distribution(side)
    }

    /// Whether `attrs` preserves the target distribution. Both tests are run
    /// in debug builds and must agree.
    pub fn is_consistent_set(&self, attrs: &AttrSet) -> bool {
        let by_delta = self.consistent_by_delta(attrs);
        debug_assert_eq!(
            by_delta,
            self.consistent_by_distribution(attrs),
            "fitness and distribution tests disagree on {attrs:?}"
        );
        by_delta
    }

    /// Consistent, and every single-attribute removal is not.
    pub fn is_reduct(&self, attrs: &AttrSet) -> bool {
        self.is_consistent_set(attrs)
            && attrs
                .iter()
                .all(|a| !self.is_consistent_set(&attrs.without(a)))
    }

    pub fn core(&self) -> AttrSet {
        let full = self.eval.table().all_conditions();
        let ids =
            (0..self.n_conditions()).filter(|&a| self.delta(&full.without(a)) != self.delta_full);
        AttrSet::from_ids(self.n_conditions(), ids)
    }

    fn single_significance(&self, a: usize, kind: GranularityKind) -> f64 {
        self.eval.sig_single(a, self.target.granular(), kind)
    }

    /// Attributes of `attrs` in ascending single-attribute significance,
    /// ties by id.
    fn ascending(&self, attrs: &AttrSet, kind: GranularityKind) -> Vec<(usize, f64)> {
        let mut order: Vec<(usize, f64)> = attrs
            .iter()
            .map(|a| (a, self.single_significance(a, kind)))
            .collect();
        order.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
        order
    }

    fn deletion_pass(&self, reduct: &mut AttrSet, kind: GranularityKind, trace: &mut Vec<Step>) {
        for (a, sig) in self.ascending(reduct, kind) {
            let trial = reduct.without(a);
            let delta = self.delta(&trial);
            if delta == self.delta_full {
                *reduct = trial;
                trace.push(Step {
                    kind: StepKind::Delete,
                    attribute: a,
                    significance: sig,
                    delta_after: delta,
                });
            } else {
                trace.push(Step {
                    kind: StepKind::Keep,
                    attribute: a,
                    significance: sig,
                    delta_after: self.delta(reduct),
                });
            }
        }
    }

    fn finish(
        &self,
        reduct: AttrSet,
        core: AttrSet,
        trace: Vec<Step>,
        kind: GranularityKind,
    ) -> ReductResult {
        let verified = self.is_reduct(&reduct);
        ReductResult {
            reduct,
            core,
            trace,
            target: self.target,
            thresholds: self.eval.thresholds(),
            kind,
            verified,
        }
    }

    /// Grow from the core by best granular gain, then prune.
    pub fn addition_deletion(&self, kind: GranularityKind) -> ReductResult {
        let core = self.core();
        let mut reduct = core.clone();
        let mut trace = Vec::new();
        if self.delta(&reduct) == self.delta_full {
            return self.finish(reduct, core, trace, kind);
        }
        let measure = self.target.granular();
        while self.delta(&reduct) != self.delta_full {
            let mut best: Option<(usize, f64)> = None;
            for a in reduct.complement().iter() {
                let sig = self
                    .eval
                    .sig_add(a, &reduct, measure, kind)
                    .expect("candidate is outside R");
                if best.is_none_or(|(_, s)| sig > s) {
                    best = Some((a, sig));
                }
            }
            let (a, sig) = best.expect("Δ(C) is reached before candidates run out");
            reduct.insert(a);
            trace.push(Step {
                kind: StepKind::Add,
                attribute: a,
                significance: sig,
                delta_after: self.delta(&reduct),
            });
        }
        self.deletion_pass(&mut reduct, kind, &mut trace);
        self.finish(reduct, core, trace, kind)
    }

    /// Start from `C` and drop attributes in ascending significance.
    pub fn deletion(&self, kind: GranularityKind) -> ReductResult {
        let core = self.core();
        let mut reduct = self.eval.table().all_conditions();
        let mut trace = Vec::new();
        self.deletion_pass(&mut reduct, kind, &mut trace);
        self.finish(reduct, core, trace, kind)
    }

    /// The `k` attributes with the largest single-attribute significance.
    pub fn rbar(&self, kind: GranularityKind, k: usize) -> Result<AttrSet, ReduceError> {
        let n = self.n_conditions();
        if k == 0 || k > n {
            return Err(ReduceError::RankOutOfRange { k, n_conditions: n });
        }
        let mut order: Vec<(usize, f64)> = (0..n)
            .map(|a| (a, self.single_significance(a, kind)))
            .collect();
        order.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
        Ok(AttrSet::from_ids(
            n,
            order.into_iter().take(k).map(|(a, _)| a),
        ))
    }
}

pub fn is_consistent_set(
    table: &DecisionTable,
    attrs: &AttrSet,
    t: &Thresholds,
    target: Target,
) -> bool {
    Reducer::new(table, *t, target).is_consistent_set(attrs)
}

pub fn compute_core(table: &DecisionTable, t: &Thresholds, target: Target) -> AttrSet {
    Reducer::new(table, *t, target).core()
}

pub fn reduce_addition_deletion(
    table: &DecisionTable,
    t: &Thresholds,
    target: Target,
    kind: GranularityKind,
) -> ReductResult {
    Reducer::new(table, *t, target).addition_deletion(kind)
}

pub fn reduce_deletion(
    table: &DecisionTable,
    t: &Thresholds,
    target: Target,
    kind: GranularityKind,
) -> ReductResult {
    Reducer::new(table, *t, target).deletion(kind)
}

pub fn rbar_select(
    table: &DecisionTable,
    t: &Thresholds,
    target: Target,
    kind: GranularityKind,
    k: usize,
) -> Result<AttrSet, ReduceError> {
    Reducer::new(table, *t, target).rbar(kind, k)
}

/// Options for [`enumerate_all_reducts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub limit: usize,
    /// Skip subsets of inconsistent sets without evaluating them.
    pub prune: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            limit: DEFAULT_ORACLE_LIMIT,
            prune: true,
        }
    }
}

/// Every minimal subset that reproduces the full distribution vector,
/// found by checking all `2^|C|` subsets directly. Minimality is against
/// all proper subsets, not only single removals.
pub fn enumerate_all_reducts(
    table: &DecisionTable,
    t: &Thresholds,
    target: Target,
    options: OracleOptions,
) -> Result<Vec<AttrSet>, ReduceError> {
    let k = table.n_conditions();
    if k > options.limit || k >= 64 {
        return Err(ReduceError::LimitExceeded {
            n_conditions: k,
            limit: options.limit,
        });
    }
    let reducer = Reducer::new(table, *t, target);
    let size = 1usize << k;
    let full = size - 1;
    let mut consistent = vec![false; size];
    for mask in (0..size).rev() {
        if options.prune
            && mask != full
            && !(0..k).any(|b| mask & (1 << b) == 0 && consistent[mask | (1 << b)])
        {
            continue;
        }
        consistent[mask] = reducer.consistent_by_distribution(&AttrSet::from_mask(k, mask as u64));
    }
    // has_consistent_subset[m]: some subset of m (m included) is consistent
    let mut has_consistent_subset = consistent.clone();
    for mask in 0..size {
        if !has_consistent_subset[mask] {
            has_consistent_subset[mask] =
                (0..k).any(|b| mask & (1 << b) != 0 && has_consistent_subset[mask ^ (1 << b)]);
        }
    }
    let mut out: Vec<AttrSet> = (0..size)
        .filter(|&m| {
            consistent[m]
                && (0..k).all(|b| m & (1 << b) == 0 || !has_consistent_subset[m ^ (1 << b)])
        })
        .map(|m| AttrSet::from_mask(k, m as u64))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{frac, table1};
    use proptest::prelude::*;

    fn t64() -> Thresholds {
        Thresholds::new(frac("0.6"), frac("0.4")).unwrap()
    }

    fn set(ids: &[usize]) -> AttrSet {
        AttrSet::from_ids(6, ids.iter().map(|i| i - 1))
    }

    #[test]
    fn consistency_examples() {
        let t = table1();
        assert!(is_consistent_set(
            &t,
            &set(&[1, 3, 5, 6]),
            &t64(),
            Target::Lower
        ));
        assert!(is_consistent_set(
            &t,
            &t.all_conditions(),
            &t64(),
            Target::Lower
        ));
        assert!(!is_consistent_set(&t, &set(&[1, 3]), &t64(), Target::Lower));
        let r = Reducer::new(&t, t64(), Target::Lower);
        assert_eq!(r.delta_full(), Fraction::new(7, 22).unwrap());
        assert_eq!(r.delta(&set(&[1, 3])), Fraction::new(2, 22).unwrap());
    }

    #[test]
    fn core_table1_lower() {
        assert_eq!(compute_core(&table1(), &t64(), Target::Lower), set(&[1, 3]));
    }

    #[test]
    fn lower_reducts_table1() {
        let t = table1();
        let ad = reduce_addition_deletion(&t, &t64(), Target::Lower, GranularityKind::Ce);
        assert_eq!(ad.reduct, set(&[1, 3, 5, 6]));
        assert!(ad.verified);
        assert!(ad.core.is_subset(&ad.reduct));
        let adds: Vec<usize> = ad
            .trace
            .iter()
            .filter(|s| s.kind == StepKind::Add)
            .map(|s| s.attribute + 1)
            .collect();
        assert_eq!(adds, vec![6, 5]);
        let del = reduce_deletion(&t, &t64(), Target::Lower, GranularityKind::Ce);
        assert_eq!(del.reduct, set(&[1, 3, 4, 6]));
        assert!(del.verified);
    }

    #[test]
    fn duplicated_attributes_have_empty_core() {
        let rows = vec![
            vec![0, 0, 1, 1, 0],
            vec![1, 1, 0, 0, 1],
            vec![1, 1, 1, 1, 1],
            vec![0, 0, 0, 0, 0],
        ];
        let t = DecisionTable::from_rows(&["a", "a2", "b", "b2", "d"], &rows).unwrap();
        for target in Target::ALL {
            assert!(compute_core(&t, &t64(), target).is_empty());
            let del = reduce_deletion(&t, &t64(), target, GranularityKind::Ce);
            assert!(del.reduct.len() < 4);
            assert!(del.verified);
        }
    }

    #[test]
    fn one_attribute_tables() {
        let informative = DecisionTable::from_rows(&["a", "d"], &[vec![0, 0], vec![1, 1]]).unwrap();
        let r = reduce_addition_deletion(&informative, &t64(), Target::Lower, GranularityKind::Ce);
        assert_eq!(r.reduct, informative.all_conditions());
        assert_eq!(
            compute_core(&informative, &t64(), Target::Lower),
            informative.all_conditions()
        );
        let useless = DecisionTable::from_rows(&["a", "d"], &[vec![0, 0], vec![0, 1]]).unwrap();
        let r = reduce_addition_deletion(&useless, &t64(), Target::Lower, GranularityKind::Ce);
        assert!(r.reduct.is_empty());
        assert!(r.trace.is_empty());
        let all = enumerate_all_reducts(&useless, &t64(), Target::Lower, OracleOptions::default())
            .unwrap();
        assert_eq!(all, vec![useless.no_conditions()]);
        let all = enumerate_all_reducts(
            &informative,
            &t64(),
            Target::Lower,
            OracleOptions::default(),
        )
        .unwrap();
        assert_eq!(all, vec![informative.all_conditions()]);
    }

    #[test]
    fn rbar_bounds() {
        let t = table1();
        assert!(rbar_select(&t, &t64(), Target::Lower, GranularityKind::Ce, 0).is_err());
        assert!(rbar_select(&t, &t64(), Target::Lower, GranularityKind::Ce, 7).is_err());
        assert_eq!(
            rbar_select(&t, &t64(), Target::Lower, GranularityKind::Ce, 6).unwrap(),
            t.all_conditions()
        );
        let top = rbar_select(&t, &t64(), Target::Lower, GranularityKind::Ce, 1).unwrap();
        let ev = Evaluator::new(&t, t64());
        let best = (0..6)
            .map(|a| ev.sig_single(a, Measure::GEta, GranularityKind::Ce))
            .fold(f64::NEG_INFINITY, f64::max);
        let a = top.iter().next().unwrap();
        assert_eq!(ev.sig_single(a, Measure::GEta, GranularityKind::Ce), best);
        assert_eq!(
            rbar_select(&t, &t64(), Target::Lower, GranularityKind::Ce, 4)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn oracle_table1() {
        let t = table1();
        let all =
            enumerate_all_reducts(&t, &t64(), Target::Lower, OracleOptions::default()).unwrap();
        assert!(all.contains(&set(&[1, 3, 5, 6])));
        assert!(all.contains(&set(&[1, 3, 4, 6])));
        let mut meet = t.all_conditions();
        for r in &all {
            meet = meet.intersection(r);
        }
        assert_eq!(meet, compute_core(&t, &t64(), Target::Lower));
        let limited = OracleOptions {
            limit: 5,
            prune: true,
        };
        assert!(matches!(
            enumerate_all_reducts(&t, &t64(), Target::Lower, limited),
            Err(ReduceError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn target_parsing() {
        assert_eq!("Upper".parse::<Target>().unwrap(), Target::Upper);
        assert!("middle".parse::<Target>().is_err());
    }

    proptest! {
        #[test]
        fn reducers_are_deterministic_and_sound(
            table in crate::testing::arb_table(10, 5, 3),
            th in crate::testing::arb_thresholds(),
        ) {
            for target in Target::ALL {
                let r = Reducer::new(&table, th, target);
                let a = r.addition_deletion(GranularityKind::Kg);
                prop_assert_eq!(&a, &r.addition_deletion(GranularityKind::Kg));
                prop_assert!(a.verified);
                prop_assert!(a.core.is_subset(&a.reduct));
                let d = r.deletion(GranularityKind::Cg);
                prop_assert!(d.verified);
                let pruned = enumerate_all_reducts(&table, &th, target, OracleOptions::default()).unwrap();
                let full = enumerate_all_reducts(&table, &th, target, OracleOptions { prune: false, ..Default::default() }).unwrap();
                prop_assert_eq!(&pruned, &full);
                prop_assert!(full.contains(&a.reduct));
                prop_assert!(full.contains(&d.reduct));
            }
        }
    }
}
