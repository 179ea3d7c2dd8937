//! Distribution reducts of decision tables in the probabilistic rough set
//! model.
//!
//! A [`DecisionTable`] is partitioned by attribute subsets; the `(α,β)`
//! approximations of the decision classes under the full attribute set are
//! then compared with those under a subset through the fitness functions
//! `η` and `μ`. Reducts are minimal subsets that keep the lower (or upper)
//! distribution unchanged.
//!
//! ```
//! use prsreduct_core::{DecisionTable, Fraction, GranularityKind, Target, Thresholds};
//!
//! let rows = vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![1, 1, 1]];
//! let table = DecisionTable::from_rows(&["a", "b", "d"], &rows).unwrap();
//! let t = Thresholds::new(Fraction::new(3, 5).unwrap(), Fraction::new(2, 5).unwrap()).unwrap();
//! let result = prsreduct_core::reduce_addition_deletion(&table, &t, Target::Lower, GranularityKind::Ce);
//! assert_eq!(table.names_of(&result.reduct), vec!["a"]);
//! ```

pub mod approx;
pub mod fraction;
pub mod measure;
pub mod partition;
pub mod reduce;
pub mod synth;
pub mod table;

#[cfg(test)]
mod testing;

pub use approx::{
    distribution, lower_approx, positive_region, prob_lower, prob_positive_region, prob_upper,
    upper_approx, ApproxSide, DistributionVector, ThresholdError, Thresholds,
};
pub use fraction::{Fraction, FractionError};
pub use measure::{
    coarsest_granularity, expected_granularity, Evaluator, GranularityKind, Measure, MeasureError,
};
pub use partition::{
    decision_classes, decision_partition, partition_by, AttrSet, ObjectSet, Partition,
    PartitionError,
};
pub use reduce::{
    compute_core, enumerate_all_reducts, is_consistent_set, rbar_select, reduce_addition_deletion,
    reduce_deletion, OracleOptions, ReduceError, Reducer, ReductResult, Step, StepKind, Target,
};
pub use table::{DatasetConfig, DecisionTable, PreprocessConfig, TableError};
