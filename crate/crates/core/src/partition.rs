//! Attribute subsets, object sets and the equivalence-class partitions
//! `U/R` induced by indiscernibility.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::fraction::Fraction;
use crate::table::DecisionTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions cover different universes ({0} vs {1} objects)")]
    UniverseMismatch(usize, usize),
    #[error("conditional probability of an empty block")]
    EmptyBlock,
}

/// A subset of the condition attributes, stored as a bitmask over ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AttrSet {
    bits: FixedBitSet,
}

impl AttrSet {
    pub fn empty(n_conditions: usize) -> Self {
        AttrSet {
            bits: FixedBitSet::with_capacity(n_conditions),
        }
    }

    pub fn full(n_conditions: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n_conditions);
        bits.insert_range(..);
        AttrSet { bits }
    }

    pub fn from_ids(n_conditions: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n_conditions);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Builds the subset selected by the low bits of `mask`.
    pub fn from_mask(n_conditions: usize, mask: u64) -> Self {
        Self::from_ids(
            n_conditions,
            (0..n_conditions.min(64)).filter(|i| mask >> i & 1 == 1),
        )
    }

    /// The number of condition attributes this set ranges over.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.bits.len(), "attribute {id} out of range");
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: usize) {
        self.bits.set(id, false);
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits.contains(id)
    }

    pub fn with(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    pub fn without(&self, id: usize) -> Self {
        let mut s = self.clone();
        s.remove(id);
        s
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &AttrSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &AttrSet) -> AttrSet {
        AttrSet {
            bits: &self.bits & &other.bits,
        }
    }

    /// Attributes in `universe` not in `self`.
    pub fn complement(&self) -> AttrSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        AttrSet { bits }
    }
}

/// Canonical order: by size, then lexicographically by member ids.
impl Ord for AttrSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for AttrSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of the universe `{0, …, |U|-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ObjectSet {
    bits: FixedBitSet,
}

impl ObjectSet {
    pub fn empty(n_objects: usize) -> Self {
        ObjectSet {
            bits: FixedBitSet::with_capacity(n_objects),
        }
    }

    pub fn full(n_objects: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n_objects);
        bits.insert_range(..);
        ObjectSet { bits }
    }

    pub fn from_indices(n_objects: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n_objects);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.bits.len(), "object {i} out of range");
        self.bits.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &ObjectSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection_count(&self, other: &ObjectSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ObjectSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The equivalence classes of an indiscernibility relation.
///
/// Blocks are non-empty, pairwise disjoint, cover the universe, hold their
/// members in ascending order, and are themselves ordered by smallest member.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Groups objects by a key; blocks come out in first-seen order, which
    /// is ascending smallest member.
    fn from_keys<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Self {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::new();
        for (object, key) in keys.enumerate() {
            let next = blocks.len();
            let b = *index.entry(key).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(object);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    /// Builds a partition from explicit blocks, normalising member and block
    /// order. Returns `None` unless the blocks are non-empty, disjoint and
    /// cover `0..n_objects`.
    pub fn from_blocks(n_objects: usize, blocks: Vec<Vec<usize>>) -> Option<Self> {
        let mut block_of = vec![usize::MAX; n_objects];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return None;
        }
        blocks.sort_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &o in b {
                if o >= n_objects || block_of[o] != usize::MAX {
                    return None;
                }
                block_of[o] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return None;
        }
        Some(Partition { blocks, block_of })
    }

    /// The finest partition Π₀ (all singletons).
    pub fn discrete(n_objects: usize) -> Self {
        Partition {
            blocks: (0..n_objects).map(|i| vec![i]).collect(),
            block_of: (0..n_objects).collect(),
        }
    }

    /// The coarsest partition Π₁ = {U}.
    pub fn single_block(n_objects: usize) -> Self {
        Partition {
            blocks: vec![(0..n_objects).collect()],
            block_of: vec![0; n_objects],
        }
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, object: usize) -> usize {
        self.block_of[object]
    }

    /// The block `[x]` containing `object`.
    pub fn class_of(&self, object: usize) -> &[usize] {
        &self.blocks[self.block_of[object]]
    }

    pub fn block_set(&self, block: usize) -> ObjectSet {
        ObjectSet::from_indices(self.universe(), self.blocks[block].iter().copied())
    }

    pub fn block_sets(&self) -> Vec<ObjectSet> {
        (0..self.blocks.len()).map(|b| self.block_set(b)).collect()
    }

    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(Vec::len)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.blocks.iter()).finish()
    }
}

/// `U/R`: two objects share a block iff they agree on every attribute in
/// `attrs`. The empty set yields Π₁.
pub fn partition_by(table: &DecisionTable, attrs: &AttrSet) -> Partition {
    debug_assert_eq!(attrs.universe(), table.n_conditions());
    let cols: Vec<&[u32]> = attrs.iter().map(|a| table.column(a)).collect();
    let n = table.n_objects();
    Partition::from_keys((0..n).map(|o| cols.iter().map(|c| c[o]).collect::<Vec<u32>>()))
}

/// `U/D`, with classes ordered by ascending decision code.
pub fn decision_partition(table: &DecisionTable) -> Partition {
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); table.n_classes()];
    for (o, &d) in table.decision_column().iter().enumerate() {
        classes[d as usize].push(o);
    }
    let block_of = table
        .decision_column()
        .iter()
        .map(|&d| d as usize)
        .collect();
    Partition {
        blocks: classes,
        block_of,
    }
}

/// The decision classes `Y₁…Y_M` as object sets, in decision-code order.
pub fn decision_classes(table: &DecisionTable) -> Vec<ObjectSet> {
    decision_partition(table).block_sets()
}

/// `P ≼ Q`: every block of `p` lies inside a block of `q`.
pub fn is_finer(p: &Partition, q: &Partition) -> Result<bool, PartitionError> {
    if p.universe() != q.universe() {
        return Err(PartitionError::UniverseMismatch(p.universe(), q.universe()));
    }
    Ok(p.blocks.iter().all(|block| {
        let target = q.block_of[block[0]];
        block.iter().all(|&o| q.block_of[o] == target)
    }))
}

/// `p(X | block) = |block ∩ X| / |block|`.
pub fn cond_prob(block: &ObjectSet, class: &ObjectSet) -> Result<Fraction, PartitionError> {
    let size = block.len();
    if size == 0 {
        return Err(PartitionError::EmptyBlock);
    }
    Ok(Fraction::ratio(block.intersection_count(class), size))
}

pub(crate) fn block_prob(block: &[usize], class: &ObjectSet) -> Fraction {
    let hits = block.iter().filter(|&&o| class.contains(o)).count();
    Fraction::ratio(hits, block.len())
}
