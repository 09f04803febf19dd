//! Finite sets of occupied spots and their block decomposition.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

/// A maximal run `lo..=hi` of consecutive occupied spots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub lo: i64,
    pub hi: i64,
}

impl Block {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty block {lo}..={hi}");
        Block { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn spots(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Free spot adjacent on the left.
    pub fn left_gap(&self) -> i64 {
        self.lo - 1
    }

    /// Free spot adjacent on the right.
    pub fn right_gap(&self) -> i64 {
        self.hi + 1
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "{{{}..{}}}", self.lo, self.hi)
        }
    }
}

/// A finite set of integers, kept sorted together with its blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct SpotSet {
    spots: Vec<i64>,
    blocks: Vec<Block>,
}

impl SpotSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The interval `lo..=hi` (empty when `lo > hi`).
    pub fn interval(lo: i64, hi: i64) -> Self {
        (lo..=hi).collect()
    }

    pub fn len(&self) -> usize {
        self.spots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spots.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.spots.binary_search(&x).is_ok()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.spots
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.spots.iter().copied()
    }

    pub fn min(&self) -> Option<i64> {
        self.spots.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.spots.last().copied()
    }

    /// Blocks in increasing order; consecutive blocks are separated by at
    /// least one free spot.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The block containing `x`, if `x` is occupied.
    pub fn block_of(&self, x: i64) -> Option<Block> {
        let idx = self.blocks.partition_point(|b| b.hi < x);
        self.blocks.get(idx).copied().filter(|b| b.lo <= x)
    }

    /// True when the set is exactly `{1, ..., n}` for `n = len()`.
    pub fn is_initial_segment(&self) -> bool {
        self.spots.iter().zip(1..).all(|(&s, k)| s == k)
    }

    /// Inserts `x`, merging blocks as needed. Returns false if `x` was present.
    pub fn insert(&mut self, x: i64) -> bool {
        let pos = match self.spots.binary_search(&x) {
            Ok(_) => return false,
            Err(pos) => pos,
        };
        self.spots.insert(pos, x);
        let idx = self.blocks.partition_point(|b| b.lo < x);
        let joins_left = idx > 0 && self.blocks[idx - 1].hi + 1 == x;
        let joins_right = idx < self.blocks.len() && self.blocks[idx].lo == x + 1;
        match (joins_left, joins_right) {
            (true, true) => {
                self.blocks[idx - 1].hi = self.blocks[idx].hi;
                self.blocks.remove(idx);
            }
            (true, false) => self.blocks[idx - 1].hi = x,
            (false, true) => self.blocks[idx].lo = x,
            (false, false) => self.blocks.insert(idx, Block { lo: x, hi: x }),
        }
        true
    }

    pub fn is_subset(&self, other: &SpotSet) -> bool {
        self.spots.iter().all(|&s| other.contains(s))
    }
}

impl FromIterator<i64> for SpotSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut set = SpotSet::new();
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl From<Vec<i64>> for SpotSet {
    fn from(v: Vec<i64>) -> Self {
        v.into_iter().collect()
    }
}

impl From<SpotSet> for Vec<i64> {
    fn from(s: SpotSet) -> Self {
        s.spots
    }
}

impl<const N: usize> From<[i64; N]> for SpotSet {
    fn from(a: [i64; N]) -> Self {
        a.into_iter().collect()
    }
}

impl fmt::Display for SpotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.spots.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// Free-function form of [`SpotSet::blocks`].
pub fn blocks(s: &SpotSet) -> Vec<Block> {
    s.blocks().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_of_mixed_set() {
        let s = SpotSet::from([2, 3, 5, 6, 7, 8, 9, 12]);
        assert_eq!(
            s.blocks(),
            &[Block::new(2, 3), Block::new(5, 9), Block::new(12, 12)]
        );
    }

    #[test]
    fn blocks_trivial() {
        assert!(SpotSet::new().blocks().is_empty());
        assert_eq!(SpotSet::from([1, 2, 3]).blocks(), &[Block::new(1, 3)]);
    }

    #[test]
    fn insertion_merges_both_sides() {
        let mut s = SpotSet::from([1, 3]);
        assert_eq!(s.blocks().len(), 2);
        assert!(s.insert(2));
        assert!(!s.insert(2));
        assert_eq!(s.blocks(), &[Block::new(1, 3)]);
    }

    #[test]
    fn block_lookup() {
        let s = SpotSet::from([-2, -1, 4]);
        assert_eq!(s.block_of(-1), Some(Block::new(-2, -1)));
        assert_eq!(s.block_of(0), None);
        assert_eq!(s.block_of(4), Some(Block::new(4, 4)));
        assert_eq!(s.block_of(5), None);
    }

    #[test]
    fn initial_segment() {
        assert!(SpotSet::new().is_initial_segment());
        assert!(SpotSet::interval(1, 4).is_initial_segment());
        assert!(!SpotSet::from([0, 1]).is_initial_segment());
        assert!(!SpotSet::from([1, 3]).is_initial_segment());
    }

    #[test]
    fn display() {
        assert_eq!(SpotSet::from([0, 1, 2]).to_string(), "{0,1,2}");
        assert_eq!(SpotSet::new().to_string(), "{}");
    }
}
