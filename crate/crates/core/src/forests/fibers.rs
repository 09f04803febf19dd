//! Label sets, fiber counts and the good-correspondence check.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{encode, BinaryTree, ForestPair, IndexedForest, NodeInterval};
use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::exec::{fold_range, map_vec};
use crate::procedures::{Direction, Procedure};
use crate::shuffle::next_permutation;
use crate::spots::SpotSet;
use crate::words::{Word, WordSpace};

/// Shape counts at `r = 3` under the Dyck-path and Shi-tree encodings of
/// parking functions, sorted decreasingly. Kept as a reference point only:
/// the forest encoding of the classical procedure gives `6,4,3,2,1` instead.
pub const DYCK_SHI_SIGNATURE_R3: [u128; 5] = [6, 3, 3, 3, 1];

fn require_label_sets(p: &Procedure) -> Result<()> {
    let f = p.flags();
    if !f.memoryless {
        return Err(Error::NotApplicable {
            name: p.name().to_string(),
            required: "memoryless",
        });
    }
    if !f.locally_decided {
        return Err(Error::NotApplicable {
            name: p.name().to_string(),
            required: "locally decided",
        });
    }
    Ok(())
}

/// Preferences a car may have had to end up at `iv.node` when its subtree
/// spans `iv.lo..=iv.hi`.
pub fn label_set(p: &Procedure, iv: &NodeInterval) -> Result<BTreeSet<i64>> {
    require_label_sets(p)?;
    if !(iv.lo <= iv.node && iv.node <= iv.hi) {
        return Err(Error::InvalidParameter(format!(
            "node {} outside {}..={}",
            iv.node, iv.lo, iv.hi
        )));
    }
    let mut out = BTreeSet::from([iv.node]);
    let left = SpotSet::interval(iv.lo, iv.node - 1);
    for j in left.iter() {
        if p.dir_of_set(&left, j)? == Direction::Right {
            out.insert(j);
        }
    }
    let right = SpotSet::interval(iv.node + 1, iv.hi);
    for j in right.iter() {
        if p.dir_of_set(&right, j)? == Direction::Left {
            out.insert(j);
        }
    }
    Ok(out)
}

/// `1 + R_(node - lo) + L_(hi - node)` from the `Dir(r, i)` table.
pub fn label_set_size_local(p: &Procedure, iv: &NodeInterval) -> Result<u128> {
    if !p.flags().is_local() || !p.flags().memoryless {
        return Err(Error::NotApplicable {
            name: p.name().to_string(),
            required: "local and memoryless",
        });
    }
    let rights = |k: i64| -> Result<u128> {
        let mut n = 0;
        for j in 1..=k {
            n += (p.dir_of(k as usize, j)? == Direction::Right) as u128;
        }
        Ok(n)
    };
    let m = iv.hi - iv.node;
    Ok(1 + rights(iv.node - iv.lo)? + (m as u128 - rights(m)?))
}

fn permutation_tree(sigma: &[usize]) -> Result<BinaryTree> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s < 1 || s > sigma.len() || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::InvalidParameter(format!(
                "{sigma:?} is not a permutation of 1..={}",
                sigma.len()
            )));
        }
    }
    if sigma.is_empty() {
        return Err(Error::InvalidParameter("empty permutation".into()));
    }
    Ok(BinaryTree::from_labels(sigma))
}

/// Number of parking words whose outcome is `sigma` (`sigma[k-1]` is the
/// arrival index of the car at spot `k`), as a product of label-set sizes.
pub fn fiber_count(p: &Procedure, sigma: &[usize]) -> Result<u128> {
    let tree = permutation_tree(sigma)?;
    tree.intervals(1)
        .iter()
        .try_fold(1u128, |acc, iv| Ok(acc * label_set(p, iv)?.len() as u128))
}

/// Same count through the local formula.
pub fn fiber_count_local(p: &Procedure, sigma: &[usize]) -> Result<u128> {
    let tree = permutation_tree(sigma)?;
    tree.intervals(1)
        .iter()
        .try_fold(1u128, |acc, iv| Ok(acc * label_set_size_local(p, iv)?))
}

/// Number of parking words whose encoding has shape `shape`.
pub fn shape_count(p: &Procedure, shape: &IndexedForest) -> Result<u128> {
    if !shape.is_parking_shape() {
        return Err(Error::InvalidParameter(format!(
            "shape support {} is not of the form {{1..r}}",
            shape.support()
        )));
    }
    let product = shape
        .intervals()
        .iter()
        .try_fold(1u128, |acc, iv| Ok::<_, Error>(acc * label_set(p, iv)?.len() as u128))?;
    Ok(product * shape.decreasing_labelings_count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub sigma: Vec<usize>,
    pub formula: u128,
    pub brute: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeRow {
    pub shape: String,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTable {
    pub procedure: String,
    pub r: usize,
    /// One row per permutation in lexicographic order.
    pub rows: Vec<FiberRow>,
    /// Shapes sorted by decreasing count, ties by shape string.
    pub shapes: Vec<ShapeRow>,
    pub total: u128,
}

impl FiberTable {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|row| row.formula == row.brute)
    }

    pub fn shape_multiset(&self) -> Vec<u128> {
        self.shapes.iter().map(|s| s.count).collect()
    }
}

/// A pair in the image whose relabeling falls outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodWitness {
    pub word: Word,
    pub pair: ForestPair,
    pub relabeled: ForestPair,
    /// The only candidate preimage of `relabeled`.
    pub decoded: Word,
    pub decoded_encoding: ForestPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodReport {
    pub procedure: String,
    pub r_max: usize,
    pub good: bool,
    pub pairs_checked: u64,
    pub witness: Option<GoodWitness>,
}

impl Enumerator {
    /// Formula and brute-force fibers for every permutation of size `r`,
    /// plus the counts per shape.
    pub fn fiber_table(&self, p: &Procedure, r: usize) -> Result<FiberTable> {
        let brute = self.fiber_histogram(p, r)?;
        let mut perms = Vec::new();
        let mut sigma: Vec<usize> = (1..=r).collect();
        loop {
            perms.push(sigma.clone());
            if !next_permutation(&mut sigma) {
                break;
            }
        }
        let formulas = map_vec(self.exec(), &perms, |s| fiber_count(p, s));
        let mut rows = Vec::with_capacity(perms.len());
        let mut by_shape: BTreeMap<BinaryTree, u128> = BTreeMap::new();
        for (sigma, formula) in perms.into_iter().zip(formulas) {
            let formula = formula?;
            *by_shape.entry(BinaryTree::from_labels(&sigma)).or_default() += formula;
            let brute = brute.get(&sigma).copied().unwrap_or(0);
            rows.push(FiberRow { sigma, formula, brute });
        }
        let mut shapes: Vec<ShapeRow> = by_shape
            .into_iter()
            .map(|(t, count)| ShapeRow {
                shape: t.to_string(),
                count,
            })
            .collect();
        shapes.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.shape.cmp(&b.shape)));
        let total = rows.iter().map(|row| row.formula).sum();
        Ok(FiberTable {
            procedure: p.name().to_string(),
            r,
            rows,
            shapes,
            total,
        })
    }
}

/// Checks that every relabeling of an image pair by another decreasing
/// labeling of its shape is again in the image, over all words of length at
/// most `r_max` with letters in `1..=r_max+1`.
pub fn is_good_correspondence(en: &Enumerator, p: &Procedure, r_max: usize) -> Result<GoodReport> {
    en.check_cap(r_max)?;
    let mut pairs_checked = 0;
    let mut witness = None;
    for len in 1..=r_max {
        let space = WordSpace::new(1, r_max as i64 + 1, len);
        // (pairs checked, first failing word index)
        let (checked, first) = fold_range(
            en.exec(),
            0..space.size(),
            || (0u64, None::<u64>),
            |(mut n, first), i| {
                let word = space.word_at(i);
                let pair = encode(p, &word);
                for q in pair.shape().decreasing_labelings() {
                    n += 1;
                    let relabeled = pair.with_q_labels(q).expect("decreasing labeling");
                    if encode(p, &relabeled.decode_word()) != relabeled {
                        return (n, Some(first.map_or(i, |f| f.min(i))));
                    }
                }
                (n, first)
            },
            |a, b| {
                let first = match (a.1, b.1) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                (a.0 + b.0, first)
            },
        );
        pairs_checked += checked;
        if let Some(i) = first {
            let word = space.word_at(i);
            let pair = encode(p, &word);
            for q in pair.shape().decreasing_labelings() {
                let relabeled = pair.with_q_labels(q).expect("decreasing labeling");
                let decoded = relabeled.decode_word();
                let decoded_encoding = encode(p, &decoded);
                if decoded_encoding != relabeled {
                    witness = Some(GoodWitness {
                        word,
                        pair,
                        relabeled,
                        decoded,
                        decoded_encoding,
                    });
                    break;
                }
            }
            break;
        }
    }
    Ok(GoodReport {
        procedure: p.name().to_string(),
        r_max,
        good: witness.is_none(),
        pairs_checked,
        witness,
    })
}
