//! Indexed binary forests and the two-labeling encoding of a run.
//!
//! Each block of the occupied set carries a binary tree whose in-order
//! traversal visits the block's spots left to right: node "i" is the node met
//! at spot `i`. The arrival order restricted to a block is stored as a
//! decreasing tree (the latest arrival is the root, the spots left and right
//! of it form the subtrees), and the preferences of the cars are attached to
//! the same nodes.

mod fibers;
mod weighted;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::procedures::Procedure;
use crate::spots::{Block, SpotSet};
use crate::words::Word;

pub use fibers::{
    fiber_count, fiber_count_local, is_good_correspondence, label_set, label_set_size_local, shape_count,
    GoodReport, GoodWitness, DYCK_SHI_SIGNATURE_R3,
};
pub use fibers::{FiberRow, FiberTable, ShapeRow};
pub use weighted::{weighted_pairs, WeightedPair};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

/// The subtree span `lo..=hi` of the node at spot `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeInterval {
    pub node: i64,
    pub lo: i64,
    pub hi: i64,
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree::node(BinaryTree::Empty, BinaryTree::Empty)
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Every binary tree with `n` nodes.
    pub fn all_of_size(n: usize) -> Vec<BinaryTree> {
        let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Empty]];
        for k in 1..=n {
            let mut trees = Vec::new();
            for left in 0..k {
                for l in &by_size[left] {
                    for r in &by_size[k - 1 - left] {
                        trees.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            by_size.push(trees);
        }
        by_size.swap_remove(n)
    }

    /// Decreasing tree of a sequence of distinct labels: the largest label is
    /// the root, the labels before and after it build the two subtrees.
    pub fn from_labels<T: Ord>(labels: &[T]) -> BinaryTree {
        match labels.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)) {
            None => BinaryTree::Empty,
            Some((m, _)) => BinaryTree::node(
                BinaryTree::from_labels(&labels[..m]),
                BinaryTree::from_labels(&labels[m + 1..]),
            ),
        }
    }

    /// Number of decreasing labelings by `1..=size`.
    pub fn decreasing_labelings(&self) -> u128 {
        match self {
            BinaryTree::Empty => 1,
            BinaryTree::Node(l, r) => {
                let (a, b) = (l.size(), r.size());
                binomial(a + b, a) * l.decreasing_labelings() * r.decreasing_labelings()
            }
        }
    }

    /// Intervals of all nodes in in-order, the first node sitting at `lo`.
    pub fn intervals(&self, lo: i64) -> Vec<NodeInterval> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_intervals(lo, &mut out);
        out
    }

    fn collect_intervals(&self, lo: i64, out: &mut Vec<NodeInterval>) {
        if let BinaryTree::Node(l, r) = self {
            let node = lo + l.size() as i64;
            let hi = lo + self.size() as i64 - 1;
            l.collect_intervals(lo, out);
            out.push(NodeInterval { node, lo, hi });
            r.collect_intervals(node + 1, out);
        }
    }

    /// Parent of every node, by in-order position.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.size()];
        self.collect_parents(0, None, &mut out);
        out
    }

    fn collect_parents(&self, offset: usize, parent: Option<usize>, out: &mut [Option<usize>]) {
        if let BinaryTree::Node(l, r) = self {
            let me = offset + l.size();
            out[me] = parent;
            l.collect_parents(offset, Some(me), out);
            r.collect_parents(me + 1, Some(me), out);
        }
    }

    fn write_shape(&self, out: &mut String) {
        if let BinaryTree::Node(l, r) = self {
            out.push('(');
            l.write_shape(out);
            out.push(',');
            r.write_shape(out);
            out.push(')');
        }
    }

    fn parse_shape(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree> {
        if bytes.get(*pos) != Some(&b'(') {
            return Ok(BinaryTree::Empty);
        }
        *pos += 1;
        let l = BinaryTree::parse_shape(bytes, pos)?;
        if bytes.get(*pos) != Some(&b',') {
            return Err(Error::Parse(format!("expected `,` at offset {pos}")));
        }
        *pos += 1;
        let r = BinaryTree::parse_shape(bytes, pos)?;
        if bytes.get(*pos) != Some(&b')') {
            return Err(Error::Parse(format!("expected `)` at offset {pos}")));
        }
        *pos += 1;
        Ok(BinaryTree::node(l, r))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (1..=k as u128).fold(1, |acc, j| acc * (n as u128 - k as u128 + j) / j)
}

/// Nested parentheses: the empty tree is the empty string and a node is
/// `(left,right)`, so a single node is `(,)`.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_shape(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let mut pos = 0;
        let t = BinaryTree::parse_shape(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in tree shape `{s}`")));
        }
        Ok(t)
    }
}

/// A support set together with one binary tree per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedForest {
    support: SpotSet,
    trees: Vec<BinaryTree>,
}

impl IndexedForest {
    pub fn new(support: SpotSet, trees: Vec<BinaryTree>) -> Result<Self> {
        let blocks = support.blocks();
        if blocks.len() != trees.len() {
            return Err(Error::InvalidParameter(format!(
                "{} blocks but {} trees",
                blocks.len(),
                trees.len()
            )));
        }
        for (b, t) in blocks.iter().zip(&trees) {
            if b.len() != t.size() {
                return Err(Error::InvalidParameter(format!(
                    "block {b} holds {} spots but its tree has {} nodes",
                    b.len(),
                    t.size()
                )));
            }
        }
        Ok(IndexedForest { support, trees })
    }

    /// A single tree on `{1..size}`.
    pub fn from_tree(tree: BinaryTree) -> Self {
        let support = SpotSet::interval(1, tree.size() as i64);
        let trees = if tree.size() == 0 { vec![] } else { vec![tree] };
        IndexedForest { support, trees }
    }

    pub fn support(&self) -> &SpotSet {
        &self.support
    }

    pub fn trees(&self) -> &[BinaryTree] {
        &self.trees
    }

    pub fn size(&self) -> usize {
        self.support.len()
    }

    /// Intervals of all nodes in canonical (spot) order.
    pub fn intervals(&self) -> Vec<NodeInterval> {
        self.support
            .blocks()
            .iter()
            .zip(&self.trees)
            .flat_map(|(b, t)| t.intervals(b.lo))
            .collect()
    }

    /// Parents by canonical index (position of the spot in the support).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut out = Vec::with_capacity(self.size());
        for t in &self.trees {
            let offset = out.len();
            out.extend(t.parents().into_iter().map(|p| p.map(|x| x + offset)));
        }
        out
    }

    /// A single tree whose support is `{1..r}`.
    pub fn is_parking_shape(&self) -> bool {
        self.trees.len() <= 1 && self.support.is_initial_segment()
    }

    pub fn decreasing_labelings_count(&self) -> u128 {
        let mut n = 0;
        let mut acc = 1u128;
        for t in &self.trees {
            n += t.size();
            acc = acc * binomial(n, t.size()) * t.decreasing_labelings();
        }
        acc
    }

    /// All decreasing labelings of the forest by `1..=size`, each given as
    /// labels in canonical order.
    pub fn decreasing_labelings(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let parents = self.parents();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parents.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(v),
                None => roots.push(v),
            }
        }
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        fn go(next: usize, available: &mut Vec<usize>, children: &[Vec<usize>], labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if next == 0 {
                out.push(labels.clone());
                return;
            }
            for k in 0..available.len() {
                let v = available.swap_remove(k);
                labels[v] = next;
                let before = available.len();
                available.extend(&children[v]);
                go(next - 1, available, children, labels, out);
                available.truncate(before);
                available.push(v);
                let last = available.len() - 1;
                available.swap(k, last);
            }
        }
        go(n, &mut roots, &children, &mut labels, &mut out);
        out.sort();
        out
    }
}

/// An indexed forest with preference labels `p` and decreasing arrival
/// labels `q`, both listed in canonical (spot) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ForestPairDoc", try_from = "ForestPairDoc")]
pub struct ForestPair {
    shape: IndexedForest,
    p_labels: Vec<i64>,
    q_labels: Vec<usize>,
}

impl ForestPair {
    /// Builds the pair from a word and the spot taken by each of its cars.
    pub fn from_run(word: &[i64], parked: &[i64]) -> Self {
        assert_eq!(word.len(), parked.len());
        let mut entries: Vec<(i64, usize)> = parked.iter().copied().zip(1..).collect();
        entries.sort_unstable();
        let support: SpotSet = entries.iter().map(|e| e.0).collect();
        let q_labels: Vec<usize> = entries.iter().map(|e| e.1).collect();
        let p_labels = q_labels.iter().map(|&q| word[q - 1]).collect();
        let mut trees = Vec::new();
        let mut offset = 0;
        for b in support.blocks() {
            trees.push(BinaryTree::from_labels(&q_labels[offset..offset + b.len()]));
            offset += b.len();
        }
        ForestPair {
            shape: IndexedForest { support, trees },
            p_labels,
            q_labels,
        }
    }

    /// Validates that `q_labels` is a decreasing labeling by `1..=size`.
    pub fn new(shape: IndexedForest, p_labels: Vec<i64>, q_labels: Vec<usize>) -> Result<Self> {
        let n = shape.size();
        if p_labels.len() != n || q_labels.len() != n {
            return Err(Error::InvalidParameter(format!(
                "forest has {n} nodes but {} p-labels and {} q-labels",
                p_labels.len(),
                q_labels.len()
            )));
        }
        let mut seen = vec![false; n];
        for &q in &q_labels {
            if q < 1 || q > n || std::mem::replace(&mut seen[q - 1], true) {
                return Err(Error::InvalidParameter("q-labels must be a permutation of 1..=n".into()));
            }
        }
        for (v, p) in shape.parents().iter().enumerate() {
            if let Some(p) = p {
                if q_labels[*p] < q_labels[v] {
                    return Err(Error::InvalidParameter("q-labels are not decreasing".into()));
                }
            }
        }
        Ok(ForestPair { shape, p_labels, q_labels })
    }

    pub fn shape(&self) -> &IndexedForest {
        &self.shape
    }

    pub fn p_labels(&self) -> &[i64] {
        &self.p_labels
    }

    pub fn q_labels(&self) -> &[usize] {
        &self.q_labels
    }

    /// The word with `W[q_i] = p_i`: the only word that could encode to
    /// this pair.
    pub fn decode_word(&self) -> Word {
        let mut w = vec![0i64; self.q_labels.len()];
        for (&p, &q) in self.p_labels.iter().zip(&self.q_labels) {
            w[q - 1] = p;
        }
        Word::new(w)
    }

    /// The same shape and preferences with other arrival labels.
    pub fn with_q_labels(&self, q_labels: Vec<usize>) -> Result<Self> {
        ForestPair::new(self.shape.clone(), self.p_labels.clone(), q_labels)
    }

    /// `sum |p_i - i|` over the nodes, `i` being the node's spot.
    pub fn displacement(&self) -> u64 {
        self.shape
            .support
            .iter()
            .zip(&self.p_labels)
            .map(|(i, p)| (p - i).unsigned_abs())
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct BlockDoc {
    lo: i64,
    hi: i64,
    shape: String,
}

#[derive(Serialize, Deserialize)]
struct ForestPairDoc {
    support: Vec<i64>,
    blocks: Vec<BlockDoc>,
    p_labels: Vec<i64>,
    q_labels: Vec<usize>,
}

impl From<ForestPair> for ForestPairDoc {
    fn from(fp: ForestPair) -> Self {
        let blocks = fp
            .shape
            .support
            .blocks()
            .iter()
            .zip(&fp.shape.trees)
            .map(|(b, t)| BlockDoc {
                lo: b.lo,
                hi: b.hi,
                shape: t.to_string(),
            })
            .collect();
        ForestPairDoc {
            support: fp.shape.support.as_slice().to_vec(),
            blocks,
            p_labels: fp.p_labels,
            q_labels: fp.q_labels,
        }
    }
}

impl TryFrom<ForestPairDoc> for ForestPair {
    type Error = Error;

    fn try_from(doc: ForestPairDoc) -> Result<Self> {
        let support = SpotSet::from(doc.support);
        let declared: Vec<Block> = doc.blocks.iter().map(|b| Block { lo: b.lo, hi: b.hi }).collect();
        if declared != support.blocks() {
            return Err(Error::Parse("block list does not match the support".into()));
        }
        let trees = doc
            .blocks
            .iter()
            .map(|b| b.shape.parse())
            .collect::<Result<Vec<BinaryTree>>>()?;
        ForestPair::new(IndexedForest::new(support, trees)?, doc.p_labels, doc.q_labels)
    }
}

/// The pair attached to `word` by procedure `p`.
pub fn encode(p: &Procedure, word: &[i64]) -> ForestPair {
    ForestPair::from_run(word, &p.run(word).parked)
}

/// The support of the shape; projecting an encoding recovers the run.
pub fn project(fp: &ForestPair) -> SpotSet {
    fp.shape.support.clone()
}

pub fn total_displacement(p: &Procedure, word: &[i64]) -> u64 {
    encode(p, word).displacement()
}
