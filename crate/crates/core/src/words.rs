//! Preference words, translations of the line and cyclic rotations.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spots::{Block, SpotSet};

/// A preference word `a_1 ... a_r`; letter `i` is the spot wanted by car `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i64>);

impl Word {
    pub fn new(letters: Vec<i64>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[i64] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<i64> {
        self.0
    }

    pub fn push(&mut self, letter: i64) {
        self.0.push(letter);
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// Adds one to every letter modulo `r + 1`, with representatives in
    /// `1..=r+1`.
    pub fn rotate(&self, r: usize) -> Result<Word> {
        let m = r as i64 + 1;
        self.check_window(r)?;
        Ok(Word(self.0.iter().map(|&a| a % m + 1).collect()))
    }

    /// `k`-fold rotation; `k` may be any integer.
    pub fn rotate_by(&self, r: usize, k: i64) -> Result<Word> {
        let m = r as i64 + 1;
        self.check_window(r)?;
        Ok(Word(
            self.0.iter().map(|&a| (a - 1 + k).rem_euclid(m) + 1).collect(),
        ))
    }

    /// The member of this word's cyclic orbit whose first letter is 1.
    /// Every orbit of nonempty words contains exactly one such word.
    pub fn orbit_representative(&self, r: usize) -> Result<Word> {
        match self.0.first() {
            None => Ok(self.clone()),
            Some(&a) => self.rotate_by(r, 1 - a),
        }
    }

    fn check_window(&self, r: usize) -> Result<()> {
        let m = r as i64 + 1;
        match self.0.iter().find(|&&a| !(1..=m).contains(&a)) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, max: m }),
            None => Ok(()),
        }
    }

    /// Digits run together (`131`) when every letter is in `0..=9`,
    /// comma-separated otherwise.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|a| (0..=9).contains(a)) {
            self.0.iter().map(|a| a.to_string()).collect()
        } else {
            self.to_string()
        }
    }

    /// Parses a comma-separated list of integers. The empty string is `ε`.
    pub fn parse_csv(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("letter `{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Deref for Word {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Word {
    fn from(v: Vec<i64>) -> Self {
        Word(v)
    }
}

impl From<&[i64]> for Word {
    fn from(v: &[i64]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Word {
    fn from(a: [i64; N]) -> Self {
        Word(a.to_vec())
    }
}

impl FromIterator<i64> for Word {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse_csv(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Translation `i -> i + k` of the line, extended to sets, blocks and words.
pub trait Shift {
    fn shift(&self, k: i64) -> Self;
}

impl Shift for Word {
    fn shift(&self, k: i64) -> Self {
        Word(self.0.iter().map(|a| a + k).collect())
    }
}

impl Shift for SpotSet {
    fn shift(&self, k: i64) -> Self {
        self.iter().map(|s| s + k).collect()
    }
}

impl Shift for Block {
    fn shift(&self, k: i64) -> Self {
        Block::new(self.lo + k, self.hi + k)
    }
}

/// The cyclic orbit `{W, rho(W), ..., rho^r(W)}` of a word over `1..=r+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicOrbit {
    pub representative: Word,
    pub modulus: i64,
    pub members: BTreeSet<Word>,
}

impl CyclicOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

pub fn cyclic_orbit(w: &Word, r: usize) -> Result<CyclicOrbit> {
    let mut members = BTreeSet::new();
    let mut cur = w.clone();
    for _ in 0..=r {
        let next = cur.rotate(r)?;
        members.insert(cur);
        cur = next;
    }
    Ok(CyclicOrbit {
        representative: w.orbit_representative(r)?,
        modulus: r as i64 + 1,
        members,
    })
}

/// All words of a fixed length over `lo..=hi`, in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordSpace {
    pub lo: i64,
    pub hi: i64,
    pub len: usize,
}

impl WordSpace {
    pub fn new(lo: i64, hi: i64, len: usize) -> Self {
        assert!(lo <= hi);
        WordSpace { lo, hi, len }
    }

    /// Words of length `r` over `1..=r+1`.
    pub fn cyclic(r: usize) -> Self {
        WordSpace::new(1, r as i64 + 1, r)
    }

    pub fn base(&self) -> u64 {
        (self.hi - self.lo + 1) as u64
    }

    pub fn size(&self) -> u64 {
        self.base().pow(self.len as u32)
    }

    /// Writes the `index`-th word into `buf` (first letter most significant).
    pub fn fill(&self, mut index: u64, buf: &mut [i64]) {
        let base = self.base();
        for slot in buf.iter_mut().rev() {
            *slot = self.lo + (index % base) as i64;
            index /= base;
        }
    }

    pub fn word_at(&self, index: u64) -> Word {
        let mut buf = vec![0; self.len];
        self.fill(index, &mut buf);
        Word(buf)
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.size()).map(move |i| self.word_at(i))
    }
}
