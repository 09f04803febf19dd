//! Deterministic bilateral parking procedures.
//!
//! A procedure is driven by [`simulate`]: a car whose preferred spot is free
//! parks there; otherwise the procedure's rule is consulted with a [`Context`]
//! describing everything parked so far and returns a [`Direction`]. The car
//! then takes the free spot immediately left or right of the block containing
//! its preference. Any procedure state (for instance the last car that parked
//! on a block) is a function of the context, so rules are stateless values
//! that can be shared between threads.

pub(crate) mod builtin;
mod flags;
mod table;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spots::{Block, SpotSet};

pub use builtin::{builtin, FarConvention};
pub use flags::{check_flags, FlagCheck, FlagReport, Witness};
pub use table::DirTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Left => 'L',
            Direction::Right => 'R',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Left => f.write_str("left"),
            Direction::Right => f.write_str("right"),
        }
    }
}

/// A letter of a preference word: anything that names a preferred spot.
pub trait Letter: Clone + fmt::Debug + Send + Sync {
    fn spot(&self) -> i64;
}

impl Letter for i64 {
    fn spot(&self) -> i64 {
        *self
    }
}

/// What a rule sees when a car finds its preferred spot occupied.
#[derive(Debug)]
pub struct Context<'a, A = i64> {
    /// Letters of the cars already parked, in arrival order.
    pub history: &'a [A],
    /// `parked[i]` is the spot taken by car `i + 1`.
    pub parked: &'a [i64],
    pub occupied: &'a SpotSet,
    /// The block of `occupied` containing the preferred spot.
    pub block: Block,
    pub letter: &'a A,
}

impl<A: Letter> Context<'_, A> {
    pub fn spot(&self) -> i64 {
        self.letter.spot()
    }

    /// 1-based index of the arriving car.
    pub fn car_index(&self) -> usize {
        self.history.len() + 1
    }

    /// Index (into `history`) of the most recent car that parked in the block.
    pub fn last_in_block(&self) -> usize {
        self.parked
            .iter()
            .rposition(|&s| self.block.contains(s))
            .expect("a block always holds at least one parked car")
    }

    /// Letters of the cars parked in the block, in arrival order.
    pub fn block_subword(&self) -> Vec<A> {
        self.parked
            .iter()
            .zip(self.history)
            .filter(|(s, _)| self.block.contains(**s))
            .map(|(_, a)| a.clone())
            .collect()
    }
}

/// Result of running a procedure on a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub occupied: SpotSet,
    /// `parked[i]` is the spot taken by car `i + 1`.
    pub parked: Vec<i64>,
}

impl Run {
    pub fn outcome(&self) -> Outcome {
        Outcome::from_parked(&self.parked)
    }

    /// Spot of the last car, if any car parked.
    pub fn last_spot(&self) -> Option<i64> {
        self.parked.last().copied()
    }

    pub fn is_parking(&self) -> bool {
        self.occupied.is_initial_segment()
    }
}

/// The injection from occupied spots to arrival indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Outcome {
    /// `(spot, arrival index)` sorted by spot; indices are `1..=len`.
    entries: Vec<(i64, usize)>,
}

impl Outcome {
    pub fn from_parked(parked: &[i64]) -> Self {
        let mut entries: Vec<(i64, usize)> = parked.iter().copied().zip(1..).collect();
        entries.sort_unstable();
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Outcome { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, spot: i64) -> Option<usize> {
        self.entries
            .binary_search_by_key(&spot, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn entries(&self) -> &[(i64, usize)] {
        &self.entries
    }

    pub fn support(&self) -> SpotSet {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// When the domain is `{1..r}`, the permutation `k -> arrival index of
    /// the car at spot k`, written as a word.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        self.entries
            .iter()
            .zip(1..)
            .all(|(e, k)| e.0 == k)
            .then(|| self.entries.iter().map(|e| e.1).collect())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}->{k}")?;
        }
        f.write_str("}")
    }
}

/// Runs the generic bilateral engine on `word`, consulting `decide` whenever
/// a preferred spot is taken.
pub fn simulate<A, E, F>(word: &[A], mut decide: F) -> std::result::Result<Run, E>
where
    A: Letter,
    F: FnMut(&Context<'_, A>) -> std::result::Result<Direction, E>,
{
    let mut occupied = SpotSet::new();
    let mut parked = Vec::with_capacity(word.len());
    for (i, letter) in word.iter().enumerate() {
        let a = letter.spot();
        let spot = match occupied.block_of(a) {
            None => a,
            Some(block) => {
                let ctx = Context {
                    history: &word[..i],
                    parked: &parked,
                    occupied: &occupied,
                    block,
                    letter,
                };
                match decide(&ctx)? {
                    Direction::Left => block.left_gap(),
                    Direction::Right => block.right_gap(),
                }
            }
        };
        let fresh = occupied.insert(spot);
        debug_assert!(fresh, "bilateral engine parked on an occupied spot");
        parked.push(spot);
    }
    Ok(Run { occupied, parked })
}

/// A deterministic rule: which side of the block to take.
pub trait Rule: Send + Sync {
    fn decide(&self, ctx: &Context<'_>) -> Direction;
}

impl<F> Rule for F
where
    F: Fn(&Context<'_>) -> Direction + Send + Sync,
{
    fn decide(&self, ctx: &Context<'_>) -> Direction {
        self(ctx)
    }
}

/// Declared structural properties of a procedure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub memoryless: bool,
    pub shift_invariant: bool,
    pub locally_decided: bool,
}

impl Flags {
    pub const LOCAL_MEMORYLESS: Flags = Flags {
        memoryless: true,
        shift_invariant: true,
        locally_decided: true,
    };

    /// Shift invariant and locally decided.
    pub fn is_local(&self) -> bool {
        self.shift_invariant && self.locally_decided
    }
}

/// A named deterministic bilateral procedure.
#[derive(Clone)]
pub struct Procedure {
    name: String,
    flags: Flags,
    rule: Arc<dyn Rule>,
    /// Largest block size the rule is defined on, when it refuses to extrapolate.
    strict_limit: Option<usize>,
}

impl fmt::Debug for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Procedure")
            .field("name", &self.name)
            .field("flags", &self.flags)
            .finish()
    }
}

impl Procedure {
    pub fn new(name: impl Into<String>, flags: Flags, rule: impl Rule + 'static) -> Self {
        Procedure {
            name: name.into(),
            flags,
            rule: Arc::new(rule),
            strict_limit: None,
        }
    }

    pub(crate) fn with_strict_limit(mut self, limit: Option<usize>) -> Self {
        self.strict_limit = limit;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn strict_limit(&self) -> Option<usize> {
        self.strict_limit
    }

    pub fn decide(&self, ctx: &Context<'_>) -> Direction {
        self.rule.decide(ctx)
    }

    pub fn run(&self, word: &[i64]) -> Run {
        let res: std::result::Result<Run, std::convert::Infallible> =
            simulate(word, |ctx| Ok(self.rule.decide(ctx)));
        match res {
            Ok(run) => run,
            Err(never) => match never {},
        }
    }

    pub fn occupied(&self, word: &[i64]) -> SpotSet {
        self.run(word).occupied
    }

    pub fn last_spot(&self, word: &[i64]) -> Result<i64> {
        self.run(word).last_spot().ok_or(Error::EmptyWord)
    }

    pub fn is_parking(&self, word: &[i64]) -> bool {
        self.run(word).is_parking()
    }

    pub fn outcome(&self, word: &[i64]) -> Outcome {
        self.run(word).outcome()
    }

    /// Direction taken by a car preferring `i` when exactly `{1..r}` is
    /// occupied.
    pub fn dir_of(&self, r: usize, i: i64) -> Result<Direction> {
        if i < 1 || i > r as i64 {
            return Err(Error::InvalidParameter(format!(
                "position {i} outside 1..={r}"
            )));
        }
        self.dir_of_set(&SpotSet::interval(1, r as i64), i)
    }

    /// Direction taken by a car preferring `a` when exactly `s` is occupied.
    pub fn dir_of_set(&self, s: &SpotSet, a: i64) -> Result<Direction> {
        if !self.flags.memoryless {
            return Err(Error::NotApplicable {
                name: self.name.clone(),
                required: "memoryless",
            });
        }
        let block = s.block_of(a).ok_or_else(|| {
            Error::InvalidParameter(format!("spot {a} is not occupied in {s}"))
        })?;
        // any history that fills `s` will do for a memoryless rule
        let parked: Vec<i64> = s.iter().collect();
        let ctx = Context {
            history: &parked,
            parked: &parked,
            occupied: s,
            block,
            letter: &a,
        };
        Ok(self.rule.decide(&ctx))
    }
}
