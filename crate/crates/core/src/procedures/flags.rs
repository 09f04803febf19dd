//! Exhaustive checks of the declared structural flags.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Procedure;
use crate::words::{Shift, Word, WordSpace};

/// Two words whose runs disagree with a property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub word: Word,
    pub other: Word,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCheck {
    pub declared: bool,
    /// First counterexample found, if any.
    pub witness: Option<Witness>,
}

impl FlagCheck {
    pub fn observed(&self) -> bool {
        self.witness.is_none()
    }

    /// A declared property that was refuted.
    pub fn is_violation(&self) -> bool {
        self.declared && self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub procedure: String,
    pub r_max: usize,
    pub shift_invariant: FlagCheck,
    pub locally_decided: FlagCheck,
    pub memoryless: FlagCheck,
}

impl FlagReport {
    /// Every declared flag survived the search.
    pub fn confirmed(&self) -> bool {
        ![&self.shift_invariant, &self.locally_decided, &self.memoryless]
            .iter()
            .any(|c| c.is_violation())
    }
}

fn words_up_to(r_max: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let space = WordSpace::new(1, r_max as i64 + 1, len);
        (0..space.size()).map(move |i| space.word_at(i))
    })
}

/// Tests shift invariance, local decision and memorylessness over every word
/// with letters in `1..=r_max+1` and length at most `r_max`.
pub fn check_flags(p: &Procedure, r_max: usize) -> FlagReport {
    let flags = p.flags();
    FlagReport {
        procedure: p.name().to_string(),
        r_max,
        shift_invariant: FlagCheck {
            declared: flags.shift_invariant,
            witness: shift_witness(p, r_max),
        },
        locally_decided: FlagCheck {
            declared: flags.locally_decided,
            witness: local_witness(p, r_max),
        },
        memoryless: FlagCheck {
            declared: flags.memoryless,
            witness: memoryless_witness(p, r_max),
        },
    }
}

fn shift_witness(p: &Procedure, r_max: usize) -> Option<Witness> {
    words_up_to(r_max, r_max).find_map(|w| {
        let shifted = w.shift(1);
        let expect = p.occupied(&w).shift(1);
        let got = p.occupied(&shifted);
        (got != expect).then(|| Witness {
            detail: format!(
                "{} -> {}, {} -> {} instead of {}",
                w.compact(),
                p.occupied(&w),
                shifted.compact(),
                got,
                expect
            ),
            word: w,
            other: shifted,
        })
    })
}

fn local_witness(p: &Procedure, r_max: usize) -> Option<Witness> {
    words_up_to(r_max, r_max.saturating_sub(1)).find_map(|w| {
        let run = p.run(&w);
        let found = run.occupied.iter().find_map(|a| {
            let block = run.occupied.block_of(a).expect("occupied");
            let mut sub: Word = run
                .parked
                .iter()
                .zip(w.iter())
                .filter(|(s, _)| block.contains(**s))
                .map(|(_, &l)| l)
                .collect();
            sub.push(a);
            let mut full = w.clone();
            full.push(a);
            let (x, y) = (p.last_spot(&full).ok()?, p.last_spot(&sub).ok()?);
            (x != y).then(|| Witness {
                detail: format!("{} parks last at {x}, {} at {y}", full.compact(), sub.compact()),
                word: full,
                other: sub,
            })
        });
        found
    })
}

fn memoryless_witness(p: &Procedure, r_max: usize) -> Option<Witness> {
    let mut seen: HashMap<(Vec<i64>, i64), (Word, i64)> = HashMap::new();
    for w in words_up_to(r_max, r_max.saturating_sub(1)) {
        let run = p.run(&w);
        for a in run.occupied.iter() {
            let mut full = w.clone();
            full.push(a);
            let spot = p.last_spot(&full).expect("nonempty");
            let key = (run.occupied.as_slice().to_vec(), a);
            match seen.get(&key) {
                Some((other, s)) if *s != spot => {
                    return Some(Witness {
                        detail: format!(
                            "both fill {} before preference {a}; last car parks at {s} vs {spot}",
                            run.occupied
                        ),
                        word: other.clone(),
                        other: full,
                    })
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (full, spot));
                }
            }
        }
    }
    None
}
