//! Exhaustive enumeration over word spaces.
//!
//! Parking words of length `r` only use letters in `1..=r` (a letter outside
//! the final set `{1..r}` would have parked on itself), so the window
//! `1..=r+1` on which cyclic rotation acts contains all of them.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{fold_range, Exec};
use crate::procedures::Procedure;
use crate::shuffle::multinomial;
use crate::spots::SpotSet;
use crate::words::{cyclic_orbit, CyclicOrbit, Word, WordSpace};

/// `(r + 1)^(r - 1)`.
pub fn universal_count(r: usize) -> u128 {
    if r == 0 {
        return 1;
    }
    (r as u128 + 1).pow(r as u32 - 1)
}

/// Configuration shared by the exhaustive searches: the largest length that
/// may be enumerated and the execution strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    cap: usize,
    exec: Exec,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: 8,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    Brute,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitViolation {
    pub orbit: CyclicOrbit,
    pub parking_words: Vec<Word>,
}

impl OrbitViolation {
    pub fn count(&self) -> usize {
        self.parking_words.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub procedure: String,
    pub r: usize,
    pub orbit_count: u64,
    pub total_parking: u64,
    /// Parking words per orbit -> number of orbits.
    pub histogram: BTreeMap<u64, u64>,
    /// Orbits whose parking-word count is not exactly one, in order of their
    /// representatives.
    pub violations: Vec<OrbitViolation>,
}

impl OrbitReport {
    pub fn all_one(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalRow {
    pub r: usize,
    pub count: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub procedure: String,
    pub rows: Vec<UniversalRow>,
    /// Smallest `r` whose count differs from `(r+1)^(r-1)`.
    pub first_failure: Option<usize>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn sequential(self) -> Self {
        self.with_exec(Exec::Sequential)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub(crate) fn check_cap(&self, size: usize) -> Result<()> {
        if size > self.cap {
            Err(Error::CapExceeded { size, cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn check_length(&self, p: &Procedure, r: usize) -> Result<()> {
        if r == 0 {
            return Err(Error::InvalidParameter("length must be at least 1".into()));
        }
        self.check_cap(r)?;
        match p.strict_limit() {
            // a run of length r consults blocks of size at most r - 1
            Some(limit) if r - 1 > limit => Err(Error::InvalidTable(format!(
                "strict table covers blocks up to {limit}, length {r} needs {}",
                r - 1
            ))),
            _ => Ok(()),
        }
    }

    /// Number of parking words of length `r`, by running every word of
    /// `{1..r+1}^r`.
    pub fn count_parking(&self, p: &Procedure, r: usize) -> Result<u128> {
        self.check_length(p, r)?;
        let space = WordSpace::cyclic(r);
        let count = fold_range(
            self.exec,
            0..space.size(),
            || (0u128, vec![0i64; r]),
            |(n, mut buf), i| {
                space.fill(i, &mut buf);
                let parking = p.is_parking(&buf);
                debug_assert!(!parking || buf.iter().all(|&a| 1 <= a && a <= r as i64));
                (n + parking as u128, buf)
            },
            |a, b| (a.0 + b.0, a.1),
        );
        Ok(count.0)
    }

    /// Parking words of length `r` in lexicographic order.
    pub fn parking_words(&self, p: &Procedure, r: usize) -> Result<Vec<Word>> {
        self.check_length(p, r)?;
        let space = WordSpace::new(1, r as i64, r);
        Ok(space.iter().filter(|w| p.is_parking(w)).collect())
    }

    /// Counts parking words in every cyclic orbit of `{1..r+1}^r`.
    pub fn orbit_audit(&self, p: &Procedure, r: usize) -> Result<OrbitReport> {
        self.check_length(p, r)?;
        // representatives are the words starting with 1
        let tail = WordSpace::cyclic(r).with_len(r - 1);
        type Acc = (BTreeMap<u64, u64>, Vec<(u64, Vec<Word>)>);
        let (histogram, mut bad): Acc = fold_range(
            self.exec,
            0..tail.size(),
            Acc::default,
            |(mut hist, mut bad), i| {
                let mut rep = vec![1i64; r];
                tail.fill(i, &mut rep[1..]);
                let rep = Word::new(rep);
                let parking: Vec<Word> = (0..=r as i64)
                    .map(|k| rep.rotate_by(r, k).expect("in window"))
                    .filter(|w| p.is_parking(w))
                    .collect();
                *hist.entry(parking.len() as u64).or_default() += 1;
                if parking.len() != 1 {
                    bad.push((i, parking));
                }
                (hist, bad)
            },
            |(mut h1, mut b1), (h2, b2)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_default() += v;
                }
                b1.extend(b2);
                (h1, b1)
            },
        );
        bad.sort_by_key(|(i, _)| *i);
        let violations = bad
            .into_iter()
            .map(|(i, mut parking_words)| {
                let mut rep = vec![1i64; r];
                tail.fill(i, &mut rep[1..]);
                parking_words.sort();
                Ok(OrbitViolation {
                    orbit: cyclic_orbit(&Word::new(rep), r)?,
                    parking_words,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let total_parking = histogram.iter().map(|(k, v)| k * v).sum();
        Ok(OrbitReport {
            procedure: p.name().to_string(),
            r,
            orbit_count: tail.size(),
            total_parking,
            histogram,
            violations,
        })
    }

    /// Compares `count_parking` with `(r+1)^(r-1)` for `r = 1..=r_max`.
    pub fn check_universal(&self, p: &Procedure, r_max: usize) -> Result<UniversalReport> {
        let mut rows = Vec::new();
        let mut first_failure = None;
        for r in 1..=r_max {
            let count = self.count_parking(p, r)? as u64;
            let expected = universal_count(r) as u64;
            if count != expected && first_failure.is_none() {
                first_failure = Some(r);
            }
            rows.push(UniversalRow { r, count, expected });
        }
        Ok(UniversalReport {
            procedure: p.name().to_string(),
            rows,
            first_failure,
        })
    }

    /// Number of words `W` with `p(W) = s`.
    ///
    /// Every letter of such a word lies in `s` (it either parked on itself or
    /// was already occupied), so the brute search runs over `s^|s|`. The
    /// formula multiplies a multinomial over block sizes by `(k+1)^(k-1)` per
    /// block of size `k` and needs a local procedure.
    pub fn count_words_to_set(&self, p: &Procedure, s: &SpotSet, via: Via) -> Result<u128> {
        match via {
            Via::Formula => {
                if !p.flags().is_local() {
                    return Err(Error::NotApplicable {
                        name: p.name().to_string(),
                        required: "local",
                    });
                }
                let sizes: Vec<usize> = s.blocks().iter().map(|b| b.len()).collect();
                Ok(multinomial(&sizes) * sizes.iter().map(|&k| universal_count(k)).product::<u128>())
            }
            Via::Brute => {
                let n = s.len();
                self.check_cap(n)?;
                let letters = s.as_slice();
                let space = WordSpace::new(0, n.max(1) as i64 - 1, n);
                let hits = fold_range(
                    self.exec,
                    0..space.size(),
                    || (0u128, vec![0i64; n]),
                    |(c, mut buf), i| {
                        space.fill(i, &mut buf);
                        for x in buf.iter_mut() {
                            *x = letters[*x as usize];
                        }
                        (c + (p.occupied(&buf) == *s) as u128, buf)
                    },
                    |a, b| (a.0 + b.0, a.1),
                );
                Ok(hits.0)
            }
        }
    }

    /// Runs every word of length `len` over `window` and tallies the
    /// resulting occupied sets.
    pub fn set_histogram(&self, p: &Procedure, window: (i64, i64), len: usize) -> Result<BTreeMap<SpotSet, u128>> {
        self.check_cap(len)?;
        let space = WordSpace::new(window.0, window.1, len);
        let hist = fold_range(
            self.exec,
            0..space.size(),
            || (HashMap::<SpotSet, u128>::new(), vec![0i64; len]),
            |(mut h, mut buf), i| {
                space.fill(i, &mut buf);
                *h.entry(p.occupied(&buf)).or_default() += 1;
                (h, buf)
            },
            |(mut h1, buf), (h2, _)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_default() += v;
                }
                (h1, buf)
            },
        );
        Ok(hist.0.into_iter().collect())
    }

    /// Brute-force fibers of the outcome map: permutation -> number of parking
    /// words with that outcome.
    pub fn fiber_histogram(&self, p: &Procedure, r: usize) -> Result<BTreeMap<Vec<usize>, u128>> {
        self.check_length(p, r)?;
        let space = WordSpace::new(1, r as i64, r);
        let hist = fold_range(
            self.exec,
            0..space.size(),
            || (HashMap::<Vec<usize>, u128>::new(), vec![0i64; r]),
            |(mut h, mut buf), i| {
                space.fill(i, &mut buf);
                let run = p.run(&buf);
                if run.is_parking() {
                    let sigma = run.outcome().as_permutation().expect("parking");
                    *h.entry(sigma).or_default() += 1;
                }
                (h, buf)
            },
            |(mut h1, buf), (h2, _)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_default() += v;
                }
                (h1, buf)
            },
        );
        Ok(hist.0.into_iter().collect())
    }
}

impl WordSpace {
    pub(crate) fn with_len(mut self, len: usize) -> Self {
        self.len = len;
        self
    }
}
