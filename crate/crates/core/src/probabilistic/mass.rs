//! Summed parking probabilities and abelianity, by exhaustive enumeration.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ratio_str, Measure, ProbProcedure, Rational};
use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::exec::{fold_range, map_vec};
use crate::shuffle::next_permutation;
use crate::words::{Word, WordSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMass {
    pub representative: Word,
    #[serde(with = "ratio_str")]
    pub mass: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassReport {
    pub procedure: String,
    pub r: usize,
    #[serde(with = "ratio_str")]
    pub total: Rational,
    /// Mass of each cyclic orbit, keyed by its member starting with 1.
    pub orbits: Vec<OrbitMass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianWitness {
    pub word: Word,
    pub permuted: Word,
    pub word_measure: Measure,
    pub permuted_measure: Measure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianReport {
    pub procedure: String,
    pub r_max: usize,
    pub abelian: bool,
    pub witness: Option<AbelianWitness>,
}

impl Enumerator {
    /// Sum of parking probabilities over `{1..r+1}^r`, with per-orbit sums.
    pub fn total_parking_mass(&self, pp: &ProbProcedure, r: usize) -> Result<MassReport> {
        if r == 0 {
            return Err(Error::InvalidParameter("length must be at least 1".into()));
        }
        self.check_cap(r)?;
        let tail = WordSpace::new(1, r as i64 + 1, r - 1);
        let mut orbits: Vec<(u64, Rational)> = fold_range(
            self.exec(),
            0..tail.size(),
            Vec::new,
            |mut acc, i| {
                let mut rep = vec![1i64; r];
                tail.fill(i, &mut rep[1..]);
                let rep = Word::new(rep);
                let mass: Rational = (0..=r as i64)
                    .map(|k| pp.parking_probability(&rep.rotate_by(r, k).expect("in window")))
                    .sum();
                acc.push((i, mass));
                acc
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        orbits.sort_by_key(|(i, _)| *i);
        let total = orbits.iter().fold(Rational::zero(), |acc, (_, m)| acc + m);
        let orbits = orbits
            .into_iter()
            .map(|(i, mass)| {
                let mut rep = vec![1i64; r];
                tail.fill(i, &mut rep[1..]);
                OrbitMass {
                    representative: Word::new(rep),
                    mass,
                }
            })
            .collect();
        Ok(MassReport {
            procedure: pp.name().to_string(),
            r,
            total,
            orbits,
        })
    }

    /// Compares the measure of every word over `1..=r_max+1` of length at
    /// most `r_max` with the measures of all its rearrangements. The witness
    /// is the first failing pair in lexicographic order.
    pub fn is_abelian(&self, pp: &ProbProcedure, r_max: usize) -> Result<AbelianReport> {
        self.check_cap(r_max)?;
        let mut sorted_words = Vec::new();
        for len in 2..=r_max {
            let space = WordSpace::new(1, r_max as i64 + 1, len);
            sorted_words.extend(space.iter().filter(|w| w.windows(2).all(|p| p[0] <= p[1])));
        }
        let results = map_vec(self.exec(), &sorted_words, |w| {
            let base = pp.measure(w);
            let mut perm = w.to_vec();
            while next_permutation(&mut perm) {
                let m = pp.measure(&perm);
                if m != base {
                    return Some(AbelianWitness {
                        word: w.clone(),
                        permuted: Word::new(perm),
                        word_measure: base,
                        permuted_measure: m,
                    });
                }
            }
            None
        });
        let witness = results.into_iter().flatten().next();
        Ok(AbelianReport {
            procedure: pp.name().to_string(),
            r_max,
            abelian: witness.is_none(),
            witness,
        })
    }
}
