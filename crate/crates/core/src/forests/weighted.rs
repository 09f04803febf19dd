//! Weighted forest pairs of a probabilistic run.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ForestPair;
use crate::error::{Error, Result};
use crate::probabilistic::{ratio_str, ProbProcedure, Rational};
use crate::procedures::Context;
use crate::spots::SpotSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPair {
    pub pair: ForestPair,
    #[serde(with = "ratio_str")]
    pub weight: Rational,
}

/// Every branch of the run of `word` with positive probability, as the
/// forest pair it produces and the product of the choices along it. Branches
/// are listed right choice first.
pub fn weighted_pairs(pp: &ProbProcedure, word: &[i64]) -> Result<Vec<WeightedPair>> {
    if !pp.flags().memoryless {
        return Err(Error::NotApplicable {
            name: pp.name().to_string(),
            required: "memoryless",
        });
    }
    let mut out = Vec::new();
    let mut parked = Vec::with_capacity(word.len());
    expand(pp, word, &SpotSet::new(), &mut parked, Rational::one(), &mut out);
    Ok(out)
}

fn expand(
    pp: &ProbProcedure,
    word: &[i64],
    occupied: &SpotSet,
    parked: &mut Vec<i64>,
    weight: Rational,
    out: &mut Vec<WeightedPair>,
) {
    let i = parked.len();
    if i == word.len() {
        out.push(WeightedPair {
            pair: ForestPair::from_run(word, parked),
            weight,
        });
        return;
    }
    let a = word[i];
    let mut step = |spot: i64, w: Rational, parked: &mut Vec<i64>| {
        if w.is_zero() {
            return;
        }
        let mut next = occupied.clone();
        next.insert(spot);
        parked.push(spot);
        expand(pp, word, &next, parked, w, out);
        parked.pop();
    };
    match occupied.block_of(a) {
        None => step(a, weight, parked),
        Some(block) => {
            let p = {
                let ctx = Context {
                    history: &word[..i],
                    parked,
                    occupied,
                    block,
                    letter: &a,
                };
                pp.right_probability(&ctx)
            };
            let q = Rational::one() - &p;
            step(block.right_gap(), &weight * p, parked);
            step(block.left_gap(), weight * q, parked);
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::forests::project;
    use crate::probabilistic::{QParam, Rational};
    use crate::procedures::Procedure;

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    #[test]
    fn sums_by_support_give_measure() {
        let pps = [
            ProbProcedure::kw(half()).unwrap(),
            ProbProcedure::pq(QParam::integer(2).unwrap()),
            ProbProcedure::deterministic(Procedure::closest()),
        ];
        for pp in &pps {
            for word in [vec![1, 1, 1], vec![2, 1, 2, 2], vec![3, 1, 2]] {
                let pairs = weighted_pairs(pp, &word).unwrap();
                let mut by_set: BTreeMap<SpotSet, Rational> = BTreeMap::new();
                for wp in &pairs {
                    assert_eq!(wp.pair.decode_word().letters(), &word[..]);
                    *by_set.entry(project(&wp.pair)).or_insert_with(Rational::zero) += &wp.weight;
                }
                let m = pp.measure(&word);
                assert_eq!(by_set.len(), m.len());
                for (s, w) in m.iter() {
                    assert_eq!(&by_set[s], w);
                }
            }
        }
    }

    #[test]
    fn kw_half_on_11() {
        let pairs = weighted_pairs(&ProbProcedure::kw(half()).unwrap(), &[1, 1]).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(project(&pairs[0].pair), SpotSet::from([1, 2]));
        assert_eq!(project(&pairs[1].pair), SpotSet::from([0, 1]));
        assert!(pairs.iter().all(|wp| wp.weight == half()));
    }

    #[test]
    fn history_dependent_rejected() {
        let pp = ProbProcedure::deterministic(Procedure::lbs());
        assert!(weighted_pairs(&pp, &[1]).is_err());
    }
}
