//! A deliberately naive parking simulator used as an oracle.
//!
//! Occupancy is a `BTreeSet`, blocks are found by walking outwards one spot
//! at a time and each catalog rule is restated from its definition.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug)]
pub enum Naive {
    Right,
    Left,
    Closest,
    Prime,
    EvenOdd,
    Naples(i64),
    Far,
    Lbs,
}

pub fn block(occ: &BTreeSet<i64>, a: i64) -> (i64, i64) {
    let (mut lo, mut hi) = (a, a);
    while occ.contains(&(lo - 1)) {
        lo -= 1;
    }
    while occ.contains(&(hi + 1)) {
        hi += 1;
    }
    (lo, hi)
}

fn prime(n: i64) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

/// Spot taken by each car.
pub fn run(rule: Naive, word: &[i64]) -> Vec<i64> {
    let mut occ = BTreeSet::new();
    // block low end -> preference of the last car that parked in it
    let mut record: BTreeMap<i64, i64> = BTreeMap::new();
    let mut out = Vec::new();
    for &a in word {
        let spot = if !occ.contains(&a) {
            a
        } else {
            let (t, u) = block(&occ, a);
            let right = match rule {
                Naive::Right => true,
                Naive::Left => false,
                Naive::Closest => (u + 1 - a) <= (a - (t - 1)),
                Naive::Prime => prime(u - t + 1),
                Naive::EvenOdd => a % 2 == 0,
                Naive::Naples(k) => {
                    // back up at most k spots looking for a free spot > 0
                    let mut found = None;
                    for d in 1..=k {
                        let s = a - d;
                        if s <= 0 {
                            break;
                        }
                        if !occ.contains(&s) {
                            found = Some(s);
                            break;
                        }
                    }
                    found.is_none()
                }
                Naive::Far => {
                    let above = occ.iter().filter(|&&s| s > a).count();
                    let below = occ.iter().filter(|&&s| s < a).count();
                    above <= below
                }
                Naive::Lbs => a >= record[&t],
            };
            if right {
                u + 1
            } else {
                t - 1
            }
        };
        occ.insert(spot);
        let (lo, hi) = block(&occ, spot);
        let stale: Vec<i64> = record.range(lo..=hi).map(|(&k, _)| k).collect();
        for k in stale {
            record.remove(&k);
        }
        record.insert(lo, a);
        out.push(spot);
    }
    out
}

pub fn is_parking(rule: Naive, word: &[i64]) -> bool {
    let r = word.len() as i64;
    let mut spots = run(rule, word);
    spots.sort_unstable();
    spots == (1..=r).collect::<Vec<_>>()
}

/// All words of length `len` over `lo..=hi`, lexicographic.
pub fn words(lo: i64, hi: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (lo..=hi).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn cayley(r: u32) -> u128 {
    (r as u128 + 1).pow(r - 1)
}

pub const CATALOG: [(&str, Naive); 9] = [
    ("right", Naive::Right),
    ("left", Naive::Left),
    ("closest", Naive::Closest),
    ("prime", Naive::Prime),
    ("evenodd", Naive::EvenOdd),
    ("naples:k=1", Naive::Naples(1)),
    ("naples:k=2", Naive::Naples(2)),
    ("far", Naive::Far),
    ("lbs", Naive::Lbs),
];
