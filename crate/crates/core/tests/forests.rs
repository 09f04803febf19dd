mod common;

use std::collections::{BTreeMap, HashSet};

use common::{cayley, is_parking, run, words, Naive};
use parking_core::forests::{
    encode, fiber_count, fiber_count_local, is_good_correspondence, project, shape_count, BinaryTree, IndexedForest,
};
use parking_core::procedures::builtin;
use parking_core::Enumerator;

const FIBER_PROCS: [(&str, Naive); 5] = [
    ("right", Naive::Right),
    ("closest", Naive::Closest),
    ("prime", Naive::Prime),
    ("naples:k=1", Naive::Naples(1)),
    ("naples:k=2", Naive::Naples(2)),
];

fn naive_fibers(rule: Naive, r: usize) -> BTreeMap<Vec<usize>, u128> {
    let mut out = BTreeMap::new();
    for w in words(1, r as i64, r) {
        if !is_parking(rule, &w) {
            continue;
        }
        // sigma[k-1] = arrival index of the car at spot k
        let mut sigma = vec![0; r];
        for (i, s) in run(rule, &w).into_iter().enumerate() {
            sigma[s as usize - 1] = i + 1;
        }
        *out.entry(sigma).or_insert(0) += 1;
    }
    out
}

#[test]
fn fibers_match_brute_force() {
    for (name, rule) in FIBER_PROCS {
        let p = builtin(name).unwrap();
        for r in 1..=5 {
            let brute = naive_fibers(rule, r);
            let mut total = 0;
            let mut sigma: Vec<usize> = (1..=r).collect();
            loop {
                let f = fiber_count(&p, &sigma).unwrap();
                assert_eq!(f, brute.get(&sigma).copied().unwrap_or(0), "{name} {sigma:?}");
                total += f;
                if !next_perm(&mut sigma) {
                    break;
                }
            }
            let parking = words(1, r as i64, r).iter().filter(|w| is_parking(rule, w)).count() as u128;
            assert_eq!(total, parking, "{name} r={r}");
        }
    }
}

#[test]
fn local_fibers_sum_to_cayley() {
    for name in ["right", "left", "closest", "prime"] {
        let p = builtin(name).unwrap();
        for r in 1..=5u32 {
            let mut sigma: Vec<usize> = (1..=r as usize).collect();
            let mut total = 0;
            loop {
                total += fiber_count_local(&p, &sigma).unwrap();
                if !next_perm(&mut sigma) {
                    break;
                }
            }
            assert_eq!(total, cayley(r), "{name} r={r}");
        }
    }
}

#[test]
fn naples_shapes_recover_counts() {
    for k in 1..=2 {
        let p = builtin(&format!("naples:k={k}")).unwrap();
        for r in 1..=5 {
            let by_shapes: u128 = BinaryTree::all_of_size(r)
                .into_iter()
                .map(|t| shape_count(&p, &IndexedForest::from_tree(t)).unwrap())
                .sum();
            let brute = words(1, r as i64, r).iter().filter(|w| is_parking(Naive::Naples(k), w)).count() as u128;
            assert_eq!(by_shapes, brute, "k={k} r={r}");
        }
    }
}

#[test]
fn correspondence_invariants() {
    let names = ["right", "left", "closest", "prime", "evenodd", "naples:k=1", "far", "lbs"];
    for name in names {
        let p = builtin(name).unwrap();
        for r in 1..=4usize {
            let mut seen = HashSet::new();
            for w in words(1, r as i64 + 1, r) {
                let fp = encode(&p, &w);
                let run = p.run(&w);
                assert_eq!(project(&fp), run.occupied);
                assert!(seen.insert(fp.clone()), "{name}: encoding of {w:?} repeats");
                // the node at spot s carries the arrival index of the car parked at s
                for (s, q) in fp.shape().support().iter().zip(fp.q_labels()) {
                    assert_eq!(run.parked[q - 1], s);
                }
                assert_eq!(fp.shape().is_parking_shape(), run.is_parking(), "{name} {w:?}");
            }
        }
    }
}

#[test]
fn good_correspondence_reports() {
    let en = Enumerator::new();
    for name in ["right", "prime", "closest", "naples:k=1"] {
        assert!(is_good_correspondence(&en, &builtin(name).unwrap(), 4).unwrap().good, "{name}");
    }
    // not settled in general; whatever the answer, a witness must be genuine
    for name in ["lbs", "far"] {
        let rep = is_good_correspondence(&en, &builtin(name).unwrap(), if name == "lbs" { 4 } else { 3 }).unwrap();
        if let Some(w) = rep.witness {
            assert_eq!(encode(&builtin(name).unwrap(), &w.word), w.pair);
            assert_ne!(encode(&builtin(name).unwrap(), &w.decoded), w.relabeled);
        }
    }
}

fn next_perm(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
