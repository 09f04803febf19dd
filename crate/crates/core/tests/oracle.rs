mod common;

use common::{cayley, is_parking, run, words, Naive, CATALOG};
use parking_core::enumeration::universal_count;
use parking_core::procedures::builtin;
use parking_core::{Enumerator, SpotSet, Via};

#[test]
fn engine_matches_naive_simulator() {
    for (name, rule) in CATALOG {
        let p = builtin(name).unwrap();
        for len in 0..=5 {
            for w in words(-1, 5, len) {
                assert_eq!(p.run(&w).parked, run(rule, &w), "{name} on {w:?}");
            }
        }
    }
}

#[test]
fn parking_counts_match_naive() {
    let en = Enumerator::new();
    for (name, rule) in CATALOG {
        let p = builtin(name).unwrap();
        for r in 1..=5usize {
            let naive = words(1, r as i64, r).iter().filter(|w| is_parking(rule, w)).count() as u128;
            assert_eq!(en.count_parking(&p, r).unwrap(), naive, "{name} r={r}");
        }
    }
}

#[test]
fn catalog_counterexamples() {
    let count = |rule, r: usize| words(1, r as i64, r).iter().filter(|w| is_parking(rule, w)).count();
    assert_eq!(count(Naive::EvenOdd, 2), 2);
    assert_eq!(count(Naive::Naples(1), 2), 4);
    assert_eq!(count(Naive::Far, 3), 14);
    for r in 1..=5 {
        assert_eq!(count(Naive::Lbs, r) as u128, cayley(r as u32));
        assert_eq!(count(Naive::Closest, r) as u128, universal_count(r));
    }
}

#[test]
fn parking_word_listing_matches_naive() {
    let en = Enumerator::new();
    let p = builtin("far").unwrap();
    let listed: Vec<Vec<i64>> = en.parking_words(&p, 3).unwrap().into_iter().map(|w| w.into_letters()).collect();
    let naive: Vec<Vec<i64>> = words(1, 3, 3).into_iter().filter(|w| is_parking(Naive::Far, w)).collect();
    assert_eq!(listed, naive);
}

#[test]
fn words_to_set_matches_naive() {
    let en = Enumerator::new();
    for (name, rule) in [("right", Naive::Right), ("prime", Naive::Prime), ("closest", Naive::Closest)] {
        let p = builtin(name).unwrap();
        for s in [SpotSet::from([1, 2, 4]), SpotSet::from([-1, 0, 3, 4, 5]), SpotSet::from([2, 6])] {
            let elems: Vec<i64> = s.iter().collect();
            let naive = words(elems[0], *elems.last().unwrap(), s.len())
                .iter()
                .filter(|w| w.iter().all(|a| s.contains(*a)))
                .filter(|w| run(rule, w).into_iter().collect::<SpotSet>() == s)
                .count() as u128;
            assert_eq!(en.count_words_to_set(&p, &s, Via::Brute).unwrap(), naive);
            assert_eq!(en.count_words_to_set(&p, &s, Via::Formula).unwrap(), naive, "{name} {s}");
        }
    }
}
