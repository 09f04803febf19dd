mod common;

use common::{run, words, Naive};
use parking_core::colored::{ColoredLetter, ColoredProcedure, ColoredWord, LanguagePredicate};
use parking_core::procedures::builtin;
use parking_core::Enumerator;

#[test]
fn one_color_lbs_is_plain_lbs_on_distinct_values() {
    let p = ColoredProcedure::<u8>::lbs();
    for len in 1..=4 {
        for w in words(1, 5, len) {
            let cw = ColoredWord::from_parts(&w, &vec![0u8; len]);
            let distinct = {
                let mut v = w.clone();
                v.sort_unstable();
                v.windows(2).all(|p| p[0] != p[1])
            };
            match p.run(&cw) {
                Ok(r) => {
                    assert!(distinct);
                    assert_eq!(r.parked, run(Naive::Lbs, &w));
                }
                Err(_) => assert!(!distinct),
            }
        }
    }
}

#[test]
fn lifted_procedures_ignore_colors() {
    for name in ["right", "closest", "far", "lbs"] {
        let plain = builtin(name).unwrap();
        let lifted = ColoredProcedure::lift(plain.clone());
        for w in words(0, 3, 4) {
            let colors: Vec<u8> = w.iter().map(|a| (a * 7 % 3) as u8).collect();
            let cw = ColoredWord::from_parts(&w, &colors);
            assert_eq!(lifted.run(&cw).unwrap(), plain.run(&w), "{name} {w:?}");
        }
    }
}

#[test]
fn distinct_letters_closed_on_window() {
    let lang = LanguagePredicate::<u8>::distinct_letters();
    for w in words(1, 4, 3) {
        for colors in words(0, 1, 3) {
            let colors: Vec<u8> = colors.iter().map(|&c| c as u8).collect();
            let cw = ColoredWord::from_parts(&w, &colors);
            if lang.contains(&cw) {
                assert!(lang.contains(&cw.rotate_values(3)));
                assert!((0..3).all(|i| lang.contains(&cw.without(i))));
            }
        }
    }
}

#[test]
fn two_color_classes() {
    let en = Enumerator::new();
    for r in 1..=3 {
        let rep = en.colored_orbit_audit(&ColoredProcedure::lbs(), r, &['a', 'b']).unwrap();
        assert!(rep.all_one(), "r={r}: {rep:?}");
        assert_eq!(rep.class_count, rep.total_parking);
    }
    let letter: ColoredLetter<char> = "2:b".parse().unwrap();
    assert_eq!(letter, ColoredLetter::new(2, 'b'));
}
