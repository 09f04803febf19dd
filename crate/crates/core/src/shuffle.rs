//! Shuffles (order-preserving interleavings) of words and multinomials.

use crate::words::Word;

/// `n! / (k_1! ... k_m!)` with `n = k_1 + ... + k_m`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in parts {
        // acc * binom(n + k, k), built one factor at a time so every
        // intermediate quotient is exact
        for j in 1..=k as u128 {
            n += 1;
            acc = acc * n / j;
        }
    }
    acc
}

pub fn shuffle_count(parts: &[Word]) -> u128 {
    let sizes: Vec<usize> = parts.iter().map(|w| w.len()).collect();
    multinomial(&sizes)
}

/// Iterates over every shuffle of `parts`, each interleaving once.
///
/// An interleaving is a sequence of part indices; those are generated as the
/// distinct permutations of a sorted multiset in lexicographic order.
pub fn shuffles(parts: &[Word]) -> Shuffles<'_> {
    let mut pattern = Vec::new();
    for (j, w) in parts.iter().enumerate() {
        pattern.extend(std::iter::repeat_n(j, w.len()));
    }
    Shuffles {
        parts,
        pattern: Some(pattern),
    }
}

pub struct Shuffles<'a> {
    parts: &'a [Word],
    pattern: Option<Vec<usize>>,
}

impl Iterator for Shuffles<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let pattern = self.pattern.as_mut()?;
        let mut cursors = vec![0usize; self.parts.len()];
        let word = pattern
            .iter()
            .map(|&j| {
                let a = self.parts[j][cursors[j]];
                cursors[j] += 1;
                a
            })
            .collect();
        if !next_permutation(pattern) {
            self.pattern = None;
        }
        Some(word)
    }
}

/// Advances `v` to the next lexicographic permutation; false when `v` was the
/// last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &[i64]) -> Word {
        Word::from(s)
    }

    #[test]
    fn single_part() {
        let parts = [w(&[1, 2])];
        assert_eq!(shuffle_count(&parts), 1);
        assert_eq!(shuffles(&parts).collect::<Vec<_>>(), vec![w(&[1, 2])]);
    }

    #[test]
    fn two_singletons() {
        let parts = [w(&[1]), w(&[2])];
        assert_eq!(shuffle_count(&parts), 2);
        let all: Vec<_> = shuffles(&parts).collect();
        assert_eq!(all, vec![w(&[1, 2]), w(&[2, 1])]);
    }

    #[test]
    fn three_parts_match_explicit_generation() {
        // "ab", "c", "d" with a=1, b=2, c=3, d=4
        let parts = [w(&[1, 2]), w(&[3]), w(&[4])];
        assert_eq!(shuffle_count(&parts), 12);
        let all: BTreeSet<_> = shuffles(&parts).collect();
        assert_eq!(all.len(), 12);
        for s in &all {
            let pos = |x| s.iter().position(|&a| a == x).unwrap();
            assert!(pos(1) < pos(2));
        }
    }

    #[test]
    fn empty_parts() {
        assert_eq!(shuffle_count(&[]), 1);
        assert_eq!(shuffles(&[]).collect::<Vec<_>>(), vec![Word::empty()]);
        let parts = [Word::empty(), w(&[5])];
        assert_eq!(shuffles(&parts).count(), 1);
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2, 1, 1]), 12);
        assert_eq!(multinomial(&[3, 3]), 20);
        assert_eq!(multinomial(&[1, 1, 1, 1, 1, 1]), 720);
        assert_eq!(multinomial(&[0, 4]), 1);
    }
}
