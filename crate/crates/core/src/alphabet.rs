//! Letters, words, weight and depth, and enumeration of resonant words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::AlphabetError;

/// Exponent shift `(n1, n2)` of a homogeneous operator.
///
/// Ordered by `(n1, n2)`. Sums of letters (used by mould composition) may
/// leave the admissible range, so the constructor does not validate; use
/// [`Letter::checked`] for user input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub n1: i32,
    pub n2: i32,
}

impl Letter {
    pub const fn new(n1: i32, n2: i32) -> Self {
        Letter { n1, n2 }
    }

    pub fn checked(n1: i32, n2: i32) -> Result<Self, AlphabetError> {
        if n1 < -1 || n2 < -1 || n1 + n2 < 1 {
            return Err(AlphabetError::InvalidLetter(n1, n2));
        }
        Ok(Letter { n1, n2 })
    }

    /// `n1 − n2`; the eigenvalue weight is `i` times this.
    pub fn weight(&self) -> i64 {
        (self.n1 - self.n2) as i64
    }

    pub fn depth(&self) -> i64 {
        (self.n1 + self.n2) as i64
    }

    /// Degree of the component this letter comes from.
    pub fn component(&self) -> u32 {
        (self.n1 + self.n2 + 1) as u32
    }

    pub fn add(&self, other: &Letter) -> Letter {
        Letter::new(self.n1 + other.n1, self.n2 + other.n2)
    }

    pub fn mirror(&self) -> Letter {
        Letter::new(self.n2, self.n1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

impl FromStr for Letter {
    type Err = AlphabetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlphabetError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let n1: i32 = a.trim().parse().map_err(|_| bad())?;
        let n2: i32 = b.trim().parse().map_err(|_| bad())?;
        Letter::checked(n1, n2)
    }
}

/// A finite sequence of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(Letter::weight).sum()
    }

    pub fn depth(&self) -> i64 {
        self.0.iter().map(Letter::depth).sum()
    }

    pub fn is_resonant(&self) -> bool {
        self.weight() == 0
    }

    /// Sequence of letter weights, the key of the correction mould.
    pub fn weights(&self) -> Vec<i64> {
        self.0.iter().map(Letter::weight).collect()
    }

    /// Componentwise sum `(|n|¹, |n|²)`.
    pub fn total(&self) -> Letter {
        self.0.iter().fold(Letter::new(0, 0), |acc, l| acc.add(l))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Word {
    type Err = AlphabetError;
    /// Parses `(1,0).(0,1)`; `()` is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "()" || t.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut rest = t;
        loop {
            let close = rest
                .find(')')
                .ok_or_else(|| AlphabetError::Parse(s.to_string()))?;
            letters.push(rest[..=close].parse()?);
            rest = rest[close + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest
                .strip_prefix('.')
                .ok_or_else(|| AlphabetError::Parse(s.to_string()))?
                .trim_start();
        }
        Ok(Word(letters))
    }
}

fn check_component(r: u32) -> Result<(), AlphabetError> {
    if r < 2 {
        Err(AlphabetError::ComponentTooSmall(r as i64))
    } else {
        Ok(())
    }
}

/// Letters of the homogeneous component of degree `r`, listed from `(r,−1)`
/// down to `(−1,r)`.
pub fn alphabet_of_component(r: u32) -> Result<Vec<Letter>, AlphabetError> {
    check_component(r)?;
    let r = r as i32;
    let mut out = vec![Letter::new(r, -1)];
    for k in (1..=r).rev() {
        out.push(Letter::new(k - 1, r - k));
    }
    out.push(Letter::new(-1, r));
    Ok(out)
}

/// The weight-zero letter of component `r`, present only for odd `r`.
pub fn resonant_letter_of(r: u32) -> Option<Letter> {
    if r < 2 || r.is_multiple_of(2) {
        return None;
    }
    let c = ((r - 1) / 2) as i32;
    Some(Letter::new(c, c))
}

/// Sorted union of the alphabets of the given components.
pub fn alphabet_of(components: &BTreeSet<u32>) -> Result<Vec<Letter>, AlphabetError> {
    let mut out = Vec::new();
    for &r in components {
        out.extend(alphabet_of_component(r)?);
    }
    out.sort();
    Ok(out)
}

/// All resonant words of the given total depth over the union of the
/// alphabets, up to `max_len` letters (default: `depth`). With `prune`,
/// words of length at least 2 containing a weight-0 letter are dropped.
/// Output is ordered by length, then letterwise.
pub fn enumerate_resonant_words(
    components: &BTreeSet<u32>,
    depth: u32,
    max_len: Option<usize>,
    prune: bool,
) -> Result<Vec<Word>, AlphabetError> {
    let letters = alphabet_of(components)?;
    let max_len = max_len.unwrap_or(depth as usize);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    enumerate_rec(&letters, depth as i64, max_len, prune, &mut cur, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn enumerate_rec(
    letters: &[Letter],
    remaining: i64,
    max_len: usize,
    prune: bool,
    cur: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        let w = Word(cur.clone());
        if w.is_resonant() && !(prune && w.len() >= 2 && cur.iter().any(|l| l.weight() == 0)) {
            out.push(w);
        }
        return;
    }
    if cur.len() == max_len {
        return;
    }
    for l in letters {
        if l.depth() <= remaining {
            cur.push(*l);
            enumerate_rec(letters, remaining - l.depth(), max_len, prune, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn alphabets() {
        let a2 = alphabet_of_component(2).unwrap();
        assert_eq!(
            a2,
            vec![
                Letter::new(2, -1),
                Letter::new(1, 0),
                Letter::new(0, 1),
                Letter::new(-1, 2)
            ]
        );
        let a3 = alphabet_of_component(3).unwrap();
        assert_eq!(a3.len(), 5);
        assert!(a3.contains(&Letter::new(1, 1)));
        let a4 = alphabet_of_component(4).unwrap();
        assert_eq!(a4.len(), 6);
        assert!(a4.iter().all(|l| l.n1 != l.n2));
        assert!(alphabet_of_component(1).is_err());
    }

    #[test]
    fn resonant_letters() {
        assert_eq!(resonant_letter_of(3), Some(Letter::new(1, 1)));
        assert_eq!(resonant_letter_of(2), None);
        assert_eq!(resonant_letter_of(5), Some(Letter::new(2, 2)));
    }

    #[test]
    fn weights_and_depths() {
        assert_eq!(Word::empty().weight(), 0);
        assert_eq!(w("(1,0).(0,1)").weight(), 0);
        assert_eq!(w("(2,-1).(1,0)").weight(), 4);
        assert_eq!(w("(1,0).(0,1)").depth(), 2);
        assert_eq!(w("(1,1)").depth(), 2);
        assert_eq!(Word::empty().depth(), 0);
    }

    #[test]
    fn word_text() {
        let x = w("(1,0).(0,1)");
        assert_eq!(x.to_string(), "(1,0).(0,1)");
        assert_eq!(w(" (1,0) . (0,1) "), x);
        assert_eq!(w("()"), Word::empty());
        assert!("(1,0)(0,1)".parse::<Word>().is_err());
        assert!("(3,-2)".parse::<Word>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        let d2 = enumerate_resonant_words(&set(&[2]), 2, None, false).unwrap();
        let expected: Vec<Word> = [
            "(-1,2).(2,-1)",
            "(0,1).(1,0)",
            "(1,0).(0,1)",
            "(2,-1).(-1,2)",
        ]
        .iter()
        .map(|s| w(s))
        .collect();
        assert_eq!(d2, expected);
        let d4 = enumerate_resonant_words(&set(&[2]), 4, Some(4), false).unwrap();
        assert_eq!(d4.len(), 44);
        let c3 = enumerate_resonant_words(&set(&[3]), 2, Some(1), false).unwrap();
        assert_eq!(c3, vec![w("(1,1)")]);
    }

    #[test]
    fn pruning_drops_weight_zero_letters_in_longer_words() {
        let all = enumerate_resonant_words(&set(&[2, 3]), 4, None, false).unwrap();
        let pruned = enumerate_resonant_words(&set(&[2, 3]), 4, None, true).unwrap();
        assert!(pruned.len() < all.len());
        assert!(all.contains(&w("(1,1).(1,1)")));
        assert!(!pruned.contains(&w("(1,1).(1,1)")));
        assert!(!pruned.contains(&w("(1,0).(1,1).(0,1)")));
    }

    #[test]
    fn alphabets_are_disjoint() {
        for r in 2..8 {
            for s in (r + 1)..9 {
                let a: BTreeSet<_> = alphabet_of_component(r).unwrap().into_iter().collect();
                let b: BTreeSet<_> = alphabet_of_component(s).unwrap().into_iter().collect();
                assert!(a.is_disjoint(&b));
            }
        }
    }

    fn letter_strategy() -> impl Strategy<Value = Letter> {
        (2u32..7, 0usize..8).prop_map(|(r, i)| {
            let a = alphabet_of_component(r).unwrap();
            a[i % a.len()]
        })
    }

    proptest! {
        #[test]
        fn morphisms(u in proptest::collection::vec(letter_strategy(), 0..6),
                     v in proptest::collection::vec(letter_strategy(), 0..6)) {
            let (u, v) = (Word(u), Word(v));
            let uv = u.concat(&v);
            prop_assert_eq!(uv.weight(), u.weight() + v.weight());
            prop_assert_eq!(uv.depth(), u.depth() + v.depth());
        }

        #[test]
        fn alphabet_shape(r in 2u32..12) {
            let a = alphabet_of_component(r).unwrap();
            prop_assert_eq!(a.len(), r as usize + 2);
            prop_assert!(a.iter().all(|l| l.depth() == r as i64 - 1));
        }

        #[test]
        fn enumeration_closed_under_reversal(comps in proptest::collection::btree_set(2u32..5, 1..3), depth in 1u32..5) {
            let words = enumerate_resonant_words(&comps, depth, None, false).unwrap();
            let set: BTreeSet<_> = words.iter().cloned().collect();
            for x in &words {
                prop_assert!(set.contains(&x.reversed()));
            }
        }
    }
}
