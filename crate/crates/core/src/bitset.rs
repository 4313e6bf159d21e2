//! Growable bitset with a canonical encoding: trailing zero words are never
//! stored, so two sets with the same members compare and hash equal no matter
//! how they were built.

use std::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new() -> Self {
        BitSet { words: Vec::new() }
    }

    /// Set containing every element of `0..n`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = BitSet { words };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Largest element plus one (0 for the empty set).
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * 64 + 64 - w.leading_zeros() as usize,
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Shift every element up by `offset`.
    pub fn shifted(&self, offset: usize) -> BitSet {
        self.iter().map(|i| i + offset).collect()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Word-level accumulator used in hot loops where the canonical form is not needed.
#[derive(Clone, Debug)]
pub(crate) struct WordBuf {
    pub words: Vec<u64>,
}

impl WordBuf {
    pub fn zeros(nwords: usize) -> Self {
        WordBuf { words: vec![0; nwords] }
    }

    #[inline]
    pub fn or_bits(&mut self, s: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(s.words()) {
            *a |= b;
        }
    }

    #[inline]
    pub fn or_buf(&mut self, s: &WordBuf) {
        for (a, b) in self.words.iter_mut().zip(&s.words) {
            *a |= b;
        }
    }

    #[inline]
    pub fn covers(&self, full: &WordBuf) -> bool {
        self.words.iter().zip(&full.words).all(|(a, f)| a & f == *f)
    }

    /// True when `self | extra` covers `full`.
    #[inline]
    pub fn covers_with(&self, extra: &BitSet, full: &WordBuf) -> bool {
        let ew = extra.words();
        self.words
            .iter()
            .zip(&full.words)
            .enumerate()
            .all(|(i, (a, f))| (a | ew.get(i).copied().unwrap_or(0)) & f == *f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_after_removal() {
        let mut a = BitSet::new();
        a.insert(130);
        a.insert(3);
        a.remove(130);
        let b: BitSet = [3].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.words().len(), 1);
    }

    #[test]
    fn full_and_bound() {
        let f = BitSet::full(70);
        assert_eq!(f.len(), 70);
        assert_eq!(f.bound(), 70);
        assert!(BitSet::full(0).is_empty());
        assert_eq!(f.iter().last(), Some(69));
    }

    #[test]
    fn subset_and_difference() {
        let a: BitSet = [1, 5, 64].into_iter().collect();
        let b: BitSet = [1, 2, 5, 64, 100].into_iter().collect();
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(b.difference(&a).iter().collect::<Vec<_>>(), vec![2, 100]);
        assert_eq!(a.shifted(2).iter().collect::<Vec<_>>(), vec![3, 7, 66]);
    }
}
