//! Fixed-width bitsets over vertex indices.
//!
//! Vertices are 0-based indices below [`MAX_VERTICES`]. Every complex built
//! here stays well under that (the largest, X(F_5^3), has 124 vertices), so a
//! four-word array gives constant-time set algebra without allocation.

use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count a [`VertexSet`] can index.
pub const MAX_VERTICES: usize = 256;

const WORDS: usize = MAX_VERTICES / 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    /// Builds the set from the low bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self::empty();
        s.words[0] = mask;
        s
    }

    /// Returns the set as a single word if every member is below 64.
    pub fn as_mask(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES, "vertex {v} exceeds MAX_VERTICES");
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a |= b;
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a &= b;
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(other.words) {
            *a &= !b;
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn with(&self, v: usize) -> Self {
        let mut s = *self;
        s.insert(v);
        s
    }

    pub fn without(&self, v: usize) -> Self {
        let mut s = *self;
        s.remove(v);
        s
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            idx: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Position of `v` among the members (0-based), if present.
    pub fn rank_of(&self, v: usize) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        let (word, bit) = (v / 64, v % 64);
        let below: usize = self.words[..word]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        let mask = (1u64 << bit) - 1;
        Some(below + (self.words[word] & mask).count_ones() as usize)
    }

    /// All subsets, in increasing submask order of the member list.
    /// Panics when the set has more than 63 members.
    pub fn subsets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let members = self.to_vec();
        assert!(members.len() < 64, "too many members to enumerate subsets");
        let total = 1u64 << members.len();
        (0..total).map(move |bits| {
            let mut s = VertexSet::empty();
            let mut b = bits;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                s.insert(members[t]);
                b &= b - 1;
            }
            s
        })
    }
}

pub struct Iter {
    words: [u64; WORDS],
    idx: usize,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.idx < WORDS {
            let w = self.words[self.idx];
            if w != 0 {
                let t = w.trailing_zeros() as usize;
                self.words[self.idx] &= w - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
        }
        None
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Lexicographic order on the sorted member lists: {0,1} < {0,1,2} < {0,2} < {1}.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a: VertexSet = [1, 3, 70, 200].into_iter().collect();
        let b: VertexSet = [3, 4, 200].into_iter().collect();
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 200]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 70]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.last(), Some(200));
        assert_eq!(a.first(), Some(1));
        assert_eq!(a.rank_of(70), Some(2));
        assert!(a.intersection(&b).is_subset(&a));
        assert!(a.as_mask().is_none());
        assert_eq!(VertexSet::from_mask(0b101).to_vec(), vec![0, 2]);
    }

    #[test]
    fn lex_order_on_member_lists() {
        let s = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
        let mut v = vec![s(&[1]), s(&[0, 2]), s(&[0, 1, 2]), s(&[0, 1])];
        v.sort();
        assert_eq!(v, vec![s(&[0, 1]), s(&[0, 1, 2]), s(&[0, 2]), s(&[1])]);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s: VertexSet = [2, 5, 9].into_iter().collect();
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(&s)));
    }
}
