//! Fixed-width bit sets used for adjacency rows and vertex sets.

use std::fmt;

const WORD: usize = 64;

/// A set of vertex indices `0..width`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    words: Vec<u64>,
    width: usize,
}

impl Bits {
    pub fn new(width: usize) -> Self {
        Bits {
            words: vec![0; width.div_ceil(WORD)],
            width,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut b = Bits::new(width);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.trim();
        b
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(width: usize, items: I) -> Self {
        let mut b = Bits::new(width);
        for i in items {
            b.insert(i);
        }
        b
    }

    /// Set containing every index in `lo..hi`.
    pub fn range(width: usize, lo: usize, hi: usize) -> Self {
        let mut b = Bits::new(width);
        for i in lo..hi.min(width) {
            b.insert(i);
        }
        b
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.width, "bit {i} out of width {}", self.width);
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
    }

    #[inline]
    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> Bits {
        let mut r = self.clone();
        for w in r.words.iter_mut() {
            *w = !*w;
        }
        r.trim();
        r
    }

    /// `|self ∪ other|` without allocating.
    #[inline]
    pub fn union_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.next_from(0)
    }

    /// Smallest member `>= from`.
    pub fn next_from(&self, from: usize) -> Option<usize> {
        if from >= self.width {
            return None;
        }
        let mut wi = from / WORD;
        let mut w = self.words[wi] & (u64::MAX << (from % WORD));
        loop {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn iter(&self) -> BitsIter<'_> {
        BitsIter {
            bits: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitsIter<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for BitsIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_across_word_boundary() {
        let mut a = Bits::new(130);
        a.insert(0);
        a.insert(63);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.count(), 4);
        assert_eq!(a.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(a.next_from(1), Some(63));
        assert_eq!(a.next_from(65), Some(129));
        assert_eq!(a.next_from(130), None);
        let c = a.complement();
        assert_eq!(c.count(), 126);
        assert!(!c.contains(129));
        assert_eq!(Bits::full(130).count(), 130);
        let b = Bits::range(130, 60, 70);
        assert_eq!(a.intersection_count(&b), 2);
        assert_eq!(a.union_count(&b), 12);
    }
}
