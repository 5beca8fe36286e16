//! Dense bitsets over element ids.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A finite set of small non-negative integers stored as a bitmask.
///
/// Trailing zero words are always trimmed, so two sets are equal exactly when
/// their members are. The ordering is the numeric order of the masks read as
/// binary numbers (element 0 is the least significant bit); for sets of the
/// same carrier this refines inclusion: `a ⊆ b` implies `a <= b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / WORD];
        if n % WORD != 0 {
            words.push((1u64 << (n % WORD)) - 1);
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    /// Builds a set from the low bits of a mask.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: vec![mask] };
        s.trim();
        s
    }

    /// The low 64 bits of the mask.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / WORD, i % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let (w, b) = (i / WORD, i % WORD);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / WORD, i % WORD);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// One past the largest member, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn union_with(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.words.truncate(other.words.len());
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        self.trim();
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Hexadecimal rendering of the mask, most significant digit first.
    pub fn to_hex(&self) -> String {
        match self.words.split_last() {
            None => "0x0".to_string(),
            Some((top, rest)) => {
                let mut s = format!("0x{top:x}");
                for w in rest.iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Extend<usize> for ElementSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for i in iter {
            self.insert(i);
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_roundtrip() {
        let mut s = ElementSet::new();
        assert!(s.insert(3));
        assert!(s.insert(70));
        assert!(!s.insert(3));
        assert_eq!(s.to_vec(), vec![3, 70]);
        assert!(s.remove(70));
        assert_eq!(s, ElementSet::singleton(3));
        assert_eq!(s.bound(), 4);
    }

    #[test]
    fn order_is_numeric() {
        let a = ElementSet::from_mask(0b011);
        let b = ElementSet::from_mask(0b100);
        let c = ElementSet::singleton(64);
        assert!(a < b && b < c);
        assert!(ElementSet::new() < a);
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(ElementSet::full(0), ElementSet::new());
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(65).len(), 65);
        let s: ElementSet = [1, 3].into_iter().collect();
        assert_eq!(s.complement(5).to_vec(), vec![0, 2, 4]);
    }

    #[test]
    fn set_algebra() {
        let a: ElementSet = [0, 2, 100].into_iter().collect();
        let b: ElementSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 100]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 100]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(ElementSet::singleton(100).is_disjoint(&b));
    }

    #[test]
    fn hex_rendering() {
        assert_eq!(ElementSet::new().to_hex(), "0x0");
        assert_eq!(ElementSet::from_mask(0x35).to_hex(), "0x35");
        assert_eq!(ElementSet::singleton(64).to_hex(), "0x10000000000000000");
    }
}
