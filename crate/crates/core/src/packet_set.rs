//! Fixed-width bit set over packet indices.

use std::fmt;

const WORD_BITS: usize = 64;

/// Set of packet indices in `0..universe`, stored one bit per packet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PacketSet {
    universe: usize,
    words: Vec<u64>,
}

impl PacketSet {
    pub fn empty(universe: usize) -> Self {
        PacketSet {
            universe,
            words: vec![0; universe.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for p in 0..universe {
            set.insert(p);
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for p in indices {
            set.insert(p);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `packet`; returns false if it was already present.
    ///
    /// Panics if `packet >= universe`.
    pub fn insert(&mut self, packet: usize) -> bool {
        assert!(packet < self.universe, "packet {packet} outside universe {}", self.universe);
        let (w, b) = (packet / WORD_BITS, packet % WORD_BITS);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, packet: usize) -> bool {
        packet < self.universe && self.words[packet / WORD_BITS] & (1 << (packet % WORD_BITS)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union_with(&mut self, other: &PacketSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &PacketSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Overwrites `self` with `a ∪ b` without allocating.
    #[inline]
    pub fn assign_union(&mut self, a: &PacketSet, b: &PacketSet) {
        for ((dst, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *dst = *x | *y;
        }
    }

    pub fn is_subset(&self, other: &PacketSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PacketSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_count_across_word_boundary() {
        let mut s = PacketSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(63));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
        assert!(s.contains(129));
        assert!(!s.contains(128));
        assert!(!s.contains(500));
    }

    #[test]
    fn union_intersection_subset() {
        let a = PacketSet::from_indices(70, [1, 2, 65]);
        let b = PacketSet::from_indices(70, [2, 3]);
        let mut u = a.clone();
        u.union_with(&b);
        assert_eq!(u.to_vec(), vec![1, 2, 3, 65]);
        let mut i = a.clone();
        i.intersect_with(&b);
        assert_eq!(i.to_vec(), vec![2]);
        assert!(i.is_subset(&a));
        assert!(!a.is_subset(&b));
        let mut scratch = PacketSet::empty(70);
        scratch.assign_union(&a, &b);
        assert_eq!(scratch, u);
    }

    #[test]
    #[should_panic]
    fn insert_outside_universe_panics() {
        PacketSet::empty(3).insert(3);
    }
}
