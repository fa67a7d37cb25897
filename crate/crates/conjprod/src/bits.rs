//! Dense bit-vector over element indices.
//!
//! Scan order is little-endian on indices: word 0 holds indices 0..64 and
//! iteration always proceeds in increasing index order, so set traversal
//! and early-exit behavior are deterministic.

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn new(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 != 0
    }

    /// Sets bit `i`, returning true if it was previously clear.
    #[inline]
    pub fn set(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn full(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![!0u64; len.div_ceil(64)],
        };
        v.trim_tail();
        v
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    fn trim_tail(&mut self) {
        let excess = self.words.len() * 64 - self.len;
        if excess > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> excess;
            }
        }
    }

    /// Iterates set indices in increasing order.
    pub fn iter_ones(&self) -> OnesIter<'_> {
        OnesIter {
            bits: self,
            word_idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Compares as sorted index lists: the set owning the lowest
    /// differing index is the smaller one.
    pub fn cmp_index_lex(&self, other: &BitVec) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let low = diff.trailing_zeros();
                return if a >> low & 1 != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Deterministic 128-bit digest used as a dedup key and cache key.
    pub fn digest(&self) -> u128 {
        let mut h1: u64 = 0x517c_c1b7_2722_0a95;
        let mut h2: u64 = 0x2545_f491_4f6c_dd1d;
        for (i, &w) in self.words.iter().enumerate() {
            h1 = (h1 ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (i as u64);
            h1 ^= h1 >> 29;
            h2 = (h2 ^ w.rotate_left(23)).wrapping_mul(0xff51_afd7_ed55_8ccd);
            h2 ^= h2 >> 33;
        }
        h1 = h1.wrapping_add(self.len as u64);
        ((h1 as u128) << 64) | h2 as u128
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.iter_ones()).finish()
    }
}

pub struct OnesIter<'a> {
    bits: &'a BitVec,
    word_idx: usize,
    cur: u64,
}

impl Iterator for OnesIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = BitVec::new(130);
        assert!(b.set(0));
        assert!(b.set(64));
        assert!(b.set(129));
        assert!(!b.set(129));
        assert_eq!(b.count(), 3);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn full_is_full() {
        let b = BitVec::full(67);
        assert_eq!(b.count(), 67);
        assert!(b.is_full());
    }

    #[test]
    fn index_lex_order() {
        // {1,5,9} < {1,6,8}: lowest differing index 5 belongs to the left set
        let mut a = BitVec::new(16);
        let mut b = BitVec::new(16);
        for i in [1, 5, 9] {
            a.set(i);
        }
        for i in [1, 6, 8] {
            b.set(i);
        }
        assert_eq!(a.cmp_index_lex(&b), Ordering::Less);
        assert_eq!(b.cmp_index_lex(&a), Ordering::Greater);
        assert_eq!(a.cmp_index_lex(&a.clone()), Ordering::Equal);
    }
}
