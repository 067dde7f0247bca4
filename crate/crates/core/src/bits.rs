//! Fixed-width bitsets over group element indices.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices of a fixed-order group.
///
/// The width is fixed at construction; two sets are only comparable when
/// they were created for the same universe size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: u32,
    words: Box<[u64]>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            universe: universe as u32,
            words: vec![0u64; universe.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe());
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe());
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.universe, other.universe);
        ElemSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.universe, other.universe);
        ElemSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    /// Lowercase hex, most significant word first, no separators.
    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        for (k, w) in self.words.iter().rev().enumerate() {
            if k == 0 {
                out.push_str(&format!("{w:x}"));
            } else {
                out.push_str(&format!("{w:016x}"));
            }
        }
        out
    }

    pub fn from_hex(universe: usize, hex: &str) -> Option<ElemSet> {
        let mut s = Self::empty(universe);
        let digits: Vec<u32> = hex
            .chars()
            .rev()
            .map(|c| c.to_digit(16))
            .collect::<Option<_>>()?;
        for (k, d) in digits.iter().enumerate() {
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    let i = k * 4 + b;
                    if i >= universe {
                        return None;
                    }
                    s.insert(i);
                }
            }
        }
        Some(s)
    }
}

impl Ord for ElemSet {
    /// Orders by cardinality first, then by the member index sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
