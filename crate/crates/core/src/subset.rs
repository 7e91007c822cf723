//! Membership masks over the elements of a group.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::Group;

type Words = SmallVec<[u64; 1]>;

/// A subset of a group, stored as a bitmask over element indices.
///
/// Groups of order at most 64 fit in one inline word, which is what every
/// exhaustive scan runs on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    words: Words,
    order: u32,
    tag: u64,
}

impl Subset {
    fn blank(order: usize, tag: u64) -> Self {
        Subset { words: SmallVec::from_elem(0, order.div_ceil(64).max(1)), order: order as u32, tag }
    }

    pub(crate) fn tag(&self) -> u64 {
        self.tag
    }

    /// Order of the group this subset lives in.
    pub fn universe(&self) -> usize {
        self.order as usize
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe() && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Panics if `x` is not an element of the group.
    pub fn insert(&mut self, x: usize) {
        assert!(x < self.universe(), "element {x} out of range");
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.universe() {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    /// The mask as a single word, for groups of order at most 64.
    pub fn word(&self) -> Option<u64> {
        (self.order <= 64).then(|| self.words[0])
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    fn same_group(&self, other: &Subset) {
        assert!(self.tag == other.tag && self.order == other.order, "subsets belong to different groups");
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.same_group(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Subset {
        self.same_group(other);
        Subset {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
            order: self.order,
            tag: self.tag,
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & b)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & !b)
    }
}

/// Masks compare as unsigned integers (highest element decides).
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tag
            .cmp(&other.tag)
            .then(self.order.cmp(&other.order))
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Set literal: ascending comma-joined indices, empty for the empty set.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Group {
    pub fn empty_set(&self) -> Subset {
        Subset::blank(self.order(), self.tag())
    }

    pub fn full_set(&self) -> Subset {
        let mut s = self.empty_set();
        let n = self.order();
        for (i, w) in s.words.iter_mut().enumerate() {
            let bits = n.saturating_sub(i * 64).min(64);
            *w = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn singleton(&self, x: usize) -> Subset {
        let mut s = self.empty_set();
        s.insert(x);
        s
    }

    /// Subset from element indices; rejects indices outside the group.
    pub fn subset(&self, elems: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let mut s = self.empty_set();
        for x in elems {
            self.check_index(x)?;
            s.insert(x);
        }
        Ok(s)
    }

    /// Subset from a single-word mask. Panics unless the group has order at
    /// most 64 and the mask has no bits beyond the order.
    pub fn subset_from_word(&self, mask: u64) -> Subset {
        assert!(self.order() <= 64, "single-word masks need order <= 64");
        assert!(mask & !self.full_word() == 0, "mask has bits beyond the group order");
        let mut s = self.empty_set();
        s.words[0] = mask;
        s
    }

    /// Mask of the whole group, for groups of order at most 64.
    pub fn full_word(&self) -> u64 {
        match self.order() {
            64 => u64::MAX,
            n if n < 64 => (1u64 << n) - 1,
            _ => panic!("group order exceeds one word"),
        }
    }

    /// Whether `s` is a subset of this group.
    pub fn owns(&self, s: &Subset) -> bool {
        s.tag == self.tag() && s.universe() == self.order()
    }

    /// Parses a set literal such as `"0,1,3"`; the empty string is the empty
    /// set. Indices may come in any order.
    pub fn parse_subset(&self, lit: &str) -> Result<Subset> {
        let lit = lit.trim();
        if lit.is_empty() {
            return Ok(self.empty_set());
        }
        let elems = lit
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| Error::Spec(format!("bad set literal token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.subset(elems)
    }
}
