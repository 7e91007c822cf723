//! Subset arithmetic: sumsets, translates, complements and periods.
//!
//! All operations panic when handed a subset of another group; sets built
//! from user input go through [`Group::parse_subset`] which validates first.

use crate::group::{Group, Subgroup};
use crate::subset::Subset;

impl Group {
    fn assert_owns(&self, s: &Subset) {
        assert!(self.owns(s), "subset belongs to a different group");
    }

    /// `{ x + y : x in a, y in b }`.
    ///
    /// Folds translates of the larger operand over the elements of the
    /// smaller one.
    pub fn sumset(&self, a: &Subset, b: &Subset) -> Subset {
        self.assert_owns(a);
        self.assert_owns(b);
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if let (Some(sw), Some(lw)) = (small.word(), large.word()) {
            return self.subset_from_word(self.sumset_word(sw, lw));
        }
        let mut out = self.empty_set();
        for x in small.iter() {
            for y in large.iter() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// Sumset of single-word masks; iterates the bits of `small`.
    #[inline]
    pub(crate) fn sumset_word(&self, mut small: u64, large: u64) -> u64 {
        let full = self.full_word();
        let mut out = 0;
        while small != 0 && out != full {
            let x = small.trailing_zeros() as usize;
            small &= small - 1;
            out |= self.translate_word(large, x);
        }
        out
    }

    /// `a - b = { x - y : x in a, y in b }`.
    pub fn difference_set(&self, a: &Subset, b: &Subset) -> Subset {
        self.sumset(a, &self.negate_set(b))
    }

    /// `G \ s`.
    pub fn complement(&self, s: &Subset) -> Subset {
        self.assert_owns(s);
        self.full_set().difference(s)
    }

    /// `s + x`.
    pub fn translate(&self, s: &Subset, x: usize) -> Subset {
        self.assert_owns(s);
        self.check_index(x).expect("translation element out of range");
        if let Some(w) = s.word() {
            return self.subset_from_word(self.translate_word(w, x));
        }
        let mut out = self.empty_set();
        for y in s.iter() {
            out.insert(self.add(y, x));
        }
        out
    }

    /// `-s`.
    pub fn negate_set(&self, s: &Subset) -> Subset {
        self.assert_owns(s);
        let mut out = self.empty_set();
        for y in s.iter() {
            out.insert(self.neg(y));
        }
        out
    }

    /// `x - s = { x - y : y in s }`.
    pub fn reflect(&self, x: usize, s: &Subset) -> Subset {
        self.translate(&self.negate_set(s), x)
    }

    /// The period (stabilizer) `{ h : s + h = s }`. The empty set has the
    /// whole group as its period.
    pub fn period(&self, s: &Subset) -> Subgroup {
        self.assert_owns(s);
        if let Some(w) = s.word() {
            return Subgroup::from_closed(self, self.subset_from_word(self.period_word(w)));
        }
        let Some(s0) = s.min() else {
            return self.whole_subgroup();
        };
        // any stabilizing h maps s0 into s, so h lies in s - s0
        let mut members = self.empty_set();
        for y in s.iter() {
            let h = self.sub(y, s0);
            if s.iter().all(|z| s.contains(self.add(z, h))) {
                members.insert(h);
            }
        }
        Subgroup::from_closed(self, members)
    }

    /// Period of a single-word mask, as a mask.
    #[inline]
    pub(crate) fn period_word(&self, s: u64) -> u64 {
        if s == 0 {
            return self.full_word();
        }
        let s0 = s.trailing_zeros() as usize;
        let neg_s0 = self.neg(s0);
        let mut rest = s;
        let mut out = 0;
        while rest != 0 {
            let y = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let h = self.add(y, neg_s0);
            if self.translate_word(s, h) == s {
                out |= 1 << h;
            }
        }
        out
    }

    /// The smallest subgroup containing `s`.
    pub fn generated_subgroup(&self, s: &Subset) -> Subgroup {
        self.assert_owns(s);
        let mut h = s.clone();
        h.insert(0);
        // in a finite group closure under addition already gives a subgroup
        loop {
            let next = h.union(&self.sumset(&h, &h));
            if next == h {
                return Subgroup::from_closed(self, h);
            }
            h = next;
        }
    }

    /// Computes `S - S̄`, `S̄ - S` and the complement of `π(S)` and checks that
    /// the three coincide and that `π(S - S̄) = π(S)`.
    pub fn complement_identity_check(&self, s: &Subset) -> ComplementIdentity {
        self.assert_owns(s);
        let period = self.period(s);
        let rhs = self.complement(period.members());
        if s.is_empty() || s.is_full() {
            return ComplementIdentity {
                vacuous: true,
                s_minus_complement: self.empty_set(),
                complement_minus_s: self.empty_set(),
                complement_of_period: rhs,
                period_match: true,
            };
        }
        let sbar = self.complement(s);
        let lhs1 = self.difference_set(s, &sbar);
        let lhs2 = self.difference_set(&sbar, s);
        let period_match = self.period(&lhs1) == period;
        ComplementIdentity {
            vacuous: false,
            s_minus_complement: lhs1,
            complement_minus_s: lhs2,
            complement_of_period: rhs,
            period_match,
        }
    }
}

/// The pieces of the complement identity for one set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementIdentity {
    /// `S` was empty or the whole group.
    pub vacuous: bool,
    pub s_minus_complement: Subset,
    pub complement_minus_s: Subset,
    pub complement_of_period: Subset,
    pub period_match: bool,
}

impl ComplementIdentity {
    pub fn holds(&self) -> bool {
        self.vacuous
            || (self.period_match
                && self.s_minus_complement == self.complement_of_period
                && self.complement_minus_s == self.complement_of_period)
    }
}
