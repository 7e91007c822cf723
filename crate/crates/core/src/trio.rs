//! Trios: triples `(A, B, C)` of non-empty subsets with `A + B + C != G`.
//!
//! A trio caches its sumset, the set of missing elements and the period of
//! the sumset at construction. The deficiency of a trio over a finite group
//! is `|A| + |B| + |C| - |G|`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, QuotientView, Subgroup};
use crate::subset::Subset;

#[derive(Debug, Clone)]
pub struct Trio<'g> {
    group: &'g Group,
    a: Subset,
    b: Subset,
    c: Subset,
    sum: Subset,
    missing: Subset,
    period: Subgroup,
}

/// Summary numbers of a trio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrioStats {
    pub deficiency: i64,
    pub period_size: usize,
    pub is_aperiodic: bool,
    pub is_maximal: bool,
    pub is_deficient: bool,
}

/// `g0 - complement(x + y)`: the largest third component that keeps `g0`
/// outside the sumset.
fn largest_partner(g: &Group, g0: usize, x: &Subset, y: &Subset) -> Subset {
    g.reflect(g0, &g.complement(&g.sumset(x, y)))
}

impl<'g> Trio<'g> {
    pub fn new(g: &'g Group, a: Subset, b: Subset, c: Subset) -> Result<Self> {
        for (name, s) in [("A", &a), ("B", &b), ("C", &c)] {
            if !g.owns(s) {
                return Err(Error::Contract(format!("component {name} is not a subset of {g}")));
            }
            if s.is_empty() {
                return Err(Error::NotATrio(format!("component {name} is empty")));
            }
        }
        let sum = g.sumset(&g.sumset(&a, &b), &c);
        if sum.is_full() {
            return Err(Error::NotATrio(format!("{a};{b};{c} sums to the whole group")));
        }
        let missing = g.complement(&sum);
        let period = g.period(&sum);
        Ok(Trio { group: g, a, b, c, sum, missing, period })
    }

    /// Builds a trio from set literals joined by `;`, e.g. `"0,2;0,2;1,3"`.
    pub fn parse(g: &'g Group, lit: &str) -> Result<Self> {
        let parts: Vec<&str> = lit.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Spec(format!("trio literal needs three sets, got {}", parts.len())));
        }
        Trio::new(g, g.parse_subset(parts[0])?, g.parse_subset(parts[1])?, g.parse_subset(parts[2])?)
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn a(&self) -> &Subset {
        &self.a
    }

    pub fn b(&self) -> &Subset {
        &self.b
    }

    pub fn c(&self) -> &Subset {
        &self.c
    }

    pub fn components(&self) -> [&Subset; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `A + B + C`.
    pub fn sum(&self) -> &Subset {
        &self.sum
    }

    /// `G \ (A + B + C)`, never empty.
    pub fn missing(&self) -> &Subset {
        &self.missing
    }

    /// Period of `A + B + C`.
    pub fn period(&self) -> &Subgroup {
        &self.period
    }

    pub fn deficiency(&self) -> i64 {
        let d = (self.a.len() + self.b.len() + self.c.len()) as i64 - self.group.order() as i64;
        assert_eq!(d, self.deficiency_via_complement(), "deficiency formulas disagree");
        d
    }

    /// `-|G \ A| + |B| + |C|`.
    pub fn deficiency_via_complement(&self) -> i64 {
        -((self.group.order() - self.a.len()) as i64) + self.b.len() as i64 + self.c.len() as i64
    }

    pub fn is_deficient(&self) -> bool {
        self.deficiency() > 0
    }

    pub fn is_aperiodic(&self) -> bool {
        self.period.is_trivial()
    }

    pub fn is_g_trio(&self, g0: usize) -> bool {
        self.missing.contains(g0)
    }

    /// Whether `A = g0 - ~(B+C)`, `B = g0 - ~(C+A)` and `C = g0 - ~(A+B)`.
    /// `g0` must be missing from the sumset.
    pub fn is_maximal_at(&self, g0: usize) -> bool {
        let g = self.group;
        self.is_g_trio(g0)
            && self.a == largest_partner(g, g0, &self.b, &self.c)
            && self.b == largest_partner(g, g0, &self.c, &self.a)
            && self.c == largest_partner(g, g0, &self.a, &self.b)
    }

    /// Whether no trio properly contains this one.
    ///
    /// The defining equalities are evaluated at every missing element; they
    /// must agree, and this panics with the offending element if they do not.
    pub fn is_maximal(&self) -> bool {
        let mut verdicts = self.missing.iter().map(|g0| (g0, self.is_maximal_at(g0)));
        let (first_g0, first) = verdicts.next().expect("a trio misses at least one element");
        for (g0, v) in verdicts {
            assert_eq!(v, first, "maximality of {self} differs between missing elements {first_g0} and {g0}");
        }
        first
    }

    pub fn stats(&self) -> TrioStats {
        let deficiency = self.deficiency();
        TrioStats {
            deficiency,
            period_size: self.period.size(),
            is_aperiodic: self.is_aperiodic(),
            is_maximal: self.is_maximal(),
            is_deficient: deficiency > 0,
        }
    }

    fn require_missing(&self, g0: usize) -> Result<()> {
        self.group.check_index(g0)?;
        if self.is_g_trio(g0) {
            Ok(())
        } else {
            Err(Error::Contract(format!("{g0} lies in the sumset of {self}")))
        }
    }

    /// Replaces `C` by `g0 - ~(A+B)`, the largest `C'` keeping `g0` missing.
    ///
    /// Checks that `C ⊆ C'`, that the period can only shrink, and that the
    /// result has sumset `G \ (g0 + H')` with `π(C') = H'`.
    pub fn khinchin_extend(&self, g0: usize) -> Result<Trio<'g>> {
        self.require_missing(g0)?;
        let g = self.group;
        let c2 = largest_partner(g, g0, &self.a, &self.b);
        let out = Trio::new(g, self.a.clone(), self.b.clone(), c2)
            .map_err(|e| Error::Violation(format!("extension of {self} at {g0} is not a trio: {e}")))?;
        if !self.c.is_subset_of(&out.c) {
            return Err(Error::Violation(format!("extension of {self} at {g0} lost elements of C")));
        }
        if !out.period.is_subgroup_of(&self.period) {
            return Err(Error::Violation(format!("extension of {self} at {g0} grew the period")));
        }
        let coset = g.translate(out.period.members(), g0);
        if out.sum != g.complement(&coset) || g.period(&out.c) != out.period {
            return Err(Error::Violation(format!("extension {out} of {self} is not the complement of a period coset")));
        }
        Ok(out)
    }

    /// Embeds the trio into a maximal `g0`-trio by enlarging `A`, then `B`,
    /// then `C`.
    ///
    /// Checks containment, maximality of the result and that its period is a
    /// subgroup of the original period. Maximal trios are fixed points.
    pub fn complete_to_maximal(&self, g0: usize) -> Result<Trio<'g>> {
        self.require_missing(g0)?;
        let g = self.group;
        let a2 = largest_partner(g, g0, &self.b, &self.c);
        let b2 = largest_partner(g, g0, &a2, &self.c);
        let c2 = largest_partner(g, g0, &a2, &b2);
        let out = Trio::new(g, a2, b2, c2)
            .map_err(|e| Error::Violation(format!("completion of {self} at {g0} is not a trio: {e}")))?;
        let witness = |what: &str| Error::Violation(format!("completion {out} of {self} at {g0}: {what}"));
        if !(self.a.is_subset_of(&out.a) && self.b.is_subset_of(&out.b) && self.c.is_subset_of(&out.c)) {
            return Err(witness("does not contain the original trio"));
        }
        if !out.is_maximal_at(g0) {
            return Err(witness("is not maximal"));
        }
        if !out.period.is_subgroup_of(&self.period) {
            return Err(witness("period is not below the original period"));
        }
        if out.is_aperiodic() && out.missing.len() != 1 {
            return Err(witness("aperiodic but misses more than one element"));
        }
        Ok(out)
    }

    /// Images of the components in `G/H`, for `H` a subgroup of the period.
    /// When `H` is the period itself the image is aperiodic.
    pub fn quotient<'q>(&self, view: &'q QuotientView) -> Result<Trio<'q>> {
        let h = view.kernel();
        if !self.group.owns(h.members()) {
            return Err(Error::Contract("quotient is not over the trio's group".into()));
        }
        if !h.members().is_subset_of(self.period.members()) {
            return Err(Error::Contract(format!(
                "subgroup {{{}}} is not contained in the trio period {{{}}}",
                h.members(),
                self.period.members()
            )));
        }
        let q = view.quotient();
        let out = Trio::new(q, view.project_set(&self.a), view.project_set(&self.b), view.project_set(&self.c))
            .map_err(|e| Error::Violation(format!("image of {self} is not a trio: {e}")))?;
        if h == &self.period && !out.is_aperiodic() {
            return Err(Error::Violation(format!("image of {self} modulo its period is periodic")));
        }
        Ok(out)
    }
}

impl PartialEq for Trio<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl Eq for Trio<'_> {}

/// Trio literal `A;B;C`.
impl fmt::Display for Trio<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.a, self.b, self.c)
    }
}
