//! The `n`-transform of a set system.
//!
//! For sets `A_1, ..., A_n`, the transform sends the system to
//! `(τ_1, ..., τ_n)` where `τ_i` collects the elements lying in at least `i`
//! of the input sets. For `n = 2` this is the Dyson transform.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::subset::Subset;

/// Largest number of sets in a [`SetSystem`].
pub const MAX_SYSTEM_SIZE: usize = 8;

type Sizes = SmallVec<[usize; MAX_SYSTEM_SIZE]>;

/// An ordered list of subsets of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem<'g> {
    group: &'g Group,
    sets: Vec<Subset>,
}

/// Result of [`SetSystem::tau`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutcome<'g> {
    pub output: SetSystem<'g>,
    /// Number of input sets containing each element.
    pub multiplicity: Vec<u8>,
}

/// Which branch of the stop-condition dichotomy a system satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopCertificate<'g> {
    /// Translating `A_k` by `-a_k` makes the transform strictly majorize the
    /// size vector.
    ImprovingTranslation { translations: Vec<usize>, transformed: SetSystem<'g> },
    /// `A_k - A_k ⊆ π(A_{k-1})` for every `k >= 2`.
    NestedCosets,
}

/// Whether `upper` majorizes `lower` strictly: every prefix sum of `upper` is
/// at least that of `lower`, the totals agree, and some proper prefix is
/// strictly larger.
pub fn strictly_majorizes(upper: &[usize], lower: &[usize]) -> bool {
    assert_eq!(upper.len(), lower.len());
    let n = upper.len();
    let (mut su, mut sl, mut strict) = (0usize, 0usize, false);
    for k in 0..n {
        su += upper[k];
        sl += lower[k];
        if su < sl {
            return false;
        }
        if k + 1 < n && su > sl {
            strict = true;
        }
    }
    su == sl && strict
}

impl<'g> SetSystem<'g> {
    pub fn new(group: &'g Group, sets: Vec<Subset>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Spec("a set system needs at least one set".into()));
        }
        if sets.len() > MAX_SYSTEM_SIZE {
            return Err(Error::Capability(format!(
                "set systems are limited to {MAX_SYSTEM_SIZE} sets, got {}",
                sets.len()
            )));
        }
        if sets.iter().any(|s| !group.owns(s)) {
            return Err(Error::Contract("set system mixes subsets of different groups".into()));
        }
        Ok(SetSystem { group, sets })
    }

    /// Parses set literals joined by `;`.
    pub fn parse(group: &'g Group, lit: &str) -> Result<Self> {
        let sets = lit.split(';').map(|s| group.parse_subset(s)).collect::<Result<Vec<_>>>()?;
        SetSystem::new(group, sets)
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Subset::len).collect()
    }

    pub fn is_nested(&self) -> bool {
        self.sets.windows(2).all(|w| w[1].is_subset_of(&w[0]))
    }

    /// Number of sets containing `x`.
    pub fn multiplicity(&self, x: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(x)).count()
    }

    pub fn tau(&self) -> TransformOutcome<'g> {
        let n = self.len();
        let mut levels = vec![self.group.empty_set(); n];
        // levels[i] holds the elements seen in at least i + 1 sets so far
        for s in &self.sets {
            for i in (1..n).rev() {
                levels[i] = levels[i].union(&levels[i - 1].intersection(s));
            }
            levels[0] = levels[0].union(s);
        }
        let multiplicity = (0..self.group.order()).map(|x| self.multiplicity(x) as u8).collect();
        TransformOutcome { output: SetSystem { group: self.group, sets: levels }, multiplicity }
    }

    /// Searches translations `(a_1, ..., a_n)` with `a_k ∈ A_k`, in
    /// lexicographic order of element indices, for one whose transform
    /// strictly majorizes the size vector. If there is none, validates the
    /// nested-coset branch instead; failure of both branches is returned as
    /// [`Error::Violation`].
    pub fn find_improving_translation(&self) -> Result<StopCertificate<'g>> {
        let n = self.len();
        if n < 2 {
            return Err(Error::Contract("stop condition needs at least two sets".into()));
        }
        if let Some(k) = self.sets.iter().position(Subset::is_empty) {
            return Err(Error::Contract(format!("set {} of the system is empty", k + 1)));
        }
        let g = self.group;
        let sizes: Sizes = self.sets.iter().map(Subset::len).collect();
        let elems: Vec<Vec<usize>> = self.sets.iter().map(|s| s.iter().collect()).collect();
        // shifted[k][j] = A_k - elems[k][j]
        let shifted: Vec<Vec<Subset>> = self
            .sets
            .iter()
            .zip(&elems)
            .map(|(s, es)| es.iter().map(|&a| g.translate(s, g.neg(a))).collect())
            .collect();

        let mut pick = vec![0usize; n];
        loop {
            let candidate: SmallVec<[&Subset; MAX_SYSTEM_SIZE]> = (0..n).map(|k| &shifted[k][pick[k]]).collect();
            if strictly_majorizes(&tau_sizes(g, &candidate), &sizes) {
                let translations = (0..n).map(|k| elems[k][pick[k]]).collect();
                let sys = SetSystem { group: g, sets: candidate.into_iter().cloned().collect() };
                return Ok(StopCertificate::ImprovingTranslation { translations, transformed: sys.tau().output });
            }
            // odometer, last coordinate fastest
            let mut k = n;
            loop {
                if k == 0 {
                    return self.nested_coset_certificate();
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < elems[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }

    /// Whether `A_k - A_k ⊆ π(A_{k-1})` for all `k >= 2`.
    pub fn has_nested_cosets(&self) -> bool {
        let g = self.group;
        self.sets.windows(2).all(|w| g.difference_set(&w[1], &w[1]).is_subset_of(g.period(&w[0]).members()))
    }

    fn nested_coset_certificate(&self) -> Result<StopCertificate<'g>> {
        if self.has_nested_cosets() {
            Ok(StopCertificate::NestedCosets)
        } else {
            Err(Error::Violation(format!("no improving translation and no nested-coset structure for {self}")))
        }
    }

    /// `A_1 + ... + A_n`; empty as soon as one set is.
    pub fn sumset(&self) -> Subset {
        let g = self.group;
        let mut it = self.sets.iter();
        let first = it.next().expect("set systems are non-empty").clone();
        it.fold(first, |acc, s| g.sumset(&acc, s))
    }

    /// Returns `(τ_1 + ... + τ_n, A_1 + ... + A_n)`.
    pub fn sumset_inclusion(&self) -> (Subset, Subset) {
        (self.tau().output.sumset(), self.sumset())
    }

    /// Whether the sumset of the transform lies inside the sumset of the
    /// system.
    pub fn sumset_inclusion_check(&self) -> bool {
        let (lhs, rhs) = self.sumset_inclusion();
        lhs.is_subset_of(&rhs)
    }

    /// Number of tuples `(y_1, ..., y_n)`, `y_i ∈ A_i`, with `y_1 + ... + y_n = x`.
    ///
    /// Walks the first `n - 1` coordinates and solves for the last, pruning
    /// any partial sum whose remainder is not in the sumset of the remaining
    /// sets.
    pub fn representation_count(&self, x: usize) -> u64 {
        let g = self.group;
        g.check_index(x).expect("element out of range");
        let n = self.len();
        // suffix[k] = A_k + ... + A_n
        let mut suffix = vec![g.empty_set(); n];
        suffix[n - 1] = self.sets[n - 1].clone();
        for k in (0..n - 1).rev() {
            suffix[k] = g.sumset(&self.sets[k], &suffix[k + 1]);
        }
        fn walk(sys: &SetSystem, suffix: &[Subset], k: usize, remainder: usize) -> u64 {
            if !suffix[k].contains(remainder) {
                return 0;
            }
            if k + 1 == sys.sets.len() {
                return 1;
            }
            let g = sys.group;
            sys.sets[k].iter().map(|y| walk(sys, suffix, k + 1, g.sub(remainder, y))).sum()
        }
        walk(self, &suffix, 0, x)
    }

    /// `(count for the transform, count for the system)` at `x`.
    pub fn rep_domination(&self, x: usize) -> (u64, u64) {
        (self.tau().output.representation_count(x), self.representation_count(x))
    }

    /// Translates each set by `-shifts[k]`.
    pub fn translated(&self, shifts: &[usize]) -> SetSystem<'g> {
        assert_eq!(shifts.len(), self.len());
        let g = self.group;
        let sets = self.sets.iter().zip(shifts).map(|(s, &a)| g.translate(s, g.neg(a))).collect();
        SetSystem { group: g, sets }
    }
}

/// Sizes of `τ_1, ..., τ_n` without materializing the sets.
fn tau_sizes(g: &Group, sets: &[&Subset]) -> Sizes {
    let n = sets.len();
    if g.order() <= 64 {
        let mut levels = [0u64; MAX_SYSTEM_SIZE];
        for s in sets {
            let w = s.words()[0];
            for i in (1..n).rev() {
                levels[i] |= levels[i - 1] & w;
            }
            levels[0] |= w;
        }
        return levels[..n].iter().map(|l| l.count_ones() as usize).collect();
    }
    let sys = SetSystem { group: g, sets: sets.iter().map(|&s| s.clone()).collect() };
    sys.tau().output.sets.iter().map(Subset::len).collect()
}

impl TransformOutcome<'_> {
    /// Checks the structural facts every transform must satisfy against the
    /// input system: descending nesting, union and intersection at the ends,
    /// preserved multiplicities, prefix majorization with equal totals, and
    /// that equality of all prefix sums forces a nested input.
    pub fn check_against(&self, input: &SetSystem) -> Result<()> {
        let fail = |what: &str| Err(Error::Violation(format!("transform of {input}: {what}")));
        let out = &self.output;
        if !out.is_nested() {
            return fail("output is not descending");
        }
        let union = input.sets.iter().skip(1).fold(input.sets[0].clone(), |acc, s| acc.union(s));
        let inter = input.sets.iter().skip(1).fold(input.sets[0].clone(), |acc, s| acc.intersection(s));
        if out.sets[0] != union || out.sets[out.len() - 1] != inter {
            return fail("ends are not the union and intersection");
        }
        for x in 0..input.group.order() {
            let m = input.multiplicity(x);
            if out.multiplicity(x) != m || self.multiplicity[x] as usize != m {
                return fail(&format!("multiplicity of {x} changed"));
            }
        }
        let (before, after) = (input.sizes(), out.sizes());
        let mut prefix_before = 0;
        let mut prefix_after = 0;
        let mut all_equal = true;
        for k in 0..before.len() {
            prefix_before += before[k];
            prefix_after += after[k];
            if prefix_after < prefix_before {
                return fail(&format!("prefix sum {} decreased", k + 1));
            }
            all_equal &= prefix_after == prefix_before;
        }
        if prefix_after != prefix_before {
            return fail("total size changed");
        }
        if all_equal && !input.is_nested() {
            return fail("all prefix sums equal but the input is not nested");
        }
        Ok(())
    }
}

/// System literal: sets joined by `;`.
impl fmt::Display for SetSystem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
