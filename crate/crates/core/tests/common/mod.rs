//! Naive reference implementations used as oracles. They touch the library
//! only through `Group::add`, `Group::neg` and `Group::order`, and work on
//! sorted element vectors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kneser_trios::{Group, Subset};

pub type Set = BTreeSet<usize>;

pub fn elems(s: &Subset) -> Set {
    s.iter().collect()
}

pub fn to_subset(g: &Group, s: &Set) -> Subset {
    g.subset(s.iter().copied()).unwrap()
}

pub fn all_elements(g: &Group) -> Set {
    (0..g.order()).collect()
}

/// Every non-empty subset of a group of order at most 20, by mask.
pub fn nonempty_subsets(g: &Group) -> Vec<Set> {
    let n = g.order();
    assert!(n <= 20);
    (1u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

pub fn sumset(g: &Group, a: &Set, b: &Set) -> Set {
    let mut out = Set::new();
    for &x in a {
        for &y in b {
            out.insert(g.add(x, y));
        }
    }
    out
}

pub fn sumset3(g: &Group, a: &Set, b: &Set, c: &Set) -> Set {
    sumset(g, &sumset(g, a, b), c)
}

pub fn negate(g: &Group, s: &Set) -> Set {
    s.iter().map(|&x| g.neg(x)).collect()
}

pub fn translate(g: &Group, s: &Set, x: usize) -> Set {
    s.iter().map(|&y| g.add(y, x)).collect()
}

pub fn complement(g: &Group, s: &Set) -> Set {
    all_elements(g).difference(s).copied().collect()
}

/// `x - s`.
pub fn reflect(g: &Group, x: usize, s: &Set) -> Set {
    s.iter().map(|&y| g.add(x, g.neg(y))).collect()
}

/// Tests every element of the group as a stabilizer.
pub fn period(g: &Group, s: &Set) -> Set {
    (0..g.order()).filter(|&h| translate(g, s, h) == *s).collect()
}

pub fn is_trio(g: &Group, a: &Set, b: &Set, c: &Set) -> bool {
    !a.is_empty() && !b.is_empty() && !c.is_empty() && sumset3(g, a, b, c).len() < g.order()
}

/// No single added element keeps the triple a trio.
pub fn is_maximal(g: &Group, a: &Set, b: &Set, c: &Set) -> bool {
    let n = g.order();
    for x in 0..n {
        for k in 0..3 {
            let mut t = [a.clone(), b.clone(), c.clone()];
            if t[k].insert(x) && is_trio(g, &t[0], &t[1], &t[2]) {
                return false;
            }
        }
    }
    true
}

/// All maximal trios, by filtering every non-empty triple.
pub fn maximal_trios(g: &Group) -> BTreeSet<(Set, Set, Set)> {
    let subsets = nonempty_subsets(g);
    let mut out = BTreeSet::new();
    for a in &subsets {
        for b in &subsets {
            for c in &subsets {
                if is_trio(g, a, b, c) && is_maximal(g, a, b, c) {
                    out.insert((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    out
}

/// `τ_i` = elements of multiplicity at least `i`.
pub fn tau(g: &Group, sets: &[Set]) -> Vec<Set> {
    (1..=sets.len())
        .map(|i| (0..g.order()).filter(|x| sets.iter().filter(|s| s.contains(x)).count() >= i).collect())
        .collect()
}

/// Representation counts of every element by convolution.
pub fn representation_counts(g: &Group, sets: &[Set]) -> Vec<u64> {
    let n = g.order();
    let mut counts = vec![0u64; n];
    counts[0] = 1;
    for s in sets {
        let mut next = vec![0u64; n];
        for (x, &c) in counts.iter().enumerate() {
            if c > 0 {
                for &y in s {
                    next[g.add(x, y)] += c;
                }
            }
        }
        counts = next;
    }
    counts
}

/// Whether `s` is closed under addition and negation and contains 0.
pub fn is_subgroup(g: &Group, s: &Set) -> bool {
    s.contains(&0) && s.iter().all(|&x| s.contains(&g.neg(x)) && s.iter().all(|&y| s.contains(&g.add(x, y))))
}

/// All subgroups of a group of order at most 16, by filtering subsets.
pub fn subgroups(g: &Group) -> BTreeSet<Set> {
    let mut out: BTreeSet<Set> = nonempty_subsets(g).into_iter().filter(|s| is_subgroup(g, s)).collect();
    out.insert([0].into());
    out
}

pub fn parse(lit: &str) -> Set {
    lit.split(',').filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect()
}

/// The small groups scanned throughout: cyclic groups of order 2..=10 and
/// the non-cyclic products of order at most 9.
pub fn small_groups() -> Vec<Group> {
    let mut gs: Vec<Group> = (2..=10).map(|n| Group::cyclic(n).unwrap()).collect();
    for orders in [&[2, 2][..], &[2, 4], &[3, 3], &[2, 2, 2]] {
        gs.push(Group::cyclic_product(orders).unwrap());
    }
    gs
}
