//! Finite abelian groups, their subgroups and quotients.
//!
//! A [`Group`] is either a direct product of cyclic groups, with elements
//! indexed in little-endian mixed radix, or an explicit Cayley table. Both
//! realizations precompute the full addition table, so every group law query
//! is a table lookup regardless of how the group was built.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest supported group order. Element indices must fit in a `u16`.
pub const MAX_ORDER: usize = 4096;

/// Default order bound for [`Group::list_subgroups`].
pub const SUBGROUP_ORDER_BOUND: usize = 64;

/// Tables up to this order are checked exhaustively for the group axioms.
const FULL_AXIOM_CHECK: usize = 256;
const SAMPLED_AXIOM_CHECKS: usize = 200_000;

/// How a group's elements and law were specified.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `Z_{n1} x Z_{n2} x ...`; coordinate `i` of element `idx` is read off in
    /// little-endian mixed radix.
    CyclicProduct(Vec<usize>),
    /// Explicit addition and negation tables.
    Table,
}

/// A finite abelian group with elements `0..order`, identity `0`.
pub struct Group {
    realization: Realization,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    tag: u64,
    shifts: OnceLock<Vec<u64>>,
}

impl Group {
    /// Direct product of cyclic groups of the given orders.
    pub fn cyclic_product(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Spec("group needs at least one cyclic factor".into()));
        }
        if let Some(bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::Spec(format!("cyclic factor order must be >= 1, got {bad}")));
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&n| n <= MAX_ORDER)
            .ok_or_else(|| Error::Capability(format!("group order exceeds the supported maximum {MAX_ORDER}")))?;

        let coords: Vec<Vec<usize>> = (0..order).map(|i| decode(orders, i)).collect();
        let mut add = vec![0u16; order * order];
        for a in 0..order {
            for b in a..order {
                let c: Vec<usize> =
                    orders.iter().zip(coords[a].iter().zip(&coords[b])).map(|(&n, (&x, &y))| (x + y) % n).collect();
                let s = encode(orders, &c) as u16;
                add[a * order + b] = s;
                add[b * order + a] = s;
            }
        }
        let neg = (0..order)
            .map(|a| {
                let c: Vec<usize> = orders.iter().zip(&coords[a]).map(|(&n, &x)| (n - x) % n).collect();
                encode(orders, &c) as u16
            })
            .collect();

        let mut hasher = DefaultHasher::new();
        0u8.hash(&mut hasher);
        orders.hash(&mut hasher);
        Ok(Self::assemble(Realization::CyclicProduct(orders.to_vec()), order, add, neg, hasher.finish()))
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_product(&[n])
    }

    /// A group given by its Cayley table. The group axioms are verified: in
    /// full for order up to 256, on a fixed pseudo-random sample above that.
    pub fn from_tables(add: Vec<Vec<usize>>, neg: Vec<usize>) -> Result<Self> {
        let order = add.len();
        if order == 0 {
            return Err(Error::Spec("table group must have at least one element".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::Capability(format!("group order {order} exceeds the supported maximum {MAX_ORDER}")));
        }
        if neg.len() != order || add.iter().any(|row| row.len() != order) {
            return Err(Error::Spec("addition and negation tables must be square of one order".into()));
        }
        if add.iter().flatten().chain(&neg).any(|&x| x >= order) {
            return Err(Error::Spec("table entry out of range".into()));
        }
        let flat: Vec<u16> = add.iter().flatten().map(|&x| x as u16).collect();
        let neg: Vec<u16> = neg.iter().map(|&x| x as u16).collect();
        let g = Self::from_raw_tables(order, flat, neg);
        g.check_axioms()?;
        Ok(g)
    }

    /// Table group from tables known to satisfy the axioms (quotients).
    pub(crate) fn from_raw_tables(order: usize, add: Vec<u16>, neg: Vec<u16>) -> Self {
        let mut hasher = DefaultHasher::new();
        1u8.hash(&mut hasher);
        order.hash(&mut hasher);
        add.hash(&mut hasher);
        Self::assemble(Realization::Table, order, add, neg, hasher.finish())
    }

    fn assemble(realization: Realization, order: usize, add: Vec<u16>, neg: Vec<u16>, tag: u64) -> Self {
        Group { realization, order, add, neg, tag, shifts: OnceLock::new() }
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(a, 0) != a {
                return Err(Error::Spec(format!("0 is not an identity: {a}+0 != {a}")));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::Spec(format!("negation table wrong at {a}")));
            }
            if self.add(a, b) != self.add(b, a) {
                return Err(Error::Spec(format!("table not commutative at ({a},{b})")));
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::Spec(format!("table not associative at ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= FULL_AXIOM_CHECK {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
            for _ in 0..SAMPLED_AXIOM_CHECKS {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        // every row must be a permutation, otherwise the law is not a group law
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                seen[self.add(a, b)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Spec(format!("row {a} of the addition table is not a permutation")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// Identity of the group used to tell subsets of different groups apart.
    pub(crate) fn tag(&self) -> u64 {
        self.tag
    }

    /// Group law. Panics if an index is out of range.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn checked_add(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_neg(&self, a: usize) -> Result<usize> {
        self.check_index(a)?;
        Ok(self.neg(a))
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::Spec(format!("element {a} out of range for a group of order {}", self.order)))
        }
    }

    /// Mixed-radix coordinates of an element of a cyclic product.
    pub fn coordinates(&self, a: usize) -> Option<Vec<usize>> {
        match &self.realization {
            Realization::CyclicProduct(orders) if a < self.order => Some(decode(orders, a)),
            _ => None,
        }
    }

    /// Element index of the given coordinates of a cyclic product.
    pub fn element_at(&self, coords: &[usize]) -> Result<usize> {
        match &self.realization {
            Realization::CyclicProduct(orders) => {
                if coords.len() != orders.len() || coords.iter().zip(orders).any(|(&c, &n)| c >= n) {
                    return Err(Error::Spec(format!("coordinates {coords:?} do not fit orders {orders:?}")));
                }
                Ok(encode(orders, coords))
            }
            Realization::Table => Err(Error::Contract("table groups carry no coordinates".into())),
        }
    }

    /// Group literal: `"2x2x3"` for products, `"table<N>"` otherwise.
    pub fn literal(&self) -> String {
        match &self.realization {
            Realization::CyclicProduct(orders) => orders.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x"),
            Realization::Table => format!("table<{}>", self.order),
        }
    }

    /// Translate a single-word mask by `x`. Only for groups of order <= 64.
    ///
    /// Uses per-element byte tables: the image of each byte of the mask under
    /// `y -> y + x` is precomputed, so a translate costs `ceil(N/8)` lookups.
    #[inline]
    pub(crate) fn translate_word(&self, mut mask: u64, x: usize) -> u64 {
        debug_assert!(self.order <= 64);
        let table = self.shift_tables();
        let stride = self.order.div_ceil(8) * 256;
        let mut base = x * stride;
        let mut out = 0;
        while mask != 0 {
            out |= table[base + (mask & 0xff) as usize];
            mask >>= 8;
            base += 256;
        }
        out
    }

    fn shift_tables(&self) -> &[u64] {
        self.shifts.get_or_init(|| {
            let n = self.order;
            let bytes = n.div_ceil(8);
            let mut table = vec![0u64; n * bytes * 256];
            for x in 0..n {
                for j in 0..bytes {
                    for b in 0..256usize {
                        let mut img = 0u64;
                        for i in 0..8 {
                            let y = 8 * j + i;
                            if b >> i & 1 == 1 && y < n {
                                img |= 1 << self.add(y, x);
                            }
                        }
                        table[(x * bytes + j) * 256 + b] = img;
                    }
                }
            }
            table
        })
    }

    /// All subgroups, sorted by size and then by membership mask.
    pub fn list_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.list_subgroups_bounded(SUBGROUP_ORDER_BOUND)
    }

    pub fn list_subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order > bound {
            return Err(Error::Capability(format!(
                "subgroup enumeration limited to order {bound}, group has order {}",
                self.order
            )));
        }
        let trivial = self.trivial_subgroup();
        let mut seen: HashSet<Subset> = HashSet::from([trivial.members().clone()]);
        let mut queue = VecDeque::from([trivial]);
        let mut all = Vec::new();
        while let Some(h) = queue.pop_front() {
            for x in 0..self.order {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.members().clone();
                gens.insert(x);
                let bigger = self.generated_subgroup(&gens);
                if seen.insert(bigger.members().clone()) {
                    queue.push_back(bigger);
                }
            }
            all.push(h);
        }
        all.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.members().cmp(b.members())));
        Ok(all)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: self.singleton(0) }
    }

    pub fn whole_subgroup(&self) -> Subgroup {
        Subgroup { members: self.full_set() }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("realization", &self.realization).field("order", &self.order).finish()
    }
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            realization: self.realization.clone(),
            order: self.order,
            add: self.add.clone(),
            neg: self.neg.clone(),
            tag: self.tag,
            shifts: OnceLock::new(),
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.realization == other.realization && self.add == other.add
    }
}

impl Eq for Group {}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Parses `"12"` as `Z_12` and `"2x2x3"` as `Z_2 x Z_2 x Z_3`.
impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .split('x')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| Error::Spec(format!("bad group literal token {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Group::cyclic_product(&orders)
    }
}

fn decode(orders: &[usize], mut idx: usize) -> Vec<usize> {
    orders
        .iter()
        .map(|&n| {
            let c = idx % n;
            idx /= n;
            c
        })
        .collect()
}

fn encode(orders: &[usize], coords: &[usize]) -> usize {
    orders.iter().zip(coords).rev().fold(0, |acc, (&n, &c)| acc * n + c)
}

/// A subgroup, stored as its membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Subset,
}

impl Subgroup {
    /// Checks that `members` contains 0 and is closed under the group law and
    /// negation.
    pub fn new(g: &Group, members: Subset) -> Result<Self> {
        if !g.owns(&members) {
            return Err(Error::Contract("subset belongs to a different group".into()));
        }
        if !members.contains(0) {
            return Err(Error::Contract(format!("{{{members}}} does not contain 0")));
        }
        if !g.sumset(&members, &members).is_subset_of(&members) || !g.negate_set(&members).is_subset_of(&members) {
            return Err(Error::Contract(format!("{{{members}}} is not closed under the group law")));
        }
        Ok(Subgroup { members })
    }

    /// Wraps a mask already known to be a subgroup.
    pub(crate) fn from_closed(g: &Group, members: Subset) -> Self {
        debug_assert!(Subgroup::new(g, members.clone()).is_ok());
        Subgroup { members }
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset_of(&other.members)
    }

    pub fn into_members(self) -> Subset {
        self.members
    }
}

/// The quotient `G/H` together with the canonical projection.
///
/// Cosets are numbered in order of their smallest element, so the kernel is
/// coset 0 and `projection(0) = 0`.
#[derive(Debug, Clone)]
pub struct QuotientView {
    kernel: Subgroup,
    quotient: Group,
    projection: Vec<usize>,
    representatives: Vec<usize>,
    parent_tag: u64,
}

impl QuotientView {
    pub fn new(g: &Group, kernel: &Subgroup) -> Result<Self> {
        // re-validate: the caller may hand us a subgroup of another group
        let kernel = Subgroup::new(g, kernel.members().clone())?;
        let n = g.order();
        let mut projection = vec![usize::MAX; n];
        let mut representatives = Vec::with_capacity(n / kernel.size());
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(x);
            for k in kernel.members().iter() {
                projection[g.add(x, k)] = id;
            }
        }
        let m = representatives.len();
        let mut add = vec![0u16; m * m];
        for i in 0..m {
            for j in 0..m {
                add[i * m + j] = projection[g.add(representatives[i], representatives[j])] as u16;
            }
        }
        let neg = representatives.iter().map(|&r| projection[g.neg(r)] as u16).collect();
        let quotient = Group::from_raw_tables(m, add, neg);
        Ok(QuotientView { kernel, quotient, projection, representatives, parent_tag: g.tag() })
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn quotient(&self) -> &Group {
        &self.quotient
    }

    /// Index of the coset containing `x`.
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    /// Smallest element of coset `q`.
    pub fn representative(&self, q: usize) -> usize {
        self.representatives[q]
    }

    /// Image of a subset of the parent group.
    pub fn project_set(&self, s: &Subset) -> Subset {
        assert_eq!(s.tag(), self.parent_tag, "subset belongs to a different group");
        let mut img = self.quotient.empty_set();
        for x in s.iter() {
            img.insert(self.projection[x]);
        }
        img
    }

    /// Full preimage of a subset of the quotient.
    pub fn preimage(&self, g: &Group, q: &Subset) -> Subset {
        assert_eq!(g.tag(), self.parent_tag, "group is not the parent of this quotient");
        assert!(self.quotient.owns(q), "subset is not over the quotient group");
        let mut out = g.empty_set();
        for x in 0..g.order() {
            if q.contains(self.projection[x]) {
                out.insert(x);
            }
        }
        out
    }
}
