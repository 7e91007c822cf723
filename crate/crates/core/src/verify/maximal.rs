use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::trio::Trio;

/// Default largest group order accepted by [`enumerate_maximal_trios`].
pub const MAXIMAL_TRIO_ORDER_BOUND: usize = 12;

/// Every maximal trio of `g`, each exactly once, ordered by the masks of
/// `(A, B, C)`. Fails with a capability error above order
/// [`MAXIMAL_TRIO_ORDER_BOUND`].
pub fn enumerate_maximal_trios(g: &Group) -> Result<Vec<Trio<'_>>> {
    enumerate_maximal_trios_bounded(g, MAXIMAL_TRIO_ORDER_BOUND)
}

/// [`enumerate_maximal_trios`] with an explicit order bound (at most 64).
///
/// A maximal `g0`-trio satisfies `A = g0 - ~(B+C)`, so it is generated by its
/// own `(B, C)`. For every non-empty pair with `B + C != G` and every `g0`,
/// the candidate `A` is built and completed; the result
/// is kept when it is maximal and `g0` is its smallest missing element, which
/// makes every trio appear once.
pub fn enumerate_maximal_trios_bounded(g: &Group, bound: usize) -> Result<Vec<Trio<'_>>> {
    let n = g.order();
    if n > bound.min(64) {
        return Err(Error::Capability(format!(
            "maximal trio enumeration is limited to order {}, got {n}",
            bound.min(64)
        )));
    }
    let full = g.full_word();
    let neg: Vec<usize> = (0..n).map(|x| g.neg(x)).collect();
    let negate = |mut s: u64| {
        let mut out = 0u64;
        while s != 0 {
            let x = s.trailing_zeros() as usize;
            s &= s - 1;
            out |= 1 << neg[x];
        }
        out
    };
    // g0 - ~(x+y) is the complement of g0 - (x+y)
    let partner = |g0: usize, x: u64, y: u64| full & !g.translate_word(negate(g.sumset_word(x, y)), g0);

    let mut found: Vec<(u64, u64, u64)> = (1..=full)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut local = Vec::new();
            for c in 1..=full {
                let bc = g.sumset_word(b, c);
                if bc == full {
                    continue;
                }
                for g0 in 0..n {
                    let a = partner(g0, b, c);
                    let b2 = partner(g0, a, c);
                    let c2 = partner(g0, a, b2);
                    if b2 != b || c2 != c {
                        continue;
                    }
                    let sum = g.sumset_word(a, bc);
                    if (full & !sum).trailing_zeros() as usize == g0 {
                        local.push((a, b, c));
                    }
                }
            }
            local
        })
        .collect();
    found.sort_unstable();
    found
        .into_iter()
        .map(|(a, b, c)| {
            let t = Trio::new(g, g.subset_from_word(a), g.subset_from_word(b), g.subset_from_word(c))?;
            if t.is_maximal() {
                Ok(t)
            } else {
                Err(Error::Violation(format!("enumerated trio {t} is not maximal")))
            }
        })
        .collect()
}
