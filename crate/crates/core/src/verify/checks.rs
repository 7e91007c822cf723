use crate::error::{Error, Result};
use crate::group::{Group, QuotientView, Subgroup};
use crate::subset::Subset;
use crate::transform::{SetSystem, StopCertificate};
use crate::trio::Trio;

use super::{Eval, Property, Verdict};

pub(crate) fn render_sets(sets: &[&Subset]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";")
}

fn require_nonempty(sets: &[&Subset]) -> Result<()> {
    match sets.iter().position(|s| s.is_empty()) {
        Some(i) => Err(Error::Contract(format!("set {} must be non-empty", i + 1))),
        None => Ok(()),
    }
}

fn require_owned(g: &Group, sets: &[&Subset]) -> Result<()> {
    if sets.iter().all(|s| g.owns(s)) {
        Ok(())
    } else {
        Err(Error::Contract(format!("input sets are not subsets of {g}")))
    }
}

pub(crate) fn kneser_eval(g: &Group, a: &Subset, b: &Subset) -> Eval {
    let sum = g.sumset(a, b);
    let lhs = sum.len() as i64;
    let rhs = (a.len() + b.len()) as i64 - g.period(&sum).size() as i64;
    Eval::measured(lhs, rhs, lhs >= rhs)
}

/// `|A+B| >= |A| + |B| - |π(A+B)|`.
pub fn check_kneser(g: &Group, a: &Subset, b: &Subset) -> Result<Verdict> {
    require_owned(g, &[a, b])?;
    require_nonempty(&[a, b])?;
    Ok(kneser_eval(g, a, b).into_verdict(Property::Kneser, render_sets(&[a, b])))
}

/// Shared by the direct checker and the word-level scan kernel.
pub(crate) fn trio_bound_numbers(order: usize, total: usize, period: usize) -> Eval {
    let lhs = total as i64;
    let rhs = (order + period) as i64;
    let deficiency = total as i64 - order as i64;
    let pass = lhs <= rhs;
    if pass != (deficiency <= period as i64) {
        return Eval::failed(lhs, rhs, "forms-disagree");
    }
    Eval::measured(lhs, rhs, pass)
}

pub(crate) fn trio_bound_eval(g: &Group, a: &Subset, b: &Subset, c: &Subset) -> Eval {
    let sum = g.sumset(&g.sumset(a, b), c);
    if sum.is_full() {
        return Eval::vacuous("sum-is-whole-group");
    }
    trio_bound_numbers(g.order(), a.len() + b.len() + c.len(), g.period(&sum).size())
}

/// `|A| + |B| + |C| <= |G| + |π(A+B+C)|`, vacuous when `A+B+C = G`. The
/// deficiency form `δ(A,B,C) <= |π(A+B+C)|` is evaluated alongside and must
/// agree.
pub fn check_trio_bound(g: &Group, a: &Subset, b: &Subset, c: &Subset) -> Result<Verdict> {
    require_owned(g, &[a, b, c])?;
    require_nonempty(&[a, b, c])?;
    Ok(trio_bound_eval(g, a, b, c).into_verdict(Property::TrioBound, render_sets(&[a, b, c])))
}

pub(crate) fn maxdef_eval(t: &Trio) -> Eval {
    if !t.is_maximal() {
        return Eval::vacuous("not-maximal");
    }
    if !t.is_deficient() {
        return Eval::vacuous("not-deficient");
    }
    let lhs = t.deficiency();
    let rhs = t.period().size() as i64;
    Eval::measured(lhs, rhs, lhs == rhs)
}

/// A maximal deficient trio has deficiency exactly `|π(A+B+C)|`.
pub fn check_maxdef(t: &Trio) -> Verdict {
    maxdef_eval(t).into_verdict(Property::Maxdef, t.to_string())
}

pub(crate) fn iwml_eval(t: &Trio) -> Eval {
    if !t.is_aperiodic() {
        return Eval::vacuous("not-aperiodic");
    }
    if !t.is_maximal() {
        return Eval::vacuous("not-maximal");
    }
    if !t.is_deficient() {
        return Eval::vacuous("not-deficient");
    }
    let g = t.group();
    let sys = SetSystem::new(g, t.components().into_iter().cloned().collect())
        .expect("three sets of one group form a system");
    let star = sys.tau().output;
    if star.sets()[2].is_empty() {
        return Eval::vacuous("transform-intersection-empty");
    }
    let h = g.period(&star.sumset());
    let rho: usize = star.sets().iter().map(|s| g.sumset(s, h.members()).len() - s.len()).sum();
    let lhs = rho as i64;
    let rhs = h.size() as i64 - 1;
    Eval::measured(lhs, rhs, lhs >= rhs)
}

/// For an aperiodic maximal deficient trio with transform `(A*, B*, C*)`,
/// `C* != ∅`, and `H = π(A*+B*+C*)`:
/// `|(A*+H)\A*| + |(B*+H)\B*| + |(C*+H)\C*| >= |H| - 1`.
pub fn check_iwml(t: &Trio) -> Verdict {
    iwml_eval(t).into_verdict(Property::Iwml, t.to_string())
}

pub(crate) fn box_eval(t: &Trio, view: &QuotientView, g0: usize) -> Eval {
    let q = view.quotient();
    let m = q.order();
    let h = view.kernel().size();
    let mut slices = [vec![0usize; m], vec![0usize; m], vec![0usize; m]];
    for (sizes, set) in slices.iter_mut().zip(t.components()) {
        for x in set.iter() {
            sizes[view.project(x)] += 1;
        }
    }
    let [sa, sb, sc] = &slices;
    let target = view.project(g0);
    let mut worst = 0usize;
    for (x, &ax) in sa.iter().enumerate() {
        for (y, &by) in sb.iter().enumerate() {
            let cz = sc[q.sub(q.sub(target, x), y)];
            if ax > 0 {
                worst = worst.max(by + cz);
            }
            if by > 0 {
                worst = worst.max(cz + ax);
            }
            if cz > 0 {
                worst = worst.max(ax + by);
            }
        }
    }
    Eval::measured(worst as i64, h as i64, worst <= h)
}

/// For every triple of `H`-cosets `x+H, y+H, z+H` with `x+y+z ≡ g0`: if the
/// `A`-slice is occupied then `|B_y| + |C_z| <= |H|`, and symmetrically for
/// the other two components. `lhs` is the largest slice sum that had to obey
/// the bound.
pub fn check_box_slices(t: &Trio, h: &Subgroup, g0: usize) -> Result<Verdict> {
    if !t.is_g_trio(g0) {
        return Err(Error::Contract(format!("{g0} is not missing from the sumset of {t}")));
    }
    let view = QuotientView::new(t.group(), h)?;
    let inputs = format!("{t}/h:{}/g0:{g0}", h.members());
    Ok(box_eval(t, &view, g0).into_verdict(Property::Box, inputs))
}

/// Derives Kneser's bound for `(A, B)` from the trio bound applied to
/// `(A, B, -~(A+B))`, checking each step of the reduction on the way.
pub fn derive_kneser_from_trio(g: &Group, a: &Subset, b: &Subset) -> Result<Verdict> {
    require_owned(g, &[a, b])?;
    require_nonempty(&[a, b])?;
    let inputs = render_sets(&[a, b]);
    let sum = g.sumset(a, b);
    let (na, nb, ns) = (a.len() as i64, b.len() as i64, sum.len() as i64);
    if sum.is_full() {
        let rhs = na + nb - g.order() as i64;
        return Ok(Eval::measured(ns, rhs, ns >= rhs).into_verdict(Property::Kneser, inputs));
    }
    let c = g.negate_set(&g.complement(&sum));
    let eval = match Trio::new(g, a.clone(), b.clone(), c) {
        Err(_) => Eval::failed(ns, 0, "not-a-trio"),
        Ok(t) if !t.is_g_trio(0) => Eval::failed(ns, 0, "not-a-0-trio"),
        Ok(t) => {
            let period = t.period().size() as i64;
            let rhs = na + nb - period;
            if t.deficiency() != na + nb - ns {
                Eval::failed(ns, rhs, "deficiency-mismatch")
            } else if t.period() != &g.period(&sum) {
                Eval::failed(ns, rhs, "period-mismatch")
            } else {
                let bound = trio_bound_numbers(g.order(), t.a().len() + t.b().len() + t.c().len(), period as usize);
                if bound.reason.is_some() {
                    Eval::failed(ns, rhs, "forms-disagree")
                } else {
                    Eval::measured(ns, rhs, bound.pass)
                }
            }
        }
    };
    Ok(eval.into_verdict(Property::Kneser, inputs))
}

/// Walks `δ(A,B,C) <= |B|+|C|-|B+C| <= |π(B+C)| <= |π(A+B+C)|` for a
/// `g0`-trio, the middle step being Kneser's bound for `(B, C)`.
pub fn derive_trio_from_kneser(t: &Trio, g0: usize) -> Result<Verdict> {
    if !t.is_g_trio(g0) {
        return Err(Error::Contract(format!("{g0} is not missing from the sumset of {t}")));
    }
    let g = t.group();
    let bc = g.sumset(t.b(), t.c());
    let step1 = (t.b().len() + t.c().len()) as i64 - bc.len() as i64;
    let step2 = g.period(&bc).size() as i64;
    let step3 = t.period().size() as i64;
    let delta = t.deficiency();
    let kneser = kneser_eval(g, t.b(), t.c());
    let eval = if !bc.is_subset_of(&g.reflect(g0, &g.complement(t.a()))) {
        Eval::failed(delta, step3, "b-plus-c-escapes")
    } else if delta > step1 {
        Eval::failed(delta, step3, "chain-step-1")
    } else if !kneser.pass || step1 > step2 {
        Eval::failed(delta, step3, "chain-step-2")
    } else if step2 > step3 {
        Eval::failed(delta, step3, "chain-step-3")
    } else {
        Eval::measured(delta, step3, true)
    };
    Ok(eval.into_verdict(Property::TrioBound, format!("{t}/g0:{g0}")))
}

pub(crate) fn deficient_characterization_eval(t: &Trio) -> Eval {
    let deficient = t.is_deficient();
    let mut first: Option<(i64, i64)> = None;
    for g0 in t.missing().iter() {
        let Ok(sup) = t.complete_to_maximal(g0) else {
            return Eval::failed(0, 0, "completion-failed");
        };
        let removal = (sup.a().len() - t.a().len()) + (sup.b().len() - t.b().len()) + (sup.c().len() - t.c().len());
        let removal = removal as i64;
        let period = sup.period().size() as i64;
        first.get_or_insert((removal, period));
        let within_budget = sup.is_deficient() && removal < period;
        if deficient && !within_budget {
            return Eval::failed(removal, period, "deficient-but-far-from-maximal");
        }
        if within_budget && !deficient {
            return Eval::failed(removal, period, "close-to-maximal-but-not-deficient");
        }
    }
    let (lhs, rhs) = first.expect("a trio misses at least one element");
    Eval::measured(lhs, rhs, true)
}

/// Both directions of: a trio is deficient iff some maximal deficient
/// supertrio exceeds it by fewer elements than its period size. Supertrios
/// are the completions at every missing element.
pub fn check_deficient_characterization(t: &Trio) -> Verdict {
    deficient_characterization_eval(t).into_verdict(Property::DeficientCharacterization, t.to_string())
}

pub(crate) fn tau_major_eval(sys: &SetSystem) -> Eval {
    let out = sys.tau();
    let prefix_total = |sizes: Vec<usize>| -> i64 {
        sizes
            .iter()
            .scan(0, |acc, &s| {
                *acc += s;
                Some(*acc as i64)
            })
            .sum()
    };
    let lhs = prefix_total(out.output.sizes());
    let rhs = prefix_total(sys.sizes());
    match out.check_against(sys) {
        Ok(()) => Eval::measured(lhs, rhs, true),
        Err(_) => Eval::failed(lhs, rhs, "transform-invariant-broken"),
    }
}

/// Multiplicity preservation, nesting of the output, prefix majorization with
/// equal totals, and: equal prefix sums only for nested inputs. `lhs`/`rhs`
/// are the sums of all prefix sums after/before, tight exactly for nested
/// inputs.
pub fn check_tau_major(sys: &SetSystem) -> Verdict {
    tau_major_eval(sys).into_verdict(Property::TauMajor, sys.to_string())
}

pub(crate) fn tau_stab_eval(sys: &SetSystem) -> Eval {
    let nested = sys.is_nested() as i64;
    let fixed = (sys.tau().output == *sys) as i64;
    if nested == fixed {
        Eval::measured(nested, fixed, true)
    } else {
        Eval::failed(nested, fixed, "fixed-point-not-nested")
    }
}

/// A system is fixed by the transform iff it is nested.
pub fn check_tau_stab(sys: &SetSystem) -> Verdict {
    tau_stab_eval(sys).into_verdict(Property::TauStab, sys.to_string())
}

pub(crate) fn tau_stopcond_eval(sys: &SetSystem) -> Eval {
    if sys.len() < 2 || sys.sets().iter().any(Subset::is_empty) {
        return Eval::vacuous("empty-set-or-single-set");
    }
    match sys.find_improving_translation() {
        Ok(StopCertificate::ImprovingTranslation { .. }) => {
            let both = 1 + sys.has_nested_cosets() as i64;
            Eval::measured(both, 2, true)
        }
        Ok(StopCertificate::NestedCosets) => Eval::measured(1, 2, true),
        Err(_) => Eval::failed(0, 2, "neither-branch-holds"),
    }
}

/// The stop-condition dichotomy: some translation improves the size vector,
/// or each set lies in a coset of the period of its predecessor. `lhs`
/// counts the branches that hold; tight when both do.
pub fn check_tau_stopcond(sys: &SetSystem) -> Verdict {
    tau_stopcond_eval(sys).into_verdict(Property::TauStopcond, sys.to_string())
}

pub(crate) fn tau_sumset_eval(sys: &SetSystem) -> Eval {
    let (lhs, rhs) = sys.sumset_inclusion();
    let holds = lhs.is_subset_of(&rhs);
    let (l, r) = (lhs.len() as i64, rhs.len() as i64);
    if holds {
        Eval::measured(l, r, true)
    } else {
        Eval::failed(l, r, "transform-sumset-escapes")
    }
}

/// `τ_1 + ... + τ_n ⊆ A_1 + ... + A_n`.
pub fn check_tau_sumset(sys: &SetSystem) -> Verdict {
    tau_sumset_eval(sys).into_verdict(Property::TauSumset, sys.to_string())
}

pub(crate) fn rep_domination_eval(sys: &SetSystem, x: usize) -> Eval {
    let (after, before) = sys.rep_domination(x);
    Eval::measured(after as i64, before as i64, after <= before)
}

/// Representation counts of `x` never grow under the transform.
pub fn check_rep_domination(sys: &SetSystem, x: usize) -> Result<Verdict> {
    sys.group().check_index(x)?;
    Ok(rep_domination_eval(sys, x).into_verdict(Property::RepDomination, format!("{sys}/x:{x}")))
}

pub(crate) fn complement_identity_eval(g: &Group, s: &Subset) -> Eval {
    let r = g.complement_identity_check(s);
    if r.vacuous {
        return Eval::vacuous("empty-or-whole-set");
    }
    let lhs = r.s_minus_complement.len() as i64;
    let rhs = r.complement_of_period.len() as i64;
    if r.holds() {
        Eval::measured(lhs, rhs, true)
    } else {
        Eval::failed(lhs, rhs, "complement-identity-broken")
    }
}

/// `S - S̄ = S̄ - S = G \ π(S)` and `π(S - S̄) = π(S)`.
pub fn check_complement_identity(g: &Group, s: &Subset) -> Result<Verdict> {
    require_owned(g, &[s])?;
    Ok(complement_identity_eval(g, s).into_verdict(Property::ComplementIdentity, s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(g: &Group, lit: &str) -> Vec<Subset> {
        lit.split(';').map(|s| g.parse_subset(s).unwrap()).collect()
    }

    #[test]
    fn kneser_examples() {
        let z4 = Group::cyclic(4).unwrap();
        let s = sets(&z4, "0,1;0,1");
        let v = check_kneser(&z4, &s[0], &s[1]).unwrap();
        assert!(v.pass && v.tight);
        assert_eq!((v.lhs, v.rhs), (3, 3));

        let z6 = Group::cyclic(6).unwrap();
        let s = sets(&z6, "0,3;0,3");
        let v = check_kneser(&z6, &s[0], &s[1]).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass, v.tight), (2, 2, true, true));

        let full = z6.full_set();
        let v = check_kneser(&z6, &full, &full).unwrap();
        assert_eq!((v.lhs, v.rhs, v.tight), (6, 6, true));

        assert!(matches!(check_kneser(&z6, &full, &z6.empty_set()), Err(Error::Contract(_))));
    }

    #[test]
    fn trio_bound_examples() {
        let z2 = Group::cyclic(2).unwrap();
        let s = sets(&z2, "0;0;0");
        let v = check_trio_bound(&z2, &s[0], &s[1], &s[2]).unwrap();
        assert_eq!((v.lhs, v.rhs, v.tight), (3, 3, true));

        let z4 = Group::cyclic(4).unwrap();
        let s = sets(&z4, "0,2;0,2;0,2");
        let v = check_trio_bound(&z4, &s[0], &s[1], &s[2]).unwrap();
        assert_eq!((v.lhs, v.rhs, v.tight), (6, 6, true));

        let z5 = Group::cyclic(5).unwrap();
        let s = sets(&z5, "0;0;0");
        let v = check_trio_bound(&z5, &s[0], &s[1], &s[2]).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass, v.tight), (3, 6, true, false));

        let s = sets(&z5, "0,1,2;0,1;0,1");
        let v = check_trio_bound(&z5, &s[0], &s[1], &s[2]).unwrap();
        assert!(v.vacuous && v.pass);
    }

    #[test]
    fn maxdef_examples() {
        let z4 = Group::cyclic(4).unwrap();
        let v = check_maxdef(&Trio::parse(&z4, "0,2;0,2;0,2").unwrap());
        assert_eq!((v.lhs, v.rhs, v.pass, v.vacuous), (2, 2, true, false));
        let z5 = Group::cyclic(5).unwrap();
        let v = check_maxdef(&Trio::parse(&z5, "0,1,3,4;0;0").unwrap());
        assert_eq!((v.lhs, v.rhs, v.pass), (1, 1, true));
        let v = check_maxdef(&Trio::parse(&z4, "0,2;0,2;0").unwrap());
        assert!(v.vacuous);
        assert_eq!(v.reason.as_deref(), Some("not-maximal"));
    }

    #[test]
    fn iwml_examples() {
        let z5 = Group::cyclic(5).unwrap();
        let v = check_iwml(&Trio::parse(&z5, "0,1,3,4;0;0").unwrap());
        assert_eq!((v.lhs, v.rhs, v.pass, v.vacuous), (0, 0, true, false));
        let v = check_iwml(&Trio::parse(&z5, "0,1,3,4;0;2").unwrap());
        assert!(v.vacuous);
        assert_eq!(v.reason.as_deref(), Some("transform-intersection-empty"));
        let z4 = Group::cyclic(4).unwrap();
        let v = check_iwml(&Trio::parse(&z4, "0,2;0,2;1,3").unwrap());
        assert_eq!(v.reason.as_deref(), Some("not-aperiodic"));
    }

    #[test]
    fn box_examples() {
        let z4 = Group::cyclic(4).unwrap();
        let t = Trio::parse(&z4, "0,2;0,2;1,3").unwrap();
        let v = check_box_slices(&t, &z4.whole_subgroup(), 0).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass, v.tight), (4, 4, true, true));
        assert!(matches!(check_box_slices(&t, &z4.whole_subgroup(), 1), Err(Error::Contract(_))));

        let z5 = Group::cyclic(5).unwrap();
        let t = Trio::parse(&z5, "0,1,3,4;0;0").unwrap();
        let v = check_box_slices(&t, &z5.trivial_subgroup(), 2).unwrap();
        assert!(v.pass && v.lhs <= 1);
        assert_eq!(v.inputs, "0,1,3,4;0;0/h:0/g0:2");
    }

    #[test]
    fn derive_kneser_examples() {
        let z6 = Group::cyclic(6).unwrap();
        let s = sets(&z6, "0,3;0,3");
        let v = derive_kneser_from_trio(&z6, &s[0], &s[1]).unwrap();
        assert_eq!((v.pass, v.tight), (true, true));
        let full = z6.full_set();
        assert!(derive_kneser_from_trio(&z6, &full, &full).unwrap().pass);
        let z4 = Group::cyclic(4).unwrap();
        let s = sets(&z4, "0;1");
        let v = derive_kneser_from_trio(&z4, &s[0], &s[1]).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass), (1, 1, true));
    }

    #[test]
    fn derive_trio_examples() {
        let z2 = Group::cyclic(2).unwrap();
        let v = derive_trio_from_kneser(&Trio::parse(&z2, "0;0;0").unwrap(), 1).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass), (1, 1, true));
        let z4 = Group::cyclic(4).unwrap();
        let v = derive_trio_from_kneser(&Trio::parse(&z4, "0,2;0,2;0,2").unwrap(), 1).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass), (2, 2, true));
        let z5 = Group::cyclic(5).unwrap();
        let t = Trio::parse(&z5, "0;0;0").unwrap();
        let v = derive_trio_from_kneser(&t, 2).unwrap();
        assert_eq!((v.lhs, v.rhs, v.pass), (-2, 1, true));
        assert!(derive_trio_from_kneser(&t, 0).is_err());
    }

    #[test]
    fn deficient_characterization_examples() {
        let z4 = Group::cyclic(4).unwrap();
        let v = check_deficient_characterization(&Trio::parse(&z4, "0,2;0,2;0,2").unwrap());
        assert_eq!((v.lhs, v.rhs, v.pass), (0, 2, true));
        let z5 = Group::cyclic(5).unwrap();
        let v = check_deficient_characterization(&Trio::parse(&z5, "0;0;0").unwrap());
        assert!(v.pass);
        let v = check_deficient_characterization(&Trio::parse(&z5, "0,1,3;0;0").unwrap());
        assert_eq!((v.lhs, v.rhs, v.pass), (1, 1, true));
    }

    #[test]
    fn transform_checks() {
        let z5 = Group::cyclic(5).unwrap();
        let sys = SetSystem::parse(&z5, "0,1;0,2").unwrap();
        assert!(check_tau_major(&sys).pass);
        assert!(check_tau_stab(&sys).pass);
        let v = check_tau_stopcond(&sys);
        assert!(v.pass && !v.vacuous);
        assert!(check_tau_sumset(&sys).pass);
        let v = check_rep_domination(&sys, 1).unwrap();
        assert!(v.pass);
        assert_eq!(v.inputs, "0,1;0,2/x:1");
        assert!(check_rep_domination(&sys, 5).is_err());

        let nested = SetSystem::parse(&z5, "0,1,2;1").unwrap();
        assert!(check_tau_major(&nested).tight);
        assert!(!check_tau_major(&sys).tight);
    }

    #[test]
    fn complement_identity_verdicts() {
        let z4 = Group::cyclic(4).unwrap();
        let v = check_complement_identity(&z4, &z4.parse_subset("0,2").unwrap()).unwrap();
        assert!(v.pass && v.tight);
        let v = check_complement_identity(&z4, &z4.full_set()).unwrap();
        assert!(v.vacuous);
    }
}
