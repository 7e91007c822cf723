mod common;

use common::{elems, nonempty_subsets, to_subset};
use kneser_trios::{Error, Group, QuotientView, Subgroup, Trio};

#[test]
fn construction_examples() {
    let z2 = Group::cyclic(2).unwrap();
    let t = Trio::parse(&z2, "0;0;0").unwrap();
    assert_eq!((t.sum().to_string(), t.missing().to_string()), ("0".into(), "1".into()));
    assert!(matches!(Trio::parse(&z2, "0,1;0;0"), Err(Error::NotATrio(_))));
    assert!(Trio::parse(&z2, ";0;0").is_err());
    assert!(Trio::parse(&z2, "0;0").is_err());

    let z4 = Group::cyclic(4).unwrap();
    let t = Trio::parse(&z4, "0,2;0,2;0,2").unwrap();
    assert_eq!(t.sum().to_string(), "0,2");
    assert_eq!(t.period().members().to_string(), "0,2");
}

#[test]
fn deficiency_and_missing_examples() {
    let z2 = Group::cyclic(2).unwrap();
    let t = Trio::parse(&z2, "0;0;0").unwrap();
    assert_eq!(t.deficiency(), 1);
    assert!(t.is_g_trio(1) && !t.is_g_trio(0));
    let z4 = Group::cyclic(4).unwrap();
    let t = Trio::parse(&z4, "0,2;0,2;0,2").unwrap();
    assert_eq!(t.deficiency(), 2);
    assert!(t.is_g_trio(3));
    let z5 = Group::cyclic(5).unwrap();
    assert_eq!(Trio::parse(&z5, "0;0;0").unwrap().deficiency(), -2);
}

#[test]
fn maximality_examples() {
    let z4 = Group::cyclic(4).unwrap();
    assert!(Trio::parse(&z4, "0,2;0,2;0,2").unwrap().is_maximal());
    let z5 = Group::cyclic(5).unwrap();
    assert!(!Trio::parse(&z5, "0;0;0").unwrap().is_maximal());
    assert!(Trio::parse(&z5, "0,1,3,4;0;0").unwrap().is_maximal());
}

#[test]
fn completion_examples() {
    let z5 = Group::cyclic(5).unwrap();
    let t = Trio::parse(&z5, "0;0;0").unwrap();
    let m = t.complete_to_maximal(2).unwrap();
    assert_eq!(m.to_string(), "0,1,3,4;0;0");
    assert_eq!((m.missing().to_string(), m.deficiency()), ("2".into(), 1));
    assert_eq!(m.complete_to_maximal(2).unwrap(), m);
    assert!(matches!(t.complete_to_maximal(0), Err(Error::Contract(_))));

    let z4 = Group::cyclic(4).unwrap();
    let m = Trio::parse(&z4, "0;0;0").unwrap().complete_to_maximal(1).unwrap();
    assert_eq!(m.to_string(), "0,2,3;0;0");
    assert_eq!(m.deficiency(), 1);
}

#[test]
fn khinchin_examples() {
    let z5 = Group::cyclic(5).unwrap();
    let t = Trio::parse(&z5, "0;0;0").unwrap();
    assert_eq!(t.khinchin_extend(2).unwrap().c().to_string(), "0,1,3,4");
    let z4 = Group::cyclic(4).unwrap();
    let t = Trio::parse(&z4, "0;0;0").unwrap();
    assert_eq!(t.khinchin_extend(1).unwrap().c().to_string(), "0,2,3");
    let m = Trio::parse(&z4, "0,2;0,2;0,2").unwrap();
    assert_eq!(m.khinchin_extend(1).unwrap(), m);
}

#[test]
fn quotient_examples() {
    let z4 = Group::cyclic(4).unwrap();
    let t = Trio::parse(&z4, "0,2;0,2;0,2").unwrap();
    let view = QuotientView::new(&z4, t.period()).unwrap();
    let q = t.quotient(&view).unwrap();
    assert_eq!((view.quotient().order(), q.to_string()), (2, "0;0;0".into()));
    assert!(q.is_aperiodic());

    let trivial = QuotientView::new(&z4, &z4.trivial_subgroup()).unwrap();
    let q = t.quotient(&trivial).unwrap();
    assert_eq!(q.components().map(|s| s.len()), [2, 2, 2]);

    let z6 = Group::cyclic(6).unwrap();
    let t = Trio::parse(&z6, "0,3;0,3;0,3").unwrap();
    let view = QuotientView::new(&z6, t.period()).unwrap();
    let q = t.quotient(&view).unwrap();
    assert_eq!((view.quotient().order(), q.to_string()), (3, "0;0;0".into()));

    let h = Subgroup::new(&z6, z6.parse_subset("0,2,4").unwrap()).unwrap();
    let view = QuotientView::new(&z6, &h).unwrap();
    assert!(matches!(t.quotient(&view), Err(Error::Contract(_))));
}

/// Every trio of the group, checked against the brute-force maximality
/// oracle, and every completion against it as well.
#[test]
fn maximality_and_completion_match_the_oracle() {
    for g in [Group::cyclic(4).unwrap(), Group::cyclic(5).unwrap(), Group::cyclic_product(&[2, 2]).unwrap()] {
        let subsets = nonempty_subsets(&g);
        for a in &subsets {
            for b in &subsets {
                for c in &subsets {
                    if !common::is_trio(&g, a, b, c) {
                        continue;
                    }
                    let t = Trio::new(&g, to_subset(&g, a), to_subset(&g, b), to_subset(&g, c)).unwrap();
                    assert_eq!(t.is_maximal(), common::is_maximal(&g, a, b, c), "{t}");
                    let period = common::period(&g, &common::sumset3(&g, a, b, c));
                    assert_eq!(elems(t.period().members()), period);
                    assert_eq!(t.deficiency(), (a.len() + b.len() + c.len()) as i64 - g.order() as i64);
                    for g0 in t.missing().iter() {
                        let m = t.complete_to_maximal(g0).unwrap();
                        let (ma, mb, mc) = (elems(m.a()), elems(m.b()), elems(m.c()));
                        assert!(common::is_maximal(&g, &ma, &mb, &mc), "{t} at {g0} gave {m}");
                        assert!(a.is_subset(&ma) && b.is_subset(&mb) && c.is_subset(&mc));
                        assert!(m.is_g_trio(g0));
                        let k = t.khinchin_extend(g0).unwrap();
                        assert_eq!(
                            elems(k.c()),
                            common::complement(&g, &common::reflect(&g, g0, &common::sumset(&g, a, b)))
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn stats_summarize_the_trio() {
    let z5 = Group::cyclic(5).unwrap();
    let s = Trio::parse(&z5, "0,1,3,4;0;0").unwrap().stats();
    assert_eq!((s.deficiency, s.period_size), (1, 1));
    assert!(s.is_aperiodic && s.is_maximal && s.is_deficient);
}
