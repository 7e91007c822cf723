use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Group, QuotientView, Subgroup};
use crate::subset::Subset;
use crate::transform::SetSystem;
use crate::trio::Trio;

use super::checks::{
    box_eval, complement_identity_eval, deficient_characterization_eval, iwml_eval, maxdef_eval, render_sets,
    rep_domination_eval, tau_major_eval, tau_stab_eval, tau_stopcond_eval, tau_sumset_eval, trio_bound_numbers,
};
use super::maximal::enumerate_maximal_trios_bounded;
use super::{Eval, Property, Verdict};

/// Default ceiling on the estimated work of an exhaustive scan.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest period-size memo, indexed by mask.
const PERIOD_MEMO_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Worker threads; 0 picks the number of available cores.
    pub workers: usize,
    /// Exhaustive scans whose estimated work exceeds this fail with a
    /// capability error before starting.
    pub budget: u64,
    /// Failing verdicts kept in the report, lowest case index first.
    pub max_witnesses: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { workers: 0, budget: DEFAULT_BUDGET, max_witnesses: 16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive { canonical: bool },
    Random { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// Literal of the scanned group.
    pub group: String,
    pub property: Property,
    pub mode: ScanMode,
    pub cases_checked: u64,
    pub violation_count: u64,
    /// Failing verdicts with the lowest case indices, at most
    /// `max_witnesses` of them.
    pub violations: Vec<Verdict>,
    pub tight_count: u64,
    pub vacuous_count: u64,
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Counts of one slice of a scan. Merging keeps the witnesses with the
/// lowest case indices, so the result does not depend on how work was split.
#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    violations: u64,
    tight: u64,
    vacuous: u64,
    witnesses: Vec<(u64, Verdict)>,
}

impl Tally {
    #[inline]
    fn record(&mut self, index: u64, eval: Eval, cap: usize, witness: impl FnOnce() -> Verdict) {
        self.cases += 1;
        if eval.vacuous {
            self.vacuous += 1;
        }
        if eval.tight() {
            self.tight += 1;
        }
        if !eval.pass {
            self.violations += 1;
            if cap > 0 && (self.witnesses.len() < cap || index < self.witnesses[cap - 1].0) {
                self.witnesses.push((index, witness()));
                self.witnesses.sort_by_key(|w| w.0);
                self.witnesses.truncate(cap);
            }
        }
    }

    fn merge(mut self, other: Tally, cap: usize) -> Tally {
        self.cases += other.cases;
        self.violations += other.violations;
        self.tight += other.tight;
        self.vacuous += other.vacuous;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_by_key(|w| w.0);
        self.witnesses.truncate(cap);
        self
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Capability(format!("cannot start {workers} worker threads: {e}")))
}

/// Non-empty single-word masks; canonical masks contain `0`.
fn masks(full: u64, canonical: bool) -> Vec<u64> {
    if canonical {
        (1..=full).step_by(2).collect()
    } else {
        (1..=full).collect()
    }
}

/// Estimated work of an exhaustive scan, in checked cases or generator steps.
fn estimate(n: usize, property: Property, canonical: bool) -> u128 {
    let all = (1u128 << n) - 1;
    let lead = if canonical { 1u128 << (n - 1) } else { all };
    let n = n as u128;
    match property {
        Property::Kneser => lead * lead,
        Property::TrioBound | Property::DeficientCharacterization => (lead * lead).saturating_mul(all),
        Property::ComplementIdentity => lead,
        Property::TauMajor | Property::TauStab | Property::TauStopcond | Property::TauSumset => {
            lead.saturating_mul(all)
        }
        Property::RepDomination => lead.saturating_mul(all).saturating_mul(n),
        Property::Maxdef | Property::Iwml | Property::Box => all.saturating_mul(all).saturating_mul(n),
    }
}

/// Which sets of an instance are shifted to contain `0` under
/// canonicalization. The transform commutes only with a joint shift, so
/// systems fix their first set only, and the aperiodicity test of the
/// ideal-world check rules out independent shifts entirely.
fn canonical_sets(property: Property) -> usize {
    match property {
        Property::Iwml => 0,
        Property::ComplementIdentity
        | Property::TauMajor
        | Property::TauStab
        | Property::TauStopcond
        | Property::TauSumset
        | Property::RepDomination => 1,
        _ => 2,
    }
}

/// Period sizes of single-word masks, memoized for small groups.
struct PeriodSizes<'g> {
    group: &'g Group,
    memo: Vec<u8>,
}

impl<'g> PeriodSizes<'g> {
    fn new(group: &'g Group) -> Self {
        let memo = if group.order() <= PERIOD_MEMO_ORDER {
            (0..1u64 << group.order()).into_par_iter().map(|s| group.period_word(s).count_ones() as u8).collect()
        } else {
            Vec::new()
        };
        PeriodSizes { group, memo }
    }

    #[inline]
    fn get(&self, s: u64) -> usize {
        match self.memo.get(s as usize) {
            Some(&p) => p as usize,
            None => self.group.period_word(s).count_ones() as usize,
        }
    }
}

#[inline]
fn sumset_word(g: &Group, a: u64, b: u64) -> u64 {
    if a.count_ones() <= b.count_ones() {
        g.sumset_word(a, b)
    } else {
        g.sumset_word(b, a)
    }
}

/// Checks every instance of `property` in `g`.
///
/// Pairs, triples and two-set systems range over non-empty subsets; with
/// `canonicalize` the leading sets are restricted to those containing `0`.
/// The statements about maximal trios (`maxdef`, `iwml`, `box`) range over
/// the maximal trios of `g`, and `box` additionally over every subgroup and
/// every missing element.
pub fn exhaustive_scan(g: &Group, property: Property, canonicalize: bool, config: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    let n = g.order();
    if n > 63 {
        return Err(Error::Capability(format!("exhaustive scans need order below 64, got {n}")));
    }
    let canonical = canonicalize && canonical_sets(property) > 0;
    let work = estimate(n, property, canonical);
    if work > config.budget as u128 {
        return Err(Error::Capability(format!(
            "exhaustive {property} scan of {g} needs about {work} steps, budget is {}",
            config.budget
        )));
    }
    let tally = pool(config.workers)?.install(|| exhaustive_tally(g, property, canonical, config))?;
    Ok(finish(g, property, ScanMode::Exhaustive { canonical }, tally, start))
}

fn finish(g: &Group, property: Property, mode: ScanMode, tally: Tally, start: Instant) -> ScanReport {
    ScanReport {
        group: g.literal(),
        property,
        mode,
        cases_checked: tally.cases,
        violation_count: tally.violations,
        violations: tally.witnesses.into_iter().map(|w| w.1).collect(),
        tight_count: tally.tight,
        vacuous_count: tally.vacuous,
        elapsed: start.elapsed(),
    }
}

fn exhaustive_tally(g: &Group, property: Property, canonical: bool, config: &ScanConfig) -> Result<Tally> {
    let cap = config.max_witnesses;
    let n = g.order();
    let full = g.full_word();
    let lead = masks(full, canonical);
    let all = masks(full, false);
    let second = if canonical && canonical_sets(property) >= 2 { &lead } else { &all };
    let set = |w: u64| g.subset_from_word(w);
    let merge = |a: Tally, b: Tally| a.merge(b, cap);

    let tally = match property {
        Property::Kneser => {
            let periods = PeriodSizes::new(g);
            let m = second.len() as u64;
            lead.par_iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut t = Tally::default();
                    for (j, &b) in second.iter().enumerate() {
                        let s = sumset_word(g, a, b);
                        let lhs = s.count_ones() as i64;
                        let rhs = (a.count_ones() + b.count_ones()) as i64 - periods.get(s) as i64;
                        let eval = Eval::measured(lhs, rhs, lhs >= rhs);
                        t.record(i as u64 * m + j as u64, eval, cap, || {
                            eval.into_verdict(property, render_sets(&[&set(a), &set(b)]))
                        });
                    }
                    t
                })
                .reduce(Tally::default, merge)
        }
        Property::TrioBound => {
            let periods = PeriodSizes::new(g);
            let (m2, m3) = (second.len() as u64, all.len() as u64);
            lead.par_iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut t = Tally::default();
                    for (j, &b) in second.iter().enumerate() {
                        let ab = sumset_word(g, a, b);
                        let base = (i as u64 * m2 + j as u64) * m3;
                        let size_ab = (a.count_ones() + b.count_ones()) as usize;
                        if ab == full {
                            t.cases += m3;
                            t.vacuous += m3;
                            continue;
                        }
                        for (k, &c) in all.iter().enumerate() {
                            let s = sumset_word(g, ab, c);
                            let eval = if s == full {
                                Eval::vacuous("sum-is-whole-group")
                            } else {
                                trio_bound_numbers(n, size_ab + c.count_ones() as usize, periods.get(s))
                            };
                            t.record(base + k as u64, eval, cap, || {
                                eval.into_verdict(property, render_sets(&[&set(a), &set(b), &set(c)]))
                            });
                        }
                    }
                    t
                })
                .reduce(Tally::default, merge)
        }
        Property::DeficientCharacterization => {
            let (m2, m3) = (second.len() as u64, all.len() as u64);
            lead.par_iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut t = Tally::default();
                    for (j, &b) in second.iter().enumerate() {
                        for (k, &c) in all.iter().enumerate() {
                            let index = (i as u64 * m2 + j as u64) * m3 + k as u64;
                            let (eval, inputs) = match Trio::new(g, set(a), set(b), set(c)) {
                                Ok(trio) => (deficient_characterization_eval(&trio), trio.to_string()),
                                Err(_) => (Eval::vacuous("not-a-trio"), String::new()),
                            };
                            t.record(index, eval, cap, || eval.into_verdict(property, inputs));
                        }
                    }
                    t
                })
                .reduce(Tally::default, merge)
        }
        Property::ComplementIdentity => lead
            .par_iter()
            .enumerate()
            .fold(Tally::default, |mut t, (i, &s)| {
                let eval = complement_identity_eval(g, &set(s));
                t.record(i as u64, eval, cap, || eval.into_verdict(property, set(s).to_string()));
                t
            })
            .reduce(Tally::default, merge),
        Property::TauMajor
        | Property::TauStab
        | Property::TauStopcond
        | Property::TauSumset
        | Property::RepDomination => {
            let xs = if property == Property::RepDomination { n as u64 } else { 1 };
            let m = all.len() as u64;
            lead.par_iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut t = Tally::default();
                    for (j, &b) in all.iter().enumerate() {
                        let sys = SetSystem::new(g, vec![set(a), set(b)]).expect("two sets of one group");
                        let base = (i as u64 * m + j as u64) * xs;
                        for x in 0..xs {
                            let eval = system_eval(property, &sys, x as usize);
                            t.record(base + x, eval, cap, || {
                                eval.into_verdict(property, system_inputs(property, &sys, x as usize))
                            });
                        }
                    }
                    t
                })
                .reduce(Tally::default, merge)
        }
        Property::Maxdef | Property::Iwml | Property::Box => {
            let trios: Vec<Trio> = enumerate_maximal_trios_bounded(g, 64)?
                .into_iter()
                .filter(|t| !canonical || (t.a().contains(0) && t.b().contains(0)))
                .collect();
            if property == Property::Box {
                let subgroups = g.list_subgroups()?;
                let views = subgroups.iter().map(|h| QuotientView::new(g, h)).collect::<Result<Vec<_>>>()?;
                let cases: Vec<(usize, usize, usize)> = trios
                    .iter()
                    .enumerate()
                    .flat_map(|(ti, t)| {
                        let missing: Vec<usize> = t.missing().iter().collect();
                        (0..views.len()).flat_map(move |hi| missing.clone().into_iter().map(move |g0| (ti, hi, g0)))
                    })
                    .collect();
                cases
                    .par_iter()
                    .enumerate()
                    .fold(Tally::default, |mut t, (i, &(ti, hi, g0))| {
                        let eval = box_eval(&trios[ti], &views[hi], g0);
                        t.record(i as u64, eval, cap, || {
                            eval.into_verdict(property, box_inputs(&trios[ti], &subgroups[hi], g0))
                        });
                        t
                    })
                    .reduce(Tally::default, merge)
            } else {
                trios
                    .par_iter()
                    .enumerate()
                    .fold(Tally::default, |mut t, (i, trio)| {
                        let eval = trio_eval(property, trio);
                        t.record(i as u64, eval, cap, || eval.into_verdict(property, trio.to_string()));
                        t
                    })
                    .reduce(Tally::default, merge)
            }
        }
    };
    Ok(tally)
}

fn trio_eval(property: Property, t: &Trio) -> Eval {
    match property {
        Property::Maxdef => maxdef_eval(t),
        Property::Iwml => iwml_eval(t),
        _ => unreachable!("{property} is not a statement about one trio"),
    }
}

fn system_eval(property: Property, sys: &SetSystem, x: usize) -> Eval {
    match property {
        Property::TauMajor => tau_major_eval(sys),
        Property::TauStab => tau_stab_eval(sys),
        Property::TauStopcond => tau_stopcond_eval(sys),
        Property::TauSumset => tau_sumset_eval(sys),
        Property::RepDomination => rep_domination_eval(sys, x),
        _ => unreachable!("{property} is not a statement about set systems"),
    }
}

fn system_inputs(property: Property, sys: &SetSystem, x: usize) -> String {
    if property == Property::RepDomination {
        format!("{sys}/x:{x}")
    } else {
        sys.to_string()
    }
}

fn box_inputs(t: &Trio, h: &Subgroup, g0: usize) -> String {
    format!("{t}/h:{}/g0:{g0}", h.members())
}

/// Subset with each element included independently with probability 1/2,
/// redrawn until non-empty.
fn random_subset(g: &Group, rng: &mut ChaCha8Rng) -> Subset {
    loop {
        let mut s = g.empty_set();
        let mut bits = 0u64;
        for x in 0..g.order() {
            if x % 64 == 0 {
                bits = rng.random();
            }
            if bits >> (x % 64) & 1 == 1 {
                s.insert(x);
            }
        }
        if !s.is_empty() {
            return s;
        }
    }
}

fn random_element(g: &Group, rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(0..g.order())
}

fn random_pick(s: &Subset, rng: &mut ChaCha8Rng) -> usize {
    let k = rng.random_range(0..s.len());
    s.iter().nth(k).expect("index below the set size")
}

/// Draws `n` random non-empty subsets for `sys`-valued properties.
fn random_system<'g>(g: &'g Group, rng: &mut ChaCha8Rng) -> SetSystem<'g> {
    let n = rng.random_range(2..=4);
    let sets = (0..n).map(|_| random_subset(g, rng)).collect();
    SetSystem::new(g, sets).expect("at most four sets of one group")
}

/// Draws one case of `property` and evaluates it, returning the eval and the
/// rendered inputs.
fn random_case(g: &Group, property: Property, rng: &mut ChaCha8Rng, subgroups: &[Subgroup]) -> (Eval, String) {
    match property {
        Property::Kneser => {
            let (a, b) = (random_subset(g, rng), random_subset(g, rng));
            (super::checks::kneser_eval(g, &a, &b), render_sets(&[&a, &b]))
        }
        Property::TrioBound => {
            let (a, b, c) = (random_subset(g, rng), random_subset(g, rng), random_subset(g, rng));
            (super::checks::trio_bound_eval(g, &a, &b, &c), render_sets(&[&a, &b, &c]))
        }
        Property::ComplementIdentity => {
            let s = random_subset(g, rng);
            (complement_identity_eval(g, &s), s.to_string())
        }
        Property::DeficientCharacterization => {
            let (a, b, c) = (random_subset(g, rng), random_subset(g, rng), random_subset(g, rng));
            match Trio::new(g, a, b, c) {
                Ok(t) => (deficient_characterization_eval(&t), t.to_string()),
                Err(_) => (Eval::vacuous("not-a-trio"), String::new()),
            }
        }
        Property::Maxdef | Property::Iwml | Property::Box => {
            let (a, b, c) = (random_subset(g, rng), random_subset(g, rng), random_subset(g, rng));
            let Ok(t) = Trio::new(g, a, b, c) else {
                return (Eval::vacuous("not-a-trio"), String::new());
            };
            let g0 = random_pick(t.missing(), rng);
            let t = match t.complete_to_maximal(g0) {
                Ok(t) => t,
                Err(_) => return (Eval::failed(0, 0, "completion-failed"), t.to_string()),
            };
            if property != Property::Box {
                return (trio_eval(property, &t), t.to_string());
            }
            let h = &subgroups[rng.random_range(0..subgroups.len())];
            let g0 = random_pick(t.missing(), rng);
            let view = QuotientView::new(g, h).expect("listed subgroups are subgroups");
            (box_eval(&t, &view, g0), box_inputs(&t, h, g0))
        }
        Property::TauMajor
        | Property::TauStab
        | Property::TauStopcond
        | Property::TauSumset
        | Property::RepDomination => {
            let sys = random_system(g, rng);
            let x = random_element(g, rng);
            (system_eval(property, &sys, x), system_inputs(property, &sys, x))
        }
    }
}

/// Checks `samples` random instances of `property`. Sample `i` is drawn from
/// a ChaCha8 generator seeded with `seed` on stream `i`, so the report does
/// not depend on the number of workers.
pub fn random_scan(g: &Group, property: Property, samples: u64, seed: u64, config: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    if samples == 0 {
        return Err(Error::Contract("a random scan needs at least one sample".into()));
    }
    let subgroups = if property == Property::Box { g.list_subgroups()? } else { Vec::new() };
    let cap = config.max_witnesses;
    let tally = pool(config.workers)?.install(|| {
        (0..samples)
            .into_par_iter()
            .fold(Tally::default, |mut t, i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let (eval, inputs) = random_case(g, property, &mut rng, &subgroups);
                t.record(i, eval, cap, || eval.into_verdict(property, inputs));
                t
            })
            .reduce(Tally::default, |a, b| a.merge(b, cap))
    });
    Ok(finish(g, property, ScanMode::Random { seed, samples }, tally, start))
}
