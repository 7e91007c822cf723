//! Theorem checkers and the scan engine.
//!
//! Every checkable statement is a [`Property`]. A checker evaluates one
//! instance and returns a [`Verdict`]; the scan engine sweeps all instances
//! of a small group (or a seeded random sample) and collects the failing
//! verdicts as witnesses.

mod checks;
mod maximal;
mod scan;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use checks::{
    check_box_slices, check_complement_identity, check_deficient_characterization, check_iwml, check_kneser,
    check_maxdef, check_rep_domination, check_tau_major, check_tau_stab, check_tau_stopcond, check_tau_sumset,
    check_trio_bound, derive_kneser_from_trio, derive_trio_from_kneser,
};
pub use maximal::{enumerate_maximal_trios, enumerate_maximal_trios_bounded, MAXIMAL_TRIO_ORDER_BOUND};
pub use scan::{exhaustive_scan, random_scan, ScanConfig, ScanMode, ScanReport, DEFAULT_BUDGET};

/// The checkable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// `|A+B| >= |A| + |B| - |π(A+B)|`.
    Kneser,
    /// `|A| + |B| + |C| <= |G| + |π(A+B+C)|` whenever `A+B+C != G`.
    TrioBound,
    /// Maximal deficient trios have deficiency equal to their period size.
    Maxdef,
    /// The transform of an aperiodic maximal deficient trio loses at least
    /// `|H| - 1` elements to its `H`-closure.
    Iwml,
    /// Slice sizes over cosets adding up to a missing element are bounded.
    Box,
    /// Multiplicities, prefix majorization and the equality case of the transform.
    TauMajor,
    /// A system is fixed by the transform iff it is nested.
    TauStab,
    /// Either some translation improves the size vector or the sets sit in
    /// cosets of the preceding periods.
    TauStopcond,
    /// The sumset of the transform lies inside the sumset of the system.
    TauSumset,
    /// The transform never increases representation counts.
    RepDomination,
    /// `S - S̄ = S̄ - S = G \ π(S)` and `π(S - S̄) = π(S)`.
    ComplementIdentity,
    /// A trio is deficient iff it is a few removals away from a maximal
    /// deficient trio.
    DeficientCharacterization,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::Kneser,
        Property::TrioBound,
        Property::Maxdef,
        Property::Iwml,
        Property::Box,
        Property::TauMajor,
        Property::TauStab,
        Property::TauStopcond,
        Property::TauSumset,
        Property::RepDomination,
        Property::ComplementIdentity,
        Property::DeficientCharacterization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Kneser => "kneser",
            Property::TrioBound => "trio-bound",
            Property::Maxdef => "maxdef",
            Property::Iwml => "iwml",
            Property::Box => "box",
            Property::TauMajor => "tau-major",
            Property::TauStab => "tau-stab",
            Property::TauStopcond => "tau-stopcond",
            Property::TauSumset => "tau-sumset",
            Property::RepDomination => "rep-domination",
            Property::ComplementIdentity => "complement-identity",
            Property::DeficientCharacterization => "deficient-characterization",
        }
    }

    /// Number of sets in one explicit instance, or `None` for set systems of
    /// variable length.
    pub fn arity(self) -> Option<usize> {
        match self {
            Property::Kneser => Some(2),
            Property::ComplementIdentity => Some(1),
            Property::TrioBound
            | Property::Maxdef
            | Property::Iwml
            | Property::Box
            | Property::DeficientCharacterization => Some(3),
            Property::TauMajor
            | Property::TauStab
            | Property::TauStopcond
            | Property::TauSumset
            | Property::RepDomination => None,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Spec(format!("unknown property {s:?}")))
    }
}

/// The outcome of checking one instance of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    /// Set literals joined by `;`, followed by `/name:value` for auxiliary
    /// parameters such as the subgroup or the missing element.
    pub inputs: String,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    /// `lhs = rhs` on a passing, non-vacuous instance.
    pub tight: bool,
    /// The precondition did not hold; counts as a pass.
    pub vacuous: bool,
    /// Why the instance was vacuous or which step failed.
    pub reason: Option<String>,
}

/// Numbers of a verdict before the inputs are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Eval {
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    pub vacuous: bool,
    pub reason: Option<&'static str>,
}

impl Eval {
    pub fn measured(lhs: i64, rhs: i64, pass: bool) -> Self {
        Eval { lhs, rhs, pass, vacuous: false, reason: None }
    }

    pub fn vacuous(reason: &'static str) -> Self {
        Eval { lhs: 0, rhs: 0, pass: true, vacuous: true, reason: Some(reason) }
    }

    pub fn failed(lhs: i64, rhs: i64, reason: &'static str) -> Self {
        Eval { lhs, rhs, pass: false, vacuous: false, reason: Some(reason) }
    }

    pub fn tight(&self) -> bool {
        self.pass && !self.vacuous && self.lhs == self.rhs
    }

    pub fn into_verdict(self, property: Property, inputs: String) -> Verdict {
        Verdict {
            property,
            inputs,
            lhs: self.lhs,
            rhs: self.rhs,
            pass: self.pass,
            tight: self.tight(),
            vacuous: self.vacuous,
            reason: self.reason.map(str::to_owned),
        }
    }
}
