//! The `trios` command line.
//!
//! Exit codes: 0 when every check passed or a computation succeeded, 1 when
//! some non-vacuous verdict failed, 2 for usage and parse errors, 3 when a
//! capability or budget bound was hit.

mod render;

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::group::{Group, Subgroup};
use crate::subset::Subset;
use crate::transform::SetSystem;
use crate::trio::Trio;
use crate::verify::{self, Property, ScanConfig, Verdict, DEFAULT_BUDGET};

pub use render::{render_report, render_verdict, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "trios", version, about = "Sumsets, periods, trios and the n-transform in finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print A_1 + ... + A_n.
    Sumset(SetsArgs),
    /// Print the period of one set.
    Period(SetsArgs),
    /// Print the transform of a set system.
    Tau(SetsArgs),
    /// Print the completion of a trio to a maximal trio.
    Complete(CompleteArgs),
    /// Print every maximal trio of a group.
    MaximalTrios(MaximalArgs),
    /// Check a property on explicit sets, exhaustively or on random samples.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SetsArgs {
    /// Group literal: "12" or "2x2x3".
    #[arg(long)]
    group: String,
    /// Set literals joined by ';'.
    #[arg(long)]
    sets: String,
}

#[derive(Debug, Args)]
struct CompleteArgs {
    #[arg(long)]
    group: String,
    /// Trio literal "A;B;C".
    #[arg(long)]
    sets: String,
    /// Missing element to complete at; defaults to the smallest one.
    #[arg(long)]
    element: Option<usize>,
}

#[derive(Debug, Args)]
struct MaximalArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    group: String,
    /// One of kneser, trio-bound, maxdef, iwml, box, tau-major, tau-stab,
    /// tau-stopcond, tau-sumset, rep-domination, complement-identity,
    /// deficient-characterization.
    #[arg(long)]
    property: String,
    /// Check one instance given as set literals joined by ';'.
    #[arg(long, conflicts_with_all = ["exhaustive", "samples"])]
    sets: Option<String>,
    /// Check every instance.
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Restrict exhaustive scans to leading sets containing 0.
    #[arg(long, requires = "exhaustive")]
    canonicalize: bool,
    /// Check this many random instances.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest estimated work of an exhaustive scan.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Missing element for box (default: the smallest), or the represented
    /// element for rep-domination (default: 0).
    #[arg(long)]
    element: Option<usize>,
    /// Subgroup for box, as a set literal.
    #[arg(long)]
    subgroup: Option<String>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Spec(_) | Error::Contract(_) | Error::NotATrio(_) => EXIT_USAGE,
        Error::Capability(_) => EXIT_CAPABILITY,
        Error::Violation(_) => EXIT_VIOLATION,
    }
}

/// Parses `argv` (including the program name), runs the command writing to
/// stdout and stderr, and returns the exit code.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`parse_and_dispatch`] with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_sets(g: &Group, lit: &str) -> crate::Result<Vec<Subset>> {
    lit.split(';').map(|s| g.parse_subset(s)).collect()
}

fn require_count(sets: &[Subset], n: usize, what: &str) -> crate::Result<()> {
    if sets.len() != n {
        return Err(Error::Spec(format!("{what} needs {n} set literals, got {}", sets.len())));
    }
    if let Some(i) = sets.iter().position(Subset::is_empty) {
        return Err(Error::Spec(format!("set literal {} is empty", i + 1)));
    }
    Ok(())
}

fn dispatch(command: Command) -> crate::Result<(String, i32)> {
    match command {
        Command::Sumset(a) => {
            let g: Group = a.group.parse()?;
            let sets = parse_sets(&g, &a.sets)?;
            let sum = SetSystem::new(&g, sets)?.sumset();
            Ok((format!("{sum}\n"), EXIT_OK))
        }
        Command::Period(a) => {
            let g: Group = a.group.parse()?;
            let sets = parse_sets(&g, &a.sets)?;
            if sets.len() != 1 {
                return Err(Error::Spec(format!("period needs one set literal, got {}", sets.len())));
            }
            Ok((format!("{}\n", g.period(&sets[0]).members()), EXIT_OK))
        }
        Command::Tau(a) => {
            let g: Group = a.group.parse()?;
            let sys = SetSystem::new(&g, parse_sets(&g, &a.sets)?)?;
            Ok((format!("{}\n", sys.tau().output), EXIT_OK))
        }
        Command::Complete(a) => {
            let g: Group = a.group.parse()?;
            let t = Trio::parse(&g, &a.sets)?;
            let g0 = a.element.unwrap_or_else(|| t.missing().min().expect("a trio misses some element"));
            Ok((format!("{}\n", t.complete_to_maximal(g0)?), EXIT_OK))
        }
        Command::MaximalTrios(a) => {
            let g: Group = a.group.parse()?;
            let mut text = String::new();
            for t in verify::enumerate_maximal_trios(&g)? {
                match a.format {
                    Format::Text => text.push_str(&format!("{t}\n")),
                    Format::Lines => text.push_str(&format!(
                        "kind=trio trio={t} deficiency={} period_size={} aperiodic={}\n",
                        t.deficiency(),
                        t.period().size(),
                        t.is_aperiodic()
                    )),
                }
            }
            Ok((text, EXIT_OK))
        }
        Command::Verify(a) => verify_command(a),
    }
}

fn verify_command(a: VerifyArgs) -> crate::Result<(String, i32)> {
    let g: Group = a.group.parse()?;
    let property: Property = a.property.parse()?;
    let config = ScanConfig { workers: a.workers.unwrap_or(0) as usize, budget: a.budget, ..ScanConfig::default() };
    let report = if let Some(lit) = &a.sets {
        let v = direct_verdict(&g, property, lit, &a)?;
        let code = if v.pass { EXIT_OK } else { EXIT_VIOLATION };
        return Ok((render_verdict(&v, a.format), code));
    } else if a.exhaustive {
        verify::exhaustive_scan(&g, property, a.canonicalize, &config)?
    } else if let Some(samples) = a.samples {
        verify::random_scan(&g, property, samples, a.seed, &config)?
    } else {
        return Err(Error::Spec("verify needs one of --sets, --exhaustive or --samples".into()));
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    Ok((render_report(&report, a.seed, a.format), code))
}

fn direct_verdict(g: &Group, property: Property, lit: &str, a: &VerifyArgs) -> crate::Result<Verdict> {
    let sets = parse_sets(g, lit)?;
    match property {
        Property::Kneser => {
            require_count(&sets, 2, "kneser")?;
            verify::check_kneser(g, &sets[0], &sets[1])
        }
        Property::TrioBound => {
            require_count(&sets, 3, "trio-bound")?;
            verify::check_trio_bound(g, &sets[0], &sets[1], &sets[2])
        }
        Property::ComplementIdentity => {
            if sets.len() != 1 {
                return Err(Error::Spec(format!("complement-identity needs one set literal, got {}", sets.len())));
            }
            verify::check_complement_identity(g, &sets[0])
        }
        Property::Maxdef | Property::Iwml | Property::Box | Property::DeficientCharacterization => {
            require_count(&sets, 3, property.name())?;
            let [x, y, z]: [Subset; 3] = sets.try_into().expect("three sets");
            let t = Trio::new(g, x, y, z)?;
            Ok(match property {
                Property::Maxdef => verify::check_maxdef(&t),
                Property::Iwml => verify::check_iwml(&t),
                Property::DeficientCharacterization => verify::check_deficient_characterization(&t),
                _ => {
                    let lit = a.subgroup.as_deref().ok_or_else(|| Error::Spec("box needs --subgroup".into()))?;
                    let h = Subgroup::new(g, g.parse_subset(lit)?)?;
                    let g0 = a.element.unwrap_or_else(|| t.missing().min().expect("a trio misses some element"));
                    verify::check_box_slices(&t, &h, g0)?
                }
            })
        }
        Property::TauMajor
        | Property::TauStab
        | Property::TauStopcond
        | Property::TauSumset
        | Property::RepDomination => {
            let sys = SetSystem::new(g, sets)?;
            Ok(match property {
                Property::TauMajor => verify::check_tau_major(&sys),
                Property::TauStab => verify::check_tau_stab(&sys),
                Property::TauStopcond => verify::check_tau_stopcond(&sys),
                Property::TauSumset => verify::check_tau_sumset(&sys),
                _ => verify::check_rep_domination(&sys, a.element.unwrap_or(0))?,
            })
        }
    }
}
