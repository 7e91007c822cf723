use std::fmt::Write;

use clap::ValueEnum;

use crate::verify::{ScanMode, ScanReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable table.
    Text,
    /// One `key=value` record per line.
    Lines,
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Verdict fields in record order: `property inputs lhs rhs pass tight
/// vacuous reason`.
fn verdict_record(kind: &str, v: &Verdict) -> String {
    format!(
        "kind={kind} property={} inputs={} lhs={} rhs={} pass={} tight={} vacuous={} reason={}",
        v.property,
        v.inputs,
        v.lhs,
        v.rhs,
        flag(v.pass),
        flag(v.tight),
        flag(v.vacuous),
        v.reason.as_deref().unwrap_or("-")
    )
}

/// A single verdict. Text form: `pass tight lhs=3 rhs=3`.
pub fn render_verdict(v: &Verdict, format: Format) -> String {
    match format {
        Format::Lines => verdict_record("verdict", v) + "\n",
        Format::Text => {
            let mut out = String::from(if v.pass { "pass" } else { "fail" });
            if v.vacuous {
                out.push_str(" vacuous");
            }
            if v.tight {
                out.push_str(" tight");
            }
            if !v.vacuous {
                let _ = write!(out, " lhs={} rhs={}", v.lhs, v.rhs);
            }
            if let Some(r) = &v.reason {
                let _ = write!(out, " reason={r}");
            }
            out + "\n"
        }
    }
}

fn mode_name(mode: &ScanMode) -> &'static str {
    match mode {
        ScanMode::Exhaustive { .. } => "exhaustive",
        ScanMode::Random { .. } => "random",
    }
}

/// A scan report: the summary followed by one witness per kept violation.
///
/// Summary keys, in order: `kind property group mode canonical seed samples
/// cases_checked violations tight vacuous elapsed_ms`. `elapsed_ms` comes
/// last so that determinism checks can strip it.
pub fn render_report(r: &ScanReport, seed: u64, format: Format) -> String {
    let (canonical, seed, samples) = match r.mode {
        ScanMode::Exhaustive { canonical } => (canonical, seed, 0),
        ScanMode::Random { seed, samples } => (false, seed, samples),
    };
    let elapsed_ms = r.elapsed.as_millis();
    let mut out = String::new();
    match format {
        Format::Lines => {
            let _ = writeln!(
                out,
                "kind=summary property={} group={} mode={} canonical={} seed={seed} samples={samples} \
                 cases_checked={} violations={} tight={} vacuous={} elapsed_ms={elapsed_ms}",
                r.property,
                r.group,
                mode_name(&r.mode),
                flag(canonical),
                r.cases_checked,
                r.violation_count,
                r.tight_count,
                r.vacuous_count,
            );
            for v in &r.violations {
                out.push_str(&verdict_record("witness", v));
                out.push('\n');
            }
        }
        Format::Text => {
            let mode = match r.mode {
                ScanMode::Exhaustive { canonical: true } => "exhaustive (canonical)".to_string(),
                ScanMode::Exhaustive { canonical: false } => "exhaustive".to_string(),
                ScanMode::Random { seed, samples } => format!("random seed={seed} samples={samples}"),
            };
            let header = ["property", "group", "mode", "checked", "violations", "tight", "elapsed"];
            let row = [
                r.property.to_string(),
                r.group.clone(),
                mode,
                r.cases_checked.to_string(),
                r.violation_count.to_string(),
                r.tight_count.to_string(),
                format!("{elapsed_ms}ms"),
            ];
            let widths: Vec<usize> = header.iter().zip(&row).map(|(h, c)| h.len().max(c.len())).collect();
            for line in [header.map(str::to_string).to_vec(), row.to_vec()] {
                let cells: Vec<String> = line.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
            for v in &r.violations {
                let _ = writeln!(
                    out,
                    "violation {} lhs={} rhs={} reason={}",
                    v.inputs,
                    v.lhs,
                    v.rhs,
                    v.reason.as_deref().unwrap_or("-")
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Property;
    use std::time::Duration;

    fn verdict() -> Verdict {
        Verdict {
            property: Property::Kneser,
            inputs: "0,1;0,1".into(),
            lhs: 3,
            rhs: 3,
            pass: true,
            tight: true,
            vacuous: false,
            reason: None,
        }
    }

    #[test]
    fn verdict_forms() {
        assert_eq!(render_verdict(&verdict(), Format::Text), "pass tight lhs=3 rhs=3\n");
        assert_eq!(
            render_verdict(&verdict(), Format::Lines),
            "kind=verdict property=kneser inputs=0,1;0,1 lhs=3 rhs=3 pass=true tight=true vacuous=false reason=-\n"
        );
    }

    #[test]
    fn report_forms() {
        let mut r = ScanReport {
            group: "4".into(),
            property: Property::Kneser,
            mode: ScanMode::Exhaustive { canonical: false },
            cases_checked: 225,
            violation_count: 0,
            violations: vec![],
            tight_count: 10,
            vacuous_count: 0,
            elapsed: Duration::from_millis(5),
        };
        let lines = render_report(&r, 0, Format::Lines);
        assert_eq!(
            lines,
            "kind=summary property=kneser group=4 mode=exhaustive canonical=false seed=0 samples=0 \
             cases_checked=225 violations=0 tight=10 vacuous=0 elapsed_ms=5\n"
        );
        r.violation_count = 1;
        r.violations.push(Verdict { pass: false, tight: false, reason: Some("x".into()), ..verdict() });
        let lines = render_report(&r, 0, Format::Lines);
        assert!(lines.lines().nth(1).unwrap().starts_with("kind=witness property=kneser inputs=0,1;0,1"));
        let text = render_report(&r, 0, Format::Text);
        assert!(text.starts_with("property  group  mode"));
        assert!(text.contains("violation 0,1;0,1"));
    }
}
