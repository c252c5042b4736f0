use std::collections::BTreeMap;

use clap::Args;
use entrocone::geometry::{ning_chart, printed_chart, reconciliation_notes, verify_chart, ChartCheck, Outcome, RowReport};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::OutArgs;

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Check the rows exactly as printed instead of the reconciled chart.
    #[arg(long)]
    strict_paper: bool,

    /// Restrict the verdict to one row, e.g. `a12`.
    #[arg(long)]
    row: Option<String>,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct RowJson {
    name: String,
    provenance: String,
    vertex: String,
    representative: Option<String>,
    passed: bool,
    checks: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct ReportJson {
    chart: &'static str,
    passed: bool,
    rows: Vec<RowJson>,
    notes: Vec<String>,
}

fn outcome_text(o: &Outcome) -> String {
    match o {
        Outcome::Pass => "pass".into(),
        Outcome::NotApplicable => "n/a".into(),
        Outcome::Fail(why) => format!("fail: {why}"),
    }
}

pub fn run(args: Table1Args) -> CliResult<()> {
    let chart = if args.strict_paper { printed_chart() } else { ning_chart() };
    let report = verify_chart(&chart)?;
    let selected: Vec<&RowReport> = match &args.row {
        Some(name) => vec![report
            .row(name)
            .ok_or_else(|| CliError::Input(format!("no row `{name}`; rows are a1..a15")))?],
        None => report.rows.iter().collect(),
    };
    let notes = if args.strict_paper { Vec::new() } else { reconciliation_notes() };
    let passed = selected.iter().all(|r| r.passed());

    for r in &selected {
        let verdict = if r.passed() { "ok  " } else { "FAIL" };
        println!("{verdict} {:<4} [{}]", r.name, r.provenance);
        for (check, outcome) in &r.checks {
            if outcome.is_fail() {
                println!("       {check}: {}", outcome_text(outcome));
            }
        }
    }
    for n in &notes {
        println!("note: {n}");
    }

    if let Some(path) = &args.out.out {
        let rows = selected
            .iter()
            .map(|r| {
                let row = chart.row(&r.name).expect("report rows come from the chart");
                RowJson {
                    name: r.name.clone(),
                    provenance: r.provenance.to_string(),
                    vertex: row.vertex.to_string(),
                    representative: row.representative.as_ref().map(|g| g.to_string()),
                    passed: r.passed(),
                    checks: r.checks.iter().map(|(c, o)| (c.to_string(), outcome_text(o))).collect(),
                }
            })
            .collect();
        let json = ReportJson {
            chart: if args.strict_paper { "printed" } else { "reconciled" },
            passed,
            rows,
            notes: notes.clone(),
        };
        super::emit(Some(path), &super::to_json(&json)?, RunManifest::new("verify-table1", None, &[])?)?;
    }

    if passed {
        Ok(())
    } else {
        let first: Vec<String> = selected
            .iter()
            .filter_map(|r| {
                let failing = || r.checks.iter().filter(|(_, o)| o.is_fail());
                failing()
                    .find(|(c, _)| *c == ChartCheck::Submodular)
                    .or_else(|| failing().next())
                    .map(|(c, o)| format!("{} {c}: {}", r.name, outcome_text(o)))
            })
            .collect();
        Err(CliError::Verification(first.join("; ")))
    }
}
