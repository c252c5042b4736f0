use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use entrocone::explorer::{
    maximize_alpha15, phi_inner_bound, sample_distributions, sample_group_points, table1_points, PhiGrid, PhiTable,
    SamplePoint, Source,
};
use entrocone::Base;

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

#[derive(Args, Debug)]
pub struct ExploreArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Samples per enabled source.
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// Sample random Abelian group diagrams.
    #[arg(long)]
    groups: bool,

    /// Sample random joint distributions.
    #[arg(long)]
    distributions: bool,

    /// Alphabet sizes of the four variables for joint sampling.
    #[arg(long, default_value = "2,2,2,2")]
    alphabet: String,

    /// Largest group order for group sampling.
    #[arg(long, default_value_t = 64)]
    order_cap: usize,

    /// Include the chart's group representatives.
    #[arg(long)]
    table1: bool,

    /// Steps of the Ingleton-violation search (0 skips it).
    #[arg(long, default_value_t = 0)]
    search_budget: u64,

    /// Buckets per unit of normalized coordinate.
    #[arg(long, default_value_t = 4)]
    resolution: u32,

    /// Bucket on α1..α14 instead of α5..α14.
    #[arg(long)]
    diagnostic: bool,

    /// CSV output; witnesses go to `<out>.witnesses.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_alphabet(text: &str) -> CliResult<[usize; 4]> {
    let sizes = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| CliError::Input(format!("alphabet `{s}`: {e}"))))
        .collect::<CliResult<Vec<_>>>()?;
    sizes
        .try_into()
        .map_err(|_| CliError::Input("alphabet needs four sizes".into()))
}

pub fn table_csv(table: &PhiTable) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = table.grid().key_names();
    header.push("max_alpha15".into());
    header.push("witness".into());
    w.write_record(&header)?;
    for (key, entry) in table.entries() {
        let mut record: Vec<String> = key.iter().map(i64::to_string).collect();
        record.push(entry.max_alpha15.to_string());
        record.push(entry.witness.clone());
        w.write_record(&record)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn witnesses_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".witnesses.json");
    PathBuf::from(name)
}

pub fn run(args: ExploreArgs, base: &Base) -> CliResult<()> {
    let grid = PhiGrid {
        resolution: args.resolution,
        diagnostic: args.diagnostic,
    };
    if grid.resolution == 0 {
        return Err(CliError::Input("--resolution must be positive".into()));
    }
    let (groups, distributions) = match (args.groups, args.distributions) {
        (false, false) => (true, true),
        flags => flags,
    };
    let mut points: Vec<SamplePoint> = Vec::new();
    if args.table1 {
        points.extend(table1_points(base)?);
    }
    if distributions {
        points.extend(sample_distributions(args.seed, args.samples, parse_alphabet(&args.alphabet)?, base)?);
    }
    if groups {
        points.extend(sample_group_points(args.seed, args.samples, args.order_cap, base)?);
    }
    let mut search_note = None;
    if args.search_budget > 0 {
        let s = maximize_alpha15(args.seed, args.search_budget)?;
        search_note = Some(format!(
            "search: best alpha15/H = {} (alpha15 = {}), exact violation: {}",
            s.best_score,
            s.best.alpha15(),
            s.found_violation()
        ));
        points.push(s.best);
    }
    if let Some(bad) = points.iter().find(|p| !p.in_smc) {
        return Err(CliError::Internal(format!("sample {} violates a Shannon inequality", bad.witness.id)));
    }
    let table = phi_inner_bound(&points, grid);
    let violators = points.iter().filter(|p| p.violates_ingleton()).count();
    eprintln!(
        "{} points, {} buckets, {} exact Ingleton violators, max normalized alpha15 {}",
        points.len(),
        table.len(),
        violators,
        table.max_value().map_or("-".to_string(), |v| v.to_string())
    );
    if let Some(note) = search_note {
        eprintln!("{note}");
    }

    let csv = table_csv(&table)?;
    match &args.out {
        Some(out) => {
            fs::write(out, &csv)?;
            let used: BTreeMap<&str, &Source> = table
                .entries()
                .values()
                .filter_map(|e| {
                    points
                        .iter()
                        .find(|p| p.witness.id == e.witness)
                        .map(|p| (e.witness.as_str(), &p.witness.source))
                })
                .collect();
            let wpath = witnesses_path(out);
            fs::write(&wpath, serde_json::to_string_pretty(&used)? + "\n")?;
            RunManifest::new("explore", Some(args.seed), &[])?.write(&[out, &wpath])?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}
