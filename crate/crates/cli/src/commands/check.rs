use std::path::PathBuf;

use clap::Args;
use entrocone::geometry::{in_cone, NamedCone};
use entrocone::rational::{format_rational, int};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::inputs::{lambda4_vector, load_vector, parse_vector_text};
use crate::manifest::RunManifest;
use crate::OutArgs;

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// File with 15 coordinates in the order 1,2,3,4;12,13,14,23,24,34;123,124,134,234;1234.
    #[arg(long, conflicts_with = "coords", required_unless_present = "coords")]
    vector: Option<PathBuf>,

    /// Coordinates inline, e.g. "2,2,2,2;3,3,3,3,3,4;4,4,4,4;4".
    #[arg(long)]
    coords: Option<String>,

    /// smc, abc or ning.
    #[arg(long, default_value = "smc")]
    cone: String,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct CheckJson {
    cone: &'static str,
    vector: String,
    member: bool,
    worst_generator: Option<String>,
    worst_value: Option<String>,
}

pub fn run(args: CheckArgs) -> CliResult<()> {
    let cone: NamedCone = args.cone.parse()?;
    let coords = match (&args.vector, &args.coords) {
        (Some(path), _) => load_vector(path)?,
        (None, Some(text)) => parse_vector_text(text)?,
        (None, None) => return Err(CliError::Input("give --vector or --coords".into())),
    };
    let f = lambda4_vector(coords)?;
    let spec = cone.spec(f.shape())?;
    let m = in_cone(&f, &spec, &int(0))?;
    let json = CheckJson {
        cone: cone.name(),
        vector: f.to_string(),
        member: m.member,
        worst_generator: m.worst.as_ref().map(|w| w.0.clone()),
        worst_value: m.worst.as_ref().map(|w| format_rational(&w.1)),
    };
    match &m.worst {
        Some((label, value)) if !m.member => {
            println!("{} not in {}: {label} pairs to {}", json.vector, json.cone, format_rational(value))
        }
        _ => println!("{} in {}", json.vector, json.cone),
    }
    if let Some(path) = &args.out.out {
        let inputs: Vec<&std::path::Path> = args.vector.iter().map(PathBuf::as_path).collect();
        super::emit(Some(path), &super::to_json(&json)?, RunManifest::new("check", None, &inputs)?)?;
    }
    if m.member {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "not in {}: {} = {}",
            json.cone,
            json.worst_generator.unwrap_or_default(),
            json.worst_value.unwrap_or_default()
        )))
    }
}
