use std::fs;
use std::path::PathBuf;

use clap::Args;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::inputs::{diagram_from_value, DiagramFormat};

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Diagram, space, joint, group diagram or indexing category JSON.
    file: PathBuf,
}

pub fn run(args: ValidateArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.file)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("objects").is_some() && value.get("arrows").is_some() {
        let c = crate::inputs::load_category(&args.file)?;
        let terminals: Vec<&str> = c.terminal_objects().into_iter().map(|t| c.name(t)).collect();
        println!(
            "indexing category: {} objects, initial {}, terminal {:?}",
            c.len(),
            c.name(c.initial()),
            terminals
        );
        return Ok(());
    }
    let (d, format) = diagram_from_value(value).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", args.file.display())),
        other => other,
    })?;
    let kind = match format {
        DiagramFormat::Diagram => "diagram",
        DiagramFormat::Space => "space",
        DiagramFormat::Joint => "joint distribution",
        DiagramFormat::Group => "group diagram",
    };
    println!(
        "{kind}: {} objects, {} initial atoms, {} atoms in total",
        d.shape().len(),
        d.initial_space().len(),
        d.total_atoms()
    );
    Ok(())
}
