pub mod check;
pub mod expand;
pub mod explore;
pub mod ikd;
pub mod rays;
pub mod table1;
pub mod validate;

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::CliResult;
use crate::manifest::RunManifest;

/// Writes `text` to `out` with a manifest, or prints it.
pub fn emit(out: Option<&Path>, text: &str, manifest: RunManifest) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            manifest.write(&[path])?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}
