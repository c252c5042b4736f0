use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliResult;

/// Provenance record written next to every output file as
/// `<output>.manifest.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// SHA-256 of each input file, keyed by the path as given.
    pub input_hashes: BTreeMap<String, String>,
    /// SHA-256 of each output file.
    pub output_hashes: BTreeMap<String, String>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    Ok(hex::encode(Sha256::digest(fs::read(path)?)))
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>, inputs: &[&Path]) -> CliResult<Self> {
        let input_hashes = inputs
            .iter()
            .map(|p| Ok((p.display().to_string(), sha256_file(p)?)))
            .collect::<CliResult<_>>()?;
        Ok(RunManifest {
            command: command.to_string(),
            arguments: std::env::args().skip(1).collect(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hashes,
            output_hashes: BTreeMap::new(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        })
    }

    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    /// Hashes `outputs` and writes the manifest next to the first one.
    pub fn write(mut self, outputs: &[&Path]) -> CliResult<PathBuf> {
        for p in outputs {
            self.output_hashes.insert(p.display().to_string(), sha256_file(p)?);
        }
        let path = Self::path_for(outputs[0]);
        fs::write(&path, serde_json::to_string_pretty(&self)? + "\n")?;
        Ok(path)
    }
}
