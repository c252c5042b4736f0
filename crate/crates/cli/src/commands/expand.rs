use std::path::{Path, PathBuf};

use clap::Args;
use entrocone::diagrams::DiagramJson;
use entrocone::explorer::expansion_sweep;
use entrocone::{Base, FiniteProbabilitySpace};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::inputs::{load_diagram, load_space};
use crate::manifest::RunManifest;
use crate::OutArgs;

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Diagram to expand (diagram, space, joint or group JSON).
    #[arg(long)]
    diagram: PathBuf,

    /// `OBJECT=space.json`: expand the terminal OBJECT by this noise.
    #[arg(long, value_name = "OBJECT=FILE")]
    noise: Vec<String>,

    /// Expand the terminal OBJECT by a fair coin.
    #[arg(long, value_name = "OBJECT")]
    coin: Vec<String>,

    /// `OBJECT=BITS`: expand the terminal OBJECT by a dyadic noise of this
    /// entropy in bits, within 1e-6.
    #[arg(long, value_name = "OBJECT=BITS")]
    lambda: Vec<String>,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct ExpandJson {
    base: String,
    noises: Vec<(String, f64)>,
    before: Vec<f64>,
    after: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_before: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_after: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinate_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_error: Option<f64>,
    expanded: DiagramJson,
}

pub fn run(args: ExpandArgs, base: &Base) -> CliResult<()> {
    let diagram = load_diagram(&args.diagram)?;
    let shape = diagram.shape().clone();
    let mut inputs: Vec<PathBuf> = vec![args.diagram.clone()];
    let mut noises: Vec<(String, FiniteProbabilitySpace)> = Vec::new();
    for spec in &args.noise {
        let (name, file) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--noise expects OBJECT=FILE, got `{spec}`")))?;
        let path = PathBuf::from(file);
        noises.push((name.to_string(), load_space(&path)?));
        inputs.push(path);
    }
    for name in &args.coin {
        noises.push((name.clone(), FiniteProbabilitySpace::coin()));
    }
    for spec in &args.lambda {
        let (name, bits) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--lambda expects OBJECT=BITS, got `{spec}`")))?;
        let bits: f64 = bits
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("--lambda: `{bits}` is not a number")))?;
        noises.push((name.to_string(), FiniteProbabilitySpace::with_entropy_bits(bits)?));
    }
    for (name, _) in &noises {
        let id = shape.id(name)?;
        if !shape.is_terminal(id) {
            return Err(CliError::Input(format!("object `{name}` is not terminal")));
        }
    }

    let json = if shape.lambda_rank() == Some(4) {
        let mut per_variable = vec![FiniteProbabilitySpace::point(); 4];
        for (name, space) in &noises {
            let mask = shape.subset(shape.id(name)?).expect("full shape");
            let k = mask.trailing_zeros() as usize;
            per_variable[k] = per_variable[k].tensor(space);
        }
        let r = expansion_sweep(&diagram, &per_variable, base)?;
        if !r.passed() {
            return Err(CliError::Internal(format!(
                "expansion changed more than the noise entropies: coordinate error {}, alpha error {}",
                r.coordinate_error, r.alpha_error
            )));
        }
        ExpandJson {
            base: base.to_string(),
            noises: (1..=4).map(|k| (k.to_string(), r.noise_entropies[k - 1])).collect(),
            before: r.before.values().to_vec(),
            after: r.after.values().to_vec(),
            alpha_before: Some(r.alpha_before.clone()),
            alpha_after: Some(r.alpha_after.clone()),
            coordinate_error: Some(r.coordinate_error),
            alpha_error: Some(r.alpha_error),
            expanded: r.expanded.to_json(),
        }
    } else {
        let mut expanded = diagram.clone();
        for (name, space) in &noises {
            expanded = expanded.expand_terminal(shape.id(name)?, space)?;
        }
        ExpandJson {
            base: base.to_string(),
            noises: noises.iter().map(|(n, s)| (n.clone(), s.entropy(base).value)).collect(),
            before: diagram.entropy_vector(base).values().to_vec(),
            after: expanded.entropy_vector(base).values().to_vec(),
            alpha_before: None,
            alpha_after: None,
            coordinate_error: None,
            alpha_error: None,
            expanded: expanded.to_json(),
        }
    };
    let input_refs: Vec<&Path> = inputs.iter().map(PathBuf::as_path).collect();
    let manifest = RunManifest::new("expand", None, &input_refs)?;
    super::emit(args.out.out.as_deref(), &super::to_json(&json)?, manifest)
}
