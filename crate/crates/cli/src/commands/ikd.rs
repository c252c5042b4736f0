use std::path::PathBuf;

use clap::Args;
use entrocone::coupling::{aikd_upper, ikd_exact, ikd_greedy, CouplingJson, MAX_TRANSPORT_CELLS};
use entrocone::{Base, Diagram};
use serde::Serialize;

use crate::error::CliResult;
use crate::inputs::load_diagram;
use crate::manifest::RunManifest;
use crate::OutArgs;

#[derive(Args, Debug)]
pub struct IkdArgs {
    #[arg(long)]
    left: PathBuf,

    #[arg(long)]
    right: PathBuf,

    /// Exact minimum over transport-polytope vertices.
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,

    /// Greedy coupling (an upper bound).
    #[arg(long)]
    greedy: bool,

    /// Also estimate the asymptotic distance from powers 1..=n.
    #[arg(long)]
    power: Option<u32>,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct Certificate {
    method: &'static str,
    /// Joints evaluated.
    candidates: usize,
    /// `max_i |ent_i(left) - ent_i(right)|`, a lower bound for the distance.
    lipschitz_lower_bound: f64,
}

#[derive(Serialize)]
struct Asymptotic {
    values: Vec<f64>,
    envelope: Vec<f64>,
    upper_bound: f64,
}

#[derive(Serialize)]
struct IkdJson {
    value: f64,
    base: String,
    coupling: CouplingJson,
    certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptotic: Option<Asymptotic>,
}

fn lipschitz_bound(left: &Diagram, right: &Diagram, base: &Base) -> f64 {
    let x = left.entropy_vector(base);
    let y = right.entropy_vector(base);
    x.values().iter().zip(y.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

pub fn run(args: IkdArgs, base: &Base) -> CliResult<()> {
    let left = load_diagram(&args.left)?;
    let right = load_diagram(&args.right)?;
    let cells = left.initial_space().len() * right.initial_space().len();
    let exact = args.exact || (!args.greedy && cells <= MAX_TRANSPORT_CELLS);
    let (method, result) = if exact {
        ("exact", ikd_exact(&left, &right, base)?)
    } else {
        ("greedy", ikd_greedy(&left, &right, base)?)
    };
    let asymptotic = match args.power {
        Some(n) => {
            let e = aikd_upper(&left, &right, base, n)?;
            Some(Asymptotic {
                upper_bound: e.upper_bound(),
                values: e.values,
                envelope: e.envelope,
            })
        }
        None => None,
    };
    let json = IkdJson {
        value: result.value,
        base: base.to_string(),
        coupling: result.coupling.to_json(),
        certificate: Certificate {
            method,
            candidates: result.candidates,
            lipschitz_lower_bound: lipschitz_bound(&left, &right, base),
        },
        asymptotic,
    };
    let manifest = RunManifest::new("ikd", None, &[&args.left, &args.right])?;
    super::emit(args.out.out.as_deref(), &super::to_json(&json)?, manifest)
}
