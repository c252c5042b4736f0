use std::sync::Arc;

use clap::{Args, ValueEnum};
use entrocone::geometry::{spc, NamedCone, RayEnumeration};
use entrocone::IndexingCategory;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::OutArgs;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RayCone {
    Smc,
    Abc,
}

impl RayCone {
    fn named(self) -> NamedCone {
        match self {
            RayCone::Smc => NamedCone::Submodular,
            RayCone::Abc => NamedCone::Abelian,
        }
    }

    /// Published ray and orbit counts.
    fn expected(self) -> (usize, usize) {
        match self {
            RayCone::Smc => (41, 11),
            RayCone::Abc => (35, 10),
        }
    }
}

#[derive(Args, Debug)]
pub struct RaysArgs {
    #[arg(long, value_enum)]
    cone: RayCone,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct Expected {
    rays: usize,
    orbits: usize,
}

#[derive(Serialize)]
struct RaysJson {
    cone: &'static str,
    coordinates: Vec<String>,
    ray_count: usize,
    orbit_count: usize,
    expected: Expected,
    orbit_sizes: Vec<usize>,
    /// Primitive integer rays, sorted.
    rays: Vec<Vec<i64>>,
    /// Ray indices per orbit.
    orbits: Vec<Vec<usize>>,
    /// Indices of the orbit of the special vector, when present.
    spc_orbit: Option<Vec<usize>>,
}

pub fn run(args: RaysArgs) -> CliResult<()> {
    let shape = Arc::new(IndexingCategory::lambda_n(4)?);
    let named = args.cone.named();
    let spec = named.spec(&shape)?;
    let result = RayEnumeration::compute(&spec)?;
    let rays = result
        .rays
        .iter()
        .map(|r| r.as_i64().ok_or_else(|| CliError::Internal("ray coordinate exceeds i64".into())))
        .collect::<CliResult<Vec<_>>>()?;
    let special = spc();
    let spc_orbit = result
        .orbits
        .iter()
        .find(|o| o.members.iter().any(|&i| result.rays[i] == special))
        .map(|o| o.members.clone());
    let (er, eo) = args.cone.expected();
    let json = RaysJson {
        cone: named.name(),
        coordinates: shape.objects().map(|o| shape.name(o).to_string()).collect(),
        ray_count: rays.len(),
        orbit_count: result.orbits.len(),
        expected: Expected { rays: er, orbits: eo },
        orbit_sizes: result.orbit_sizes(),
        rays,
        orbits: result.orbits.iter().map(|o| o.members.clone()).collect(),
        spc_orbit,
    };
    eprintln!(
        "{}: {} rays in {} orbits (expected {er}/{eo}); orbit sizes {:?}",
        json.cone, json.ray_count, json.orbit_count, json.orbit_sizes
    );
    super::emit(args.out.out.as_deref(), &super::to_json(&json)?, RunManifest::new("rays", None, &[])?)?;
    if (json.ray_count, json.orbit_count) != (er, eo) {
        return Err(CliError::Internal(format!(
            "expected {er} rays in {eo} orbits, found {} in {}",
            json.ray_count, json.orbit_count
        )));
    }
    Ok(())
}
