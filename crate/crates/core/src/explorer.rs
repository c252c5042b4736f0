//! Inner-bound exploration of the entropic region inside the non-Ingleton
//! cone, and the expansion experiment on full four-variable diagrams.
//!
//! All random weights are dyadic with denominator [`WEIGHT_DENOMINATOR`], so
//! every sample is an exact rational diagram. Streams are reproducible: the
//! sample at index `k` of seed `s` comes from ChaCha stream `k` of `s`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{full_diagram, Diagram, JointDistribution, JointJson};
use crate::error::{Error, Result};
use crate::geometry::{
    alpha_coords, in_cone, ingleton_vectors, ning_chart, pair, shannon_generators, ConeSpec, EntropyVector, Generator,
};
use crate::groups::{GroupDiagramJson, MAX_GROUP_ORDER};
use crate::indexing::IndexingCategory;
use crate::rational::{rat, Rational};
use crate::spaces::{Base, FiniteProbabilitySpace};

pub const WEIGHT_DENOMINATOR: i64 = 1024;
pub const MAX_ALPHABET: usize = 6;
/// Largest number of support tuples of a random joint.
pub const MAX_SUPPORT_POINTS: usize = 8;
/// Tolerance for floating-point cone and identity checks.
pub const TOLERANCE: f64 = 1e-9;

fn lambda4() -> Arc<IndexingCategory> {
    Arc::new(IndexingCategory::lambda_n(4).expect("Λ4"))
}

struct Cones {
    shannon: ConeSpec,
    ingleton: Vec<Generator>,
}

fn cones() -> &'static Cones {
    static CONES: OnceLock<Cones> = OnceLock::new();
    CONES.get_or_init(|| {
        let shape = lambda4();
        Cones {
            shannon: shannon_generators(&shape).expect("Λ4"),
            ingleton: ingleton_vectors(&shape).expect("Λ4"),
        }
    })
}

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Data sufficient to rebuild a sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Joint { joint: JointJson },
    Group { group: GroupDiagramJson },
}

impl Source {
    pub fn diagram(&self) -> Result<Diagram> {
        match self {
            Source::Joint { joint } => full_diagram(&JointDistribution::from_json(joint)?),
            Source::Group { group } => crate::groups::GroupDiagram::from_json(group)?.realize(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub witness: Witness,
    pub entropy_vector: EntropyVector<f64>,
    /// `α_1..α_15`.
    pub alpha: Vec<f64>,
    pub in_smc: bool,
    /// Smallest of the six Ingleton pairings.
    pub ingleton_min: f64,
    /// Exact signs of the six Ingleton pairings, `ing(12;34)` first.
    pub ingleton_signs: Vec<Ordering>,
}

impl SamplePoint {
    fn build(witness: Witness, f: EntropyVector<f64>, signs: Vec<Ordering>) -> Result<Self> {
        let cones = cones();
        let in_smc = in_cone(&f, &cones.shannon, &TOLERANCE)?.member;
        let ingleton_min = cones
            .ingleton
            .iter()
            .map(|g| pair(&f, &g.vector))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        Ok(SamplePoint {
            witness,
            alpha: alpha_coords(&f)?,
            entropy_vector: f,
            in_smc,
            ingleton_min,
            ingleton_signs: signs,
        })
    }

    pub fn from_joint(id: String, joint: &JointDistribution, base: &Base) -> Result<Self> {
        if joint.n() != 4 {
            return Err(Error::NotAFullShape);
        }
        let d = full_diagram(joint)?;
        let signs = cones()
            .ingleton
            .iter()
            .map(|g| d.pairing_sign(&g.vector))
            .collect::<Result<Vec<_>>>()?;
        let witness = Witness {
            id,
            source: Source::Joint { joint: joint.to_json() },
        };
        Self::build(witness, d.entropy_vector(base), signs)
    }

    pub fn from_group(id: String, group: &GroupDiagramJson, base: &Base) -> Result<Self> {
        let g = crate::groups::GroupDiagram::from_json(group)?;
        if g.shape().lambda_rank() != Some(4) {
            return Err(Error::NotAFullShape);
        }
        let signs = cones()
            .ingleton
            .iter()
            .map(|v| g.pairing_sign(&v.vector))
            .collect::<Result<Vec<_>>>()?;
        let witness = Witness {
            id,
            source: Source::Group { group: group.clone() },
        };
        Self::build(witness, g.entropy_vector(base), signs)
    }

    /// `α15 > 0` certified by exact arithmetic.
    pub fn violates_ingleton(&self) -> bool {
        self.ingleton_signs[0] == Ordering::Less
    }

    pub fn alpha15(&self) -> f64 {
        self.alpha[14]
    }
}

/// `k` positive integers summing to [`WEIGHT_DENOMINATOR`].
fn random_composition(rng: &mut ChaCha8Rng, k: usize) -> Vec<i64> {
    let mut cuts: Vec<i64> = sample(rng, (WEIGHT_DENOMINATOR - 1) as usize, k - 1)
        .into_iter()
        .map(|c| c as i64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(WEIGHT_DENOMINATOR)) {
        parts.push(c - prev);
        prev = c;
    }
    parts
}

fn random_joint(rng: &mut ChaCha8Rng, alphabet: &[usize; 4]) -> Result<JointDistribution> {
    let cells: usize = alphabet.iter().product();
    let k = rng.gen_range(1..=cells.min(MAX_SUPPORT_POINTS));
    let chosen = sample(rng, cells, k).into_vec();
    let weights = random_composition(rng, k);
    let support = chosen
        .into_iter()
        .zip(weights)
        .map(|(mut c, w)| {
            let tuple = alphabet
                .iter()
                .map(|&a| {
                    let x = (c % a) as i64;
                    c /= a;
                    x
                })
                .collect();
            (tuple, rat(w, WEIGHT_DENOMINATOR))
        })
        .collect();
    JointDistribution::from_integer_tuples(4, support)
}

/// Random four-variable joints with the given alphabet sizes.
pub fn sample_distributions(seed: u64, count: usize, alphabet: [usize; 4], base: &Base) -> Result<Vec<SamplePoint>> {
    if let Some(&a) = alphabet.iter().find(|&&a| a == 0 || a > MAX_ALPHABET) {
        return Err(Error::SizeLimit {
            what: "alphabet size per variable",
            got: a as u128,
            limit: MAX_ALPHABET as u128,
        });
    }
    (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let joint = random_joint(&mut rng, &alphabet)?;
            SamplePoint::from_joint(format!("d{seed}-{k}"), &joint, base)
        })
        .collect()
}

const CYCLIC_CHOICES: [u32; 8] = [2, 3, 4, 5, 6, 7, 8, 9];

fn random_group(rng: &mut ChaCha8Rng, order_cap: usize) -> GroupDiagramJson {
    let rank = rng.gen_range(1..=3);
    let mut orders: Vec<u32> = Vec::new();
    let mut order = 1usize;
    for _ in 0..rank {
        let m = CYCLIC_CHOICES[rng.gen_range(0..CYCLIC_CHOICES.len())];
        if order * m as usize <= order_cap {
            orders.push(m);
            order *= m as usize;
        }
    }
    if orders.is_empty() {
        orders.push(2);
    }
    let terminals = (0..4)
        .map(|_| {
            let gens = rng.gen_range(0..=2);
            (0..gens)
                .map(|_| orders.iter().map(|&m| rng.gen_range(0..m)).collect())
                .collect()
        })
        .collect();
    GroupDiagramJson {
        cyclic_orders: orders,
        terminals,
    }
}

/// Random Abelian group diagrams over `Λ4` with group order at most
/// `order_cap`.
pub fn sample_group_points(seed: u64, count: usize, order_cap: usize, base: &Base) -> Result<Vec<SamplePoint>> {
    if !(2..=MAX_GROUP_ORDER).contains(&order_cap) {
        return Err(Error::SizeLimit {
            what: "group order cap",
            got: order_cap as u128,
            limit: MAX_GROUP_ORDER as u128,
        });
    }
    (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let group = random_group(&mut rng, order_cap);
            SamplePoint::from_group(format!("g{seed}-{k}"), &group, base)
        })
        .collect()
}

/// Sample points of the chart rows that have a group representative.
pub fn table1_points(base: &Base) -> Result<Vec<SamplePoint>> {
    ning_chart()
        .rows()
        .iter()
        .filter_map(|row| row.representative.as_ref().map(|r| (row.name.clone(), r)))
        .map(|(name, r)| {
            let group = GroupDiagramJson {
                cyclic_orders: r.cyclic_orders.clone(),
                terminals: r.terminals.clone(),
            };
            SamplePoint::from_group(name, &group, base)
        })
        .collect()
}

/// Fast evaluation of the normalized Ingleton excess of a binary joint.
struct BinaryObjective {
    /// `ing(12;34)` coefficients indexed by subset mask.
    ingleton: [f64; 16],
}

impl BinaryObjective {
    fn new() -> Self {
        let shape = lambda4();
        let ing = &ingleton_vectors(&shape).expect("Λ4")[0].vector;
        let mut ingleton = [0.0; 16];
        for obj in shape.objects() {
            ingleton[shape.subset(obj).expect("full shape") as usize] = crate::rational::to_f64(ing.coeff(obj));
        }
        BinaryObjective { ingleton }
    }

    fn entropy(weights: &[i64; 16], mask: usize) -> f64 {
        let mut marginal = [0i64; 16];
        for (cell, &w) in weights.iter().enumerate() {
            marginal[cell & mask] += w;
        }
        let total = WEIGHT_DENOMINATOR as f64;
        marginal
            .iter()
            .filter(|&&m| m > 0)
            .map(|&m| {
                let p = m as f64 / total;
                -p * p.log2()
            })
            .sum()
    }

    /// `α15 / H(X1X2X3X4)`, or `-inf` on a point mass.
    fn score(&self, weights: &[i64; 16]) -> f64 {
        let joint = Self::entropy(weights, 15);
        if joint < 1e-12 {
            return f64::NEG_INFINITY;
        }
        let pairing: f64 = (1..16).map(|m| self.ingleton[m] * Self::entropy(weights, m)).sum();
        -pairing / joint
    }
}

fn binary_joint(weights: &[i64; 16]) -> Result<JointDistribution> {
    let support = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0)
        .map(|(c, &w)| ((0..4).map(|k| ((c >> k) & 1) as i64).collect(), rat(w, WEIGHT_DENOMINATOR)))
        .collect();
    JointDistribution::from_integer_tuples(4, support)
}

#[derive(Clone, Debug)]
pub struct Alpha15Search {
    pub best: SamplePoint,
    /// `α15 / H(X1X2X3X4)` of the best point.
    pub best_score: f64,
    pub iterations: u64,
    pub restarts: u64,
}

impl Alpha15Search {
    pub fn found_violation(&self) -> bool {
        self.best.violates_ingleton()
    }
}

/// Non-improving steps before a restart.
pub const SEARCH_PATIENCE: u64 = 2000;
/// Largest mass moved in one step, in units of `1/1024`.
pub const SEARCH_MAX_STEP: i64 = 64;

/// Local search over joints of four binary variables for a large
/// normalized `α15 = -ing(12;34)`.
///
/// A step moves `δ ∈ {1..64}/1024` of mass between two cells and is kept
/// when the score `α15 / H(X1X2X3X4)` increases. After
/// [`SEARCH_PATIENCE`] rejected steps in a row the search restarts from a
/// fresh random joint. `budget` counts steps; the first starting point is
/// evaluated even when `budget` is 0.
pub fn maximize_alpha15(seed: u64, budget: u64) -> Result<Alpha15Search> {
    let objective = BinaryObjective::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let restart = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(2..=16);
        let cells = sample(rng, 16, k).into_vec();
        let mut w = [0i64; 16];
        for (c, m) in cells.into_iter().zip(random_composition(rng, k)) {
            w[c] = m;
        }
        w
    };
    let mut current = restart(&mut rng);
    let mut current_score = objective.score(&current);
    let mut best = current;
    let mut best_score = current_score;
    let mut restarts = 0;
    let mut stale = 0;
    for _ in 0..budget {
        if stale >= SEARCH_PATIENCE {
            current = restart(&mut rng);
            current_score = objective.score(&current);
            restarts += 1;
            stale = 0;
        }
        let from = rng.gen_range(0..16);
        let to = rng.gen_range(0..16);
        if from == to || current[from] == 0 {
            stale += 1;
            continue;
        }
        let delta = rng.gen_range(1..=SEARCH_MAX_STEP).min(current[from]);
        let mut next = current;
        next[from] -= delta;
        next[to] += delta;
        let s = objective.score(&next);
        if s > current_score {
            current = next;
            current_score = s;
            stale = 0;
            if s > best_score {
                best = next;
                best_score = s;
            }
        } else {
            stale += 1;
        }
    }
    let best_point = SamplePoint::from_joint(format!("s{seed}"), &binary_joint(&best)?, &Base::Two)?;
    Ok(Alpha15Search {
        best: best_point,
        best_score,
        iterations: budget,
        restarts,
    })
}

/// Before/after data of expanding the four terminal spaces of a full
/// `Λ4` diagram by independent noises.
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub expanded: Diagram,
    pub before: EntropyVector<f64>,
    pub after: EntropyVector<f64>,
    pub alpha_before: Vec<f64>,
    pub alpha_after: Vec<f64>,
    /// Entropies of the four noises.
    pub noise_entropies: Vec<f64>,
    /// `max_I |Δ[I] - Σ_{i ∈ I} ent(noise_i)|`.
    pub coordinate_error: f64,
    /// Largest deviation of `Δα` from `(ent(noise_1..4), 0, ..., 0)`.
    pub alpha_error: f64,
    /// Each expanded space is isomorphic to the original space times the
    /// noises of its variables (an exact check).
    pub structural: bool,
}

impl ExpansionReport {
    pub fn passed(&self) -> bool {
        self.structural && self.coordinate_error <= TOLERANCE && self.alpha_error <= TOLERANCE
    }

    pub fn alpha_delta(&self) -> Vec<f64> {
        self.alpha_after.iter().zip(&self.alpha_before).map(|(a, b)| a - b).collect()
    }
}

pub fn expansion_sweep(diagram: &Diagram, noises: &[FiniteProbabilitySpace], base: &Base) -> Result<ExpansionReport> {
    let shape = diagram.shape().clone();
    if shape.lambda_rank() != Some(4) {
        return Err(Error::NotAFullShape);
    }
    if noises.len() != 4 {
        return Err(Error::ShapeMismatch);
    }
    let terminal = |i: usize| shape.object_of_subset(1 << i).expect("full shape");
    let mut expanded = diagram.clone();
    for (i, noise) in noises.iter().enumerate() {
        expanded = expanded.expand_terminal(terminal(i), noise)?;
    }
    let structural = shape.objects().all(|obj| {
        let mask = shape.subset(obj).expect("full shape");
        let expected = (0..4)
            .filter(|i| mask & (1 << i) != 0)
            .fold(diagram.space(obj).clone(), |s, i| s.tensor(&noises[i]));
        expanded.space(obj).is_isomorphic(&expected)
    });
    let before = diagram.entropy_vector(base);
    let after = expanded.entropy_vector(base);
    let noise_entropies: Vec<f64> = noises.iter().map(|n| n.entropy(base).value).collect();
    let coordinate_error = shape
        .objects()
        .map(|obj| {
            let mask = shape.subset(obj).expect("full shape");
            let added: f64 = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| noise_entropies[i]).sum();
            (after.values()[obj] - before.values()[obj] - added).abs()
        })
        .fold(0.0, f64::max);
    let alpha_before = alpha_coords(&before)?;
    let alpha_after = alpha_coords(&after)?;
    let alpha_error = (0..15)
        .map(|k| {
            let expected = if k < 4 { noise_entropies[k] } else { 0.0 };
            (alpha_after[k] - alpha_before[k] - expected).abs()
        })
        .fold(0.0, f64::max);
    Ok(ExpansionReport {
        expanded,
        before,
        after,
        alpha_before,
        alpha_after,
        noise_entropies,
        coordinate_error,
        alpha_error,
        structural,
    })
}

/// Bucketing of normalized α-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiGrid {
    /// Buckets per unit of normalized coordinate.
    pub resolution: u32,
    /// Key on `α1..α14` instead of `α5..α14`.
    pub diagnostic: bool,
}

impl Default for PhiGrid {
    fn default() -> Self {
        PhiGrid {
            resolution: 4,
            diagnostic: false,
        }
    }
}

impl PhiGrid {
    /// First α index (0-based) used as a key.
    pub fn first_key(&self) -> usize {
        if self.diagnostic {
            0
        } else {
            4
        }
    }

    /// Normalizer `Σ |α_k|` over the key coordinates and `α15`.
    fn scale(&self, alpha: &[f64]) -> f64 {
        alpha[self.first_key()..].iter().map(|a| a.abs()).sum()
    }

    /// Bucket key and normalized `α15`.
    pub fn locate(&self, alpha: &[f64]) -> (Vec<i64>, f64) {
        let s = self.scale(alpha);
        let keys = 14 - self.first_key();
        if s < TOLERANCE {
            return (vec![0; keys], 0.0);
        }
        let r = self.resolution as f64;
        let key = alpha[self.first_key()..14]
            .iter()
            .map(|a| (a / s * r + TOLERANCE).floor() as i64)
            .collect();
        (key, alpha[14] / s)
    }

    pub fn key_names(&self) -> Vec<String> {
        (self.first_key()..14).map(|k| format!("alpha{}", k + 1)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub max_alpha15: f64,
    pub witness: String,
}

impl PhiEntry {
    /// Larger value wins; ties go to the smaller witness id.
    fn beats(&self, other: &PhiEntry) -> bool {
        match self.max_alpha15.total_cmp(&other.max_alpha15) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.witness < other.witness,
        }
    }
}

/// Largest normalized `α15` observed per bucket.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiTable {
    grid: PhiGrid,
    entries: BTreeMap<Vec<i64>, PhiEntry>,
}

impl PhiTable {
    pub fn new(grid: PhiGrid) -> Self {
        PhiTable {
            grid,
            entries: BTreeMap::new(),
        }
    }

    pub fn grid(&self) -> PhiGrid {
        self.grid
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, PhiEntry> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn offer(&mut self, key: Vec<i64>, entry: PhiEntry) {
        match self.entries.get(&key) {
            Some(current) if !entry.beats(current) => {}
            _ => {
                self.entries.insert(key, entry);
            }
        }
    }

    pub fn insert(&mut self, point: &SamplePoint) {
        let (key, value) = self.grid.locate(&point.alpha);
        self.offer(
            key,
            PhiEntry {
                max_alpha15: value,
                witness: point.witness.id.clone(),
            },
        );
    }

    /// Bucketwise maximum; associative and commutative.
    pub fn merge(&mut self, other: &PhiTable) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::ShapeMismatch);
        }
        for (k, e) in &other.entries {
            self.offer(k.clone(), e.clone());
        }
        Ok(())
    }

    pub fn max_value(&self) -> Option<f64> {
        self.entries.values().map(|e| e.max_alpha15).reduce(f64::max)
    }
}

pub fn phi_inner_bound(points: &[SamplePoint], grid: PhiGrid) -> PhiTable {
    let mut table = PhiTable::new(grid);
    for p in points {
        table.insert(p);
    }
    table
}

/// Random dyadic space with at most `max_atoms` atoms.
pub fn random_noise(rng: &mut ChaCha8Rng, max_atoms: usize) -> FiniteProbabilitySpace {
    let k = rng.gen_range(1..=max_atoms.max(1));
    let weights: Vec<Rational> = random_composition(rng, k).into_iter().map(|w| rat(w, WEIGHT_DENOMINATOR)).collect();
    FiniteProbabilitySpace::from_weights(&weights).expect("composition sums to one")
}

/// Random joint with dyadic weights, as used by [`sample_distributions`].
pub fn random_dyadic_joint(seed: u64, index: u64, alphabet: [usize; 4]) -> Result<JointDistribution> {
    let mut rng = stream_rng(seed, index);
    random_joint(&mut rng, &alphabet)
}

/// RNG of stream `index` for seed `seed`.
pub fn seeded_rng(seed: u64, index: u64) -> ChaCha8Rng {
    stream_rng(seed, index)
}
