//! The dual pair of entropy vectors (functions on objects) and information
//! vectors (formal combinations of objects), Shannon and Ingleton
//! generators, the `S_n` action on full shapes and cone membership.

mod chart;
mod dd;
mod linalg;
mod perm;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::indexing::{IndexingCategory, ObjectId};
use crate::rational::{int, primitive_integer_vector, Rational, Scalar};

pub use chart::{
    alpha_coords, in_ning, monotonicity_violation, ning_chart, printed_chart, reconciliation_notes,
    verify_chart, ChartCheck, ChartReport, ChartRow, GroupRepresentative, Outcome, Provenance, RowReport,
    SimplexChart,
};
pub use dd::{extremal_rays, is_extremal, orbit_partition, Orbit, RayEnumeration};
pub use linalg::rank;
pub use perm::Permutation;

/// Largest full shape for which Shannon generators are enumerated.
pub const MAX_SHANNON_RANK: usize = 5;

fn same_shape(a: &Arc<IndexingCategory>, b: &Arc<IndexingCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A real-valued function on the objects of a shape.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyVector<T = f64> {
    shape: Arc<IndexingCategory>,
    values: Vec<T>,
}

impl<T: Scalar> EntropyVector<T> {
    pub fn new(shape: Arc<IndexingCategory>, values: Vec<T>) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(EntropyVector { shape, values })
    }

    pub fn zero(shape: Arc<IndexingCategory>) -> Self {
        let values = vec![T::zero(); shape.len()];
        EntropyVector { shape, values }
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        &self.shape
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, obj: ObjectId) -> &T {
        &self.values[obj]
    }

    pub fn to_f64(&self) -> EntropyVector<f64> {
        EntropyVector {
            shape: self.shape.clone(),
            values: self.values.iter().map(Scalar::as_f64).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, factor: &T) -> Self {
        EntropyVector {
            shape: self.shape.clone(),
            values: self.values.iter().map(|v| v.clone() * factor.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if !same_shape(&self.shape, &other.shape) {
            return Err(Error::ShapeMismatch);
        }
        Ok(EntropyVector {
            shape: self.shape.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Largest absolute coordinate difference, as a float.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.as_f64() - b.as_f64()).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl EntropyVector<Rational> {
    /// A vector on `Λ4` from its fifteen coordinates in printed order.
    pub fn lambda4(coords: [i64; 15]) -> Self {
        let shape = Arc::new(IndexingCategory::lambda_n(4).expect("Λ4"));
        EntropyVector {
            shape,
            values: coords.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn from_integers(shape: Arc<IndexingCategory>, coords: &[i64]) -> Result<Self> {
        Self::new(shape, coords.iter().map(|&c| int(c)).collect())
    }

    /// Coprime integer representative of the ray through this vector.
    pub fn primitive(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.values)
    }

    /// Normalised copy on the same ray with coprime integer coordinates.
    pub fn normalized(&self) -> Self {
        EntropyVector {
            shape: self.shape.clone(),
            values: self.primitive().into_iter().map(Rational::from_integer).collect(),
        }
    }

    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
            .collect()
    }
}

impl<T: fmt::Display> fmt::Display for EntropyVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut previous_rank = None;
        for (i, v) in self.values.iter().enumerate() {
            let rank = self.shape.subset(i).map(u32::count_ones);
            if i > 0 {
                if rank.is_some() && rank != previous_rank {
                    write!(f, "; ")?;
                } else {
                    write!(f, ", ")?;
                }
            }
            previous_rank = rank;
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A formal linear combination of objects with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoVector {
    shape: Arc<IndexingCategory>,
    coeffs: Vec<Rational>,
}

impl InfoVector {
    pub fn new(shape: Arc<IndexingCategory>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(InfoVector { shape, coeffs })
    }

    pub fn zero(shape: Arc<IndexingCategory>) -> Self {
        let coeffs = vec![Rational::zero(); shape.len()];
        InfoVector { shape, coeffs }
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, obj: ObjectId) -> &Rational {
        &self.coeffs[obj]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn with_terms(shape: &Arc<IndexingCategory>, terms: &[(ObjectId, i64)]) -> Self {
        let mut v = InfoVector::zero(shape.clone());
        for &(obj, c) in terms {
            v.coeffs[obj] += int(c);
        }
        v
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_shape(&self.shape, &other.shape) {
            return Err(Error::ShapeMismatch);
        }
        Ok(InfoVector {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        InfoVector {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Human-readable form such as `+[13]+[23]-[3]-[123]`.
    pub fn terms(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if mag.is_one() {
                out.push_str(&format!("{sign}[{}]", self.shape.name(i)));
            } else {
                out.push_str(&format!("{sign}{mag}[{}]", self.shape.name(i)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `⟨f, v⟩ = Σ v_i f(i)`; exact when `T` is exact.
pub fn pair<T: Scalar>(f: &EntropyVector<T>, v: &InfoVector) -> Result<T> {
    if !same_shape(&f.shape, &v.shape) {
        return Err(Error::ShapeMismatch);
    }
    Ok(f.values
        .iter()
        .zip(&v.coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(T::zero(), |acc, (x, c)| acc + x.clone() * T::from_rational(c)))
}

/// `[i]`.
pub fn info_base(shape: &Arc<IndexingCategory>, i: ObjectId) -> InfoVector {
    InfoVector::with_terms(shape, &[(i, 1)])
}

/// `[i|j] = [î] - [j]` with `î` the apex of the minimal fan on `i, j`.
pub fn info_cond(shape: &Arc<IndexingCategory>, i: ObjectId, j: ObjectId) -> InfoVector {
    let hat = shape.minimal_common_ancestor(i, j);
    InfoVector::with_terms(shape, &[(hat, 1), (j, -1)])
}

/// `[i:j] = [i] + [j] - [î]`.
pub fn info_mi(shape: &Arc<IndexingCategory>, i: ObjectId, j: ObjectId) -> InfoVector {
    let hat = shape.minimal_common_ancestor(i, j);
    InfoVector::with_terms(shape, &[(i, 1), (j, 1), (hat, -1)])
}

/// `[i:j|k] = [î] + [ĵ] - [k] - [l]` where `î = mca(i,k)`, `ĵ = mca(j,k)` and
/// `l = mca(î, ĵ)`.
pub fn info_cmi(shape: &Arc<IndexingCategory>, i: ObjectId, j: ObjectId, k: ObjectId) -> InfoVector {
    let ih = shape.minimal_common_ancestor(i, k);
    let jh = shape.minimal_common_ancestor(j, k);
    let l = shape.minimal_common_ancestor(ih, jh);
    InfoVector::with_terms(shape, &[(ih, 1), (jh, 1), (k, -1), (l, -1)])
}

/// A labelled inequality `⟨f, v⟩ >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub label: String,
    pub vector: InfoVector,
}

/// A cone given dually: `{ f : ⟨f, v⟩ >= 0 for every generator v }`.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    shape: Arc<IndexingCategory>,
    generators: Vec<Generator>,
}

impl ConeSpec {
    /// Drops zero vectors and later duplicates (keeping the first label).
    pub fn new(shape: Arc<IndexingCategory>, generators: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_shape(&shape, g.vector.shape()) {
                return Err(Error::ShapeMismatch);
            }
            if g.vector.is_zero() || !seen.insert(g.vector.coeffs.clone()) {
                continue;
            }
            kept.push(g);
        }
        Ok(ConeSpec { shape, generators: kept })
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        &self.shape
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Union of generator lists (deduplicated).
    pub fn with(&self, extra: Vec<Generator>) -> Result<Self> {
        let mut all = self.generators.clone();
        all.extend(extra);
        ConeSpec::new(self.shape.clone(), all)
    }
}

/// The Shannon-type generators `[i]`, `[i|j]`, `[i:j]`, `[i:j|k]` over all
/// objects of a shape.
pub fn shannon_generators(shape: &Arc<IndexingCategory>) -> Result<ConeSpec> {
    let limit = (1usize << MAX_SHANNON_RANK) - 1;
    if shape.len() > limit {
        return Err(Error::SizeLimit {
            what: "shape size for Shannon generators",
            got: shape.len() as u128,
            limit: limit as u128,
        });
    }
    let name = |i: ObjectId| shape.name(i).to_string();
    let mut gens = Vec::new();
    for i in shape.objects() {
        gens.push(Generator {
            label: format!("[{}]", name(i)),
            vector: info_base(shape, i),
        });
    }
    for i in shape.objects() {
        for j in shape.objects() {
            gens.push(Generator {
                label: format!("[{}|{}]", name(i), name(j)),
                vector: info_cond(shape, i, j),
            });
        }
    }
    for i in shape.objects() {
        for j in shape.objects() {
            gens.push(Generator {
                label: format!("[{}:{}]", name(i), name(j)),
                vector: info_mi(shape, i, j),
            });
        }
    }
    for i in shape.objects() {
        for j in shape.objects() {
            for k in shape.objects() {
                gens.push(Generator {
                    label: format!("[{}:{}|{}]", name(i), name(j), name(k)),
                    vector: info_cmi(shape, i, j, k),
                });
            }
        }
    }
    ConeSpec::new(shape.clone(), gens)
}

fn object_of(shape: &IndexingCategory, name: &str) -> ObjectId {
    shape.id(name).expect("object of Λ4")
}

/// `ing(ij;kl) = -[i:j] + [i:j|k] + [i:j|l] + [k:l]` on `Λ4`, with
/// `{k,l}` the complement of `{i,j}`; elements are `1..=4`.
pub fn ingleton(shape: &Arc<IndexingCategory>, i: u32, j: u32) -> Result<InfoVector> {
    if shape.lambda_rank() != Some(4) {
        return Err(Error::NotAFullShape);
    }
    let rest: Vec<u32> = (1..=4).filter(|&x| x != i && x != j).collect();
    let (k, l) = (rest[0], rest[1]);
    let o = |x: u32| object_of(shape, &x.to_string());
    let v = info_mi(shape, o(i), o(j))
        .neg()
        .add(&info_cmi(shape, o(i), o(j), o(k)))?
        .add(&info_cmi(shape, o(i), o(j), o(l)))?
        .add(&info_mi(shape, o(k), o(l)))?;
    Ok(v)
}

/// The six Ingleton vectors, one per choice of the pair `{i,j}`.
pub fn ingleton_vectors(shape: &Arc<IndexingCategory>) -> Result<Vec<Generator>> {
    let mut out = Vec::with_capacity(6);
    for i in 1..=4u32 {
        for j in (i + 1)..=4 {
            let rest: String = (1..=4u32)
                .filter(|&x| x != i && x != j)
                .map(|x| x.to_string())
                .collect();
            out.push(Generator {
                label: format!("ing({i}{j};{rest})"),
                vector: ingleton(shape, i, j)?,
            });
        }
    }
    Ok(out)
}

/// Shannon generators plus the six Ingleton vectors on `Λ4`.
pub fn abelian_cone_spec(shape: &Arc<IndexingCategory>) -> Result<ConeSpec> {
    shannon_generators(shape)?.with(ingleton_vectors(shape)?)
}

/// The cut of the submodular cone on which `ing(12;34) <= 0`.
pub fn non_ingleton_cone_spec(shape: &Arc<IndexingCategory>) -> Result<ConeSpec> {
    shannon_generators(shape)?.with(vec![Generator {
        label: "-ing(12;34)".into(),
        vector: ingleton(shape, 1, 2)?.neg(),
    }])
}

/// `spc(12;34) = (2,2,2,2; 3,3,3,3,3,4; 4,4,4,4; 4)`.
pub fn spc() -> EntropyVector<Rational> {
    EntropyVector::lambda4([2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4])
}

/// Named cones on `Λ4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCone {
    Submodular,
    Abelian,
    NonIngleton,
}

impl NamedCone {
    pub fn spec(self, shape: &Arc<IndexingCategory>) -> Result<ConeSpec> {
        match self {
            NamedCone::Submodular => shannon_generators(shape),
            NamedCone::Abelian => abelian_cone_spec(shape),
            NamedCone::NonIngleton => non_ingleton_cone_spec(shape),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedCone::Submodular => "smc",
            NamedCone::Abelian => "abc",
            NamedCone::NonIngleton => "ning",
        }
    }
}

impl std::str::FromStr for NamedCone {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smc" => Ok(NamedCone::Submodular),
            "abc" => Ok(NamedCone::Abelian),
            "ning" => Ok(NamedCone::NonIngleton),
            other => Err(Error::Parse(format!("unknown cone `{other}`"))),
        }
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership<T> {
    pub member: bool,
    /// Most violated generator (smallest pairing) and its value.
    pub worst: Option<(String, T)>,
}

/// Membership with tolerance: every generator must pair to at least
/// `-tolerance`.
pub fn in_cone<T: Scalar>(f: &EntropyVector<T>, spec: &ConeSpec, tolerance: &T) -> Result<Membership<T>> {
    let mut worst: Option<(String, T)> = None;
    for g in &spec.generators {
        let value = pair(f, &g.vector)?;
        if worst.as_ref().map_or(true, |(_, w)| value < *w) {
            worst = Some((g.label.clone(), value));
        }
    }
    let member = worst
        .as_ref()
        .map_or(true, |(_, w)| w.clone() + tolerance.clone() >= T::zero());
    Ok(Membership { member, worst })
}

fn permute_coords<V: Clone>(shape: &IndexingCategory, perm: &Permutation, values: &[V]) -> Result<Vec<V>> {
    let n = shape.lambda_rank().ok_or(Error::NotAFullShape)?;
    if perm.len() != n {
        return Err(Error::ShapeMismatch);
    }
    let inverse = perm.inverse();
    Ok(shape
        .objects()
        .map(|obj| {
            let mask = shape.subset(obj).expect("full shape");
            let source = shape
                .object_of_subset(inverse.apply_mask(mask))
                .expect("permuted subset exists");
            values[source].clone()
        })
        .collect())
}

/// Coordinate permutation: the result at `S` is the input at `σ⁻¹(S)`.
pub fn s4_act<T: Scalar>(perm: &Permutation, f: &EntropyVector<T>) -> Result<EntropyVector<T>> {
    Ok(EntropyVector {
        shape: f.shape.clone(),
        values: permute_coords(&f.shape, perm, &f.values)?,
    })
}

pub fn s4_act_info(perm: &Permutation, v: &InfoVector) -> Result<InfoVector> {
    Ok(InfoVector {
        shape: v.shape.clone(),
        coeffs: permute_coords(&v.shape, perm, &v.coeffs)?,
    })
}
