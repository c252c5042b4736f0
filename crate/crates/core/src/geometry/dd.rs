//! Extremal rays of a pointed cone `{x : A x >= 0}` by the double
//! description method in exact integer arithmetic.
//!
//! Constraints are inserted in ascending order of nonzero count. The
//! starting cone is the simplicial cone of the first `d` independent rows,
//! whose rays are the columns of the inverse. Two rays are combined only if
//! they are adjacent, decided by an exact rank test on their common active
//! constraints after a cheap counting filter.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::linalg::{integer_rank, inverse};
use super::{in_cone, s4_act, ConeSpec, EntropyVector, Permutation};
use crate::error::{Error, Result};
use crate::indexing::IndexingCategory;
use crate::rational::{int, primitive_integer_vector, Rational};

/// Largest ambient dimension accepted.
pub const MAX_DIM: usize = 15;
/// Largest number of distinct constraints accepted.
pub const MAX_CONSTRAINTS: usize = 600;

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<i64>,
    zeros: Bits,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn primitive_i128(v: &[i128]) -> Vec<i64> {
    let g = v.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    v.iter()
        .map(|&x| {
            let y = if g > 1 { x / g } else { x };
            i64::try_from(y).expect("ray coordinate fits in i64")
        })
        .collect()
}

fn integer_rows(spec: &ConeSpec) -> Result<Vec<Vec<i64>>> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for g in spec.generators() {
        let row: Option<Vec<i64>> = primitive_integer_vector(g.vector.coeffs())
            .iter()
            .map(|v| v.to_i64())
            .collect();
        let row = row.ok_or(Error::SizeLimit {
            what: "constraint coefficient magnitude",
            got: u128::MAX,
            limit: i64::MAX as u128,
        })?;
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Complete list of extremal rays as primitive integer vectors, sorted
/// lexicographically.
pub fn extremal_rays(spec: &ConeSpec) -> Result<Vec<EntropyVector<Rational>>> {
    let shape = spec.shape().clone();
    let d = shape.len();
    if d > MAX_DIM {
        return Err(Error::SizeLimit {
            what: "cone dimension",
            got: d as u128,
            limit: MAX_DIM as u128,
        });
    }
    let mut rows = integer_rows(spec)?;
    if rows.len() > MAX_CONSTRAINTS {
        return Err(Error::SizeLimit {
            what: "number of constraints",
            got: rows.len() as u128,
            limit: MAX_CONSTRAINTS as u128,
        });
    }
    rows.sort_by_key(|r| r.iter().filter(|&&v| v != 0).count());

    let mut basis: Vec<usize> = Vec::with_capacity(d);
    for i in 0..rows.len() {
        if basis.len() == d {
            break;
        }
        let candidate = basis.iter().map(|&b| rows[b].as_slice()).chain([rows[i].as_slice()]);
        if integer_rank(candidate, d) == basis.len() + 1 {
            basis.push(i);
        }
    }
    if basis.len() < d {
        return Err(Error::NotPointed { rank: basis.len(), dim: d });
    }
    let order: Vec<usize> = basis
        .iter()
        .copied()
        .chain((0..rows.len()).filter(|i| !basis.contains(i)))
        .collect();
    let rows: Vec<Vec<i64>> = order.into_iter().map(|i| rows[i].clone()).collect();

    let matrix: Vec<Vec<Rational>> = rows[..d]
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    let inv = inverse(&matrix).ok_or(Error::NumericalRankFailure)?;
    let mut rays: Vec<Ray> = (0..d)
        .map(|col| {
            let column: Vec<Rational> = inv.iter().map(|row| row[col].clone()).collect();
            let coords = primitive_integer_vector(&column)
                .iter()
                .map(|v| v.to_i64().expect("small inverse"))
                .collect();
            let mut zeros = Bits::new(rows.len());
            for k in (0..d).filter(|&k| k != col) {
                zeros.set(k);
            }
            Ray { coords, zeros }
        })
        .collect();

    for (k, row) in rows.iter().enumerate().skip(d) {
        rays = insert_constraint(rays, row, k, &rows, d);
    }

    let mut out: Vec<Vec<i64>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.into_iter()
        .map(|c| EntropyVector::from_integers(shape.clone(), &c))
        .collect()
}

fn insert_constraint(rays: Vec<Ray>, row: &[i64], k: usize, rows: &[Vec<i64>], d: usize) -> Vec<Ray> {
    let values: Vec<i128> = rays.iter().map(|r| dot(row, &r.coords)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
    let pairs: Vec<(usize, usize)> = pos
        .iter()
        .flat_map(|&p| neg.iter().map(move |&n| (p, n)))
        .collect();
    let threshold = d.saturating_sub(2) as u32;
    let combined: Vec<Option<Ray>> = pairs
        .par_iter()
        .map(|&(p, n)| {
            let common = rays[p].zeros.and(&rays[n].zeros);
            if common.count() < threshold {
                return None;
            }
            let active = common.ones().map(|i| rows[i].as_slice());
            if integer_rank(active, d) != d - 2 {
                return None;
            }
            let (sp, sn) = (values[p], values[n]);
            let coords: Vec<i128> = rays[p]
                .coords
                .iter()
                .zip(&rays[n].coords)
                .map(|(&a, &b)| sp * b as i128 - sn * a as i128)
                .collect();
            let mut zeros = common;
            zeros.set(k);
            Some(Ray { coords: primitive_i128(&coords), zeros })
        })
        .collect();

    let mut next = Vec::with_capacity(rays.len());
    for (i, mut ray) in rays.into_iter().enumerate() {
        if values[i] == 0 {
            ray.zeros.set(k);
            next.push(ray);
        } else if values[i] > 0 {
            next.push(ray);
        }
    }
    next.extend(combined.into_iter().flatten());
    next
}

/// Rank certificate: a nonzero member of the cone is extremal iff its active
/// generators have rank `d - 1`.
pub fn is_extremal(ray: &EntropyVector<Rational>, spec: &ConeSpec) -> Result<bool> {
    let membership = in_cone(ray, spec, &Rational::zero())?;
    if !membership.member {
        let (label, value) = membership.worst.expect("violated generator");
        return Err(Error::NotInCone { label, value: value.to_string() });
    }
    if ray.is_zero() {
        return Ok(false);
    }
    let d = ray.shape().len();
    let active: Vec<Vec<i64>> = integer_rows(spec)?
        .into_iter()
        .filter(|row| {
            let coeffs: Vec<Rational> = row.iter().map(|&v| int(v)).collect();
            coeffs
                .iter()
                .zip(ray.values())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
        .collect();
    Ok(integer_rank(active.iter().map(Vec::as_slice), d) == d - 1)
}

/// Rays equivalent under coordinate permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Indices into the ray list, ascending.
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn canonical_form(ray: &EntropyVector<Rational>, perms: &[Permutation]) -> Vec<Rational> {
    perms
        .iter()
        .map(|p| s4_act(p, ray).expect("full shape").values().to_vec())
        .min()
        .unwrap_or_else(|| ray.values().to_vec())
}

/// Partition of rays into orbits of the symmetric group acting on the
/// variables of a full shape. Other shapes yield singleton orbits. Orbits
/// are ordered by their smallest member.
pub fn orbit_partition(rays: &[EntropyVector<Rational>]) -> Vec<Orbit> {
    let Some(n) = rays.first().and_then(|r| r.shape().lambda_rank()) else {
        return (0..rays.len()).map(|i| Orbit { members: vec![i] }).collect();
    };
    let perms = Permutation::all(n);
    let mut by_form: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    for (i, ray) in rays.iter().enumerate() {
        let normal: Vec<Rational> = ray.normalized().values().to_vec();
        let normal = EntropyVector::new(ray.shape().clone(), normal).expect("same length");
        let form = canonical_form(&normal, &perms);
        match by_form.get(&form) {
            Some(&o) => orbits[o].members.push(i),
            None => {
                by_form.insert(form, orbits.len());
                orbits.push(Orbit { members: vec![i] });
            }
        }
    }
    orbits
}

/// Rays with their orbit partition.
#[derive(Clone, Debug)]
pub struct RayEnumeration {
    pub shape: Arc<IndexingCategory>,
    pub rays: Vec<EntropyVector<Rational>>,
    pub orbits: Vec<Orbit>,
}

impl RayEnumeration {
    pub fn compute(spec: &ConeSpec) -> Result<Self> {
        let rays = extremal_rays(spec)?;
        let orbits = orbit_partition(&rays);
        Ok(RayEnumeration {
            shape: spec.shape().clone(),
            rays,
            orbits,
        })
    }

    /// Orbit sizes in orbit order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::len).collect()
    }

    pub fn contains(&self, ray: &EntropyVector<Rational>) -> bool {
        let target = ray.normalized();
        self.rays.iter().any(|r| *r == target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{shannon_generators, spc, Generator, InfoVector};

    fn l(n: usize) -> Arc<IndexingCategory> {
        Arc::new(IndexingCategory::lambda_n(n).unwrap())
    }

    #[test]
    fn single_variable() {
        let spec = shannon_generators(&l(1)).unwrap();
        let rays = extremal_rays(&spec).unwrap();
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].as_i64().unwrap(), vec![1]);
    }

    #[test]
    fn two_variables() {
        // brute force: rays of the 3-dimensional polymatroid cone are the
        // rank functions (1,0;1), (0,1;1), (1,1;1)
        let spec = shannon_generators(&l(2)).unwrap();
        let rays: Vec<Vec<i64>> = extremal_rays(&spec).unwrap().iter().map(|r| r.as_i64().unwrap()).collect();
        assert_eq!(rays, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn not_pointed() {
        let shape = l(2);
        let spec = ConeSpec::new(
            shape.clone(),
            vec![Generator {
                label: "x".into(),
                vector: InfoVector::new(shape, vec![int(1), int(0), int(0)]).unwrap(),
            }],
        )
        .unwrap();
        assert!(matches!(extremal_rays(&spec), Err(Error::NotPointed { .. })));
    }

    #[test]
    fn spc_extremal() {
        let f = spc();
        let spec = shannon_generators(f.shape()).unwrap();
        assert!(is_extremal(&f, &spec).unwrap());
        let neg = f.scale(&int(-1));
        assert!(matches!(is_extremal(&neg, &spec), Err(Error::NotInCone { .. })));
    }
}
