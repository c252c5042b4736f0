//! Commutative diagrams of finite probability spaces.
//!
//! A diagram is stored through its initial space: every object carries its
//! space together with the reduction from the initial space (`from_initial`).
//! Commutativity then amounts to each object's partition of the initial
//! atoms refining the partitions of its descendants, and every reduction
//! between two objects is recovered from these data.

mod fan;
mod homogeneous;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{EntropyVector, InfoVector};
use crate::indexing::{CategoryJson, IndexingCategory, ObjectId};
use crate::rational::{common_denominator, format_rational, parse_rational, to_f64, Rational};
use crate::spaces::{check_measure_preserving, Base, FiniteProbabilitySpace, Reduction, SpaceJson, PAIR_SEP};

pub use fan::{find_admissible_fans, minimize_fan, AdmissibleFan, Side, TwoFanOfDiagrams};
pub use homogeneous::MAX_HOMOGENEITY_ATOMS;

/// Largest number of variables of a joint distribution.
pub const MAX_JOINT_VARIABLES: usize = 6;
/// Largest number of atoms of an initial space built by products.
pub const MAX_INITIAL_ATOMS: usize = 1_000_000;
/// Separator between coordinates in labels of full-diagram atoms.
pub const TUPLE_SEP: &str = ",";

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    shape: Arc<IndexingCategory>,
    spaces: Vec<FiniteProbabilitySpace>,
    from_initial: Vec<Vec<usize>>,
}

fn size_check(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::SizeLimit {
            what,
            got: got as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Groups initial atoms by key, in order of first occurrence.
fn quotient(initial: &FiniteProbabilitySpace, keys: &[String]) -> (FiniteProbabilitySpace, Vec<usize>) {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut weights: Vec<Rational> = Vec::new();
    let mut map = Vec::with_capacity(keys.len());
    for (a, key) in keys.iter().enumerate() {
        let t = *index.entry(key.as_str()).or_insert_with(|| {
            labels.push(key.clone());
            weights.push(Rational::zero());
            labels.len() - 1
        });
        weights[t] += initial.weight(a);
        map.push(t);
    }
    (FiniteProbabilitySpace::from_parts(labels, weights), map)
}

impl Diagram {
    /// Validating constructor from the per-object reductions out of the
    /// initial space.
    pub(crate) fn from_parts(
        shape: Arc<IndexingCategory>,
        spaces: Vec<FiniteProbabilitySpace>,
        from_initial: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if spaces.len() != shape.len() || from_initial.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        let init = shape.initial();
        let n0 = spaces[init].len();
        if from_initial[init].iter().enumerate().any(|(a, &b)| a != b) || from_initial[init].len() != n0 {
            return Err(Error::NotCommutative {
                from: shape.name(init).into(),
                to: shape.name(init).into(),
            });
        }
        for obj in shape.objects() {
            check_measure_preserving(&spaces[init], &spaces[obj], &from_initial[obj])?;
        }
        let diagram = Diagram { shape, spaces, from_initial };
        for (i, j) in diagram.shape.covering_arrows() {
            diagram.arrow_map(i, j)?;
        }
        Ok(diagram)
    }

    /// Builds a diagram from an initial space and, per object, a label for
    /// each initial atom; the space at an object is the quotient by its
    /// labels. The initial object's labelling is ignored.
    pub fn from_labelings(
        shape: Arc<IndexingCategory>,
        initial: FiniteProbabilitySpace,
        labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if labels.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        let mut spaces = Vec::with_capacity(shape.len());
        let mut from_initial = Vec::with_capacity(shape.len());
        for (obj, keys) in labels.iter().enumerate() {
            if obj == shape.initial() {
                spaces.push(initial.clone());
                from_initial.push((0..initial.len()).collect());
                continue;
            }
            if keys.len() != initial.len() {
                return Err(Error::ShapeMismatch);
            }
            let (space, map) = quotient(&initial, keys);
            spaces.push(space);
            from_initial.push(map);
        }
        Self::from_parts(shape, spaces, from_initial)
    }

    /// Builds a diagram from spaces and reductions on a generating set of
    /// arrows, checking that the arrows generate the shape and that all
    /// composites agree.
    pub fn new(
        shape: Arc<IndexingCategory>,
        spaces: Vec<FiniteProbabilitySpace>,
        arrows: Vec<(ObjectId, ObjectId, Vec<usize>)>,
    ) -> Result<Self> {
        if spaces.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        let n = shape.len();
        let mut generated = vec![false; n * n];
        for (i, j, map) in &arrows {
            if !shape.is_ancestor(*i, *j) {
                return Err(Error::NotAnArrow {
                    from: shape.name(*i).into(),
                    to: shape.name(*j).into(),
                });
            }
            check_measure_preserving(&spaces[*i], &spaces[*j], map)?;
            generated[i * n + j] = true;
        }
        for i in 0..n {
            generated[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if generated[i * n + k] {
                    for j in 0..n {
                        if generated[k * n + j] {
                            generated[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if shape.is_ancestor(i, j) && !generated[i * n + j] {
                    return Err(Error::NotAnArrow {
                        from: shape.name(i).into(),
                        to: shape.name(j).into(),
                    });
                }
            }
        }
        let init = shape.initial();
        let mut from_initial: Vec<Option<Vec<usize>>> = vec![None; n];
        from_initial[init] = Some((0..spaces[init].len()).collect());
        let mut stack = vec![init];
        while let Some(i) = stack.pop() {
            for (a, b, map) in &arrows {
                if *a == i && from_initial[*b].is_none() {
                    let base = from_initial[i].as_ref().expect("visited");
                    from_initial[*b] = Some(base.iter().map(|&x| map[x]).collect());
                    stack.push(*b);
                }
            }
        }
        let from_initial: Vec<Vec<usize>> = from_initial.into_iter().map(|m| m.expect("reachable")).collect();
        for (i, j, map) in &arrows {
            if from_initial[*i].iter().zip(&from_initial[*j]).any(|(&x, &y)| map[x] != y) {
                return Err(Error::NotCommutative {
                    from: shape.name(*i).into(),
                    to: shape.name(*j).into(),
                });
            }
        }
        Self::from_parts(shape, spaces, from_initial)
    }

    /// The one-object diagram holding a single space.
    pub fn single(space: FiniteProbabilitySpace) -> Self {
        let shape = Arc::new(IndexingCategory::lambda_n(1).expect("Λ1"));
        let n = space.len();
        Diagram {
            shape,
            spaces: vec![space],
            from_initial: vec![(0..n).collect()],
        }
    }

    /// The diagram with every space a point.
    pub fn trivial(shape: Arc<IndexingCategory>) -> Self {
        let n = shape.len();
        Diagram {
            shape,
            spaces: vec![FiniteProbabilitySpace::point(); n],
            from_initial: vec![vec![0]; n],
        }
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        &self.shape
    }

    pub fn space(&self, obj: ObjectId) -> &FiniteProbabilitySpace {
        &self.spaces[obj]
    }

    pub fn spaces(&self) -> &[FiniteProbabilitySpace] {
        &self.spaces
    }

    pub fn initial_space(&self) -> &FiniteProbabilitySpace {
        &self.spaces[self.shape.initial()]
    }

    /// Atom of the space at `obj` below each initial atom.
    pub fn from_initial(&self, obj: ObjectId) -> &[usize] {
        &self.from_initial[obj]
    }

    /// Total number of atoms over all objects.
    pub fn total_atoms(&self) -> usize {
        self.spaces.iter().map(FiniteProbabilitySpace::len).sum()
    }

    fn arrow_map(&self, i: ObjectId, j: ObjectId) -> Result<Vec<usize>> {
        if !self.shape.is_ancestor(i, j) {
            return Err(Error::NotAnArrow {
                from: self.shape.name(i).into(),
                to: self.shape.name(j).into(),
            });
        }
        let mut map = vec![usize::MAX; self.spaces[i].len()];
        for (&x, &y) in self.from_initial[i].iter().zip(&self.from_initial[j]) {
            if map[x] == usize::MAX {
                map[x] = y;
            } else if map[x] != y {
                return Err(Error::NotCommutative {
                    from: self.shape.name(i).into(),
                    to: self.shape.name(j).into(),
                });
            }
        }
        Ok(map)
    }

    /// The reduction along the arrow `i -> j`.
    pub fn reduction(&self, i: ObjectId, j: ObjectId) -> Result<Reduction> {
        let map = self.arrow_map(i, j)?;
        Reduction::from_indices(&self.spaces[i], &self.spaces[j], map)
    }

    pub fn entropy_vector(&self, base: &Base) -> EntropyVector<f64> {
        let values = self.spaces.iter().map(|s| s.entropy(base).value).collect();
        EntropyVector::new(self.shape.clone(), values).expect("one value per object")
    }

    /// Exact entropy vector, available when every weight is an integral
    /// power of `1/base`.
    pub fn exact_entropy_vector(&self, base: &Base) -> Option<EntropyVector<Rational>> {
        let values: Option<Vec<Rational>> = self.spaces.iter().map(|s| s.entropy(base).exact).collect();
        values.map(|v| EntropyVector::new(self.shape.clone(), v).expect("one value per object"))
    }

    /// Objectwise independent product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if *self.shape != *other.shape {
            return Err(Error::ShapeMismatch);
        }
        size_check(
            "tensor initial atom count",
            self.initial_space().len().saturating_mul(other.initial_space().len()),
            MAX_INITIAL_ATOMS,
        )?;
        let na = self.initial_space().len();
        let nb = other.initial_space().len();
        let mut spaces = Vec::with_capacity(self.shape.len());
        let mut from_initial = Vec::with_capacity(self.shape.len());
        for obj in self.shape.objects() {
            let (x, y) = (&self.spaces[obj], &other.spaces[obj]);
            spaces.push(x.tensor(y));
            let (fx, fy) = (&self.from_initial[obj], &other.from_initial[obj]);
            let mut map = Vec::with_capacity(na * nb);
            for a in 0..na {
                for b in 0..nb {
                    map.push(fx[a] * y.len() + fy[b]);
                }
            }
            from_initial.push(map);
        }
        Ok(Diagram {
            shape: self.shape.clone(),
            spaces,
            from_initial,
        })
    }

    /// `n`-fold tensor power; the zeroth power is the trivial diagram.
    pub fn power(&self, n: u32) -> Result<Self> {
        let atoms = (self.initial_space().len() as u128).checked_pow(n).unwrap_or(u128::MAX);
        if atoms > MAX_INITIAL_ATOMS as u128 {
            return Err(Error::SizeLimit {
                what: "tensor power initial atom count",
                got: atoms,
                limit: MAX_INITIAL_ATOMS as u128,
            });
        }
        if n == 0 {
            return Ok(Diagram::trivial(self.shape.clone()));
        }
        Ok((1..n).fold(self.clone(), |d, _| d.tensor(self).expect("checked size")))
    }

    /// Restriction of the initial space to the preimage of `atom` at `obj`,
    /// renormalised and pushed forward to every object.
    pub fn condition(&self, obj: ObjectId, atom: usize) -> Result<Self> {
        let space = &self.spaces[obj];
        if atom >= space.len() {
            return Err(Error::UnknownLabel(atom.to_string()));
        }
        let mass = space.weight(atom).clone();
        if mass.is_zero() {
            return Err(Error::ZeroWeightAtom(space.label(atom).into()));
        }
        let init = self.initial_space();
        let kept: Vec<usize> = (0..init.len()).filter(|&a| self.from_initial[obj][a] == atom).collect();
        let labels = kept.iter().map(|&a| init.label(a).to_string()).collect();
        let weights = kept.iter().map(|&a| init.weight(a) / &mass).collect();
        let new_initial = FiniteProbabilitySpace::from_parts(labels, weights);
        let keys: Vec<Vec<String>> = self
            .shape
            .objects()
            .map(|o| {
                kept.iter()
                    .map(|&a| self.spaces[o].label(self.from_initial[o][a]).to_string())
                    .collect()
            })
            .collect();
        Self::from_labelings(self.shape.clone(), new_initial, keys)
    }

    /// Conditioning on the atom with the given label.
    pub fn condition_on_label(&self, obj: ObjectId, label: &str) -> Result<Self> {
        let atom = self.spaces[obj].index_of(label)?;
        self.condition(obj, atom)
    }

    /// `Σ_u p(u) · ent(condition(obj, u))`.
    pub fn conditional_entropy_vector(&self, obj: ObjectId, base: &Base) -> EntropyVector<f64> {
        let mut acc = vec![0.0; self.shape.len()];
        for u in 0..self.spaces[obj].len() {
            let p = crate::rational::to_f64(self.spaces[obj].weight(u));
            let cond = self.condition(obj, u).expect("positive-weight atom");
            for (a, v) in acc.iter_mut().zip(cond.entropy_vector(base).values()) {
                *a += p * v;
            }
        }
        EntropyVector::new(self.shape.clone(), acc).expect("one value per object")
    }

    /// Replaces the terminal variable at `terminal` by its product with an
    /// independent `noise` space: every ancestor of `terminal` (including
    /// itself) gains `noise` as an independent factor, other objects are
    /// unchanged.
    pub fn expand_terminal(&self, terminal: ObjectId, noise: &FiniteProbabilitySpace) -> Result<Self> {
        if !self.shape.is_terminal(terminal) {
            return Err(Error::NotTerminal(self.shape.name(terminal).into()));
        }
        let n0 = self.initial_space().len();
        let nw = noise.len();
        size_check("expanded initial atom count", n0.saturating_mul(nw), MAX_INITIAL_ATOMS)?;
        let mut spaces = Vec::with_capacity(self.shape.len());
        let mut from_initial = Vec::with_capacity(self.shape.len());
        for obj in self.shape.objects() {
            let f = &self.from_initial[obj];
            if self.shape.is_ancestor(obj, terminal) {
                spaces.push(self.spaces[obj].tensor(noise));
                from_initial.push((0..n0 * nw).map(|a| f[a / nw] * nw + a % nw).collect());
            } else {
                spaces.push(self.spaces[obj].clone());
                from_initial.push((0..n0 * nw).map(|a| f[a / nw]).collect());
            }
        }
        Self::from_parts(self.shape.clone(), spaces, from_initial)
    }

    /// Identifies the two ends of an arrow whose reduction is an
    /// isomorphism; the ancestor's name survives.
    pub fn collapse_arrow(&self, from: ObjectId, to: ObjectId) -> Result<Self> {
        let reduction = self.reduction(from, to)?;
        if from == to || !reduction.is_isomorphism() {
            return Err(Error::NotAnIsomorphism {
                from: self.shape.name(from).into(),
                to: self.shape.name(to).into(),
            });
        }
        let (shape, remap) = self.shape.collapse(from, to)?;
        let shape = Arc::new(shape);
        let mut spaces = vec![None; shape.len()];
        let mut from_initial = vec![Vec::new(); shape.len()];
        for obj in self.shape.objects() {
            if obj == to {
                continue;
            }
            spaces[remap[obj]] = Some(self.spaces[obj].clone());
            from_initial[remap[obj]] = self.from_initial[obj].clone();
        }
        let spaces = spaces.into_iter().map(|s| s.expect("every kept object")).collect();
        Self::from_parts(shape, spaces, from_initial)
    }

    /// Sign of `⟨ent(self), v⟩` decided exactly from the rational weights.
    ///
    /// With `D` the product of common denominators of the weights and of `v`, the pairing
    /// times `D` equals `-ln Π_S Π_x p_S(x)^(c_S · D · p_S(x))` with integer
    /// exponents, so its sign is the comparison of a rational product with 1.
    /// A floating-point evaluation settles the sign first when it is far
    /// from zero relative to its error bound.
    pub fn pairing_sign(&self, v: &InfoVector) -> Result<Ordering> {
        if **v.shape() != *self.shape {
            return Err(Error::ShapeMismatch);
        }
        let h = self.entropy_vector(&Base::E);
        let approx: f64 = v.coeffs().iter().zip(h.values()).map(|(c, x)| to_f64(c) * x).sum();
        let magnitude: f64 = v.coeffs().iter().zip(h.values()).map(|(c, x)| to_f64(c).abs() * x).sum();
        if approx.abs() > 1e-8 * (1.0 + magnitude) {
            return Ok(if approx > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
        self.exact_pairing_sign(v)
    }

    pub(crate) fn exact_pairing_sign(&self, v: &InfoVector) -> Result<Ordering> {
        let denom = common_denominator(self.spaces.iter().flat_map(|s| s.weights().iter()))
            * common_denominator(v.coeffs().iter());
        let d = Rational::from_integer(denom);
        let mut exponents: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (obj, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for w in self.spaces[obj].weights() {
                let e = (c * w * &d).to_integer();
                for (base, k) in small_factors(w.numer()) {
                    *exponents.entry(base).or_insert_with(BigInt::zero) += &e * k;
                }
                for (base, k) in small_factors(w.denom()) {
                    *exponents.entry(base).or_insert_with(BigInt::zero) -= &e * k;
                }
            }
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (base, e) in exponents {
            let exp = e.abs().to_u32().ok_or(Error::SizeLimit {
                what: "exact pairing exponent",
                got: u128::MAX,
                limit: u32::MAX as u128,
            })?;
            if e.is_positive() {
                num *= base.pow(exp);
            } else {
                den *= base.pow(exp);
            }
        }
        // pairing > 0 iff the product is < 1
        Ok(den.cmp(&num))
    }

    pub fn to_json(&self) -> DiagramJson {
        let covering = self.shape.covering_arrows();
        DiagramJson {
            category: self.shape.to_json(),
            spaces: self
                .shape
                .objects()
                .map(|o| (self.shape.name(o).to_string(), self.spaces[o].to_json()))
                .collect(),
            reductions: covering
                .into_iter()
                .map(|(i, j)| {
                    let map = self.arrow_map(i, j).expect("valid diagram");
                    ReductionJson {
                        from: self.shape.name(i).into(),
                        to: self.shape.name(j).into(),
                        map: map
                            .iter()
                            .enumerate()
                            .map(|(a, &b)| (self.spaces[i].label(a).to_string(), self.spaces[j].label(b).to_string()))
                            .collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let shape = Arc::new(IndexingCategory::from_json(&json.category)?);
        let spaces = shape
            .objects()
            .map(|o| {
                let name = shape.name(o);
                let sj = json.spaces.get(name).ok_or_else(|| Error::UnknownObject(name.into()))?;
                FiniteProbabilitySpace::from_json(sj)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut arrows = Vec::with_capacity(json.reductions.len());
        for r in &json.reductions {
            let (i, j) = (shape.id(&r.from)?, shape.id(&r.to)?);
            let map = (0..spaces[i].len())
                .map(|a| {
                    let label = spaces[i].label(a);
                    let t = r.map.get(label).ok_or_else(|| Error::UnknownLabel(label.into()))?;
                    spaces[j].index_of(t)
                })
                .collect::<Result<Vec<_>>>()?;
            arrows.push((i, j, map));
        }
        Self::new(shape, spaces, arrows)
    }
}

/// Generic diagram JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub category: CategoryJson,
    pub spaces: BTreeMap<String, SpaceJson>,
    pub reductions: Vec<ReductionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub from: String,
    pub to: String,
    pub map: BTreeMap<String, String>,
}

/// A finitely supported distribution on `n`-tuples of outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    n: usize,
    support: Vec<(Vec<String>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointJson {
    pub n: usize,
    pub support: Vec<TupleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub tuple: Vec<String>,
    pub weight: String,
}

impl JointDistribution {
    /// Merges repeated tuples and drops zero weights.
    pub fn new(n: usize, support: Vec<(Vec<String>, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotADistribution("no variables".into()));
        }
        size_check("number of joint variables", n, MAX_JOINT_VARIABLES)?;
        let mut merged: Vec<(Vec<String>, Rational)> = Vec::new();
        let mut index: HashMap<Vec<String>, usize> = HashMap::new();
        let mut total = Rational::zero();
        for (tuple, w) in support {
            if tuple.len() != n {
                return Err(Error::NotADistribution(format!("tuple {tuple:?} does not have {n} entries")));
            }
            if w.is_negative() {
                return Err(Error::NotADistribution(format!("tuple {tuple:?} has negative weight {w}")));
            }
            total += &w;
            if w.is_zero() {
                continue;
            }
            match index.get(&tuple) {
                Some(&k) => merged[k].1 += w,
                None => {
                    index.insert(tuple.clone(), merged.len());
                    merged.push((tuple, w));
                }
            }
        }
        if !total.is_one() {
            return Err(Error::NotADistribution(format!("weights sum to {total}")));
        }
        size_check("joint support size", merged.len(), MAX_INITIAL_ATOMS)?;
        Ok(JointDistribution { n, support: merged })
    }

    /// Convenience constructor from integer outcomes.
    pub fn from_integer_tuples(n: usize, support: Vec<(Vec<i64>, Rational)>) -> Result<Self> {
        Self::new(
            n,
            support
                .into_iter()
                .map(|(t, w)| (t.iter().map(i64::to_string).collect(), w))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[(Vec<String>, Rational)] {
        &self.support
    }

    pub fn to_json(&self) -> JointJson {
        JointJson {
            n: self.n,
            support: self
                .support
                .iter()
                .map(|(t, w)| TupleJson {
                    tuple: t.clone(),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &JointJson) -> Result<Self> {
        let support = json
            .support
            .iter()
            .map(|t| Ok((t.tuple.clone(), parse_rational(&t.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, support)
    }
}

/// The diagram of all marginals of a joint distribution, over `Λn`.
pub fn full_diagram(joint: &JointDistribution) -> Result<Diagram> {
    let shape = Arc::new(IndexingCategory::lambda_n(joint.n)?);
    let labels: Vec<String> = joint.support.iter().map(|(t, _)| t.join(TUPLE_SEP)).collect();
    let weights: Vec<Rational> = joint.support.iter().map(|(_, w)| w.clone()).collect();
    let mut distinct = labels.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != labels.len() {
        return Err(Error::NotADistribution(format!(
            "outcome labels must not contain `{TUPLE_SEP}`"
        )));
    }
    let initial = FiniteProbabilitySpace::from_parts(labels, weights);
    let keys: Vec<Vec<String>> = shape
        .objects()
        .map(|obj| {
            let mask = shape.subset(obj).expect("full shape");
            joint
                .support
                .iter()
                .map(|(t, _)| {
                    t.iter()
                        .enumerate()
                        .filter(|(k, _)| mask & (1 << k) != 0)
                        .map(|(_, x)| x.as_str())
                        .collect::<Vec<_>>()
                        .join(TUPLE_SEP)
                })
                .collect()
        })
        .collect();
    Diagram::from_labelings(shape, initial, keys)
}

/// Joint distribution of the terminal variables of a diagram over `Λn`,
/// with each initial atom mapped to its tuple of terminal labels.
pub fn joint_of(diagram: &Diagram) -> Result<JointDistribution> {
    let shape = diagram.shape();
    let n = shape.lambda_rank().ok_or(Error::NotAFullShape)?;
    let singles: Vec<ObjectId> = (0..n)
        .map(|k| shape.object_of_subset(1 << k).expect("singleton"))
        .collect();
    let init = diagram.initial_space();
    let support = (0..init.len())
        .map(|a| {
            let tuple = singles
                .iter()
                .map(|&o| diagram.space(o).label(diagram.from_initial(o)[a]).replace(TUPLE_SEP, PAIR_SEP))
                .collect();
            (tuple, init.weight(a).clone())
        })
        .collect();
    JointDistribution::new(n, support)
}

/// Factorization over primes below 1000, with any remaining cofactor kept
/// as one base.
fn small_factors(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u32;
    while p < 1000 && n > BigInt::one() {
        let bp = BigInt::from(p);
        let mut k = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn bits(support: &[(&[i64], Rational)]) -> Diagram {
        let n = support[0].0.len();
        let j = JointDistribution::from_integer_tuples(n, support.iter().map(|(t, w)| (t.to_vec(), w.clone())).collect())
            .unwrap();
        full_diagram(&j).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn two_coins() {
        let q = rat(1, 4);
        let d = bits(&[(&[0, 0], q.clone()), (&[0, 1], q.clone()), (&[1, 0], q.clone()), (&[1, 1], q)]);
        assert!(close(d.entropy_vector(&Base::Two).values(), &[1.0, 1.0, 2.0]));
        let e = d.exact_entropy_vector(&Base::Two).unwrap();
        assert_eq!(e.values(), &[int(1), int(1), int(2)]);
        let same = bits(&[(&[0, 0], rat(1, 2)), (&[1, 1], rat(1, 2))]);
        assert!(close(same.entropy_vector(&Base::Two).values(), &[1.0, 1.0, 1.0]));
    }

    #[test]
    fn three_point_uniform() {
        let t = rat(1, 3);
        let d = bits(&[(&[0, 0], t.clone()), (&[0, 1], t.clone()), (&[1, 0], t)]);
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        let v = d.entropy_vector(&Base::Two);
        assert!(close(v.values(), &[h(1.0 / 3.0), h(1.0 / 3.0), 3f64.log2()]));
        let y = d.shape().id("2").unwrap();
        let cond = d.conditional_entropy_vector(y, &Base::Two);
        // H(X|Y): fibre Y=0 is a fair coin with weight 2/3, fibre Y=1 a point
        let x = d.shape().id("1").unwrap();
        assert!((cond.value(x) - 2.0 / 3.0).abs() < 1e-12);
        assert!(cond.value(y).abs() < 1e-12);
    }

    #[test]
    fn tensor_doubles() {
        let d = bits(&[(&[0, 0], rat(1, 3)), (&[1, 1], rat(2, 3))]);
        let dd = d.tensor(&d).unwrap();
        let v = d.entropy_vector(&Base::Two);
        let w = dd.entropy_vector(&Base::Two);
        assert!(v.values().iter().zip(w.values()).all(|(a, b)| (2.0 * a - b).abs() < 1e-12));
        let triv = Diagram::trivial(d.shape().clone());
        assert!(close(d.tensor(&triv).unwrap().entropy_vector(&Base::Two).values(), v.values()));
        assert_eq!(d.power(0).unwrap(), triv);
        assert_eq!(d.power(1).unwrap(), d);
        assert!(Diagram::single(FiniteProbabilitySpace::coin()).tensor(&d).is_err());
    }

    #[test]
    fn conditioning() {
        let q = rat(1, 4);
        let d = bits(&[(&[0, 0], q.clone()), (&[0, 1], q.clone()), (&[1, 0], q.clone()), (&[1, 1], q)]);
        let y = d.shape().id("2").unwrap();
        let c = d.condition(y, 0).unwrap();
        assert!(close(c.entropy_vector(&Base::Two).values(), &[1.0, 0.0, 1.0]));
        let same = bits(&[(&[0, 0], rat(1, 2)), (&[1, 1], rat(1, 2))]);
        let c = same.condition(0, 1).unwrap();
        assert!(c.spaces().iter().all(|s| s.len() == 1));
        let init = d.shape().initial();
        assert!(d.conditional_entropy_vector(init, &Base::Two).values().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn expansion_adds_noise() {
        let q = rat(1, 4);
        let d = bits(&[(&[0, 0], q.clone()), (&[0, 1], q.clone()), (&[1, 0], q.clone()), (&[1, 1], q)]);
        let one = d.shape().id("1").unwrap();
        let e = d.expand_terminal(one, &FiniteProbabilitySpace::coin()).unwrap();
        assert_eq!(e.exact_entropy_vector(&Base::Two).unwrap().values(), &[int(2), int(1), int(3)]);
        let same = d.expand_terminal(one, &FiniteProbabilitySpace::point()).unwrap();
        assert_eq!(same.entropy_vector(&Base::Two), d.entropy_vector(&Base::Two));
        assert!(matches!(
            d.expand_terminal(d.shape().initial(), &FiniteProbabilitySpace::coin()),
            Err(Error::NotTerminal(_))
        ));
    }

    #[test]
    fn collapse_identity_leg() {
        let same = bits(&[(&[0, 0], rat(1, 2)), (&[1, 1], rat(1, 2))]);
        let init = same.shape().initial();
        let one = same.shape().id("1").unwrap();
        let c = same.collapse_arrow(init, one).unwrap();
        assert_eq!(c.shape().len(), 2);
        let q = rat(1, 4);
        let d = bits(&[(&[0, 0], q.clone()), (&[0, 1], q.clone()), (&[1, 0], q.clone()), (&[1, 1], q)]);
        assert!(matches!(d.collapse_arrow(init, one), Err(Error::NotAnIsomorphism { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let d = bits(&[(&[0, 0], rat(1, 3)), (&[0, 1], rat(1, 6)), (&[1, 1], rat(1, 2))]);
        let json = serde_json::to_string(&d.to_json()).unwrap();
        let back = Diagram::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.entropy_vector(&Base::Two), d.entropy_vector(&Base::Two));
        let j = joint_of(&d).unwrap();
        let jj: JointJson = serde_json::from_str(&serde_json::to_string(&j.to_json()).unwrap()).unwrap();
        assert_eq!(JointDistribution::from_json(&jj).unwrap(), j);
    }

    #[test]
    fn non_commuting_rejected() {
        let shape = Arc::new(IndexingCategory::from_arrows(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into()), ("a".into(), "c".into())],
        ).unwrap());
        let u4 = FiniteProbabilitySpace::uniform(4);
        let c2 = FiniteProbabilitySpace::coin();
        let arrows = vec![
            (0, 1, vec![0, 0, 1, 1]),
            (1, 2, vec![0, 1]),
            (0, 2, vec![0, 1, 0, 1]),
        ];
        let err = Diagram::new(shape.clone(), vec![u4.clone(), c2.clone(), c2.clone()], arrows).unwrap_err();
        assert!(matches!(err, Error::NotCommutative { .. }));
        let ok = Diagram::new(
            shape,
            vec![u4, c2.clone(), c2],
            vec![(0, 1, vec![0, 0, 1, 1]), (1, 2, vec![0, 1])],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn exact_pairing_sign() {
        let q = rat(1, 4);
        let d = bits(&[(&[0, 0], q.clone()), (&[0, 1], q.clone()), (&[1, 0], q.clone()), (&[1, 1], q)]);
        let s = d.shape();
        let mi = crate::geometry::info_mi(s, 0, 1);
        assert_eq!(d.pairing_sign(&mi).unwrap(), Ordering::Equal);
        let base = crate::geometry::info_base(s, 0);
        assert_eq!(d.pairing_sign(&base).unwrap(), Ordering::Greater);
        assert_eq!(d.pairing_sign(&base.neg()).unwrap(), Ordering::Less);
        for v in [&mi, &base, &base.neg()] {
            assert_eq!(d.exact_pairing_sign(v).unwrap(), d.pairing_sign(v).unwrap());
        }
    }

    #[test]
    fn exact_and_filtered_signs_agree() {
        let d = bits(&[(&[0, 0], rat(3, 8)), (&[0, 1], rat(1, 8)), (&[1, 0], rat(1, 8)), (&[1, 1], rat(3, 8))]);
        let s = d.shape();
        let mi = crate::geometry::info_mi(s, 0, 1);
        let cond = crate::geometry::info_cond(s, 0, 1);
        let diff = mi.add(&cond.neg()).unwrap();
        for v in [&mi, &cond, &diff, &diff.neg()] {
            assert_eq!(d.exact_pairing_sign(v).unwrap(), d.pairing_sign(v).unwrap());
        }
        assert_eq!(small_factors(&BigInt::from(1024 * 3 * 1009)), vec![(BigInt::from(2), 10), (BigInt::from(3), 1), (BigInt::from(1009), 1)]);
    }
}

