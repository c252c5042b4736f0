//! Finite Abelian groups as products of cyclic groups, their subgroups, and
//! diagrams of subgroups with their realisation as homogeneous diagrams of
//! coset spaces.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{EntropyVector, InfoVector};
use crate::indexing::{IndexingCategory, ObjectId};
use crate::rational::{common_denominator, Rational};
use crate::spaces::{Base, FiniteProbabilitySpace};

/// Largest group order handled.
pub const MAX_GROUP_ORDER: usize = 4096;
/// Largest `n` for minimal group diagrams over `Λn`.
pub const MAX_GROUP_VARIABLES: usize = 6;

/// `Z_{m1} × ... × Z_{mk}` with elements indexed in mixed radix, first
/// component most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    order: usize,
}

pub type Element = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&m| m < 2) {
            return Err(Error::InvalidGroup(format!("cyclic orders must be at least 2, got {orders:?}")));
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
            .unwrap_or(usize::MAX);
        if order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit {
                what: "group order",
                got: order as u128,
                limit: MAX_GROUP_ORDER as u128,
            });
        }
        Ok(FiniteAbelianGroup { orders, order })
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn encode(&self, element: &[u32]) -> Result<usize> {
        if element.len() != self.orders.len() || element.iter().zip(&self.orders).any(|(x, m)| x >= m) {
            return Err(Error::InvalidGroup(format!(
                "{element:?} is not an element of {:?}",
                self.orders
            )));
        }
        Ok(element.iter().zip(&self.orders).fold(0, |acc, (&x, &m)| acc * m as usize + x as usize))
    }

    pub fn decode(&self, mut index: usize) -> Element {
        let mut out = vec![0; self.orders.len()];
        for (k, &m) in self.orders.iter().enumerate().rev() {
            out[k] = (index % m as usize) as u32;
            index /= m as usize;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Element = x.iter().zip(&y).zip(&self.orders).map(|((p, q), m)| (p + q) % m).collect();
        self.encode(&sum).expect("reduced residues")
    }

    /// The `k`-th standard generator `χ_{k+1}`.
    pub fn basis(&self, k: usize) -> Element {
        let mut e = vec![0; self.orders.len()];
        e[k] = 1;
        e
    }

    pub fn format_element(&self, index: usize) -> String {
        let parts: Vec<String> = self.decode(index).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// The subgroup generated by the given elements.
    pub fn span(&self, generators: &[Element]) -> Result<Subgroup> {
        let gens = generators.iter().map(|g| self.encode(g)).collect::<Result<Vec<_>>>()?;
        Ok(self.span_indices(&gens))
    }

    pub fn span_indices(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_membership(member)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.span_indices(&[])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_membership(vec![true; self.order])
    }

    /// Every subgroup, by closure from the trivial one, ordered by size
    /// then membership.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.member.clone());
        let mut all = vec![trivial];
        let mut k = 0;
        while k < all.len() {
            let h = all[k].clone();
            for g in 0..self.order {
                if h.member[g] {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.push(g);
                let bigger = self.span_indices(&gens);
                if seen.insert(bigger.member.clone()) {
                    all.push(bigger);
                }
            }
            k += 1;
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.member.cmp(&a.member)));
        all
    }
}

/// A subgroup stored by its membership table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    member: Vec<bool>,
    elements: Vec<usize>,
}

impl Subgroup {
    fn from_membership(member: Vec<bool>) -> Self {
        let elements = (0..member.len()).filter(|&i| member[i]).collect();
        Subgroup { member, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, index: usize) -> bool {
        self.member[index]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.member[e])
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_membership(self.member.iter().zip(&other.member).map(|(a, b)| *a && *b).collect())
    }

    /// Coset index of every group element, numbered by smallest member.
    fn coset_ids(&self, group: &FiniteAbelianGroup) -> Vec<usize> {
        let mut ids = vec![usize::MAX; group.order()];
        let mut next = 0;
        for g in 0..group.order() {
            if ids[g] != usize::MAX {
                continue;
            }
            for &h in &self.elements {
                ids[group.add(g, h)] = next;
            }
            next += 1;
        }
        ids
    }
}

/// A subgroup per object, ordered so that arrows go to larger subgroups.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDiagram {
    shape: Arc<IndexingCategory>,
    group: FiniteAbelianGroup,
    subgroups: Vec<Subgroup>,
}

/// JSON form: `{ "cyclic_orders": [..], "terminals": [[generator, ..], ..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDiagramJson {
    pub cyclic_orders: Vec<u32>,
    pub terminals: Vec<Vec<Element>>,
}

impl GroupDiagram {
    pub fn new(shape: Arc<IndexingCategory>, group: FiniteAbelianGroup, subgroups: Vec<Subgroup>) -> Result<Self> {
        if subgroups.len() != shape.len() {
            return Err(Error::ShapeMismatch);
        }
        if subgroups.iter().any(|h| h.member.len() != group.order()) {
            return Err(Error::InvalidGroup("subgroup of a different group".into()));
        }
        for (i, j) in shape.covering_arrows() {
            if !subgroups[i].is_subgroup_of(&subgroups[j]) {
                return Err(Error::InvalidGroup(format!(
                    "subgroup at {} is not contained in the subgroup at {}",
                    shape.name(i),
                    shape.name(j)
                )));
            }
        }
        Ok(GroupDiagram { shape, group, subgroups })
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        &self.shape
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn subgroup(&self, obj: ObjectId) -> &Subgroup {
        &self.subgroups[obj]
    }

    /// `|G| / |H_obj|` per object.
    pub fn indices(&self) -> Vec<usize> {
        self.subgroups.iter().map(|h| self.group.order() / h.order()).collect()
    }

    /// Coordinates `log_base |G/H|`.
    pub fn entropy_vector(&self, base: &Base) -> EntropyVector<f64> {
        let values = self.indices().iter().map(|&k| (k as f64).ln() / base.ln()).collect();
        EntropyVector::new(self.shape.clone(), values).expect("one value per object")
    }

    /// Exact coordinates, available when every index is a power of `base`.
    pub fn exact_entropy_vector(&self, base: &Base) -> Option<EntropyVector<Rational>> {
        let values: Option<Vec<Rational>> = self
            .indices()
            .iter()
            .map(|&k| {
                let w = Rational::new(BigInt::one(), BigInt::from(k));
                base.exact_exponent(&w).map(|e| Rational::from_integer(e.into()))
            })
            .collect();
        values.map(|v| EntropyVector::new(self.shape.clone(), v).expect("one value per object"))
    }

    /// Sign of `⟨ent, v⟩`, decided by comparing `Π index_S^(c_S D)` with 1.
    pub fn pairing_sign(&self, v: &InfoVector) -> Result<Ordering> {
        if **v.shape() != *self.shape {
            return Err(Error::ShapeMismatch);
        }
        let d = Rational::from_integer(common_denominator(v.coeffs().iter()));
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (c, k) in v.coeffs().iter().zip(self.indices()) {
            if c.is_zero() {
                continue;
            }
            let e = (c * &d).to_integer();
            let p = BigInt::from(k).pow(e.abs().to_u32().expect("small exponent"));
            if e.is_positive() {
                num *= p;
            } else {
                den *= p;
            }
        }
        Ok(num.cmp(&den))
    }

    /// The diagram of coset spaces `G/H` with uniform weights.
    pub fn realize(&self) -> Result<Diagram> {
        let init = self.shape.initial();
        let ids: Vec<Vec<usize>> = self.subgroups.iter().map(|h| h.coset_ids(&self.group)).collect();
        let mut reps: Vec<usize> = Vec::new();
        let mut seen = HashSet::new();
        for g in 0..self.group.order() {
            if seen.insert(ids[init][g]) {
                reps.push(g);
            }
        }
        let w = Rational::new(BigInt::one(), BigInt::from(reps.len()));
        let initial = FiniteProbabilitySpace::new(
            reps.iter().map(|&g| (format!("{}+H", self.group.format_element(g)), w.clone())).collect(),
        )?;
        let labels: Vec<Vec<String>> = self
            .shape
            .objects()
            .map(|obj| reps.iter().map(|&g| format!("c{}", ids[obj][g])).collect())
            .collect();
        Diagram::from_labelings(self.shape.clone(), initial, labels)
    }

    pub fn from_json(json: &GroupDiagramJson) -> Result<Self> {
        let group = FiniteAbelianGroup::new(json.cyclic_orders.clone())?;
        let terminals = json
            .terminals
            .iter()
            .map(|gens| group.span(gens))
            .collect::<Result<Vec<_>>>()?;
        minimal_group_diagram(&group, &terminals)
    }
}

/// The group diagram over `Λn` with `H_I = ∩_{i ∈ I} H_i`.
pub fn minimal_group_diagram(group: &FiniteAbelianGroup, terminals: &[Subgroup]) -> Result<GroupDiagram> {
    let n = terminals.len();
    if n == 0 || n > MAX_GROUP_VARIABLES {
        return Err(Error::SizeLimit {
            what: "number of terminal subgroups",
            got: n as u128,
            limit: MAX_GROUP_VARIABLES as u128,
        });
    }
    let shape = Arc::new(IndexingCategory::lambda_n(n)?);
    let subgroups = shape
        .objects()
        .map(|obj| {
            let mask = shape.subset(obj).expect("full shape");
            (0..n)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| terminals[k].clone())
                .reduce(|a, b| a.intersection(&b))
                .expect("nonempty subset")
        })
        .collect();
    GroupDiagram::new(shape, group.clone(), subgroups)
}
