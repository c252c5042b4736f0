//! Finite probability spaces with exact rational weights, measure-preserving
//! reductions, independent products and entropy.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, rat, to_f64, Rational};

/// Separator used for labels of product atoms.
pub const PAIR_SEP: &str = "⋈";
/// Label of the single atom of the one-point space.
pub const POINT_LABEL: &str = "*";
/// Atom-count guard for tensor powers.
pub const MAX_POWER_ATOMS: u128 = 1_000_000;

const DYADIC_BITS: u32 = 40;

/// Logarithm base for entropies.
#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    Two,
    Three,
    E,
    Rational(Rational),
}

impl Base {
    pub fn ln(&self) -> f64 {
        match self {
            Base::Two => std::f64::consts::LN_2,
            Base::Three => 3f64.ln(),
            Base::E => 1.0,
            Base::Rational(b) => to_f64(b).ln(),
        }
    }

    /// The base as an exact rational, unless it is `e`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Base::Two => Some(int(2)),
            Base::Three => Some(int(3)),
            Base::E => None,
            Base::Rational(b) => Some(b.clone()),
        }
    }

    /// Exponent `k >= 0` with `weight = base^-k`, when it exists.
    pub fn exact_exponent(&self, weight: &Rational) -> Option<u32> {
        if weight.is_one() {
            return Some(0);
        }
        let base = self.as_rational()?;
        let mut acc = weight.clone();
        let mut k = 0;
        while acc < Rational::one() {
            acc *= &base;
            k += 1;
        }
        acc.is_one().then_some(k)
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2" => Ok(Base::Two),
            "3" => Ok(Base::Three),
            "e" => Ok(Base::E),
            other => {
                let b = parse_rational(other)?;
                if b <= Rational::one() {
                    return Err(Error::Parse(format!("logarithm base must exceed 1, got {other}")));
                }
                Ok(match b {
                    b if b == int(2) => Base::Two,
                    b if b == int(3) => Base::Three,
                    b => Base::Rational(b),
                })
            }
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Two => write!(f, "2"),
            Base::Three => write!(f, "3"),
            Base::E => write!(f, "e"),
            Base::Rational(b) => write!(f, "{b}"),
        }
    }
}

/// An entropy value: always as a float, and as an exact rational when every
/// weight is an integral power of `1/base`.
#[derive(Clone, Debug, PartialEq)]
pub struct Entropy {
    pub value: f64,
    pub exact: Option<Rational>,
}

/// Shannon entropy of a weight list. Terms are summed in sorted order so the
/// result does not depend on the order of the atoms.
pub(crate) fn entropy_of_weights<'a>(weights: impl Iterator<Item = &'a Rational>, base: &Base) -> f64 {
    let mut terms: Vec<f64> = weights
        .map(|w| {
            let p = to_f64(w);
            -p * p.ln()
        })
        .collect();
    terms.sort_by(f64::total_cmp);
    terms.iter().sum::<f64>() / base.ln()
}

#[derive(Clone, Debug)]
pub struct FiniteProbabilitySpace {
    labels: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl PartialEq for FiniteProbabilitySpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.weights == other.weights
    }
}

impl Eq for FiniteProbabilitySpace {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub label: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub atoms: Vec<AtomJson>,
}

impl FiniteProbabilitySpace {
    /// Builds a space, dropping zero-weight atoms. Weights must be
    /// nonnegative and sum to exactly one, and labels must be distinct.
    pub fn new(atoms: Vec<(String, Rational)>) -> Result<Self> {
        let mut total = Rational::zero();
        let mut labels = Vec::with_capacity(atoms.len());
        let mut weights = Vec::with_capacity(atoms.len());
        let mut index = HashMap::with_capacity(atoms.len());
        for (label, weight) in atoms {
            if weight.is_negative() {
                return Err(Error::NotADistribution(format!(
                    "atom `{label}` has negative weight {weight}"
                )));
            }
            if index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            total += &weight;
            if weight.is_zero() {
                continue;
            }
            index.insert(label.clone(), labels.len());
            labels.push(label);
            weights.push(weight);
        }
        if !total.is_one() {
            return Err(Error::NotADistribution(format!("weights sum to {total}")));
        }
        Ok(FiniteProbabilitySpace { labels, weights, index })
    }

    /// Atoms labelled `"0"`, `"1"`, ... with the given weights.
    pub fn from_weights(weights: &[Rational]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (i.to_string(), w.clone()))
                .collect(),
        )
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform space needs at least one atom");
        let w = Rational::new(1.into(), n.into());
        Self::from_weights(&vec![w; n]).expect("uniform weights sum to one")
    }

    pub fn point() -> Self {
        Self::new(vec![(POINT_LABEL.to_string(), Rational::one())]).expect("point space")
    }

    pub fn coin() -> Self {
        Self::uniform(2)
    }

    /// Space with dyadic weights whose entropy is within `1e-6` bits of
    /// `bits`: `floor(bits)` fair coins times one weighted two-atom space.
    pub fn with_entropy_bits(bits: f64) -> Result<Self> {
        if !bits.is_finite() || bits < 0.0 {
            return Err(Error::Parse(format!("entropy must be a finite nonnegative number of bits, got {bits}")));
        }
        let whole = bits.floor();
        if whole >= 20.0 {
            return Err(Error::SizeLimit {
                what: "noise atom count",
                got: 2u128.saturating_pow(whole.min(127.0) as u32),
                limit: MAX_POWER_ATOMS,
            });
        }
        let coins = Self::coin().power(whole as u32)?;
        let frac = bits - whole;
        if frac < 1e-7 {
            return Ok(coins);
        }
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        let (mut lo, mut hi) = (0.0f64, 0.5f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if h(mid) < frac {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let denom = 1i64 << DYADIC_BITS;
        let p = rat(((0.5 * (lo + hi)) * denom as f64).round().max(1.0) as i64, denom);
        let biased = Self::from_weights(&[p.clone(), Rational::one() - p])?;
        Ok(coins.tensor(&biased))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, atom: usize) -> &str {
        &self.labels[atom]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.labels.iter().map(String::as_str).zip(self.weights.iter())
    }

    pub fn entropy(&self, base: &Base) -> Entropy {
        let exact = self
            .weights
            .iter()
            .map(|w| base.exact_exponent(w).map(|k| w * int(k as i64)))
            .try_fold(Rational::zero(), |acc, term| term.map(|t| acc + t));
        Entropy {
            value: entropy_of_weights(self.weights.iter(), base),
            exact,
        }
    }

    /// Independent product; atom `(a, b)` sits at index `a * |other| + b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for (la, wa) in self.atoms() {
            for (lb, wb) in other.atoms() {
                labels.push(format!("{la}{PAIR_SEP}{lb}"));
                weights.push(wa * wb);
            }
        }
        Self::from_parts(labels, weights)
    }

    /// `n`-fold independent product; `X^0` is the point.
    pub fn power(&self, n: u32) -> Result<Self> {
        let atoms = (self.len() as u128).checked_pow(n).unwrap_or(u128::MAX);
        if atoms > MAX_POWER_ATOMS {
            return Err(Error::SizeLimit {
                what: "tensor power atom count",
                got: atoms,
                limit: MAX_POWER_ATOMS,
            });
        }
        Ok(match n {
            0 => Self::point(),
            _ => (1..n).fold(self.clone(), |acc, _| acc.tensor(self)),
        })
    }

    /// Isomorphic up to relabelling: equal sorted weight lists.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let mut a = self.weights.clone();
        let mut b = other.weights.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub(crate) fn from_parts(labels: Vec<String>, weights: Vec<Rational>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect::<HashMap<_, _>>();
        debug_assert_eq!(index.len(), labels.len(), "distinct labels");
        FiniteProbabilitySpace { labels, weights, index }
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            atoms: self
                .atoms()
                .map(|(l, w)| AtomJson {
                    label: l.to_string(),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self> {
        let atoms = json
            .atoms
            .iter()
            .map(|a| Ok((a.label.clone(), parse_rational(&a.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(atoms)
    }
}

/// A measure-preserving map between finite spaces, stored as an index map
/// on source atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    source: FiniteProbabilitySpace,
    target: FiniteProbabilitySpace,
    map: Vec<usize>,
}

/// Checks that an index map from `source` atoms to `target` atoms is total
/// and measure preserving.
pub fn check_measure_preserving(
    source: &FiniteProbabilitySpace,
    target: &FiniteProbabilitySpace,
    map: &[usize],
) -> Result<()> {
    if map.len() != source.len() {
        return Err(Error::Parse(format!(
            "reduction map covers {} of {} source atoms",
            map.len(),
            source.len()
        )));
    }
    let mut pushed = vec![Rational::zero(); target.len()];
    for (a, &t) in map.iter().enumerate() {
        let slot = pushed
            .get_mut(t)
            .ok_or_else(|| Error::UnknownLabel(format!("target atom #{t}")))?;
        *slot += source.weight(a);
    }
    for (t, got) in pushed.iter().enumerate() {
        if got != target.weight(t) {
            return Err(Error::NotMeasurePreserving {
                atom: target.label(t).to_string(),
                expected: format_rational(target.weight(t)),
                got: format_rational(got),
            });
        }
    }
    Ok(())
}

impl Reduction {
    pub fn from_indices(
        source: &FiniteProbabilitySpace,
        target: &FiniteProbabilitySpace,
        map: Vec<usize>,
    ) -> Result<Self> {
        check_measure_preserving(source, target, &map)?;
        Ok(Reduction {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn source(&self) -> &FiniteProbabilitySpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteProbabilitySpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, atom: usize) -> usize {
        self.map[atom]
    }

    /// Injective on the support, i.e. an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len()
    }
}

/// Checks that a label map is total and measure preserving.
pub fn validate_reduction(
    source: &FiniteProbabilitySpace,
    target: &FiniteProbabilitySpace,
    map: &BTreeMap<String, String>,
) -> Result<Reduction> {
    let indices = source
        .labels()
        .iter()
        .map(|l| {
            let t = map.get(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            target.index_of(t)
        })
        .collect::<Result<Vec<_>>>()?;
    for key in map.keys() {
        source.index_of(key)?;
    }
    Reduction::from_indices(source, target, indices)
}
