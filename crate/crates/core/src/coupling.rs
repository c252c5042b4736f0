//! Entropy distance of fans and the intrinsic distance between diagrams.
//!
//! Couplings are joints on the two initial spaces. Every fan between two
//! diagrams minimizes to the fan induced by such a joint, and minimization
//! only lowers apex entropies, so optimizing over joints loses nothing.

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::{Ordering, Reverse};
use std::rc::Rc;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::{Diagram, TwoFanOfDiagrams};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, format_rational, parse_rational, Rational};
use crate::spaces::{entropy_of_weights, Base};

/// Largest `|left initial| * |right initial|` for exact vertex enumeration.
pub const MAX_TRANSPORT_CELLS: usize = 30;
/// Largest tensor power in [`aikd_upper`].
pub const MAX_AIKD_POWER: u32 = 6;
/// Largest initial space of a tensor power in [`aikd_upper`].
pub const MAX_AIKD_ATOMS: usize = 4096;

/// One cell of a joint: `(left atom, right atom, weight)`.
pub type Cell = (usize, usize, Rational);

#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    left: Diagram,
    right: Diagram,
    joint: Vec<Cell>,
    induced: TwoFanOfDiagrams,
}

fn check_marginals(left: &Diagram, right: &Diagram, joint: &[Cell]) -> Result<()> {
    let (li, ri) = (left.initial_space(), right.initial_space());
    let mut lm = vec![Rational::zero(); li.len()];
    let mut rm = vec![Rational::zero(); ri.len()];
    for (a, b, w) in joint {
        if *a >= li.len() || *b >= ri.len() || w.is_negative() {
            return Err(Error::NotADistribution(format!("bad joint cell ({a}, {b}, {})", format_rational(w))));
        }
        lm[*a] += w;
        rm[*b] += w;
    }
    if lm.as_slice() != li.weights() {
        return Err(Error::MarginalMismatch("left"));
    }
    if rm.as_slice() != ri.weights() {
        return Err(Error::MarginalMismatch("right"));
    }
    Ok(())
}

impl Coupling {
    /// The minimal fan of `left` and `right` induced by `joint`.
    pub fn induce(left: &Diagram, right: &Diagram, joint: Vec<Cell>) -> Result<Self> {
        if **left.shape() != **right.shape() {
            return Err(Error::ShapeMismatch);
        }
        check_marginals(left, right, &joint)?;
        let mut joint: Vec<Cell> = joint.into_iter().filter(|c| !c.2.is_zero()).collect();
        joint.sort();
        let mut merged: Vec<Cell> = Vec::with_capacity(joint.len());
        for (a, b, w) in joint {
            match merged.last_mut() {
                Some(last) if last.0 == a && last.1 == b => last.2 += w,
                _ => merged.push((a, b, w)),
            }
        }
        let induced = TwoFanOfDiagrams::from_joint(left, right, &merged)?;
        Ok(Coupling {
            left: left.clone(),
            right: right.clone(),
            joint: merged,
            induced,
        })
    }

    /// The independent coupling.
    pub fn product(left: &Diagram, right: &Diagram) -> Result<Self> {
        let li = left.initial_space();
        let ri = right.initial_space();
        let joint = (0..li.len())
            .flat_map(|a| (0..ri.len()).map(move |b| (a, b, li.weight(a) * ri.weight(b))))
            .collect();
        Self::induce(left, right, joint)
    }

    pub fn left(&self) -> &Diagram {
        &self.left
    }

    pub fn right(&self) -> &Diagram {
        &self.right
    }

    /// Nonzero cells sorted by atom pair.
    pub fn joint(&self) -> &[Cell] {
        &self.joint
    }

    pub fn fan(&self) -> &TwoFanOfDiagrams {
        &self.induced
    }

    pub fn kd(&self, base: &Base) -> f64 {
        kd(&self.induced, base)
    }

    /// The same joint read from the other side.
    pub fn swapped(&self) -> Self {
        let joint = self.joint.iter().map(|(a, b, w)| (*b, *a, w.clone())).collect();
        Self::induce(&self.right, &self.left, joint).expect("marginals already checked")
    }

    pub fn to_json(&self) -> CouplingJson {
        let li = self.left.initial_space();
        let ri = self.right.initial_space();
        CouplingJson {
            joint: self
                .joint
                .iter()
                .map(|(a, b, w)| CellJson {
                    left: li.label(*a).to_string(),
                    right: ri.label(*b).to_string(),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(left: &Diagram, right: &Diagram, json: &CouplingJson) -> Result<Self> {
        let li = left.initial_space();
        let ri = right.initial_space();
        let joint = json
            .joint
            .iter()
            .map(|c| Ok((li.index_of(&c.left)?, ri.index_of(&c.right)?, parse_rational(&c.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::induce(left, right, joint)
    }
}

/// A joint on initial atoms, by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingJson {
    pub joint: Vec<CellJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub left: String,
    pub right: String,
    pub weight: String,
}

fn kd_from_entropies(z: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let to_left: f64 = z.iter().zip(x).map(|(a, b)| (a - b).abs()).sum();
    let to_right: f64 = z.iter().zip(y).map(|(a, b)| (a - b).abs()).sum();
    let l1 = to_left + to_right;
    let simplified: f64 = z.iter().zip(x.iter().zip(y)).map(|(a, (b, c))| 2.0 * a - (b + c)).sum();
    assert!(
        (l1 - simplified).abs() <= 1e-9 * (1.0 + l1),
        "apex entropies must dominate the feet: {l1} vs {simplified}"
    );
    l1
}

/// ℓ1 entropy defect of a fan, summed over both legs.
pub fn kd(fan: &TwoFanOfDiagrams, base: &Base) -> f64 {
    let z = fan.apex().entropy_vector(base);
    let x = fan.left().entropy_vector(base);
    let y = fan.right().entropy_vector(base);
    kd_from_entropies(z.values(), x.values(), y.values())
}

/// Result of an intrinsic distance computation.
#[derive(Clone, Debug)]
pub struct IkdResult {
    pub value: f64,
    pub coupling: Coupling,
    /// Number of joints evaluated.
    pub candidates: usize,
}

/// Evaluates kd of the coupling induced by `joint` without building it.
struct Evaluator<'a> {
    left: &'a Diagram,
    right: &'a Diagram,
    x: Vec<f64>,
    y: Vec<f64>,
    base: &'a Base,
}

impl<'a> Evaluator<'a> {
    fn new(left: &'a Diagram, right: &'a Diagram, base: &'a Base) -> Self {
        Evaluator {
            left,
            right,
            x: left.entropy_vector(base).values().to_vec(),
            y: right.entropy_vector(base).values().to_vec(),
            base,
        }
    }

    fn kd(&self, joint: &[Cell]) -> f64 {
        let z: Vec<f64> = self
            .left
            .shape()
            .objects()
            .map(|obj| {
                let (fl, fr) = (self.left.from_initial(obj), self.right.from_initial(obj));
                let mut cells: HashMap<(usize, usize), Rational> = HashMap::new();
                for (a, b, w) in joint {
                    *cells.entry((fl[*a], fr[*b])).or_insert_with(Rational::zero) += w;
                }
                entropy_of_weights(cells.values(), self.base)
            })
            .collect();
        kd_from_entropies(&z, &self.x, &self.y)
    }
}

type IntCell = (u8, u8, i64);
type Vertices = Rc<Vec<Vec<IntCell>>>;

/// Vertices of the transport polytope with integer margins `p` and `q`.
///
/// The support of a vertex is a forest, and a leaf of it carries its own
/// remaining mass, which is the smaller of the two endpoint masses. Peeling
/// leaves in every possible order therefore reaches every vertex; states
/// are memoized on the remaining masses.
fn integer_transport_vertices(p: &[i64], q: &[i64]) -> Vec<Vec<IntCell>> {
    fn go(state: &mut Vec<i64>, m: usize, memo: &mut HashMap<Vec<i64>, Vertices>) -> Vertices {
        if let Some(v) = memo.get(state.as_slice()) {
            return v.clone();
        }
        let mut found: BTreeSet<Vec<IntCell>> = BTreeSet::new();
        if state.iter().all(|&x| x == 0) {
            found.insert(Vec::new());
        }
        let n = state.len() - m;
        for i in 0..m {
            for j in 0..n {
                if state[i] == 0 || state[m + j] == 0 {
                    continue;
                }
                let mass = state[i].min(state[m + j]);
                state[i] -= mass;
                state[m + j] -= mass;
                for rest in go(state, m, memo).iter() {
                    let cell = (i as u8, j as u8, mass);
                    let at = rest.partition_point(|c| (c.0, c.1) < (cell.0, cell.1));
                    let mut v = Vec::with_capacity(rest.len() + 1);
                    v.extend_from_slice(&rest[..at]);
                    v.push(cell);
                    v.extend_from_slice(&rest[at..]);
                    found.insert(v);
                }
                state[i] += mass;
                state[m + j] += mass;
            }
        }
        let out: Vertices = Rc::new(found.into_iter().collect());
        memo.insert(state.clone(), out.clone());
        out
    }
    let mut state: Vec<i64> = p.iter().chain(q).copied().collect();
    let mut memo = HashMap::new();
    go(&mut state, p.len(), &mut memo).as_ref().clone()
}

fn transport_vertices(p: &[Rational], q: &[Rational]) -> Result<Vec<Vec<Cell>>> {
    let den = common_denominator(p.iter().chain(q));
    let scale = |w: &Rational| -> Result<i64> {
        (w * Rational::from_integer(den.clone()))
            .to_integer()
            .to_i64()
            .ok_or(Error::SizeLimit {
                what: "common denominator of the margins",
                got: u128::MAX,
                limit: i64::MAX as u128,
            })
    };
    let pi = p.iter().map(scale).collect::<Result<Vec<_>>>()?;
    let qi = q.iter().map(scale).collect::<Result<Vec<_>>>()?;
    Ok(integer_transport_vertices(&pi, &qi)
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|(i, j, w)| (i as usize, j as usize, Rational::new(w.into(), den.clone())))
                .collect()
        })
        .collect())
}

/// Exact intrinsic distance: minimum of kd over all couplings.
///
/// Apex entropies are concave in the joint and enter kd with positive
/// coefficients, so the minimum sits at a vertex of the transport polytope.
pub fn ikd_exact(left: &Diagram, right: &Diagram, base: &Base) -> Result<IkdResult> {
    if **left.shape() != **right.shape() {
        return Err(Error::ShapeMismatch);
    }
    let cells = left.initial_space().len().saturating_mul(right.initial_space().len());
    if cells > MAX_TRANSPORT_CELLS {
        return Err(Error::SizeLimit {
            what: "transport cells for exact coupling search",
            got: cells as u128,
            limit: MAX_TRANSPORT_CELLS as u128,
        });
    }
    let vertices = transport_vertices(left.initial_space().weights(), right.initial_space().weights())?;
    let eval = Evaluator::new(left, right, base);
    let mut best: Option<(f64, &Vec<Cell>)> = None;
    for v in &vertices {
        let value = eval.kd(v);
        if best.map_or(true, |(b, _)| value < b) {
            best = Some((value, v));
        }
    }
    let (value, joint) = best.expect("the transport polytope is nonempty");
    Ok(IkdResult {
        value,
        coupling: Coupling::induce(left, right, joint.clone())?,
        candidates: vertices.len(),
    })
}

#[derive(PartialEq, Eq)]
struct Mass<'a> {
    weight: Rational,
    label: Reverse<&'a str>,
    atom: usize,
}

impl PartialOrd for Mass<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mass<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.weight, &self.label).cmp(&(&other.weight, &other.label))
    }
}

fn heap_of(space: &crate::spaces::FiniteProbabilitySpace) -> BinaryHeap<Mass<'_>> {
    (0..space.len())
        .map(|atom| Mass {
            weight: space.weight(atom).clone(),
            label: Reverse(space.label(atom)),
            atom,
        })
        .collect()
}

/// Greedy coupling: repeatedly pair the largest remaining masses, ties going
/// to the lexicographically smaller label.
pub fn greedy_coupling(left: &Diagram, right: &Diagram) -> Result<Coupling> {
    let mut lh = heap_of(left.initial_space());
    let mut rh = heap_of(right.initial_space());
    let mut joint = Vec::new();
    while let (Some(mut l), Some(mut r)) = (lh.pop(), rh.pop()) {
        let m = if l.weight <= r.weight { l.weight.clone() } else { r.weight.clone() };
        joint.push((l.atom, r.atom, m.clone()));
        l.weight -= &m;
        r.weight -= &m;
        if !l.weight.is_zero() {
            lh.push(l);
        }
        if !r.weight.is_zero() {
            rh.push(r);
        }
    }
    Coupling::induce(left, right, joint)
}

/// Upper bound for the intrinsic distance from the greedy coupling.
pub fn ikd_greedy(left: &Diagram, right: &Diagram, base: &Base) -> Result<IkdResult> {
    let coupling = greedy_coupling(left, right)?;
    Ok(IkdResult {
        value: coupling.kd(base),
        coupling,
        candidates: 1,
    })
}

/// Normalized greedy distances of tensor powers.
#[derive(Clone, Debug, PartialEq)]
pub struct AikdEstimate {
    /// `values[n - 1] = ikd_greedy(left^n, right^n) / n`.
    pub values: Vec<f64>,
    /// Running minimum of `values`; every entry bounds the asymptotic
    /// distance from above.
    pub envelope: Vec<f64>,
}

impl AikdEstimate {
    pub fn upper_bound(&self) -> f64 {
        *self.envelope.last().expect("at least one power")
    }
}

/// Subadditivity of the intrinsic distance under tensor products makes each
/// `ikd(X^n, Y^n) / n` an upper bound for the asymptotic distance.
pub fn aikd_upper(left: &Diagram, right: &Diagram, base: &Base, n_max: u32) -> Result<AikdEstimate> {
    if n_max == 0 || n_max > MAX_AIKD_POWER {
        return Err(Error::SizeLimit {
            what: "tensor power for asymptotic distance",
            got: n_max as u128,
            limit: MAX_AIKD_POWER as u128,
        });
    }
    for d in [left, right] {
        let atoms = (d.initial_space().len() as u128).saturating_pow(n_max);
        if atoms > MAX_AIKD_ATOMS as u128 {
            return Err(Error::SizeLimit {
                what: "initial atoms of a tensor power",
                got: atoms,
                limit: MAX_AIKD_ATOMS as u128,
            });
        }
    }
    let mut values = Vec::with_capacity(n_max as usize);
    let mut envelope: Vec<f64> = Vec::with_capacity(n_max as usize);
    let (mut lp, mut rp) = (left.clone(), right.clone());
    for n in 1..=n_max {
        if n > 1 {
            lp = lp.tensor(left)?;
            rp = rp.tensor(right)?;
        }
        let u = ikd_greedy(&lp, &rp, base)?.value / n as f64;
        values.push(u);
        envelope.push(envelope.last().map_or(u, |e: &f64| e.min(u)));
    }
    Ok(AikdEstimate { values, envelope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::spaces::FiniteProbabilitySpace;

    fn single(weights: &[(i64, i64)]) -> Diagram {
        let w: Vec<Rational> = weights.iter().map(|&(p, q)| rat(p, q)).collect();
        Diagram::single(FiniteProbabilitySpace::from_weights(&w).unwrap())
    }

    fn coin() -> Diagram {
        Diagram::single(FiniteProbabilitySpace::coin())
    }

    fn point() -> Diagram {
        Diagram::single(FiniteProbabilitySpace::point())
    }

    #[test]
    fn kd_of_simple_fans() {
        let c = FiniteProbabilitySpace::coin();
        let id = TwoFanOfDiagrams::of_spaces(c.clone(), c.clone(), c.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(kd(&id, &Base::Two), 0.0);
        let prod = Coupling::product(&coin(), &coin()).unwrap();
        assert!((prod.kd(&Base::Two) - 2.0).abs() < 1e-12);
        let diag = Coupling::induce(&coin(), &coin(), vec![(0, 0, rat(1, 2)), (1, 1, rat(1, 2))]).unwrap();
        assert_eq!(diag.kd(&Base::Two), 0.0);
    }

    #[test]
    fn marginals_are_checked() {
        let bad = Coupling::induce(&coin(), &coin(), vec![(0, 0, int(1))]);
        assert!(matches!(bad, Err(Error::MarginalMismatch(_))));
        let neg = Coupling::induce(&coin(), &coin(), vec![(0, 0, int(1)), (1, 1, int(1)), (0, 1, int(-1))]);
        assert!(neg.is_err());
    }

    #[test]
    fn apex_dominates_feet() {
        let l = single(&[(1, 2), (1, 3), (1, 6)]);
        let r = single(&[(1, 4), (3, 4)]);
        let c = Coupling::induce(&l, &r, vec![(0, 1, rat(1, 2)), (1, 0, rat(1, 4)), (1, 1, rat(1, 12)), (2, 1, rat(1, 6))])
            .unwrap();
        let h = |d: &Diagram| d.entropy_vector(&Base::Two).values()[0];
        let z = h(c.fan().apex());
        assert!(z >= h(&l).max(h(&r)) - 1e-12);
    }

    #[test]
    fn transport_vertices_of_two_by_two() {
        // margins (1/2, 1/2) and (1/4, 3/4): two vertices
        let v = transport_vertices(&[rat(1, 2), rat(1, 2)], &[rat(1, 4), rat(3, 4)]).unwrap();
        assert_eq!(v.len(), 2);
        for joint in &v {
            assert_eq!(joint.len(), 3);
        }
    }

    #[test]
    fn basic_distances() {
        assert_eq!(ikd_exact(&coin(), &coin(), &Base::Two).unwrap().value, 0.0);
        let r = ikd_exact(&coin(), &point(), &Base::Two).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!((ikd_greedy(&coin(), &point(), &Base::Two).unwrap().value - 1.0).abs() < 1e-12);
        assert_eq!(ikd_greedy(&coin(), &coin(), &Base::Two).unwrap().value, 0.0);
    }

    #[test]
    fn uniform_four_to_coin() {
        // lower bound |2 - 1| from the Lipschitz property; the coarsening
        // fan uniform-4 -> coin attains it
        let u4 = Diagram::single(FiniteProbabilitySpace::uniform(4));
        let coarsening = Coupling::induce(
            &u4,
            &coin(),
            vec![(0, 0, rat(1, 4)), (1, 0, rat(1, 4)), (2, 1, rat(1, 4)), (3, 1, rat(1, 4))],
        )
        .unwrap();
        assert!((coarsening.kd(&Base::Two) - 1.0).abs() < 1e-12);
        let r = ikd_exact(&u4, &coin(), &Base::Two).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_cap() {
        let big = Diagram::single(FiniteProbabilitySpace::uniform(6));
        assert!(matches!(ikd_exact(&big, &big, &Base::Two), Err(Error::SizeLimit { .. })));
        assert!(ikd_greedy(&big, &big, &Base::Two).is_ok());
    }

    /// Minimum of kd over every joint with entries in `(1/den) Z`, an
    /// independent route that contains all transport vertices when the
    /// margins are multiples of `1/den`.
    fn grid_minimum(left: &Diagram, right: &Diagram, den: i64) -> f64 {
        let p: Vec<i64> = left.initial_space().weights().iter().map(|w| (w * int(den)).to_integer().try_into().unwrap()).collect();
        let q: Vec<i64> = right.initial_space().weights().iter().map(|w| (w * int(den)).to_integer().try_into().unwrap()).collect();
        let (m, n) = (p.len(), q.len());
        let mut best = f64::INFINITY;
        let mut cells = vec![0i64; m * n];
        fn rec(k: usize, m: usize, n: usize, p: &[i64], q: &[i64], cells: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
            if k == m * n {
                visit(cells);
                return;
            }
            let (i, j) = (k / n, k % n);
            let row: i64 = cells[i * n..i * n + j].iter().sum();
            let col: i64 = (0..i).map(|r| cells[r * n + j]).sum();
            let (row_left, col_left) = (p[i] - row, q[j] - col);
            let choices: Vec<i64> = if j == n - 1 {
                vec![row_left]
            } else if i == m - 1 {
                vec![col_left]
            } else {
                (0..=row_left.min(col_left)).collect()
            };
            for v in choices {
                let fits = v >= 0 && v <= row_left && v <= col_left;
                let closes = !(i == m - 1 && j == n - 1) || v == col_left;
                if fits && closes {
                    cells[k] = v;
                    rec(k + 1, m, n, p, q, cells, visit);
                }
            }
            cells[k] = 0;
        }
        rec(0, m, n, &p, &q, &mut cells, &mut |c| {
            let joint: Vec<Cell> = (0..m * n).map(|k| (k / n, k % n, rat(c[k], den))).collect();
            let v = Coupling::induce(left, right, joint).unwrap().kd(&Base::Two);
            best = best.min(v);
        });
        best
    }

    #[test]
    fn exact_matches_grid_search() {
        let spaces = [
            single(&[(1, 2), (1, 3), (1, 6)]),
            single(&[(1, 3), (2, 3)]),
            single(&[(1, 6), (1, 6), (2, 3)]),
            single(&[(1, 2), (1, 2)]),
            single(&[(5, 6), (1, 6)]),
        ];
        for a in &spaces {
            for b in &spaces {
                let exact = ikd_exact(a, b, &Base::Two).unwrap().value;
                let grid = grid_minimum(a, b, 6);
                assert!((exact - grid).abs() < 1e-9, "{exact} vs {grid}");
                assert!(ikd_greedy(a, b, &Base::Two).unwrap().value >= exact - 1e-9);
            }
        }
    }

    #[test]
    fn symmetric_exactly() {
        let a = single(&[(1, 2), (1, 3), (1, 6)]);
        let b = single(&[(1, 4), (1, 4), (1, 2)]);
        let ab = ikd_exact(&a, &b, &Base::Two).unwrap();
        let ba = ikd_exact(&b, &a, &Base::Two).unwrap();
        assert_eq!(ab.value, ba.value);
        assert_eq!(ab.coupling.swapped().kd(&Base::Two), ab.value);
    }

    #[test]
    fn minimization_lowers_kd() {
        let c = FiniteProbabilitySpace::coin();
        let fan = TwoFanOfDiagrams::of_spaces(FiniteProbabilitySpace::uniform(8), c.clone(), c, vec![0, 0, 0, 0, 1, 1, 1, 1], vec![0, 1, 0, 1, 0, 1, 0, 1])
            .unwrap();
        let m = fan.minimize();
        assert!(kd(&m, &Base::Two) < kd(&fan, &Base::Two));
    }

    #[test]
    fn asymptotic_estimates() {
        let e = aikd_upper(&coin(), &coin(), &Base::Two, 3).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = aikd_upper(&coin(), &point(), &Base::Two, 4).unwrap();
        for v in &e.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let biased = single(&[(1, 3), (2, 3)]);
        let e = aikd_upper(&coin(), &biased, &Base::Two, 5).unwrap();
        let h = -(1.0 / 3.0f64) * (1.0 / 3.0f64).log2() - (2.0 / 3.0f64) * (2.0 / 3.0f64).log2();
        assert!(e.values[0] >= (1.0 - h).abs() - 1e-12);
        assert!(e.envelope.windows(2).all(|w| w[1] <= w[0]));
        assert!(aikd_upper(&coin(), &coin(), &Base::Two, 7).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Coupling::product(&coin(), &single(&[(1, 3), (2, 3)])).unwrap();
        let back = Coupling::from_json(c.left(), c.right(), &c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
