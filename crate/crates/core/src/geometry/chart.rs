//! The base simplex of the non-Ingleton cone: fifteen vertices `a_i`, their
//! dual covectors `α_i`, and group representatives for `a_1..a_14`.
//!
//! Only one row per orbit of the block-preserving subgroup
//! `D2 = {id, (1 2), (3 4), (1 2)(3 4)}` is stored; the others are images.
//! Two printed rows do not verify: row `a3` is not monotone in its triple
//! coordinates, and the representative of row `a5` violates Ingleton. The
//! chart returned by [`ning_chart`] replaces them (and their images) with
//! rows rebuilt from the dual-face labels and the orbit sizes; the printed
//! versions remain available through [`printed_chart`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use super::{
    in_cone, info_cmi, info_cond, info_mi, ingleton, is_extremal, non_ingleton_cone_spec, pair, s4_act,
    s4_act_info, shannon_generators, EntropyVector, InfoVector, Permutation,
};
use crate::error::{Error, Result};
use crate::groups::{minimal_group_diagram, Element, FiniteAbelianGroup, GroupDiagram};
use crate::indexing::{IndexingCategory, ObjectId};
use crate::rational::{int, Rational, Scalar};
use crate::spaces::Base;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Taken as printed.
    Printed,
    /// Image of a printed row under `D2`.
    OrbitImage,
    /// Rebuilt because the printed row fails verification.
    Reconciled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Printed => "printed",
            Provenance::OrbitImage => "orbit-image",
            Provenance::Reconciled => "reconciled",
        })
    }
}

/// `(G; H_1, ..., H_4)` with each terminal subgroup given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRepresentative {
    pub cyclic_orders: Vec<u32>,
    pub terminals: Vec<Vec<Element>>,
}

impl GroupRepresentative {
    fn new(cyclic_orders: &[u32], terminals: Vec<Vec<Element>>) -> Self {
        GroupRepresentative {
            cyclic_orders: cyclic_orders.to_vec(),
            terminals,
        }
    }

    pub fn group_diagram(&self) -> Result<GroupDiagram> {
        let group = FiniteAbelianGroup::new(self.cyclic_orders.clone())?;
        let terminals = self
            .terminals
            .iter()
            .map(|g| group.span(g))
            .collect::<Result<Vec<_>>>()?;
        minimal_group_diagram(&group, &terminals)
    }

    /// The representative of `σ·f`: the subgroup of variable `i` moves to
    /// variable `σ(i)`.
    pub fn permuted(&self, perm: &Permutation) -> Self {
        let mut terminals = self.terminals.clone();
        for (i, t) in self.terminals.iter().enumerate() {
            terminals[perm.apply(i)] = t.clone();
        }
        GroupRepresentative {
            cyclic_orders: self.cyclic_orders.clone(),
            terminals,
        }
    }

    /// The unique prime dividing the group order.
    pub fn prime_base(&self) -> Result<Base> {
        let mut primes: Vec<u32> = Vec::new();
        for &m in &self.cyclic_orders {
            let mut m = m;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                    m /= p;
                } else {
                    p += 1;
                }
            }
        }
        match primes.as_slice() {
            [] => Ok(Base::Two),
            [2] => Ok(Base::Two),
            [3] => Ok(Base::Three),
            [p] => Ok(Base::Rational(int(*p as i64))),
            _ => Err(Error::InvalidGroup(format!(
                "group order {:?} is divisible by several primes {primes:?}; no single base",
                self.cyclic_orders
            ))),
        }
    }
}

impl fmt::Display for GroupRepresentative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group: Vec<String> = self.cyclic_orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "({};", group.join("x"))?;
        for (k, gens) in self.terminals.iter().enumerate() {
            let g: Vec<String> = gens
                .iter()
                .map(|e| e.iter().map(u32::to_string).collect::<Vec<_>>().join(""))
                .collect();
            let sep = if k == 0 { " " } else { ", " };
            write!(f, "{sep}<{}>", g.join(","))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartRow {
    pub name: String,
    pub vertex: EntropyVector<Rational>,
    pub covector_label: String,
    pub covector: InfoVector,
    pub representative: Option<GroupRepresentative>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexChart {
    rows: Vec<ChartRow>,
}

impl SimplexChart {
    pub fn rows(&self) -> &[ChartRow] {
        &self.rows
    }

    pub fn row(&self, name: &str) -> Option<&ChartRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn shape(&self) -> &Arc<IndexingCategory> {
        self.rows[0].vertex.shape()
    }

    pub fn vertices(&self) -> Vec<EntropyVector<Rational>> {
        self.rows.iter().map(|r| r.vertex.clone()).collect()
    }

    pub fn covectors(&self) -> Vec<InfoVector> {
        self.rows.iter().map(|r| r.covector.clone()).collect()
    }

    /// `M[i][j] = ⟨a_j, α_i⟩`.
    pub fn duality_matrix(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|ri| {
                self.rows
                    .iter()
                    .map(|rj| pair(&rj.vertex, &ri.covector).expect("same shape"))
                    .collect()
            })
            .collect()
    }

    /// `Σ c_i a_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<EntropyVector<Rational>> {
        if coeffs.len() != self.rows.len() {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = EntropyVector::zero(self.shape().clone());
        for (c, row) in coeffs.iter().zip(&self.rows) {
            acc = acc.add(&row.vertex.scale(c))?;
        }
        Ok(acc)
    }
}

fn permute_label(label: &str, perm: &Permutation) -> String {
    let mut out = String::new();
    let mut group: Vec<char> = Vec::new();
    let flush = |group: &mut Vec<char>, out: &mut String| {
        group.sort_unstable();
        out.extend(group.drain(..));
    };
    for ch in label.chars() {
        match ch.to_digit(10) {
            Some(d) if (1..=4).contains(&d) => {
                let image = perm.apply(d as usize - 1) as u32 + 1;
                group.push(char::from_digit(image, 10).expect("digit"));
            }
            _ => {
                flush(&mut group, &mut out);
                out.push(ch);
            }
        }
    }
    flush(&mut group, &mut out);
    out
}

fn image_row(row: &ChartRow, name: &str, perm: &Permutation, provenance: Provenance) -> ChartRow {
    ChartRow {
        name: name.to_string(),
        vertex: s4_act(perm, &row.vertex).expect("full shape"),
        covector_label: permute_label(&row.covector_label, perm),
        covector: s4_act_info(perm, &row.covector).expect("full shape"),
        representative: row.representative.as_ref().map(|r| r.permuted(perm)),
        provenance,
    }
}

struct Seeds {
    shape: Arc<IndexingCategory>,
}

impl Seeds {
    fn o(&self, name: &str) -> ObjectId {
        self.shape.id(name).expect("object of Λ4")
    }

    fn row(
        &self,
        name: &str,
        coords: [i64; 15],
        label: &str,
        covector: InfoVector,
        representative: Option<GroupRepresentative>,
        provenance: Provenance,
    ) -> ChartRow {
        ChartRow {
            name: name.into(),
            vertex: EntropyVector::from_integers(self.shape.clone(), &coords).expect("15 coordinates"),
            covector_label: label.into(),
            covector,
            representative,
            provenance,
        }
    }
}

fn trivial() -> Vec<Element> {
    Vec::new()
}

fn z2_gen() -> Vec<Element> {
    vec![vec![1]]
}

fn build_chart(reconciled: bool) -> SimplexChart {
    let shape = Arc::new(IndexingCategory::lambda_n(4).expect("Λ4"));
    let s = Seeds { shape: shape.clone() };
    let t12 = Permutation::transposition(4, 0, 1);
    let t34 = Permutation::transposition(4, 2, 3);
    let both = t12.compose(&t34);
    let z2 = [2u32];

    let a1 = s.row(
        "a1",
        [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1],
        "[1|234]",
        info_cond(&shape, s.o("1"), s.o("234")),
        Some(GroupRepresentative::new(&z2, vec![trivial(), z2_gen(), z2_gen(), z2_gen()])),
        Provenance::Printed,
    );
    let a3 = if reconciled {
        s.row(
            "a3",
            [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1],
            "[3|124]",
            info_cond(&shape, s.o("3"), s.o("124")),
            Some(GroupRepresentative::new(&z2, vec![z2_gen(), z2_gen(), trivial(), z2_gen()])),
            Provenance::Reconciled,
        )
    } else {
        s.row(
            "a3",
            [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1],
            "[3|124]",
            info_cond(&shape, s.o("3"), s.o("124")),
            Some(GroupRepresentative::new(&z2, vec![z2_gen(), trivial(), z2_gen(), z2_gen()])),
            Provenance::Printed,
        )
    };
    let a5 = if reconciled {
        s.row(
            "a5",
            [1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1],
            "[1:3|2]",
            info_cmi(&shape, s.o("1"), s.o("3"), s.o("2")),
            Some(GroupRepresentative::new(&z2, vec![trivial(), z2_gen(), trivial(), z2_gen()])),
            Provenance::Reconciled,
        )
    } else {
        s.row(
            "a5",
            [1, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1],
            "[1:3|2]",
            info_cmi(&shape, s.o("1"), s.o("3"), s.o("2")),
            Some(GroupRepresentative::new(&z2, vec![trivial(), trivial(), z2_gen(), z2_gen()])),
            Provenance::Printed,
        )
    };
    let a9 = s.row(
        "a9",
        [1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        "[1:2|4]",
        info_cmi(&shape, s.o("1"), s.o("2"), s.o("4")),
        Some(GroupRepresentative::new(&z2, vec![trivial(), trivial(), trivial(), z2_gen()])),
        Provenance::Printed,
    );
    let a11 = s.row(
        "a11",
        [1; 15],
        "[3:4]",
        info_mi(&shape, s.o("3"), s.o("4")),
        Some(GroupRepresentative::new(&z2, vec![trivial(), trivial(), trivial(), trivial()])),
        Provenance::Printed,
    );
    let a12 = s.row(
        "a12",
        [1, 0, 1, 1, 1, 2, 2, 1, 1, 2, 2, 2, 2, 2, 2],
        "[3:4|1]",
        info_cmi(&shape, s.o("3"), s.o("4"), s.o("1")),
        Some(GroupRepresentative::new(
            &[2, 2],
            vec![
                vec![vec![1, 0]],
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1]],
                vec![vec![1, 1]],
            ],
        )),
        Provenance::Printed,
    );
    let a14 = s.row(
        "a14",
        [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3],
        "[1:2|34]",
        info_cmi(&shape, s.o("1"), s.o("2"), s.o("34")),
        Some(GroupRepresentative::new(
            &[3, 3, 3],
            vec![
                vec![vec![1, 0, 0], vec![0, 1, 0]],
                vec![vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 0, 1], vec![1, 0, 0]],
                vec![vec![1, 1, 0], vec![0, 1, 1]],
            ],
        )),
        Provenance::Printed,
    );
    let a15 = s.row(
        "a15",
        [2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4],
        "-ing(12;34)",
        ingleton(&shape, 1, 2).expect("Λ4").neg(),
        None,
        Provenance::Printed,
    );

    let image = if reconciled { Provenance::Reconciled } else { Provenance::OrbitImage };
    let rows = vec![
        image_row(&a1, "a2", &t12, Provenance::OrbitImage),
        image_row(&a3, "a4", &t34, image),
        image_row(&a5, "a6", &t12, image),
        image_row(&a5, "a7", &t34, image),
        image_row(&a5, "a8", &both, image),
        image_row(&a9, "a10", &t34, Provenance::OrbitImage),
        image_row(&a12, "a13", &t12, Provenance::OrbitImage),
    ];
    let [a2, a4, a6, a7, a8, a10, a13]: [ChartRow; 7] = rows.try_into().expect("seven images");
    SimplexChart {
        rows: vec![a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14, a15],
    }
}

/// The chart with rows `a3..a8` rebuilt so that every check passes.
pub fn ning_chart() -> SimplexChart {
    build_chart(true)
}

/// The chart exactly as printed, with `D2` images of the printed rows.
pub fn printed_chart() -> SimplexChart {
    build_chart(false)
}

/// `(α_1(f), ..., α_15(f))`.
pub fn alpha_coords<T: Scalar>(f: &EntropyVector<T>) -> Result<Vec<T>> {
    static CHART: OnceLock<SimplexChart> = OnceLock::new();
    let chart = CHART.get_or_init(ning_chart);
    if **f.shape() != **chart.shape() {
        return Err(Error::ShapeMismatch);
    }
    chart
        .rows
        .iter()
        .map(|r| pair(f, &InfoVector::new(f.shape().clone(), r.covector.coeffs().to_vec())?))
        .collect()
}

/// Membership in the non-Ingleton cone: every α-coordinate is nonnegative.
pub fn in_ning(f: &EntropyVector<Rational>) -> Result<bool> {
    Ok(alpha_coords(f)?.iter().all(|a| !a.is_negative()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartCheck {
    Duality,
    Submodular,
    IngletonFace,
    Representative,
    Extremal,
}

impl fmt::Display for ChartCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartCheck::Duality => "duality",
            ChartCheck::Submodular => "submodular",
            ChartCheck::IngletonFace => "ingleton-face",
            ChartCheck::Representative => "representative",
            ChartCheck::Extremal => "extremal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable,
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowReport {
    pub name: String,
    pub provenance: Provenance,
    pub checks: Vec<(ChartCheck, Outcome)>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, o)| !o.is_fail())
    }

    pub fn outcome(&self, check: ChartCheck) -> &Outcome {
        &self.checks.iter().find(|(c, _)| *c == check).expect("every check reported").1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartReport {
    pub rows: Vec<RowReport>,
}

impl ChartReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
    }

    pub fn row(&self, name: &str) -> Option<&RowReport> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// First covering pair `I ⊃ J` with `f(I) < f(J)`, as `(I, J, f(I) - f(J))`.
pub fn monotonicity_violation(f: &EntropyVector<Rational>) -> Option<(ObjectId, ObjectId, Rational)> {
    f.shape().covering_arrows().into_iter().find_map(|(i, j)| {
        let d = f.value(i) - f.value(j);
        d.is_negative().then_some((i, j, d))
    })
}

fn check_row(chart: &SimplexChart, i: usize) -> Result<Vec<(ChartCheck, Outcome)>> {
    let row = &chart.rows[i];
    let shape = chart.shape();
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for (j, other) in chart.rows.iter().enumerate() {
        let v = pair(&other.vertex, &row.covector)?;
        let expected = if i == j { Rational::one() } else { Rational::zero() };
        if v != expected {
            bad.push(format!("⟨{}, α{}⟩ = {v}", other.name, i + 1));
        }
    }
    out.push((
        ChartCheck::Duality,
        if bad.is_empty() { Outcome::Pass } else { Outcome::Fail(bad.join("; ")) },
    ));

    let smc = shannon_generators(shape)?;
    let m = in_cone(&row.vertex, &smc, &Rational::zero())?;
    let sub = if m.member {
        Outcome::Pass
    } else if let Some((a, b, d)) = monotonicity_violation(&row.vertex) {
        Outcome::Fail(format!(
            "monotonicity violated: [{}] - [{}] = {d}",
            shape.name(a),
            shape.name(b)
        ))
    } else {
        let (label, value) = m.worst.expect("violated generator");
        Outcome::Fail(format!("{label} = {value}"))
    };
    out.push((ChartCheck::Submodular, sub));

    let ing = pair(&row.vertex, &ingleton(shape, 1, 2)?)?;
    let expected = if row.covector_label.starts_with("-ing") { int(-1) } else { int(0) };
    out.push((
        ChartCheck::IngletonFace,
        if ing == expected {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("ing(12;34) = {ing}, expected {expected}"))
        },
    ));

    let rep = match &row.representative {
        None => Outcome::NotApplicable,
        Some(rep) => {
            let base = rep.prime_base()?;
            let gd = rep.group_diagram()?;
            match gd.exact_entropy_vector(&base) {
                Some(e) if e == row.vertex => Outcome::Pass,
                Some(e) => Outcome::Fail(format!("representative {rep} gives {e}")),
                None => Outcome::Fail(format!("representative {rep} has no exact vector in base {base}")),
            }
        }
    };
    out.push((ChartCheck::Representative, rep));

    let ning = non_ingleton_cone_spec(shape)?;
    let ext = match is_extremal(&row.vertex, &ning) {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail("active constraints have rank below 14".into()),
        Err(Error::NotInCone { label, value }) => Outcome::Fail(format!("outside the cone: {label} = {value}")),
        Err(e) => return Err(e),
    };
    out.push((ChartCheck::Extremal, ext));
    Ok(out)
}

/// Runs all five checks on every row.
pub fn verify_chart(chart: &SimplexChart) -> Result<ChartReport> {
    let rows = (0..chart.rows.len())
        .map(|i| {
            Ok(RowReport {
                name: chart.rows[i].name.clone(),
                provenance: chart.rows[i].provenance,
                checks: check_row(chart, i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartReport { rows })
}

/// One note per printed row whose data had to be reconciled, listing the
/// orbit images that changed with it.
pub fn reconciliation_notes() -> Vec<String> {
    let printed = printed_chart();
    let fixed = ning_chart();
    let changed: Vec<(&ChartRow, &ChartRow)> = printed
        .rows
        .iter()
        .zip(&fixed.rows)
        .filter(|(p, f)| p.vertex != f.vertex || p.representative != f.representative)
        .collect();
    let rep = |r: &ChartRow| r.representative.as_ref().map_or("-".to_string(), |g| g.to_string());
    let mut notes: Vec<String> = Vec::new();
    let mut images: Vec<String> = Vec::new();
    for (p, f) in changed.iter().rev() {
        if p.provenance == Provenance::Printed {
            let family = if images.is_empty() {
                String::new()
            } else {
                images.reverse();
                format!(" (images {} follow)", images.join(", "))
            };
            notes.push(format!(
                "{}: printed {} {} -> reconciled {} {}{family}",
                p.name,
                p.vertex,
                rep(p),
                f.vertex,
                rep(f)
            ));
            images.clear();
        } else {
            images.push(f.name.clone());
        }
    }
    notes.reverse();
    notes
}
