use std::collections::HashMap;

use num_traits::Zero;

use super::Diagram;
use crate::error::{Error, Result};
use crate::indexing::{Fan, ObjectId};
use crate::rational::Rational;
use crate::spaces::{check_measure_preserving, FiniteProbabilitySpace, Reduction, PAIR_SEP};

/// Two diagrams over one shape reached from a common apex diagram.
///
/// The legs are stored on initial atoms; the leg at any other object is
/// induced and must be well defined, which is exactly naturality.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFanOfDiagrams {
    apex: Diagram,
    left: Diagram,
    right: Diagram,
    left_leg: Vec<usize>,
    right_leg: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn induced_leg(apex: &Diagram, foot: &Diagram, leg: &[usize], obj: ObjectId) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; apex.space(obj).len()];
    for (a, &x) in apex.from_initial(obj).iter().enumerate() {
        let y = foot.from_initial(obj)[leg[a]];
        if map[x] == usize::MAX {
            map[x] = y;
        } else if map[x] != y {
            return None;
        }
    }
    Some(map)
}

impl TwoFanOfDiagrams {
    pub fn new(
        apex: Diagram,
        left: Diagram,
        right: Diagram,
        left_leg: Vec<usize>,
        right_leg: Vec<usize>,
    ) -> Result<Self> {
        if apex.shape() != left.shape() || apex.shape() != right.shape() {
            return Err(Error::ShapeMismatch);
        }
        check_measure_preserving(apex.initial_space(), left.initial_space(), &left_leg)?;
        check_measure_preserving(apex.initial_space(), right.initial_space(), &right_leg)?;
        for obj in apex.shape().objects() {
            for (foot, leg) in [(&left, &left_leg), (&right, &right_leg)] {
                if induced_leg(&apex, foot, leg, obj).is_none() {
                    let name = apex.shape().name(obj).to_string();
                    return Err(Error::NotCommutative { from: name.clone(), to: name });
                }
            }
        }
        Ok(TwoFanOfDiagrams { apex, left, right, left_leg, right_leg })
    }

    /// A fan of single spaces `left <- apex -> right`.
    pub fn of_spaces(
        apex: FiniteProbabilitySpace,
        left: FiniteProbabilitySpace,
        right: FiniteProbabilitySpace,
        left_map: Vec<usize>,
        right_map: Vec<usize>,
    ) -> Result<Self> {
        Self::new(
            Diagram::single(apex),
            Diagram::single(left),
            Diagram::single(right),
            left_map,
            right_map,
        )
    }

    /// The minimal fan induced by a joint distribution on pairs of initial
    /// atoms `(left atom, right atom, weight)`; marginals are not checked.
    pub(crate) fn from_joint(left: &Diagram, right: &Diagram, joint: &[(usize, usize, Rational)]) -> Result<Self> {
        let shape = left.shape().clone();
        if *shape != **right.shape() {
            return Err(Error::ShapeMismatch);
        }
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut weights: Vec<Rational> = Vec::new();
        for (a, b, w) in joint {
            if w.is_zero() {
                continue;
            }
            let k = *index.entry((*a, *b)).or_insert_with(|| {
                pairs.push((*a, *b));
                weights.push(Rational::zero());
                pairs.len() - 1
            });
            weights[k] += w;
        }
        let (li, ri) = (left.initial_space(), right.initial_space());
        let labels = pairs
            .iter()
            .map(|&(a, b)| format!("{}{PAIR_SEP}{}", li.label(a), ri.label(b)))
            .collect();
        let initial = FiniteProbabilitySpace::from_parts(labels, weights);
        let keys = shape
            .objects()
            .map(|obj| {
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let x = left.space(obj).label(left.from_initial(obj)[a]);
                        let y = right.space(obj).label(right.from_initial(obj)[b]);
                        format!("{x}{PAIR_SEP}{y}")
                    })
                    .collect()
            })
            .collect();
        let apex = Diagram::from_labelings(shape, initial, keys)?;
        Self::new(
            apex,
            left.clone(),
            right.clone(),
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    pub fn apex(&self) -> &Diagram {
        &self.apex
    }

    pub fn left(&self) -> &Diagram {
        &self.left
    }

    pub fn right(&self) -> &Diagram {
        &self.right
    }

    pub fn foot(&self, side: Side) -> &Diagram {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// The reduction from the apex to a foot at one object.
    pub fn leg(&self, side: Side, obj: ObjectId) -> Reduction {
        let leg = match side {
            Side::Left => &self.left_leg,
            Side::Right => &self.right_leg,
        };
        let foot = self.foot(side);
        let map = induced_leg(&self.apex, foot, leg, obj).expect("natural");
        Reduction::from_indices(self.apex.space(obj), foot.space(obj), map).expect("measure preserving")
    }

    /// Every apex space embeds into the product of the feet.
    pub fn is_minimal(&self) -> bool {
        self.apex.shape().objects().all(|obj| {
            let l = self.leg(Side::Left, obj);
            let r = self.leg(Side::Right, obj);
            let mut seen = std::collections::HashSet::new();
            l.map().iter().zip(r.map()).all(|p| seen.insert(p))
        })
    }

    pub fn minimize(&self) -> TwoFanOfDiagrams {
        let joint: Vec<(usize, usize, Rational)> = (0..self.apex.initial_space().len())
            .map(|a| (self.left_leg[a], self.right_leg[a], self.apex.initial_space().weight(a).clone()))
            .collect();
        Self::from_joint(&self.left, &self.right, &joint).expect("fan data is consistent")
    }
}

/// Replaces the apex, object by object, by its image in the product of the
/// feet.
pub fn minimize_fan(fan: &TwoFanOfDiagrams) -> TwoFanOfDiagrams {
    fan.minimize()
}

/// A minimal sub-fan `x <- z -> u` with `u` terminal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleFan {
    /// `left` is `x`, `right` is the terminal `u`.
    pub fan: Fan,
    /// The leg `z -> x` is an isomorphism.
    pub reduced: bool,
}

/// All sub-fans `x <- mca(x, u) -> u` with `u` terminal and `x` not
/// comparable to `u` whose apex space embeds into the product of the feet.
pub fn find_admissible_fans(diagram: &Diagram) -> Vec<AdmissibleFan> {
    let shape = diagram.shape();
    let mut out = Vec::new();
    for u in shape.terminal_objects() {
        for x in shape.objects() {
            if shape.comparable(x, u) {
                continue;
            }
            let fan = shape.minimal_fan(x, u);
            let to_x = diagram.reduction(fan.apex, x).expect("arrow of the shape");
            let to_u = diagram.reduction(fan.apex, u).expect("arrow of the shape");
            let mut seen = std::collections::HashSet::new();
            if !to_x.map().iter().zip(to_u.map()).all(|p| seen.insert(p)) {
                continue;
            }
            out.push(AdmissibleFan {
                fan,
                reduced: to_x.is_isomorphism(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{full_diagram, JointDistribution};
    use crate::indexing::IndexingCategory;
    use crate::rational::rat;
    use crate::spaces::Base;

    #[test]
    fn product_apex_is_minimal() {
        let c = FiniteProbabilitySpace::coin();
        let apex = c.tensor(&c);
        let fan = TwoFanOfDiagrams::of_spaces(apex, c.clone(), c.clone(), vec![0, 0, 1, 1], vec![0, 1, 0, 1]).unwrap();
        assert!(fan.is_minimal());
        let m = fan.minimize();
        assert_eq!(m.apex().initial_space().len(), 4);
        let id = TwoFanOfDiagrams::of_spaces(c.clone(), c.clone(), c.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert!(id.is_minimal());
        assert_eq!(id.minimize().apex().initial_space().len(), 2);
    }

    #[test]
    fn duplicated_coin_merges() {
        let c = FiniteProbabilitySpace::coin();
        let apex = FiniteProbabilitySpace::uniform(4);
        let fan = TwoFanOfDiagrams::of_spaces(apex, c.clone(), c, vec![0, 0, 1, 1], vec![0, 0, 1, 1]).unwrap();
        assert!(!fan.is_minimal());
        let m = minimize_fan(&fan);
        assert!(m.is_minimal());
        assert_eq!(m.apex().initial_space().len(), 2);
        let h = |f: &TwoFanOfDiagrams| f.apex().entropy_vector(&Base::Two).values()[0];
        assert!(h(&m) <= h(&fan));
    }

    #[test]
    fn bad_legs() {
        let c = FiniteProbabilitySpace::coin();
        let err = TwoFanOfDiagrams::of_spaces(c.clone(), FiniteProbabilitySpace::uniform(4), c, vec![0, 1], vec![0, 1]);
        assert!(err.is_err());
    }

    #[test]
    fn admissible_fans_of_full_diagram() {
        let w = rat(1, 16);
        let support = (0..16)
            .map(|k: i64| ((0..4).map(|b| (k >> b) & 1).collect::<Vec<_>>(), w.clone()))
            .collect();
        let d = full_diagram(&JointDistribution::from_integer_tuples(4, support).unwrap()).unwrap();
        let fans = find_admissible_fans(&d);
        let s = d.shape();
        for (x, u) in [("234", "1"), ("134", "2"), ("124", "3"), ("123", "4")] {
            let x = s.id(x).unwrap();
            let u = s.id(u).unwrap();
            let f = fans.iter().find(|f| f.fan.left == x && f.fan.right == u).expect("circular fan");
            assert_eq!(f.fan.apex, s.initial());
            assert!(!f.reduced);
        }
        assert_eq!(fans.len(), 28);
        let single = Diagram::single(FiniteProbabilitySpace::coin());
        assert!(find_admissible_fans(&single).is_empty());
    }

    #[test]
    fn two_fan_shape_with_identity_leg() {
        // z -> x is the identity, z -> u a coarsening
        let shape = std::sync::Arc::new(
            IndexingCategory::from_arrows(
                vec!["z".into(), "x".into(), "u".into()],
                &[("z".into(), "x".into()), ("z".into(), "u".into())],
            )
            .unwrap(),
        );
        let init = FiniteProbabilitySpace::uniform(4);
        let d = Diagram::new(
            shape,
            vec![init.clone(), init, FiniteProbabilitySpace::coin()],
            vec![(0, 1, vec![0, 1, 2, 3]), (0, 2, vec![0, 0, 1, 1])],
        )
        .unwrap();
        let fans = find_admissible_fans(&d);
        let reduced: Vec<_> = fans.iter().filter(|f| f.reduced).collect();
        assert_eq!(reduced.len(), 1);
        assert_eq!((reduced[0].fan.left, reduced[0].fan.right), (1, 2));
    }
}
