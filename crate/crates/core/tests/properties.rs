use std::collections::HashSet;
use std::sync::Arc;

use entrocone::coupling::{greedy_coupling, ikd_exact, ikd_greedy, kd};
use entrocone::diagrams::{minimize_fan, TwoFanOfDiagrams};
use entrocone::explorer::{
    phi_inner_bound, random_dyadic_joint, sample_distributions, sample_group_points, seeded_rng, PhiGrid, PhiTable,
};
use entrocone::geometry::{
    alpha_coords, ingleton_vectors, in_cone, is_extremal, ning_chart, pair, s4_act, s4_act_info, shannon_generators,
    abelian_cone_spec, Permutation, RayEnumeration,
};
use entrocone::groups::minimal_group_diagram;
use entrocone::rational::{rat, to_f64};
use entrocone::{
    full_diagram, Base, Diagram, EntropyVector, FiniteAbelianGroup, FiniteProbabilitySpace, IndexingCategory,
    InfoVector, JointDistribution, Rational, Reduction,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::RngCore;

fn lambda(n: usize) -> Arc<IndexingCategory> {
    Arc::new(IndexingCategory::lambda_n(n).unwrap())
}

fn space(weights: &[i64]) -> FiniteProbabilitySpace {
    let total: i64 = weights.iter().sum();
    FiniteProbabilitySpace::from_weights(&weights.iter().map(|&w| rat(w, total)).collect::<Vec<_>>()).unwrap()
}

fn space_strategy(max_atoms: usize) -> impl Strategy<Value = FiniteProbabilitySpace> {
    prop::collection::vec(1i64..=8, 1..=max_atoms).prop_map(|w| space(&w))
}

fn joint(n: usize, cells: &[(Vec<i64>, i64)]) -> JointDistribution {
    let total: i64 = cells.iter().map(|c| c.1).sum();
    JointDistribution::from_integer_tuples(n, cells.iter().map(|(t, w)| (t.clone(), rat(*w, total))).collect())
        .unwrap()
}

fn diagram_strategy(n: usize, alphabet: i64, max_support: usize) -> impl Strategy<Value = Diagram> {
    prop::collection::vec((prop::collection::vec(0..alphabet, n), 1i64..=8), 1..=max_support)
        .prop_map(move |cells| full_diagram(&joint(n, &cells)).unwrap())
}

fn rational_vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-40i64..=40, 1i64..=9), len).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

/// Pushes `source` forward along `map`, relabelling targets densely.
fn pushforward(source: &FiniteProbabilitySpace, map: &[usize]) -> (FiniteProbabilitySpace, Vec<usize>) {
    let mut seen: Vec<usize> = Vec::new();
    let mut weights: Vec<Rational> = Vec::new();
    let dense: Vec<usize> = map
        .iter()
        .enumerate()
        .map(|(a, &t)| {
            let k = match seen.iter().position(|&s| s == t) {
                Some(k) => k,
                None => {
                    seen.push(t);
                    weights.push(Rational::zero());
                    seen.len() - 1
                }
            };
            weights[k] += source.weight(a);
            k
        })
        .collect();
    (FiniteProbabilitySpace::from_weights(&weights).unwrap(), dense)
}

fn group_strategy(variables: usize) -> impl Strategy<Value = (Vec<u32>, Vec<usize>)> {
    let groups = vec![vec![2u32, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![4]];
    (prop::sample::select(groups), prop::collection::vec(any::<usize>(), variables))
}

fn group_diagram(orders: &[u32], picks: &[usize]) -> entrocone::GroupDiagram {
    let g = FiniteAbelianGroup::new(orders.to_vec()).unwrap();
    let subs = g.all_subgroups();
    let chosen: Vec<_> = picks.iter().map(|&p| subs[p % subs.len()].clone()).collect();
    minimal_group_diagram(&g, &chosen).unwrap()
}

fn prime_base(order: usize) -> Base {
    if order % 2 == 0 {
        Base::Two
    } else {
        Base::Three
    }
}

// indexing

/// A category on `k` objects where object 0 precedes everything and the
/// other arrows are chosen by `bits` (only `i -> j` with `i < j`).
fn random_category(k: usize, bits: &[bool]) -> entrocone::Result<IndexingCategory> {
    let names: Vec<String> = (0..k).map(|i| format!("o{i}")).collect();
    let mut arrows = Vec::new();
    let mut b = bits.iter().cycle();
    for i in 0..k {
        for j in (i + 1)..k {
            if i == 0 || *b.next().unwrap() {
                arrows.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    IndexingCategory::from_arrows(names, &arrows)
}

proptest! {
    #[test]
    fn mca_axioms(k in 1usize..=7, bits in prop::collection::vec(any::<bool>(), 21)) {
        let c = match random_category(k, &bits) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let init = c.initial();
        for i in c.objects() {
            prop_assert_eq!(c.minimal_common_ancestor(i, i), i);
            prop_assert_eq!(c.minimal_common_ancestor(i, init), init);
            for j in c.objects() {
                let m = c.minimal_common_ancestor(i, j);
                prop_assert_eq!(m, c.minimal_common_ancestor(j, i));
                prop_assert!(c.is_ancestor(m, i) && c.is_ancestor(m, j));
            }
        }
    }

    #[test]
    fn ideals(k in 1usize..=7, bits in prop::collection::vec(any::<bool>(), 21)) {
        let c = match random_category(k, &bits) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(&c.ideal(c.initial()), &c);
        for i in c.objects() {
            let d = c.ideal(i);
            prop_assert_eq!(d.len(), c.descendants(i).len());
            let again = d.ideal(d.initial());
            prop_assert_eq!(&again, &d);
            prop_assert_eq!(d.name(d.initial()), c.name(i));
        }
    }

    #[test]
    fn validation_diagnostics_are_deterministic(k in 2usize..=5, bits in prop::collection::vec(any::<bool>(), 25)) {
        let names: Vec<String> = (0..k).map(|i| format!("o{i}")).collect();
        let matrix: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| bits[i * 5 + j]).collect()).collect();
        let a = IndexingCategory::validate(names.clone(), &matrix).map_err(|e| e.to_string());
        let b = IndexingCategory::validate(names, &matrix).map_err(|e| e.to_string());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn lambda_terminals() {
    for n in 1..=8 {
        let c = IndexingCategory::lambda_n(n).unwrap();
        assert_eq!(c.terminal_objects().len(), n);
        assert_eq!(c.len(), (1 << n) - 1);
    }
}

#[test]
fn validation_rejects_each_axiom() {
    let names = |k: usize| (0..k).map(|i| format!("o{i}")).collect::<Vec<_>>();
    let not_antisymmetric = vec![vec![true, true], vec![true, true]];
    let not_transitive = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
    let no_initial = vec![vec![true, false], vec![false, true]];
    // two incomparable common ancestors of o3 and o4 below o0
    let no_mca = vec![
        vec![true, true, true, true, true],
        vec![false, true, false, true, true],
        vec![false, false, true, true, true],
        vec![false, false, false, true, false],
        vec![false, false, false, false, true],
    ];
    for m in [not_antisymmetric, not_transitive, no_initial, no_mca] {
        let a = IndexingCategory::validate(names(m.len()), &m).unwrap_err().to_string();
        let b = IndexingCategory::validate(names(m.len()), &m).unwrap_err().to_string();
        assert_eq!(a, b);
    }
}

// spaces

proptest! {
    #[test]
    fn tensor_entropy_is_additive(x in space_strategy(5), y in space_strategy(5)) {
        for base in [Base::Two, Base::Three] {
            let hx = x.entropy(&base);
            let hy = y.entropy(&base);
            let hxy = x.tensor(&y).entropy(&base);
            prop_assert!((hxy.value - hx.value - hy.value).abs() < 1e-12);
            if let (Some(a), Some(b)) = (&hx.exact, &hy.exact) {
                prop_assert_eq!(hxy.exact, Some(a + b));
            }
        }
    }

    #[test]
    fn dyadic_tensor_entropy_is_exact(a in 0u32..4, b in 0u32..4) {
        let x = FiniteProbabilitySpace::uniform(1 << a);
        let y = FiniteProbabilitySpace::uniform(1 << b);
        let h = x.tensor(&y).entropy(&Base::Two);
        prop_assert_eq!(h.exact, Some(Rational::from_integer((a + b).into())));
    }

    #[test]
    fn reductions_do_not_increase_entropy(x in space_strategy(6), targets in prop::collection::vec(0usize..4, 6)) {
        let map: Vec<usize> = (0..x.len()).map(|a| targets[a]).collect();
        let (y, dense) = pushforward(&x, &map);
        let r = Reduction::from_indices(&x, &y, dense.clone()).unwrap();
        let hx = x.entropy(&Base::Two).value;
        let hy = y.entropy(&Base::Two).value;
        let injective = dense.iter().collect::<HashSet<_>>().len() == dense.len();
        prop_assert_eq!(r.is_isomorphism(), injective);
        if injective {
            prop_assert!((hx - hy).abs() < 1e-12);
        } else {
            prop_assert!(hx > hy + 1e-12);
        }
    }

    #[test]
    fn tensor_is_commutative_and_associative(x in space_strategy(3), y in space_strategy(3), z in space_strategy(3)) {
        prop_assert!(x.tensor(&y).is_isomorphic(&y.tensor(&x)));
        prop_assert!(x.tensor(&y).tensor(&z).is_isomorphic(&x.tensor(&y.tensor(&z))));
    }

    #[test]
    fn entropy_ignores_atom_order(w in prop::collection::vec(1i64..=50, 1..8), seed in any::<u64>()) {
        let mut shuffled = w.clone();
        let mut rng = seeded_rng(seed, 0);
        for i in (1..shuffled.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let a = space(&w).entropy(&Base::Two).value;
        let b = space(&shuffled).entropy(&Base::Two).value;
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }
}

// diagrams

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_diagram_entropy_adds(x in diagram_strategy(3, 2, 4), y in diagram_strategy(3, 2, 3)) {
        let t = x.tensor(&y).unwrap();
        let (fx, fy, ft) = (x.entropy_vector(&Base::Two), y.entropy_vector(&Base::Two), t.entropy_vector(&Base::Two));
        for k in 0..ft.values().len() {
            prop_assert!((ft.values()[k] - fx.values()[k] - fy.values()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn minimization_lowers_the_apex(apex in space_strategy(6), l in prop::collection::vec(0usize..3, 6), r in prop::collection::vec(0usize..3, 6)) {
        let lm: Vec<usize> = (0..apex.len()).map(|a| l[a]).collect();
        let rm: Vec<usize> = (0..apex.len()).map(|a| r[a]).collect();
        let (left, ld) = pushforward(&apex, &lm);
        let (right, rd) = pushforward(&apex, &rm);
        let fan = TwoFanOfDiagrams::of_spaces(apex.clone(), left, right, ld, rd).unwrap();
        let min = minimize_fan(&fan);
        prop_assert!(min.is_minimal());
        let before = fan.apex().entropy_vector(&Base::Two);
        let after = min.apex().entropy_vector(&Base::Two);
        prop_assert!(after.values()[0] <= before.values()[0] + 1e-12);
        prop_assert_eq!(min.left().entropy_vector(&Base::Two), fan.left().entropy_vector(&Base::Two));
        prop_assert_eq!(min.right().entropy_vector(&Base::Two), fan.right().entropy_vector(&Base::Two));
        prop_assert!(kd(&min, &Base::Two) <= kd(&fan, &Base::Two) + 1e-12);
    }

    #[test]
    fn law_of_total_entropy(d in diagram_strategy(3, 3, 6), pick in any::<usize>()) {
        let shape = d.shape().clone();
        let u = pick % shape.len();
        let f = d.entropy_vector(&Base::Two);
        let c = d.conditional_entropy_vector(u, &Base::Two);
        let hu = d.space(u).entropy(&Base::Two).value;
        for obj in shape.objects() {
            let diff = f.value(obj) - c.value(obj);
            prop_assert!(diff >= -1e-12 && diff <= hu + 1e-12, "object {}: {diff}", shape.name(obj));
        }
        prop_assert!((f.value(u) - c.value(u) - hu).abs() < 1e-12);
    }

    #[test]
    fn expansion_adds_noise_entropy(d in diagram_strategy(3, 2, 4), noise in space_strategy(3), pick in 0usize..3) {
        let shape = d.shape().clone();
        let t = shape.terminal_objects()[pick];
        let e = d.expand_terminal(t, &noise).unwrap();
        let h = noise.entropy(&Base::Two).value;
        let (before, after) = (d.entropy_vector(&Base::Two), e.entropy_vector(&Base::Two));
        for obj in shape.objects() {
            let through = shape.is_ancestor(obj, t);
            let expected = if through { h } else { 0.0 };
            prop_assert!((after.value(obj) - before.value(obj) - expected).abs() < 1e-9);
            let space = if through { d.space(obj).tensor(&noise) } else { d.space(obj).clone() };
            prop_assert!(e.space(obj).is_isomorphic(&space));
        }
    }

    #[test]
    fn group_diagrams_condition_homogeneously((orders, picks) in group_strategy(3)) {
        let gd = group_diagram(&orders, &picks);
        let d = gd.realize().unwrap();
        for obj in d.shape().objects() {
            let vectors: Vec<EntropyVector<f64>> = (0..d.space(obj).len())
                .map(|a| d.condition(obj, a).unwrap().entropy_vector(&Base::Two))
                .collect();
            for v in &vectors[1..] {
                prop_assert!(v.max_abs_diff(&vectors[0]) < 1e-12);
            }
        }
    }
}

// groups

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_vectors_agree_and_are_abelian((orders, picks) in group_strategy(4)) {
        let gd = group_diagram(&orders, &picks);
        let base = prime_base(gd.group().order());
        let exact = gd.exact_entropy_vector(&base).expect("p-group");
        let realized = gd.realize().unwrap().entropy_vector(&base);
        prop_assert!(exact.to_f64().max_abs_diff(&realized) < 1e-12);
        let spec = abelian_cone_spec(gd.shape()).unwrap();
        let m = in_cone(&exact, &spec, &Rational::zero()).unwrap();
        prop_assert!(m.member, "{} violates {:?}", exact, m.worst);
    }

    #[test]
    fn subgroup_lattice_is_monotone((orders, picks) in group_strategy(4)) {
        let gd = group_diagram(&orders, &picks);
        let shape = gd.shape().clone();
        let g = gd.group().order();
        for i in shape.objects() {
            let hi = gd.subgroup(i);
            prop_assert_eq!(g % hi.order(), 0);
            for j in shape.objects() {
                if shape.is_ancestor(i, j) {
                    let hj = gd.subgroup(j);
                    prop_assert!(hi.is_subgroup_of(hj));
                    prop_assert_eq!(hj.order() % hi.order(), 0);
                }
            }
        }
    }
}

// geometry

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_s4_invariant(f in rational_vector(15), v in rational_vector(15), p in 0usize..24) {
        let shape = lambda(4);
        let sigma = &Permutation::all(4)[p];
        let f = EntropyVector::new(shape.clone(), f).unwrap();
        let v = InfoVector::new(shape, v).unwrap();
        let lhs = pair(&s4_act(sigma, &f).unwrap(), &s4_act_info(sigma, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, pair(&f, &v).unwrap());
    }

    #[test]
    fn diagrams_satisfy_shannon(d in diagram_strategy(4, 3, 8)) {
        let f = d.entropy_vector(&Base::Two);
        let m = in_cone(&f, &shannon_generators(f.shape()).unwrap(), &1e-9).unwrap();
        prop_assert!(m.member, "{f} violates {:?}", m.worst);
    }

    #[test]
    fn alpha_reconstructs_and_is_linear(f in rational_vector(15), g in rational_vector(15), c in (-9i64..=9, 1i64..=5)) {
        let chart = ning_chart();
        let shape = chart.shape().clone();
        let f = EntropyVector::new(shape.clone(), f).unwrap();
        let g = EntropyVector::new(shape, g).unwrap();
        let af = alpha_coords(&f).unwrap();
        prop_assert_eq!(chart.combine(&af).unwrap(), f.clone());
        let ag = alpha_coords(&g).unwrap();
        let sum = alpha_coords(&f.add(&g).unwrap()).unwrap();
        let c = rat(c.0, c.1);
        let scaled = alpha_coords(&f.scale(&c)).unwrap();
        for k in 0..15 {
            prop_assert_eq!(&sum[k], &(&af[k] + &ag[k]));
            prop_assert_eq!(&scaled[k], &(&af[k] * &c));
        }
    }
}

fn check_ray_set(e: &RayEnumeration, perms: &[Permutation]) {
    let set: HashSet<Vec<i64>> = e.rays.iter().map(|r| r.as_i64().unwrap()).collect();
    for r in &e.rays {
        for sigma in perms {
            let image = s4_act(sigma, r).unwrap().normalized();
            assert!(set.contains(&image.as_i64().unwrap()), "{image} missing");
        }
    }
    assert_eq!(e.orbit_sizes().iter().sum::<usize>(), e.rays.len());
}

#[test]
fn lambda3_rays_are_closed_and_extremal() {
    let shape = lambda(3);
    let spec = shannon_generators(&shape).unwrap();
    let e = RayEnumeration::compute(&spec).unwrap();
    check_ray_set(&e, &Permutation::all(3));
    for (i, a) in e.rays.iter().enumerate() {
        assert!(is_extremal(a, &spec).unwrap());
        for b in &e.rays[i + 1..] {
            assert!(!is_extremal(&a.add(b).unwrap(), &spec).unwrap(), "midpoint of {a} and {b}");
        }
    }
}

#[test]
fn lambda4_rays_are_closed_and_extremal() {
    let shape = lambda(4);
    for spec in [shannon_generators(&shape).unwrap(), abelian_cone_spec(&shape).unwrap()] {
        let e = RayEnumeration::compute(&spec).unwrap();
        check_ray_set(&e, &Permutation::all(4));
        for (i, a) in e.rays.iter().enumerate() {
            assert!(is_extremal(a, &spec).unwrap());
            let b = &e.rays[(i + 1) % e.rays.len()];
            assert!(!is_extremal(&a.add(b).unwrap(), &spec).unwrap());
        }
    }
}

// coupling

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ikd_pseudo_distance(x in space_strategy(3), y in space_strategy(3), z in space_strategy(3)) {
        let base = Base::Two;
        let (x, y, z) = (Diagram::single(x), Diagram::single(y), Diagram::single(z));
        let xy = ikd_exact(&x, &y, &base).unwrap().value;
        let yx = ikd_exact(&y, &x, &base).unwrap().value;
        prop_assert_eq!(xy, yx);
        let yz = ikd_exact(&y, &z, &base).unwrap().value;
        let xz = ikd_exact(&x, &z, &base).unwrap().value;
        prop_assert!(xz <= xy + yz + 1e-9);
        let hx = x.entropy_vector(&base).values()[0];
        let hy = y.entropy_vector(&base).values()[0];
        prop_assert!((hx - hy).abs() <= xy + 1e-12);
        prop_assert!(ikd_greedy(&x, &y, &base).unwrap().value >= xy - 1e-9);
    }

    #[test]
    fn ikd_on_diagrams(x in diagram_strategy(2, 2, 3), y in diagram_strategy(2, 2, 3)) {
        let base = Base::Two;
        let e = ikd_exact(&x, &y, &base).unwrap();
        prop_assert_eq!(e.value, ikd_exact(&y, &x, &base).unwrap().value);
        let (fx, fy) = (x.entropy_vector(&base), y.entropy_vector(&base));
        for k in 0..fx.values().len() {
            prop_assert!((fx.values()[k] - fy.values()[k]).abs() <= e.value + 1e-12);
        }
        let g = greedy_coupling(&x, &y).unwrap();
        prop_assert!(g.kd(&base) >= e.value - 1e-9);
        prop_assert!(ikd_greedy(&x, &y, &base).unwrap().value >= e.value - 1e-9);
    }

    #[test]
    fn tensoring_does_not_increase_ikd(x in space_strategy(3), y in space_strategy(2), w in space_strategy(2)) {
        let base = Base::Two;
        let (dx, dy) = (Diagram::single(x.clone()), Diagram::single(y.clone()));
        let plain = ikd_exact(&dx, &dy, &base).unwrap().value;
        let (tx, ty) = (Diagram::single(x.tensor(&w)), Diagram::single(y.tensor(&w)));
        prop_assert!(ikd_exact(&tx, &ty, &base).unwrap().value <= plain + 1e-9);
    }

    #[test]
    fn fans_are_dominated_by_the_minimum(apex in space_strategy(6), l in prop::collection::vec(0usize..3, 6), r in prop::collection::vec(0usize..3, 6)) {
        let lm: Vec<usize> = (0..apex.len()).map(|a| l[a]).collect();
        let rm: Vec<usize> = (0..apex.len()).map(|a| r[a]).collect();
        let (left, ld) = pushforward(&apex, &lm);
        let (right, rd) = pushforward(&apex, &rm);
        let fan = TwoFanOfDiagrams::of_spaces(apex, left.clone(), right.clone(), ld, rd).unwrap();
        let best = ikd_exact(&Diagram::single(left), &Diagram::single(right), &Base::Two).unwrap().value;
        prop_assert!(kd(&fan, &Base::Two) >= best - 1e-9);
    }
}

// explorer

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn samples_are_valid(seed in any::<u64>()) {
        let chart = ning_chart();
        let mut points = sample_distributions(seed, 6, [2, 3, 2, 2], &Base::Two).unwrap();
        points.extend(sample_group_points(seed, 6, 64, &Base::Two).unwrap());
        for p in &points {
            prop_assert!(p.in_smc, "{} not Shannon", p.witness.id);
            let mut acc = vec![0.0; 15];
            for (row, a) in chart.rows().iter().zip(&p.alpha) {
                for (k, v) in row.vertex.values().iter().enumerate() {
                    acc[k] += a * to_f64(v);
                }
            }
            for (k, v) in p.entropy_vector.values().iter().enumerate() {
                prop_assert!((acc[k] - v).abs() < 1e-9);
            }
            if p.witness.id.starts_with('g') {
                prop_assert!(p.ingleton_signs.iter().all(|s| *s != std::cmp::Ordering::Less));
            }
            prop_assert_eq!(p.ingleton_signs.len(), ingleton_vectors(p.entropy_vector.shape()).unwrap().len());
        }
    }

    #[test]
    fn phi_table_grows_under_union(seed in any::<u64>(), diagnostic in any::<bool>()) {
        let grid = PhiGrid { resolution: 3, diagnostic };
        let a = sample_distributions(seed, 20, [2, 2, 2, 2], &Base::Two).unwrap();
        let b = sample_group_points(seed, 20, 64, &Base::Two).unwrap();
        let ta = phi_inner_bound(&a, grid);
        let tb = phi_inner_bound(&b, grid);
        let all: Vec<_> = a.iter().chain(&b).cloned().collect();
        let tu = phi_inner_bound(&all, grid);
        for (k, e) in ta.entries().iter().chain(tb.entries()) {
            prop_assert!(tu.entries()[k].max_alpha15 >= e.max_alpha15);
        }
        let mut merged = PhiTable::new(grid);
        merged.merge(&tb).unwrap();
        merged.merge(&ta).unwrap();
        prop_assert_eq!(merged, tu);
    }

    #[test]
    fn seeds_fix_streams(seed in any::<u64>(), index in 0u64..1000) {
        let mut r1 = seeded_rng(seed, index);
        let mut r2 = seeded_rng(seed, index);
        for _ in 0..8 {
            prop_assert_eq!(r1.next_u64(), r2.next_u64());
        }
        prop_assert_eq!(
            random_dyadic_joint(seed, index, [2, 2, 3, 2]).unwrap(),
            random_dyadic_joint(seed, index, [2, 2, 3, 2]).unwrap()
        );
    }
}
