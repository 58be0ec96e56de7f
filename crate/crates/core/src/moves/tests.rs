use proptest::prelude::*;

use super::*;
use crate::classify::{spherical_type, SphericalType};
use crate::coxsys::{are_graph_isomorphic, canonical_form, dihedral, disjoint_union, triangle, GeneratorSubset, Label};
use crate::testutil::{fin, from_edges, i2_5_config, linear, star, system_strategy, twist_example, INF};

fn sorted_labels(m: &CoxeterMatrix) -> Vec<Label> {
    let mut l = m.edge_labels();
    l.sort_by_key(|x| x.to_code());
    l
}

#[test]
fn starlets_have_one_pseudo_transposition_per_spoke() {
    for n in 2..=6u32 {
        let ks: Vec<u32> = (1..n).collect();
        let pts = find_pseudo_transpositions(&star(&ks));
        assert_eq!(pts.len(), n as usize - 1);
        assert!(pts.iter().all(|p| p.kind == PtKind::I2EvenTwiceOdd));
        if n > 2 {
            assert!(pts.iter().all(|p| p.t != 0 && p.v == 0));
        }
    }
}

#[test]
fn i2_6_and_b5_have_two() {
    let m = disjoint_union(&dihedral(fin(6)), &linear(&[4, 3, 3, 3])).unwrap();
    let pts = find_pseudo_transpositions(&m);
    assert_eq!(pts.len(), 2);
    let b = pts.iter().find(|p| p.kind == PtKind::BOdd).unwrap();
    assert_eq!((b.t, b.v), (2, 3));
    assert!(find_pseudo_transpositions(&dihedral(fin(4))).is_empty());
    assert!(find_pseudo_transpositions(&linear(&[4, 3, 3])).is_empty());
}

#[test]
fn dihedral_blows_up_to_triangle() {
    for k in 1..=6u32 {
        let m = dihedral(fin(4 * k + 2));
        let pts = find_pseudo_transpositions(&m);
        assert_eq!(pts.len(), 1);
        let up = blow_up(&m, &pts[0]).unwrap();
        assert_eq!(
            canonical_form(&up),
            canonical_form(&triangle(fin(2 * k + 1), fin(2), fin(2)))
        );
    }
}

#[test]
fn b5_blows_up_to_d5() {
    let m = disjoint_union(&dihedral(fin(6)), &linear(&[4, 3, 3, 3])).unwrap();
    let pt = find_pseudo_transpositions(&m)
        .into_iter()
        .find(|p| p.kind == PtKind::BOdd)
        .unwrap();
    let up = blow_up(&m, &pt).unwrap();
    assert_eq!(up.rank(), 8);
    let comps = crate::coxsys::irreducible_components(&up);
    let mut tys: Vec<Option<SphericalType>> = comps.iter().map(|&c| spherical_type(&up, c).unwrap()).collect();
    tys.sort();
    assert_eq!(
        tys,
        vec![
            Some(SphericalType::A(1)),
            Some(SphericalType::D(5)),
            Some(SphericalType::I2(6))
        ]
    );
    assert_eq!(up.name(2), "s0's1's0'");
    assert_eq!(up.name(7), "w[s0',s1',s2,s3,s4]");
}

#[test]
fn starlet_blow_up_at_six() {
    let m = star(&[1, 2]);
    let pt = find_pseudo_transpositions(&m).into_iter().find(|p| p.t == 1).unwrap();
    let up = blow_up(&m, &pt).unwrap();
    assert_eq!(sorted_labels(&up), vec![INF, INF, fin(2), fin(2), fin(3), fin(10)]);
    assert!(blow_up(&m, &PseudoTransposition { t: 0, ..pt }).is_err());
}

fn gamma(i: usize) -> CoxeterMatrix {
    let m = star(&[1, 2]);
    let pts = find_pseudo_transpositions(&m);
    match i {
        1 => blow_up(&m, &pts[0]).unwrap(),
        2 => blow_up(&m, &pts[1]).unwrap(),
        _ => {
            let g1 = blow_up(&m, &pts[0]).unwrap();
            let pt = find_pseudo_transpositions(&g1)[0];
            blow_up(&g1, &pt).unwrap()
        }
    }
}

#[test]
fn gammas_are_distinct_and_gamma3_is_common() {
    assert!(are_graph_isomorphic(&gamma(1), &gamma(2)).is_none());
    assert_eq!(sorted_labels(&gamma(2)), vec![INF, INF, fin(2), fin(2), fin(5), fin(6)]);
    let g2 = gamma(2);
    let pt = find_pseudo_transpositions(&g2)[0];
    assert_eq!(canonical_form(&blow_up(&g2, &pt).unwrap()), canonical_form(&gamma(3)));
}

#[test]
fn blow_down_examples() {
    for k in 1..=5u32 {
        let t = triangle(fin(2 * k + 1), fin(2), fin(2));
        let downs = find_blow_downs(&t);
        assert_eq!(downs.len(), 1, "k = {k}");
        assert_eq!(downs[0].target, canonical_form(&dihedral(fin(4 * k + 2))));
    }
    assert!(find_blow_downs(&star(&[1, 2])).is_empty());
    let targets: HashSet<GalaxyVertex> = find_blow_downs(&gamma(3)).into_iter().map(|r| r.target).collect();
    let expect: HashSet<GalaxyVertex> = [canonical_form(&gamma(1)), canonical_form(&gamma(2))].into();
    assert_eq!(targets, expect);
}

#[test]
fn blow_down_names_invert_blow_up() {
    let m = dihedral(fin(10)).with_names(vec!["a".into(), "b".into()]).unwrap();
    let pt = find_pseudo_transpositions(&m)[0];
    let up = blow_up(&m, &pt).unwrap();
    let down = blow_down(&up, &pt.inverse(2)).unwrap();
    assert_eq!(down, m);
}

#[test]
fn twist_example_has_only_trivial_twists() {
    for (k, l) in [(1, 2), (2, 3)] {
        let m = twist_example(k, l);
        assert!(enumerate_twists(&m).is_empty());
        let all = enumerate_all_twists(&m);
        let js: HashSet<GeneratorSubset> = all.iter().filter(|tw| tw.j.len() > 1).map(|tw| tw.j).collect();
        let expect: HashSet<GeneratorSubset> = [[0usize, 1], [1, 2]]
            .iter()
            .map(|p| p.iter().copied().collect())
            .collect();
        assert_eq!(js, expect);
        for tw in &all {
            assert!(is_twist_trivial(&m, tw).unwrap());
        }
    }
}

#[test]
fn i2_5_twist_is_nontrivial() {
    let m = i2_5_config();
    let tws = enumerate_twists(&m);
    let ab = |a: &[usize], b: &[usize]| TwistDescriptor {
        j: [0usize, 1].into_iter().collect(),
        a: a.iter().copied().collect(),
        b: b.iter().copied().collect(),
    };
    assert_eq!(tws.len(), 2);
    assert!(tws.contains(&ab(&[2], &[3])) && tws.contains(&ab(&[3], &[2])));
    let twisted = apply_twist(&m, &ab(&[2], &[3])).unwrap();
    assert_eq!(twisted.get(3, 0), fin(3));
    assert_eq!(twisted.get(3, 1), fin(2));
    assert!(!is_twist_trivial(&m, &ab(&[2], &[3])).unwrap());
    assert!(enumerate_twists(&linear(&[])).is_empty());
}

#[test]
fn twist_validation() {
    let m = i2_5_config();
    let bad = TwistDescriptor {
        j: [0usize, 1].into_iter().collect(),
        a: GeneratorSubset::EMPTY,
        b: [2usize].into_iter().collect(),
    };
    assert!(matches!(apply_twist(&m, &bad), Err(Error::InvalidMove(_))));
    let no_b = TwistDescriptor {
        j: [0usize, 1].into_iter().collect(),
        a: [2usize, 3].into_iter().collect(),
        b: GeneratorSubset::EMPTY,
    };
    assert_eq!(apply_twist(&m, &no_b).unwrap(), m);
}

#[test]
fn statistics_examples() {
    assert_eq!(statistics(&star(&[1, 2])), Statistics { u: 2, d: 0, p: 2 });
    assert_eq!(statistics(&dihedral(fin(4))), Statistics { u: 0, d: 0, p: 0 });
    assert_eq!(
        statistics(&triangle(fin(5), fin(2), fin(2))),
        Statistics { u: 0, d: 1, p: 1 }
    );
}

#[test]
fn record_json_round_trip() {
    let m = star(&[1, 2]);
    for a in all_moves(&gamma(3)).into_iter().chain(all_moves(&m)) {
        let s = serde_json::to_string(&a.record).unwrap();
        let back: MoveRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a.record);
    }
}

// --- property tests -------------------------------------------------------

/// Literal check of the definition over every subset `J` and `t ∈ J`.
fn brute_pseudo_transpositions(m: &CoxeterMatrix) -> HashSet<(usize, GeneratorSubset)> {
    let mut out = HashSet::new();
    for j in m.all().subsets() {
        if j.len() < 2 || !m.is_irreducible_subset(j) {
            continue;
        }
        let Some(ty) = spherical_type(m, j).unwrap() else {
            continue;
        };
        for t in j.iter() {
            let cond_i = m
                .all()
                .difference(j)
                .iter()
                .all(|s| m.get(s, t) == INF || j.iter().all(|u| m.get(s, u) == fin(2)));
            let partners: Vec<usize> = j.iter().filter(|&u| u != t && m.get(t, u) != fin(2)).collect();
            let ok_type = match ty {
                SphericalType::B(k) => k % 2 == 1 && partners.len() == 1 && m.get(t, partners[0]) == fin(4),
                SphericalType::I2(q) => q % 4 == 2 && q > 2,
                _ => false,
            };
            if cond_i && ok_type {
                out.insert((t, j));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pseudo_transpositions_match_definition(m in system_strategy(6)) {
        let brute = brute_pseudo_transpositions(&m);
        let found = find_pseudo_transpositions(&m);
        let js: HashSet<GeneratorSubset> = brute.iter().map(|p| p.1).collect();
        prop_assert_eq!(found.len(), js.len());
        for p in &found {
            prop_assert!(brute.contains(&(p.t, p.j)));
        }
    }

    #[test]
    fn blow_up_then_down(m in system_strategy(6)) {
        let source = canonical_form(&m);
        for a in blow_ups(&m) {
            prop_assert_eq!(a.result.rank(), m.rank() + 1);
            let downs = find_blow_downs(&a.result);
            prop_assert!(downs.iter().any(|r| r.target == source));
            let back = a.record.mv.inverse(m.rank()).apply(&a.result).unwrap();
            prop_assert_eq!(canonical_form(&back), source.clone());
        }
    }

    #[test]
    fn prefilter_admits_every_blow_down(m in system_strategy(7)) {
        if !find_blow_downs(&m).is_empty() {
            prop_assert!(blow_down_prefilter(&m), "{}", m);
        }
    }

    #[test]
    fn prefilter_admits_blow_ups(m in system_strategy(6)) {
        for a in blow_ups(&m) {
            prop_assert!(blow_down_prefilter(&a.result), "{}", a.result);
        }
    }

    #[test]
    fn twists_preserve_rank_and_labels(m in system_strategy(6)) {
        for tw in enumerate_all_twists(&m) {
            let t = apply_twist(&m, &tw).unwrap();
            prop_assert_eq!(t.rank(), m.rank());
            prop_assert_eq!(sorted_labels(&t), sorted_labels(&m));
            let back = apply_twist(&t, &tw).unwrap();
            prop_assert_eq!(canonical_form(&back), canonical_form(&m));
            if twist_is_structurally_trivial(&m, &tw) {
                prop_assert_eq!(canonical_form(&t), canonical_form(&m));
            }
        }
    }

    #[test]
    fn odd_and_four_divisible_labels_have_no_dihedral_kind(m in system_strategy(6)) {
        let clean = m.edge_labels().iter().all(|l| !matches!(l, Label::Finite(k) if k % 4 == 2 && *k > 2));
        if clean {
            prop_assert!(find_pseudo_transpositions(&m).iter().all(|p| p.kind == PtKind::BOdd));
        }
    }
}

#[test]
fn from_edges_helper_is_symmetric() {
    let m = from_edges(3, &[(2, 0, fin(7))]);
    assert_eq!(m.get(0, 2), fin(7));
}
