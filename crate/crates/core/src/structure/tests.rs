use num_bigint::BigUint;

use super::*;
use crate::construct::GroupSpec;
use crate::perm::GroupHandle;

fn build(spec: GroupSpec) -> GroupHandle {
    spec.build().unwrap()
}

fn ord(g: &GroupHandle) -> u64 {
    g.order_u64().unwrap()
}

#[test]
fn small_cores() {
    let s4 = build(GroupSpec::Symmetric(4));
    assert_eq!(ord(&p_core(&s4, 2).unwrap()), 4);
    assert_eq!(ord(&p_core(&s4, 3).unwrap()), 1);
    assert_eq!(ord(&p_prime_core(&s4, 3).unwrap()), 4);
    assert_eq!(ord(&p_prime_core(&s4, 2).unwrap()), 1);
    for q in [5, 7, 11, 13] {
        let g = build(GroupSpec::Psl { n: 2, q });
        assert_eq!(ord(&p_core(&g, q).unwrap()), 1);
    }
    let f = build(GroupSpec::MersenneFrobenius(3));
    assert_eq!(ord(&p_core(&f, 7).unwrap()), 1);
    assert_eq!(ord(&p_prime_core(&f, 7).unwrap()), 8);
}

#[test]
fn core_tiers_agree() {
    let specs = [
        GroupSpec::Symmetric(4),
        GroupSpec::PLengthTwo(3),
        GroupSpec::MersenneFrobenius(3),
        GroupSpec::AffineFrobenius { r: 11, a: 1, p: 5 },
        GroupSpec::Dihedral(12),
        GroupSpec::CyclicExt { n: 7, m: 3, e: 2 },
    ];
    for spec in specs {
        let g = build(spec.clone());
        for p in crate::arith::prime_divisors(ord(&g)) {
            for kind in [CoreKind::P, CoreKind::PPrime] {
                let one = GroupHandle::trivial(g.degree());
                let a = relative_core(&g, &one, p, kind, Tier::BruteForce).unwrap();
                let b = relative_core(&g, &one, p, kind, Tier::Hints).unwrap();
                assert!(a.same_group(&b), "{spec} p={p} {kind:?}");
            }
            let a = upper_p_series_with(&g, p, Tier::BruteForce).unwrap();
            let b = upper_p_series_with(&g, p, Tier::Hints).unwrap();
            assert_eq!(a.factor_kinds, b.factor_kinds, "{spec} p={p}");
        }
    }
}

#[test]
fn p_lengths() {
    let s4 = build(GroupSpec::Symmetric(4));
    assert_eq!(p_length(&s4, 2).unwrap(), 2);
    assert_eq!(p_length(&s4, 3).unwrap(), 1);
    let pl = build(GroupSpec::PLengthTwo(7));
    assert_eq!(p_length(&pl, 7).unwrap(), 2);
    let pl3 = build(GroupSpec::PLengthTwo(3));
    assert_eq!(p_length(&pl3, 3).unwrap(), 2);
    let a5 = build(GroupSpec::Alternating(5));
    assert!(!is_p_solvable(&a5, 5).unwrap());
    assert!(p_length(&a5, 5).is_err());
    // A5 is 7-solvable trivially: a 7'-group
    assert_eq!(p_length(&a5, 7).unwrap(), 0);
}

#[test]
fn series_for_nonsolvable_p_solvable_group() {
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Alternating(5),
        GroupSpec::Cyclic(17),
    ]));
    let s = upper_p_series(&g, 17).unwrap();
    assert!(s.reached_whole_group);
    assert_eq!(s.p_steps(), 1);
    assert_eq!(count_nonabelian_pprime_simple_factors(&g, 17).unwrap(), 1);
    assert!(has_normal_sylow(&g, 17).unwrap());
}

#[test]
fn normal_sylow() {
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Cyclic(3),
        GroupSpec::Symmetric(3),
    ]));
    assert!(has_normal_sylow(&g, 3).unwrap());
    assert!(!has_normal_sylow(&g, 2).unwrap());
    let s4 = build(GroupSpec::Symmetric(4));
    assert!(!has_normal_sylow(&s4, 2).unwrap());
    let f = build(GroupSpec::MersenneFrobenius(3));
    assert!(has_normal_sylow(&f, 2).unwrap());
    assert!(!has_normal_sylow(&f, 7).unwrap());
}

#[test]
fn normal_subgroup_lattices() {
    let orders = |spec| -> Vec<u64> {
        normal_subgroups(&build(spec))
            .unwrap()
            .iter()
            .map(ord)
            .collect()
    };
    assert_eq!(orders(GroupSpec::Symmetric(4)), vec![1, 4, 12, 24]);
    assert_eq!(orders(GroupSpec::Cyclic(6)), vec![1, 2, 3, 6]);
    assert_eq!(orders(GroupSpec::Alternating(5)), vec![1, 60]);
    // V4 has five subgroups, all normal
    assert_eq!(
        orders(GroupSpec::ElemAbelian { p: 2, k: 2 }),
        vec![1, 2, 2, 2, 4]
    );
    assert_eq!(orders(GroupSpec::Dihedral(4)).len(), 6);
}

#[test]
fn minimal_normals_and_chief_series() {
    let s4 = build(GroupSpec::Symmetric(4));
    let mins = minimal_normal_subgroups(&s4).unwrap();
    assert_eq!(mins.iter().map(ord).collect::<Vec<_>>(), vec![4]);
    let chief: Vec<u64> = chief_series(&s4).unwrap().iter().map(ord).collect();
    assert_eq!(chief, vec![1, 4, 12, 24]);
    let c6 = build(GroupSpec::Cyclic(6));
    assert_eq!(minimal_normal_subgroups(&c6).unwrap().len(), 2);
}

#[test]
fn chief_factor_counts() {
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Alternating(5),
        GroupSpec::Alternating(5),
    ]));
    let factors = chief_factors(&g).unwrap();
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|f| !f.abelian && f.count == 1));
    assert_eq!(count_nonabelian_pprime_simple_factors(&g, 7).unwrap(), 2);
    assert_eq!(count_nonabelian_pprime_simple_factors(&g, 5).unwrap(), 0);
    let s4 = build(GroupSpec::Symmetric(4));
    let f = chief_factors(&s4).unwrap();
    assert_eq!(
        f.iter()
            .map(|x| (x.simple_order.clone(), x.count))
            .collect::<Vec<_>>(),
        vec![
            (BigUint::from(2u32), 2),
            (BigUint::from(3u32), 1),
            (BigUint::from(2u32), 1)
        ]
    );
}

#[test]
fn centers_and_solvability() {
    assert_eq!(ord(&center(&build(GroupSpec::Sl2(5))).unwrap()), 2);
    assert_eq!(ord(&center(&build(GroupSpec::Symmetric(4))).unwrap()), 1);
    assert_eq!(ord(&center(&build(GroupSpec::Dihedral(4))).unwrap()), 2);
    assert!(!is_solvable(&build(GroupSpec::Psl { n: 3, q: 3 })).unwrap());
    assert!(is_solvable(&build(GroupSpec::Symmetric(4))).unwrap());
    assert!(is_solvable(&build(GroupSpec::PLengthTwo(3))).unwrap());
    assert!(is_simple(&build(GroupSpec::Psl { n: 2, q: 7 })).unwrap());
    assert!(!is_simple(&build(GroupSpec::Sl2(5))).unwrap());
    let ds: Vec<u64> = derived_series(&build(GroupSpec::Symmetric(4)))
        .unwrap()
        .iter()
        .map(ord)
        .collect();
    assert_eq!(ds, vec![24, 12, 4, 1]);
}
