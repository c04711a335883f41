use super::*;
use crate::construct::GroupSpec;
use crate::invariants::ratio;
use crate::perm::GroupHandle;

fn build(spec: GroupSpec) -> GroupHandle {
    spec.build().unwrap()
}

fn all_verified(v: &Verdict) -> bool {
    !v.conclusions.is_empty()
        && v.conclusions
            .iter()
            .all(|c| matches!(c.status, Status::Verified | Status::ProxyVerified))
}

#[test]
fn odd_prime_solvability_examples() {
    let v = check_theorem1(&build(GroupSpec::Pgl2(7)), 7).unwrap();
    assert_eq!(v.d_value, Some(ratio(1, 6)));
    assert_eq!(v.hypothesis, Some(false));
    assert!(v.sharp);
    assert!(!v.is_counterexample());

    let v = check_theorem1(&build(GroupSpec::MersenneFrobenius(3)), 7).unwrap();
    assert_eq!(v.d_value, Some(ratio(2, 8)));
    assert_eq!(v.hypothesis, Some(true));
    assert!(all_verified(&v), "{v:?}");

    let v = check_theorem1(&build(GroupSpec::Cyclic(5)), 5).unwrap();
    assert_eq!(v.d_value, Some(ratio(1, 1)));
    assert!(all_verified(&v));

    assert!(check_theorem1(&build(GroupSpec::Cyclic(2)), 2).is_err());
}

#[test]
fn odd_prime_check_allows_nonsolvable_pprime_factors() {
    // A5 x C17 at p = 17: d = 5/60 > 1/16 and one A5 factor, 12 < 16
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Alternating(5),
        GroupSpec::Cyclic(17),
    ]));
    let v = check_theorem1(&g, 17).unwrap();
    assert_eq!(v.hypothesis, Some(true));
    assert!(all_verified(&v), "{v:?}");
}

#[test]
fn two_length_examples() {
    let v = check_theorem2(&build(GroupSpec::Symmetric(4))).unwrap();
    assert_eq!(v.d_value, Some(ratio(2, 3)));
    assert_eq!(v.hypothesis, Some(true));
    assert!(all_verified(&v));
    assert!(v.conclusions[1].witness.contains("2-length 2"));

    let v = check_theorem2(&build(GroupSpec::Alternating(5))).unwrap();
    assert_eq!(v.d_value, Some(ratio(4, 15)));
    assert_eq!(v.hypothesis, Some(false));
    assert!(v.sharp);
}

#[test]
fn normal_sylow_examples() {
    let v = check_theorem3(&build(GroupSpec::MersenneFrobenius(2)), 3).unwrap();
    assert_eq!(v.d_value, Some(ratio(2, 4)));
    assert!(v.sharp);
    assert_eq!(v.hypothesis, Some(false));
    assert_eq!(v.conclusions[0].status, Status::Refuted);

    let v = check_theorem3(&build(GroupSpec::Symmetric(3)), 2).unwrap();
    assert_eq!(v.d_value, Some(ratio(2, 3)));
    assert!(v.sharp);
    assert_eq!(v.conclusions[0].status, Status::Refuted);

    let v = check_theorem3(&build(GroupSpec::ElemAbelian { p: 5, k: 2 }), 5).unwrap();
    assert_eq!(v.hypothesis, Some(true));
    assert!(all_verified(&v));
}

#[test]
fn psolvable_power_bound_examples() {
    let v = check_theorem4(&build(GroupSpec::Symmetric(4)), 2).unwrap();
    assert_eq!(v.threshold, Some(ratio(2, 3)));
    assert!(v.sharp);
    assert!(all_verified(&v));

    let v = check_theorem4(&build(GroupSpec::PLengthTwo(3)), 3).unwrap();
    assert_eq!(v.threshold, Some(ratio(1, 2)));
    assert!(all_verified(&v), "{v:?}");

    let v = check_theorem4(&build(GroupSpec::Alternating(5)), 5).unwrap();
    assert_eq!(v.hypothesis, Some(false));
}

#[test]
fn submultiplicativity_on_s4() {
    let g = build(GroupSpec::Symmetric(4));
    // A4 has three classes of odd-order elements, so d_{2'}(A4) = 3/3
    let v = check_lemma21(&g, &crate::invariants::PiSet::p_prime(2)).unwrap();
    assert!(all_verified(&v));
    assert!(
        v.conclusions
            .iter()
            .any(|c| c.witness == "|N| = 12: 2/3 <= 1/1 * 1/1"),
        "{v:?}"
    );
    let v = check_lemma21_all(&g).unwrap();
    assert!(all_verified(&v));
}

#[test]
fn orbit_counting() {
    let g = build(GroupSpec::MersenneFrobenius(2));
    let n = g.subgroup(g.hints()[0].clone(), "N").unwrap();
    let p = g
        .subgroup(vec![g.generators().last().unwrap().clone()], "P")
        .unwrap();
    let v = orbit_counting_bound(&n, &p).unwrap();
    assert!(v.sharp);
    assert!(all_verified(&v));
    assert!(v.conclusions[0].witness.contains("|C_N(P)| = 1"));

    let g = build(GroupSpec::AffineFrobenius { r: 11, a: 1, p: 5 });
    let n = g.subgroup(g.hints()[0].clone(), "N").unwrap();
    let p = g
        .subgroup(vec![g.generators().last().unwrap().clone()], "P")
        .unwrap();
    let v = orbit_counting_bound(&n, &p).unwrap();
    assert!(v.sharp);
    assert!(all_verified(&v));

    let trivial = GroupHandle::trivial(n.degree());
    let v = orbit_counting_bound(&n, &trivial).unwrap();
    assert!(all_verified(&v));
    // swapped roles are rejected
    assert!(orbit_counting_bound(&p, &n).is_err());
}

#[test]
fn two_part_against_largest_prime() {
    let v = remark32_check(&build(GroupSpec::Alternating(7))).unwrap();
    // 1, (12)(34), (1234)(56)
    assert_eq!(v.d_value, Some(ratio(3, 8)));
    let v = remark32_check(&build(GroupSpec::Alternating(8))).unwrap();
    assert_eq!(v.d_value, Some(ratio(5, 64)));
    assert_eq!(v.threshold, Some(ratio(1, 6)));
    assert_eq!(v.hypothesis, Some(true));
    assert!(all_verified(&v));
    let v = remark32_check(&build(GroupSpec::Mathieu(11))).unwrap();
    assert_eq!(v.d_value, Some(ratio(5, 16)));
    assert_eq!(v.threshold, Some(ratio(1, 10)));
    assert_eq!(v.hypothesis, Some(false));
    assert!(all_verified(&v));
    let v = remark32_check(&build(GroupSpec::Psp4(3))).unwrap();
    assert_eq!(v.d_value, Some(ratio(5, 64)));
    assert_eq!(v.hypothesis, Some(true));
}

#[test]
fn equality_case_proxies() {
    for p in [5, 7] {
        let v = equality_case_prop63(&build(GroupSpec::Pgl2(p)), p).unwrap();
        assert_eq!(v.hypothesis, Some(true));
        assert!(all_verified(&v), "{v:?}");
    }
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Psl { n: 2, q: 7 },
        GroupSpec::Cyclic(3),
    ]));
    let v = equality_case_prop63(&g, 7).unwrap();
    assert!(all_verified(&v), "{v:?}");
    assert!(v.conclusions.iter().any(|c| c.witness == "|Z| = 3"));

    let v = equality_case_prop63(&build(GroupSpec::Sl2(5)), 5).unwrap();
    assert_eq!(v.d_value, Some(ratio(5, 24)));
    assert_eq!(v.hypothesis, Some(false));
    assert!(v.conclusions.is_empty());
}

#[test]
fn a5_times_c7_shape() {
    let g = build(GroupSpec::DirectProduct(vec![
        GroupSpec::Alternating(5),
        GroupSpec::Cyclic(7),
    ]));
    let v = prop64_shape(&g).unwrap();
    assert_eq!(v.d_value, Some(ratio(4, 15)));
    assert!(all_verified(&v), "{v:?}");
    let t = check_theorem2(&g).unwrap();
    assert!(t.sharp);
}

#[test]
fn dixon() {
    let v = dixon_check(&build(GroupSpec::Alternating(5))).unwrap();
    assert_eq!(v.hypothesis, Some(true));
    assert_eq!(v.d_value, Some(ratio(5, 60)));
    assert!(all_verified(&v));
    let v = dixon_check(&build(GroupSpec::Symmetric(3))).unwrap();
    assert_eq!(v.hypothesis, Some(false));
}

#[test]
fn verdict_json_shape() {
    let v = check_theorem3(&build(GroupSpec::Symmetric(3)), 2).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["d_value"], "2/3");
    assert_eq!(json["threshold"], "2/3");
    assert_eq!(json["sharp"], true);
    assert_eq!(json["conclusions"][0]["status"], "refuted");
}

#[test]
fn sweep_small_groups() {
    let mut summary = SweepSummary::default();
    for spec in [
        GroupSpec::Symmetric(4),
        GroupSpec::Alternating(5),
        GroupSpec::MersenneFrobenius(3),
        GroupSpec::Pgl2(5),
    ] {
        for v in soundness_sweep(&build(spec), 31).unwrap() {
            summary.add(&v);
        }
    }
    assert_eq!(summary.counterexamples, 0);
    assert_eq!(summary.undecidable, 0);
    assert!(summary.sharp.iter().any(|s| s == "2: A(5), p=2"));
    assert!(summary.sharp.iter().any(|s| s == "1: PGL(2,5), p=5"));
}
