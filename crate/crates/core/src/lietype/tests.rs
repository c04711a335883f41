use num_bigint::BigUint;

use super::*;
use crate::construct::GroupSpec;
use crate::criteria::{Status, Verdict};
use crate::invariants::{class_number as engine_classes, d_pi, PiSet};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn passes(v: &Verdict) -> bool {
    v.conclusions
        .iter()
        .all(|c| matches!(c.status, Status::Verified | Status::ProxyVerified))
}

#[test]
fn cyclotomic_values() {
    assert_eq!(cyclo(2, 5).unwrap(), big(6));
    assert_eq!(cyclo(8, 2).unwrap(), big(17));
    assert_eq!(cyclo(6, 3).unwrap(), big(7));
    assert_eq!(cyclo(1, 9).unwrap(), big(8));
    assert_eq!(cyclo(12, 2).unwrap(), big(13));
    assert!(cyclo(0, 2).is_err());
    let plus = semicyclo(SemiSign::Plus, 27).unwrap();
    let minus = semicyclo(SemiSign::Minus, 27).unwrap();
    assert_eq!((plus.clone(), minus.clone()), (big(37), big(19)));
    assert_eq!(plus * minus, cyclo(6, 27).unwrap());
    assert!(semicyclo(SemiSign::Plus, 9).is_err());
}

#[test]
fn cyclotomic_values_exceed_q() {
    for q in 2..200 {
        for n in [2, 4, 6, 8] {
            assert!(cyclo(n, q).unwrap() > big(q), "Phi_{n}({q})");
        }
    }
}

#[test]
fn cyclotomic_product_matches_power_minus_one() {
    for q in 2..12u64 {
        for m in 1..13u64 {
            let prod = (1..=m)
                .filter(|d| m % d == 0)
                .fold(big(1), |acc, d| acc * cyclo(d, q).unwrap());
            assert_eq!(prod, crate::arith::pow_big(q, m as u32) - 1u32);
        }
    }
}

#[test]
fn orders_against_known_groups() {
    use LieFamily::*;
    assert_eq!(Psl2.simple_order(7).unwrap(), big(168));
    assert_eq!(Psl3.simple_order(4).unwrap(), big(20160));
    assert_eq!(Psu3.simple_order(3).unwrap(), big(6048));
    assert_eq!(Sl(3).simple_order(2).unwrap(), big(168));
    assert_eq!(Su(4).simple_order(2).unwrap(), big(25920));
    assert_eq!(Sp(2).simple_order(3).unwrap(), big(25920));
    assert_eq!(G2.simple_order(3).unwrap(), big(4245696));
    assert_eq!(Suzuki2B2.simple_order(8).unwrap(), big(29120));
    assert_eq!(Ree2G2.simple_order(27).unwrap(), big(10073444472));
    assert_eq!(Triality3D4.simple_order(2).unwrap(), big(211341312));
    assert_eq!(
        Ree2F4.simple_order(8).unwrap(),
        "264905352699586176614400".parse::<BigUint>().unwrap()
    );
    assert_eq!(SpinPlus(4).simple_order(2).unwrap(), big(174182400));
    assert_eq!(SpinMinus(4).simple_order(2).unwrap(), big(197406720));
    assert_eq!(E6Twisted.center_order(2).unwrap(), 3);
    assert_eq!(SpinPlus(4).center_order(3).unwrap(), 4);
    assert_eq!(SpinMinus(5).center_order(3).unwrap(), 4);
    assert_eq!(SpinMinus(4).center_order(3).unwrap(), 2);
    // odd part of the Suzuki group of order 29120
    let odd = Suzuki2B2.simple_order(8).unwrap() / big(64);
    assert_eq!(odd, big(7 * 65));
}

#[test]
fn orders_against_engine() {
    let cases = [
        (LieFamily::Psl2, 11, GroupSpec::Psl { n: 2, q: 11 }),
        (LieFamily::Psl2, 16, GroupSpec::Psl { n: 2, q: 16 }),
        (LieFamily::Psl3, 3, GroupSpec::Psl { n: 3, q: 3 }),
        (LieFamily::Psu3, 3, GroupSpec::Psu3(3)),
        (LieFamily::Sp(2), 3, GroupSpec::Psp4(3)),
    ];
    for (f, q, spec) in cases {
        assert_eq!(
            f.simple_order(q).unwrap(),
            spec.build().unwrap().order(),
            "{f}({q})"
        );
    }
}

#[test]
fn class_numbers_match_engine() {
    let check = |f: LieFamily, q: u64, spec: GroupSpec| {
        let k = engine_classes(&spec.build().unwrap()).unwrap();
        assert_eq!(f.class_number(q).unwrap(), big(k), "{f}({q})");
    };
    for q in [4, 5, 7, 8, 9, 11, 13, 16] {
        check(LieFamily::Psl2, q, GroupSpec::Psl { n: 2, q });
    }
    for q in [2, 3, 4] {
        check(LieFamily::Psl3, q, GroupSpec::Psl { n: 3, q });
    }
    check(LieFamily::Psu3, 3, GroupSpec::Psu3(3));
    assert_eq!(LieFamily::Psl2.class_number(9).unwrap(), big(7));
    assert_eq!(LieFamily::Psl3.class_number(4).unwrap(), big(10));
    assert!(LieFamily::E8.class_number(2).is_err());
}

#[test]
fn torus_rows() {
    use LieFamily::*;
    assert_eq!(Sl(3).torus_row(2).unwrap(), (big(7), big(3)));
    assert_eq!(F4.torus_row(3).unwrap(), (big(256), big(7)));
    assert_eq!(Ree2G2.torus_row(27).unwrap(), (big(37), big(26)));
    assert_eq!(SpinMinus(5).torus_row(3).unwrap().0, big(4u64.pow(5)));
    assert_eq!(SpinMinus(4).torus_row(3).unwrap().0, big(16 * 10));
    assert!(Suzuki2B2.torus_row(8).is_err());
    assert!(Ree2G2.torus_row(9).is_err());
    assert!(Sl(2).torus_row(5).is_err());
}

#[test]
fn torus_witnesses() {
    for q in [3, 5, 7, 9] {
        assert!(passes(&verify_torus_witness(LieFamily::Sl(3), q).unwrap()));
    }
    let v = verify_torus_witness(LieFamily::Sp(2), 3).unwrap();
    assert!(passes(&v));
    assert!(v.conclusions.iter().any(|c| c.witness == "k = 10"));
    assert!(verify_torus_witness(LieFamily::Suzuki2B2, 8).is_err());
    assert!(verify_torus_witness(LieFamily::Sl(3), 4).is_err());
    let grid = tori_grid(32).unwrap();
    assert!(grid.iter().any(|v| v.group == "2G2(27)"));
    assert!(grid.iter().any(|v| v.pi.as_deref() == Some("n odd")));
    assert!(grid.iter().any(|v| v.pi.as_deref() == Some("n even")));
    for v in &grid {
        assert!(passes(v), "{v:?}");
    }
}

#[test]
fn unipotent_witnesses() {
    assert_eq!(unipotent_z(LieFamily::E6Twisted, 2).unwrap(), big(63));
    assert_eq!(unipotent_z(LieFamily::E6Twisted, 5).unwrap(), big(8));
    assert_eq!(unipotent_z(LieFamily::Sl(4), 5).unwrap(), big(6));
    let v = verify_unipotent_witness(LieFamily::E6Twisted, 2).unwrap();
    assert!(passes(&v), "{v:?}");
    assert!(
        v.conclusions.iter().any(|c| c.witness.ends_with("z = 63")),
        "{v:?}"
    );
    for v in unipotent_grid(16).unwrap() {
        assert!(passes(&v), "{v:?}");
    }
}

#[test]
fn branch_inequalities() {
    for f in [LieFamily::Psl2, LieFamily::Psl3, LieFamily::Psu3] {
        let rows = verify_branch_inequalities(f, 64).unwrap();
        for v in &rows {
            assert!(passes(v), "{v:?}");
        }
    }
    let psl3 = verify_branch_inequalities(LieFamily::Psl3, 5).unwrap();
    let row = psl3
        .iter()
        .find(|v| v.group == "PSL3(5)" && v.p == Some(31))
        .unwrap();
    assert_eq!(row.theorem, "psl3-coprime");
    let psl2 = verify_branch_inequalities(LieFamily::Psl2, 16).unwrap();
    assert!(psl2
        .iter()
        .any(|v| v.theorem == "psl2-even" && v.group == "PSL2(8)" && v.p == Some(3)));
    assert!(psl2
        .iter()
        .any(|v| v.theorem == "psl2-even-exact" && v.group == "PSL2(16)"));
    // PSL(3,2) = PSL(2,7) sits on the bound at p = 7
    let exc = psl3
        .iter()
        .find(|v| v.theorem == "psl3-2-computed" && v.p == Some(7))
        .unwrap();
    assert!(exc.sharp);
    assert!(psl3
        .iter()
        .any(|v| v.theorem == "psl3-4-d2" && v.hypothesis == Some(true)));
    assert!(verify_branch_inequalities(LieFamily::E8, 8).is_err());
}

#[test]
fn alternating_route() {
    let rows = verify_alternating_inequalities(40).unwrap();
    for v in &rows {
        assert!(passes(v), "{v:?}");
    }
    let sharp: Vec<_> = rows.iter().filter(|v| v.sharp).collect();
    assert_eq!(sharp.len(), 1);
    assert_eq!((sharp[0].group.as_str(), sharp[0].p), ("A(5)", Some(5)));
    let a11 = rows
        .iter()
        .find(|v| v.group == "A(11)" && v.p == Some(11))
        .unwrap();
    assert_eq!(a11.theorem, "alternating-largest-prime");
    assert!(a11.conclusions[0].witness.contains("63"));
}

#[test]
fn four_prime_rows_match_engine() {
    let rows = four_prime_table();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let g = row.spec.build().unwrap();
        assert_eq!(
            d_pi(&g, &PiSet::p_prime(2)).unwrap(),
            row.expected,
            "{}",
            row.label
        );
        assert_eq!(crate::arith::prime_divisors_big(&g.order()), row.primes);
    }
}

#[test]
fn prime_power_search() {
    assert_eq!(prime_power_k_search(5), Some(2));
    assert_eq!(prime_power_k_search(7), Some(1));
    assert_eq!(prime_power_k_search(13), Some(2));
    // 3k+1 for k < 1: empty range
    assert_eq!(prime_power_k_search(3), None);
}
