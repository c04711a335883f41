use num_bigint::BigUint;

use super::family::LieFamily;
use crate::arith::{gcd, is_prime, p_part_big, prime_divisors_big, prime_power};
use crate::construct::{alternating, GroupSpec};
use crate::criteria::{remark32_check, Status, Verdict};
use crate::error::{Error, Result};
use crate::invariants::{d_pi, ratio, to_fraction_string, PiSet};
use crate::perm::GroupHandle;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn p_prime_part(order: &BigUint, p: u64) -> BigUint {
    order / p_part_big(order, p)
}

fn row(branch: &str, label: &str, p: Option<u64>) -> Verdict {
    let mut v = Verdict::new(branch, label);
    v.p = p;
    v.hypothesis = Some(true);
    v
}

/// `d_{p'}(G) <= 1/(p-1)` computed on the group itself, one row per odd `p`.
fn computed_rows(branch: &str, g: &GroupHandle, skip: u64) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for p in prime_divisors_big(&g.order()) {
        if p == 2 || p == skip {
            continue;
        }
        let mut v = row(branch, g.label(), Some(p));
        let d = d_pi(g, &PiSet::p_prime(p))?;
        let t = ratio(1, p - 1);
        v.sharp = d == t;
        v.decide("d_p'(G) <= 1/(p-1)", Ok((d <= t, to_fraction_string(&d))))?;
        v.d_value = Some(d);
        v.threshold = Some(t);
        out.push(v);
    }
    Ok(out)
}

fn skipped(branch: &str, label: &str, why: &str) -> Verdict {
    let mut v = Verdict::new(branch, label);
    v.hypothesis = Some(false);
    v.push("not applicable", Status::Verified, why);
    v
}

/// Checks, for every `q <= q_max` and every odd `p != r` dividing `|G|`, the
/// sufficient inequality `p * bound < |G|_{p'}` of the branch selected by `q`,
/// together with `k(G) <= bound`. Exceptional parameters are routed to
/// direct computation.
pub fn verify_branch_inequalities(f: LieFamily, q_max: u64) -> Result<Vec<Verdict>> {
    if !matches!(f, LieFamily::Psl2 | LieFamily::Psl3 | LieFamily::Psu3) {
        return Err(Error::param(format!("no branch inequalities for {f}")));
    }
    let mut out = Vec::new();
    for q in 2..=q_max {
        let Some((r, _)) = prime_power(q) else {
            continue;
        };
        let label = format!("{f}({q})");
        match (f, q) {
            (LieFamily::Psl2, 2 | 3) | (LieFamily::Psu3, 2) => {
                out.push(skipped("solvable", &label, "not a simple group"));
                continue;
            }
            (LieFamily::Psl2, 4 | 5) => {
                out.extend(computed_rows(
                    "alternating-a5",
                    &alternating(5)?.with_label(label),
                    r,
                )?);
                continue;
            }
            (LieFamily::Psl3, 2) => {
                let g = GroupSpec::Psl { n: 3, q: 2 }.build()?.with_label(label);
                out.extend(computed_rows("psl3-2-computed", &g, r)?);
                continue;
            }
            (LieFamily::Psl3, 4) => {
                let g = GroupSpec::Psl { n: 3, q: 4 }.build()?.with_label(label);
                let mut v = remark32_check(&g)?;
                v.theorem = "psl3-4-d2".into();
                out.push(v);
                continue;
            }
            _ => {}
        }
        let order = f.simple_order(q)?;
        let k = f.class_number(q)?;
        for p in prime_divisors_big(&order) {
            if p == 2 || p == r {
                continue;
            }
            let pp = p_prime_part(&order, p);
            let (branch, bound) = match f {
                LieFamily::Psl2 if q % 2 == 1 => ("psl2-odd", big(q)),
                LieFamily::Psl2 if q + 1 == p => {
                    // |G|_{p'} = q(q-1); exact value (q+2)/(2q(q-1)) < 1/q
                    let mut v = row("psl2-even-exact", &label, Some(p));
                    let d = ratio(q + 2, 2 * q * (q - 1));
                    let t = ratio(1, p - 1);
                    v.decide("d_p'(G) < 1/(p-1)", Ok((d < t, to_fraction_string(&d))))?;
                    v.decide(
                        "|G|_p' = q(q-1)",
                        Ok((pp == big(q * (q - 1)), format!("|G|_p' = {pp}"))),
                    )?;
                    v.d_value = Some(d);
                    v.threshold = Some(t);
                    out.push(v);
                    continue;
                }
                LieFamily::Psl2 => ("psl2-even", big(q + 1)),
                LieFamily::Psl3 if gcd(3, q - 1) == 1 => ("psl3-coprime", big(q * q + q)),
                LieFamily::Psl3 => ("psl3-gcd3", big(q * q)),
                LieFamily::Psu3 if gcd(3, q + 1) == 1 => ("psu3-coprime", big((q + 1) * (q + 1))),
                _ => ("psu3-gcd3", big(q * q)),
            };
            let mut v = row(branch, &label, Some(p));
            v.decide(
                "k(G) <= bound",
                Ok((k <= bound, format!("k(G) = {k}, bound = {bound}"))),
            )?;
            let lhs = &bound * p;
            v.decide(
                "p * bound < |G|_p'",
                Ok((lhs < pp, format!("{lhs} < {pp}"))),
            )?;
            out.push(v);
        }
    }
    Ok(out)
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// The alternating-group route: for `n >= 10`, either a prime `q > p` divides
/// `|A_n|`, or `p` is the largest prime and `(p-2)(p-4) |G|_2 <= |G|_{p'}`;
/// for `5 <= n < 10` the values are computed on `A_n`.
pub fn verify_alternating_inequalities(n_max: u64) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in 5..=n_max {
        if n < 10 {
            out.extend(computed_rows("alternating-computed", &alternating(n)?, 0)?);
            continue;
        }
        let label = format!("A({n})");
        let order = factorial(n) / 2u32;
        let two = p_part_big(&order, 2);
        for p in (3..=n).filter(|&p| is_prime(p)) {
            let pp = p_prime_part(&order, p);
            let lhs = &two * p;
            let larger = (p + 1..=n).find(|&s| is_prime(s));
            let mut v;
            if let Some(s) = larger {
                v = row("alternating-larger-prime", &label, Some(p));
                let mid = &two * s;
                v.decide(
                    "p|G|_2 < s|G|_2 <= |G|_p'",
                    Ok((lhs < mid && mid <= pp, format!("s = {s}"))),
                )?;
            } else {
                v = row("alternating-largest-prime", &label, Some(p));
                let c = (p - 2) * (p - 4);
                v.decide("(p-2)(p-4) > p", Ok((c > p, format!("(p-2)(p-4) = {c}"))))?;
                let mid = &two * c;
                v.decide(
                    "p|G|_2 < (p-2)(p-4)|G|_2 <= |G|_p'",
                    Ok((lhs < mid && mid <= pp, format!("{lhs} < {mid} <= {pp}"))),
                )?;
            }
            out.push(v);
        }
    }
    Ok(out)
}
