use num_bigint::BigUint;
use num_integer::Integer;

use super::family::LieFamily;
use crate::arith::{pow_big, prime_power};
use crate::criteria::{Status, Verdict};
use crate::error::{Error, Result};

fn group_label(f: LieFamily, q: u64) -> String {
    format!("{f}({q})")
}

fn divides(a: &BigUint, b: &BigUint) -> bool {
    (b % a) == BigUint::ZERO
}

/// Checks a tori-table row in odd characteristic: `|T|` divides `|G^F|`,
/// `k` divides `[G^F : T]`, `k` is prime to `q`, and `k` exceeds the
/// characteristic (`k > q` except for `2G2`, where `k = q^2 - 1 > 3`).
pub fn verify_torus_witness(f: LieFamily, q: u64) -> Result<Verdict> {
    let r = f.characteristic(q)?;
    if r == 2 {
        return Err(Error::param(format!(
            "{f}: the torus check is for odd characteristic"
        )));
    }
    let mut v = Verdict::new("torus", &group_label(f, q));
    v.p = Some(r);
    v.hypothesis = Some(true);
    let order = f.generic_order(q)?;
    let (t, k) = f.torus_row(q)?;
    if let LieFamily::SpinMinus(n) = f {
        v.pi = Some(if n % 2 == 1 { "n odd" } else { "n even" }.into());
    }
    v.decide(
        "|T| divides |G^F|",
        Ok((divides(&t, &order), format!("|T| = {t}"))),
    )?;
    let index = &order / &t;
    v.decide(
        "k divides [G^F : T]",
        Ok((divides(&k, &index), format!("k = {k}"))),
    )?;
    let coprime = k.gcd(&BigUint::from(q)) == BigUint::from(1u32);
    v.decide("k is prime to q", Ok((coprime, format!("gcd(k, {q})"))))?;
    let (bound, name) = match f {
        LieFamily::Ree2G2 => (BigUint::from(3u32), "k > 3"),
        _ => (BigUint::from(q), "k > q"),
    };
    v.decide(name, Ok((k > bound, format!("k = {k}, q = {q}"))))?;
    Ok(v)
}

/// Odd prime powers up to `q_max`.
pub fn odd_prime_powers(q_max: u64) -> Vec<u64> {
    (3..=q_max)
        .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
        .collect()
}

/// [`verify_torus_witness`] over every tori family and every admissible odd `q <= q_max`.
pub fn tori_grid(q_max: u64) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for f in LieFamily::torus_families() {
        for q in odd_prime_powers(q_max) {
            if f.characteristic(q).is_ok() {
                out.push(verify_torus_witness(f, q)?);
            }
        }
    }
    Ok(out)
}

/// The cofactor `z = (q^2 - 1)/|Z(G^F)|`, with `z = 2^6 - 1` for `2E6(2)`
/// where the quotient is 1.
pub fn unipotent_z(f: LieFamily, q: u64) -> Result<BigUint> {
    if f == LieFamily::E6Twisted && q == 2 {
        return Ok(BigUint::from(63u32));
    }
    Ok(BigUint::from((q * q - 1) / f.center_order(q)?))
}

fn is_simple_case(f: LieFamily, q: u64) -> bool {
    use LieFamily::*;
    !matches!(
        (f, q),
        (Sp(2), 2) | (G2, 2) | (SpinOdd(2), 2) | (Su(4), 2) | (Sp(2), 3) | (SpinOdd(2), 3)
    ) && !matches!(f, Psl2 | Psl3 | Psu3)
}

/// Cross-characteristic check with a unipotent witness: for every odd prime
/// `p != r` dividing `|G|`, `p |G|_r < |G|_{p'}`. When the largest order factor
/// is `q^(2k) - 1`, also rebuilds the explicit `p'`-number `m > p` dividing
/// `|G|_{r'}` from the case analysis (`q^(2k)-1`, `q^k+1`, `q^k-1` or `z(q^k-1)`).
pub fn verify_unipotent_witness(f: LieFamily, q: u64) -> Result<Verdict> {
    let r = f.characteristic(q)?;
    let mut v = Verdict::new("unipotent", &group_label(f, q));
    v.hypothesis = Some(is_simple_case(f, q));
    if v.hypothesis != Some(true) {
        return Ok(v);
    }
    let order = f.simple_order(q)?;
    let r_part = crate::arith::p_part_big(&order, r);
    let r_prime = &order / &r_part;
    for p in f.simple_order_primes(q)? {
        if p == 2 || p == r {
            continue;
        }
        let p_prime = &order / crate::arith::p_part_big(&order, p);
        let lhs = &r_part * p;
        v.decide(
            format!("p={p}: p|G|_r < |G|_p'"),
            Ok((lhs < p_prime, format!("p|G|_r = {lhs}"))),
        )?;
        if let Some(k) = f.even_top_degree() {
            let top = pow_big(q, 2 * k) - 1u32;
            let plus = pow_big(q, k) + 1u32;
            let minus = pow_big(q, k) - 1u32;
            let z = unipotent_z(f, q)?;
            let bp = BigUint::from(p);
            let m = if !divides(&bp, &top) {
                top
            } else if !divides(&bp, &plus) {
                plus
            } else if divides(&bp, &z) {
                minus
            } else {
                z.clone() * minus
            };
            let ok = divides(&m, &r_prime) && !divides(&bp, &m) && m > bp;
            v.decide(
                format!("p={p}: p'-number m > p divides |G|_r'"),
                Ok((ok, format!("m = {m}, z = {z}"))),
            )?;
        }
    }
    if v.conclusions.is_empty() {
        v.push("no odd cross-characteristic prime", Status::Verified, "");
    }
    Ok(v)
}

/// Families and parameters for the unipotent-witness grid.
pub fn unipotent_grid(q_max: u64) -> Result<Vec<Verdict>> {
    use LieFamily::*;
    let mut families: Vec<LieFamily> = Vec::new();
    families.extend((4..=7).map(Sl));
    families.extend((4..=7).map(Su));
    families.extend((2..=4).map(Sp));
    families.extend((3..=4).map(SpinOdd));
    families.extend((4..=5).map(SpinPlus));
    families.extend((4..=5).map(SpinMinus));
    families.extend([
        G2,
        F4,
        E6,
        E6Twisted,
        E7,
        E8,
        Triality3D4,
        Suzuki2B2,
        Ree2G2,
        Ree2F4,
    ]);
    let mut out = Vec::new();
    for f in families {
        for q in 2..=q_max {
            if f.characteristic(q).is_ok() {
                out.push(verify_unipotent_witness(f, q)?);
            }
        }
    }
    Ok(out)
}
