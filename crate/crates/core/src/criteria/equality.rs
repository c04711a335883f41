use num_bigint::BigUint;

use super::{require_prime, soft, Status, Verdict};
use crate::error::{Error, Result};
use crate::invariants::{d_pi, ratio, PiSet};
use crate::perm::{join, quotient, GroupHandle};
use crate::structure::{center, derived_subgroup, is_p_solvable, is_simple, p_core};

/// `G/O_p(G)`, reusing `G` when the core is trivial.
fn mod_p_core(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    let o = p_core(g, p)?;
    if o.is_trivial() {
        Ok(g.clone())
    } else {
        quotient(g, &o)
    }
}

/// Proxy check of the equality case `d_{p'}(G) = 1/(p-1)` for groups that are
/// not `p`-solvable. With `H = G/O_p(G)` and `Z = Z(H)`, the isomorphism types
/// are replaced by orders and simplicity: `|H/Z|` is `|PSL(2,p)|` or
/// `|PGL(2,p)|`, `H'` is simple of order `|PSL(2,p)|`, and `[H : H'Z] <= 2`.
pub fn equality_case_prop63(g: &GroupHandle, p: u64) -> Result<Verdict> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::param("the equality case is stated for odd p"));
    }
    let mut v = Verdict::new("P63", g.label());
    v.p = Some(p);
    let t = ratio(1, p - 1);
    v.threshold = Some(t.clone());
    let Some(d) = soft(d_pi(g, &PiSet::p_prime(p)))? else {
        return Ok(v);
    };
    let solvable = is_p_solvable(g, p)?;
    v.sharp = d == t;
    v.d_value = Some(d.clone());
    v.hypothesis = Some(d == t && !solvable);
    if v.hypothesis != Some(true) {
        return Ok(v);
    }

    let psl = BigUint::from(p * (p * p - 1) / 2);
    let pgl = &psl * 2u32;
    let h = mod_p_core(g, p)?;
    let z = center(&h)?;
    let hd = derived_subgroup(&h)?;
    let hz = join(&h, &[&hd, &z])?;
    let bp = BigUint::from(p);

    v.decide("p > 3", Ok((p > 3, format!("p = {p}"))))?;
    v.decide(
        "Z(H) is a p'-group",
        Ok((
            &z.order() % &bp != BigUint::ZERO,
            format!("|Z| = {}", z.order()),
        )),
    )?;
    let top = h.order() / z.order();
    v.decide_as(
        "H/Z is PSL(2,p) or PGL(2,p)",
        Status::ProxyVerified,
        Ok((top == psl || top == pgl, format!("|H/Z| = {top}"))),
    )?;
    let simple = hd.order() == psl && is_simple(&hd)?;
    v.decide_as(
        "H' is PSL(2,p)",
        Status::ProxyVerified,
        Ok((simple, format!("|H'| = {}, simple: {simple}", hd.order()))),
    )?;
    let index = h.order() / hz.order();
    v.decide(
        "[H : H'Z] <= 2",
        Ok((index <= BigUint::from(2u32), format!("index {index}"))),
    )?;
    Ok(v)
}

/// Proxy check of the 2-equality case: for nonsolvable `G` with
/// `d_{2'}(G) = 4/15`, `H = G/O_2(G)` splits as `H' x Z(H)` with `H'` simple
/// of order 60.
pub fn prop64_shape(g: &GroupHandle) -> Result<Verdict> {
    let mut v = Verdict::new("P64", g.label());
    v.p = Some(2);
    let t = ratio(4, 15);
    v.threshold = Some(t.clone());
    let Some(d) = soft(d_pi(g, &PiSet::p_prime(2)))? else {
        return Ok(v);
    };
    let solvable = crate::structure::is_solvable(g)?;
    v.sharp = d == t;
    v.d_value = Some(d.clone());
    v.hypothesis = Some(d == t && !solvable);
    if v.hypothesis != Some(true) {
        return Ok(v);
    }
    let h = mod_p_core(g, 2)?;
    let z = center(&h)?;
    let hd = derived_subgroup(&h)?;
    let simple = hd.order() == BigUint::from(60u32) && is_simple(&hd)?;
    v.decide_as(
        "H' is A5",
        Status::ProxyVerified,
        Ok((simple, format!("|H'| = {}, simple: {simple}", hd.order()))),
    )?;
    let hz = join(&h, &[&hd, &z])?;
    let direct = hz.order() == h.order() && hd.order() * z.order() == h.order();
    v.decide(
        "H = H' x Z",
        Ok((
            direct,
            format!(
                "|H| = {}, |H'| = {}, |Z| = {}",
                h.order(),
                hd.order(),
                z.order()
            ),
        )),
    )?;
    Ok(v)
}
