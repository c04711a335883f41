use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use super::{ratio, ratio_big, PiSet, Rational};
use crate::error::{Error, Result};
use crate::perm::{GroupHandle, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    #[serde(serialize_with = "as_cycles")]
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

fn as_cycles<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Conjugacy classes with sizes and element orders.
///
/// Classes are listed in the order their first element appears in the
/// group's enumeration, and that first element is the representative.
#[derive(Clone, Debug, Serialize)]
pub struct ClassTable {
    pub entries: Vec<ClassEntry>,
    pub group_order: u64,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of classes whose elements have π-number order.
    pub fn count_pi(&self, pi: &PiSet) -> u64 {
        self.entries
            .iter()
            .filter(|c| pi.is_pi_number(c.element_order))
            .count() as u64
    }
}

/// Partitions the elements of `g` into conjugation orbits.
///
/// Every element is visited once; each new orbit is closed by conjugating
/// with the generators, indexing elements by their rank in the stabilizer
/// chain enumeration.
pub fn conjugacy_classes(g: &GroupHandle) -> Result<Arc<ClassTable>> {
    if let Some(t) = g.classes.get() {
        return Ok(t.clone());
    }
    let en = g.enumerator()?;
    let n = en.len();
    let mut seen = vec![0u64; (n as usize).div_ceil(64)];
    let mark = |seen: &mut [u64], r: u64| -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let fresh = seen[w] >> b & 1 == 0;
        seen[w] |= 1 << b;
        fresh
    };
    let gens: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .filter(|s| !s.is_identity())
        .map(|s| (s.inverse(), s.clone()))
        .collect();
    let mut entries = Vec::new();
    let mut stack = Vec::new();
    for r in 0..n {
        if !mark(&mut seen, r) {
            continue;
        }
        let rep = en.element(r);
        let mut size = 1u64;
        stack.push(rep.clone());
        while let Some(x) = stack.pop() {
            for (s_inv, s) in &gens {
                let y = s_inv.then(&x).then(s);
                if mark(&mut seen, en.rank_of_member(&y)) {
                    size += 1;
                    stack.push(y);
                }
            }
        }
        let element_order = rep
            .order()
            .ok_or_else(|| Error::limit("element order", u64::MAX))?;
        entries.push(ClassEntry {
            representative: rep,
            size,
            element_order,
        });
    }
    let table = Arc::new(ClassTable {
        entries,
        group_order: n,
    });
    let _ = g.classes.set(table.clone());
    Ok(table)
}

/// `k(G)`.
pub fn class_number(g: &GroupHandle) -> Result<u64> {
    Ok(conjugacy_classes(g)?.len() as u64)
}

/// Number of conjugacy classes of π-elements.
pub fn k_pi(g: &GroupHandle, pi: &PiSet) -> Result<u64> {
    Ok(conjugacy_classes(g)?.count_pi(pi))
}

/// `k_π(G) / |G|_π`.
pub fn d_pi(g: &GroupHandle, pi: &PiSet) -> Result<Rational> {
    let k = k_pi(g, pi)?;
    Ok(ratio_big(&BigUint::from(k), &pi.part(&g.order())))
}

/// `k(G) / |G|`.
pub fn commuting_degree(g: &GroupHandle) -> Result<Rational> {
    let t = conjugacy_classes(g)?;
    Ok(ratio(t.len() as u64, t.group_order))
}

fn check_even_psl2(q: u64) -> Result<()> {
    let power_of_two = q >= 2 && q.is_power_of_two();
    if !power_of_two || !crate::arith::is_prime(q + 1) {
        return Err(Error::param(format!(
            "{q} is not a power of 2 with {} prime",
            q + 1
        )));
    }
    Ok(())
}

/// Closed form for `k_{p'}(PSL(2,q))` when `q` is even and `p = q+1` is prime.
pub fn k_pregular_psl2_even(q: u64) -> Result<u64> {
    check_even_psl2(q)?;
    Ok((q + 2) / 2)
}

/// The matching `d_{p'}(PSL(2,q)) = (q+2) / (2q(q-1))`.
pub fn d_pregular_psl2_even(q: u64) -> Result<Rational> {
    check_even_psl2(q)?;
    Ok(ratio(q + 2, 2 * q * (q - 1)))
}
