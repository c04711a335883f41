use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::invariants::conjugacy_classes;
use crate::perm::{join, normal_closure, normal_closure_over, GroupHandle, Permutation};

/// Normal closures of the nontrivial class representatives, cached on the handle.
pub fn class_closures(g: &GroupHandle) -> Result<Arc<Vec<GroupHandle>>> {
    if let Some(c) = g.class_closures.get() {
        return Ok(c.clone());
    }
    let table = conjugacy_classes(g)?;
    let closures = table
        .entries
        .iter()
        .filter(|e| !e.representative.is_identity())
        .map(|e| normal_closure(g, std::slice::from_ref(&e.representative)))
        .collect::<Result<Vec<_>>>()?;
    let closures = Arc::new(closures);
    let _ = g.class_closures.set(closures.clone());
    Ok(closures)
}

/// Sorted ranks of the elements of `h` inside `g`: an exact, ordered key.
fn element_key(g: &GroupHandle, h: &GroupHandle) -> Result<Vec<u64>> {
    let en = g.enumerator()?;
    let mut key: Vec<u64> = h.elements()?.map(|x| en.rank_of_member(&x)).collect();
    key.sort_unstable();
    Ok(key)
}

fn by_order_then_key(a: &(Vec<u64>, GroupHandle), b: &(Vec<u64>, GroupHandle)) -> Ordering {
    a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0))
}

/// All normal subgroups, ordered by order and then by element ranks.
pub fn normal_subgroups(g: &GroupHandle) -> Result<Vec<GroupHandle>> {
    let limit = g.limits().normal_subgroups;
    if g.order_u64().is_none_or(|n| n > limit) {
        return Err(Error::limit(
            format!("normal subgroups of {}", g.label()),
            limit,
        ));
    }
    let mut found: Vec<(Vec<u64>, GroupHandle)> = Vec::new();
    let add = |h: GroupHandle, found: &mut Vec<(Vec<u64>, GroupHandle)>| -> Result<bool> {
        let key = element_key(g, &h)?;
        if found.iter().any(|(k, _)| *k == key) {
            return Ok(false);
        }
        found.push((key, h));
        Ok(true)
    };
    add(GroupHandle::trivial(g.degree()), &mut found)?;
    for c in class_closures(g)?.iter() {
        add(c.clone(), &mut found)?;
    }
    // close under products
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let joined = join(g, &[&found[i].1, &found[j].1])?;
            add(joined, &mut found)?;
        }
        i += 1;
    }
    found.sort_by(by_order_then_key);
    Ok(found.into_iter().map(|(_, h)| h).collect())
}

/// Minimal normal subgroups: the minimal members among normal closures of
/// single classes.
pub fn minimal_normal_subgroups(g: &GroupHandle) -> Result<Vec<GroupHandle>> {
    let closures = class_closures(g)?;
    let mut out: Vec<GroupHandle> = Vec::new();
    for c in closures.iter() {
        let properly_contains_another = closures
            .iter()
            .any(|d| d.order() < c.order() && d.is_subgroup_of(c));
        if !properly_contains_another && !out.iter().any(|o| o.same_group(c)) {
            out.push(c.clone());
        }
    }
    out.sort_by_key(|h| h.order());
    Ok(out)
}

/// A chief series `1 = N_0 < N_1 < ... < N_r = G`, each step a minimal
/// normal subgroup of `G/N_i`: the smallest closure of `N_i` with one class.
pub fn chief_series(g: &GroupHandle) -> Result<Vec<GroupHandle>> {
    let table = conjugacy_classes(g)?;
    let g_order = g.order();
    let mut n = GroupHandle::trivial(g.degree());
    let mut series = vec![n.clone()];
    while n.order() != g_order {
        let mut best: Option<GroupHandle> = None;
        for e in &table.entries {
            if n.contains(&e.representative)? {
                continue;
            }
            let c = normal_closure_over(g, Some(&n), std::slice::from_ref(&e.representative))?;
            if best.as_ref().is_none_or(|b| c.order() < b.order()) {
                best = Some(c);
            }
        }
        n = best.expect("a class outside a proper subgroup");
        series.push(n.clone());
    }
    Ok(series)
}

/// Whether `m/n` is abelian, from commutators of generators.
fn section_is_abelian(m: &GroupHandle, n: &GroupHandle) -> Result<bool> {
    for a in m.generators() {
        for b in m.generators() {
            if !n.contains(&a.commutator(b))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact `log_base(n)`, if `n` is a power of `base`.
fn exact_log(n: &BigUint, base: &BigUint) -> Option<u64> {
    let mut n = n.clone();
    let mut e = 0;
    while n > BigUint::one() {
        let (q, r) = n.div_rem(base);
        if r != BigUint::ZERO {
            return None;
        }
        n = q;
        e += 1;
    }
    Some(e)
}

/// A chief factor `M/N` and its decomposition `S^count`.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub order: BigUint,
    pub abelian: bool,
    /// Order of the simple constituent `S`.
    pub simple_order: BigUint,
    pub count: u64,
}

/// Chief factors with their simple constituents.
///
/// For a nonabelian factor `M/N = S^n`, the normal closure in `M` of a single
/// class representative over `N` is the product of the constituents it
/// touches, so the smallest such closure has order `|S|`.
pub fn chief_factors(g: &GroupHandle) -> Result<Vec<ChiefFactor>> {
    let series = chief_series(g)?;
    let table = conjugacy_classes(g)?;
    let mut out = Vec::new();
    for pair in series.windows(2) {
        let (n, m) = (&pair[0], &pair[1]);
        let order = m.order() / n.order();
        let abelian = section_is_abelian(m, n)?;
        let simple_order = if abelian {
            // elementary abelian: the prime
            let o = order
                .to_u64()
                .ok_or_else(|| Error::limit("chief factor", u64::MAX))?;
            BigUint::from(crate::arith::prime_divisors(o)[0])
        } else {
            let mut best: Option<BigUint> = None;
            for e in &table.entries {
                let x = &e.representative;
                if !m.contains(x)? || n.contains(x)? {
                    continue;
                }
                let c = normal_closure_over(m, Some(n), std::slice::from_ref(x))?;
                let s = c.order() / n.order();
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
            best.expect("a class in a nontrivial section")
        };
        let count = exact_log(&order, &simple_order).ok_or_else(|| {
            Error::Undecidable(format!(
                "chief factor of order {order} is not a power of {simple_order}"
            ))
        })?;
        out.push(ChiefFactor {
            order,
            abelian,
            simple_order,
            count,
        });
    }
    Ok(out)
}

/// Number of nonabelian simple `p'`-groups among the composition factors.
pub fn count_nonabelian_pprime_simple_factors(g: &GroupHandle, p: u64) -> Result<u64> {
    let bp = BigUint::from(p);
    Ok(chief_factors(g)?
        .iter()
        .filter(|f| !f.abelian && &f.order % &bp != BigUint::ZERO)
        .map(|f| f.count)
        .sum())
}

/// `Z(G)`, generated by the classes of size one.
pub fn center(g: &GroupHandle) -> Result<GroupHandle> {
    let table = conjugacy_classes(g)?;
    let gens: Vec<Permutation> = table
        .entries
        .iter()
        .filter(|e| e.size == 1 && !e.representative.is_identity())
        .map(|e| e.representative.clone())
        .collect();
    g.subgroup(gens, format!("Z({})", g.label()))
}

/// `[G,G]` as the normal closure of generator commutators.
pub fn derived_subgroup(g: &GroupHandle) -> Result<GroupHandle> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    Ok(normal_closure(g, &comms)?.with_label(format!("{}'", g.label())))
}

pub fn derived_series(g: &GroupHandle) -> Result<Vec<GroupHandle>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        let done = next.order() == BigUint::one();
        series.push(next);
        if done {
            return Ok(series);
        }
    }
}

pub fn is_solvable(g: &GroupHandle) -> Result<bool> {
    Ok(derived_series(g)?.last().expect("nonempty").order() == BigUint::one())
}

/// Whether `g` has no normal subgroups other than `1` and itself.
pub fn is_simple(g: &GroupHandle) -> Result<bool> {
    if g.order() == BigUint::one() {
        return Ok(false);
    }
    let closures = class_closures(g)?;
    Ok(closures.iter().all(|c| c.order() == g.order()))
}
