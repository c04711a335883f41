//! `O_p` and `O_p'` of quotients `G/K`, returned as their preimages in `G`.
//!
//! Brute force (enumerable `G`): a class of `G` lies in the preimage of
//! `O_x(G/K)` exactly when the normal closure of `K` and a representative has
//! `x`-number index over `K`; the preimage is the union of those classes.
//!
//! Hints (large `G`): pick the largest hint `L >= K` such that `L/K` is a
//! `p`-group or a `p'`-group and `G/L` is small, compute the core of `G/L` by
//! brute force, and lift. If `L/K` has the same type as the core sought, the
//! lifted core is the answer. If it has the opposite type and is abelian,
//! the core is the `x`-part of the centraliser of `L/K` in the lift, which is
//! generated by the `|L/K|`-th powers of its elements.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::invariants::conjugacy_classes;
use crate::perm::{normal_closure_over, quotient_map, GroupHandle, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreKind {
    /// `O_p`.
    P,
    /// `O_p'`.
    PPrime,
}

impl CoreKind {
    fn opposite(self) -> Self {
        match self {
            CoreKind::P => CoreKind::PPrime,
            CoreKind::PPrime => CoreKind::P,
        }
    }

    /// Whether `n` is a `p`-power (resp. coprime to `p`).
    pub fn admits(self, n: &BigUint, p: u64) -> bool {
        let bp = BigUint::from(p);
        match self {
            CoreKind::PPrime => n % &bp != BigUint::ZERO,
            CoreKind::P => {
                let mut n = n.clone();
                while n > BigUint::one() {
                    if &n % &bp != BigUint::ZERO {
                        return false;
                    }
                    n /= &bp;
                }
                true
            }
        }
    }
}

/// Which computation to use for cores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Brute force when the group is enumerable, hints otherwise.
    Auto,
    BruteForce,
    Hints,
}

fn index(g: &GroupHandle, k: &GroupHandle) -> BigUint {
    g.order() / k.order()
}

/// Preimage in `g` of `O_x(g/k)`; `k` must be normal in `g`.
pub fn relative_core(
    g: &GroupHandle,
    k: &GroupHandle,
    p: u64,
    kind: CoreKind,
    tier: Tier,
) -> Result<GroupHandle> {
    let idx = index(g, k);
    if kind.admits(&idx, p) {
        return Ok(g.clone());
    }
    if kind.opposite().admits(&idx, p) {
        return Ok(k.clone());
    }
    match tier {
        Tier::BruteForce => brute_force(g, k, p, kind),
        Tier::Hints => via_hints(g, k, p, kind),
        Tier::Auto if g.is_enumerable() => brute_force(g, k, p, kind),
        Tier::Auto => via_hints(g, k, p, kind),
    }
}

fn brute_force(g: &GroupHandle, k: &GroupHandle, p: u64, kind: CoreKind) -> Result<GroupHandle> {
    let table = conjugacy_classes(g)?;
    let k_order = k.order();
    let mut core = k.clone();
    for entry in &table.entries {
        let x = &entry.representative;
        if core.contains(x)? {
            continue;
        }
        let closure = normal_closure_over(g, Some(k), std::slice::from_ref(x))?;
        if kind.admits(&(closure.order() / &k_order), p) {
            core = normal_closure_over(g, Some(&core), std::slice::from_ref(x))?;
        }
    }
    Ok(core)
}

fn via_hints(g: &GroupHandle, k: &GroupHandle, p: u64, kind: CoreKind) -> Result<GroupHandle> {
    let hints = g.verified_hints()?;
    let limits = g.limits();
    let k_order = k.order();
    let mut candidates: Vec<&GroupHandle> = std::iter::once(k)
        .chain(hints.iter().filter(|h| k.is_subgroup_of(h)))
        .collect();
    candidates.sort_by_key(|h| std::cmp::Reverse(h.order()));
    let chosen = candidates.into_iter().find_map(|l| {
        let over = l.order() / &k_order;
        let same = kind.admits(&over, p);
        let opposite = kind.opposite().admits(&over, p);
        let small = u64::try_from(index(g, l))
            .is_ok_and(|i| i <= limits.quotient_index && i <= limits.enumeration);
        ((same || opposite) && small).then_some((l, same))
    });
    let Some((l, same)) = chosen else {
        return Err(Error::Undecidable(format!(
            "no hint of {} over a subgroup of order {} gives a small p- or p'-section (p = {p})",
            g.label(),
            k_order
        )));
    };
    let q = quotient_map(g, l)?;
    let top = brute_force(&q.group, &GroupHandle::trivial(q.group.degree()), p, kind)?;
    let lifted = q.preimage(g, &top)?;
    if same {
        return Ok(lifted);
    }
    // L/K has the other type: it must be abelian for the centraliser argument
    for a in l.generators() {
        for b in l.generators() {
            if !k.contains(&a.commutator(b))? {
                return Err(Error::Undecidable(format!(
                    "nonabelian section of order {} in {}",
                    l.order() / &k_order,
                    g.label()
                )));
            }
        }
    }
    let m =
        u64::try_from(l.order() / &k_order).map_err(|_| Error::limit("section order", u64::MAX))?;
    let mut gens: Vec<Permutation> = Vec::new();
    for qx in top.elements()? {
        let r = q.lift(&qx);
        let centralises = l
            .generators()
            .iter()
            .map(|y| k.contains(&r.commutator(y)))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if centralises {
            let power = r.pow(m as i64);
            if !power.is_identity() {
                gens.push(power);
            }
        }
    }
    normal_closure_over(g, Some(k), &gens)
}

pub fn p_core_with(g: &GroupHandle, p: u64, tier: Tier) -> Result<GroupHandle> {
    let one = GroupHandle::trivial(g.degree());
    Ok(relative_core(g, &one, p, CoreKind::P, tier)?.with_label(format!("O_{p}({})", g.label())))
}

pub fn p_prime_core_with(g: &GroupHandle, p: u64, tier: Tier) -> Result<GroupHandle> {
    let one = GroupHandle::trivial(g.degree());
    Ok(relative_core(g, &one, p, CoreKind::PPrime, tier)?
        .with_label(format!("O_{p}'({})", g.label())))
}

/// `O_p(G)`, the largest normal `p`-subgroup.
pub fn p_core(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    p_core_with(g, p, Tier::Auto)
}

/// `O_p'(G)`, the largest normal `p'`-subgroup.
pub fn p_prime_core(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    p_prime_core_with(g, p, Tier::Auto)
}
