use super::Verdict;
use crate::arith::{factor, prime_divisors_big};
use crate::error::{Error, Result};
use crate::invariants::{
    commuting_degree, conjugacy_classes, d_pi, k_pi, ratio, to_fraction_string, PiSet, Rational,
};
use crate::perm::{quotient, GroupHandle};
use crate::structure::{is_simple, normal_subgroups};

fn subsets(primes: &[u64]) -> Vec<Vec<u64>> {
    (0..1u32 << primes.len())
        .map(|mask| {
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

fn lemma21(g: &GroupHandle, pis: &[PiSet], label: Option<String>) -> Result<Verdict> {
    let mut v = Verdict::new("L21", g.label());
    v.pi = label;
    let primes = prime_divisors_big(&g.order());
    let normals = normal_subgroups(g)?;
    let sections = normals
        .iter()
        .map(|n| Ok((n.clone(), quotient(g, n)?)))
        .collect::<Result<Vec<_>>>()?;
    v.hypothesis = Some(true);
    for pi in pis {
        let d = d_pi(g, pi)?;
        if pis.len() == 1 {
            v.d_value = Some(d.clone());
        }
        v.decide(
            format!("d_{pi}(G) <= 1"),
            Ok((d <= ratio(1, 1), to_fraction_string(&d))),
        )?;
        for (n, q) in &sections {
            let dn = d_pi(n, pi)?;
            let dq = d_pi(q, pi)?;
            let ok = d <= &dq * &dn && d <= dq && d <= dn;
            let w = format!(
                "|N| = {}: {} <= {} * {}",
                n.order(),
                to_fraction_string(&d),
                to_fraction_string(&dq),
                to_fraction_string(&dn)
            );
            v.decide(format!("d_{pi}(G) <= d_{pi}(G/N) d_{pi}(N)"), Ok((ok, w)))?;
        }
        // monotone in pi, over subsets of pi restricted to pi(G)
        let inside = pi.restrict(&primes);
        for mu in subsets(&inside) {
            let mu = PiSet::explicit(mu);
            let dm = d_pi(g, &mu)?;
            let w = format!("{} <= {}", to_fraction_string(&d), to_fraction_string(&dm));
            v.decide(format!("d_{pi}(G) <= d_{mu}(G)"), Ok((d <= dm, w)))?;
        }
    }
    Ok(v)
}

/// Submultiplicativity over every normal subgroup and monotonicity in `pi`.
pub fn check_lemma21(g: &GroupHandle, pi: &PiSet) -> Result<Verdict> {
    lemma21(g, std::slice::from_ref(pi), Some(pi.to_string()))
}

/// [`check_lemma21`] for every subset of `pi(G)`.
pub fn check_lemma21_all(g: &GroupHandle) -> Result<Verdict> {
    let primes = prime_divisors_big(&g.order());
    let pis: Vec<PiSet> = subsets(&primes).into_iter().map(PiSet::explicit).collect();
    lemma21(g, &pis, Some("all subsets of pi(G)".into()))
}

fn prime_of_p_group(order: u64) -> Option<u64> {
    match factor(order).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// For `G = NP` with `N` a `p'`-group normalised by the `p`-group `P`:
/// `k_{p'}(G) <= |N|/p + ((p-1)/p)|C_N(P)|`, counting `P`-orbits on `N`.
///
/// The verdict stores `d_{p'}(G)` against the bound divided by `|N| = |G|_{p'}`.
pub fn orbit_counting_bound(n: &GroupHandle, pgen: &GroupHandle) -> Result<Verdict> {
    if n.degree() != pgen.degree() {
        return Err(Error::DegreeMismatch {
            left: n.degree(),
            right: pgen.degree(),
        });
    }
    let n_order = n
        .order_u64()
        .ok_or_else(|| Error::limit("order of N", u64::MAX))?;
    let p_order = pgen
        .order_u64()
        .ok_or_else(|| Error::limit("order of P", u64::MAX))?;
    for x in pgen.generators() {
        for y in n.generators() {
            if !n.contains(&y.conjugate_by(x))? {
                return Err(Error::param("P does not normalise N"));
            }
        }
    }
    let label = format!("{}:{}", n.label(), pgen.label());
    let mut gens = n.generators().to_vec();
    gens.extend(pgen.generators().iter().cloned());
    let g = GroupHandle::new(gens, label.clone())?;

    let mut v = Verdict::new("orbit", &label);
    if p_order == 1 {
        let k = conjugacy_classes(&g)?.len() as u64;
        v.hypothesis = Some(true);
        v.threshold = Some(ratio(1, 1));
        v.d_value = Some(ratio(k, n_order));
        v.sharp = k == n_order;
        v.decide(
            "k(G) <= |N|",
            Ok((k <= n_order, format!("k = {k}, |N| = {n_order}"))),
        )?;
        return Ok(v);
    }
    let p = prime_of_p_group(p_order).ok_or_else(|| Error::param("P is not a p-group"))?;
    if n_order % p == 0 {
        return Err(Error::param(format!("N is not a {p}'-group")));
    }
    v.p = Some(p);
    let fixed = n
        .elements()?
        .filter(|y| pgen.generators().iter().all(|x| y.conjugate_by(x) == *y))
        .count() as u64;
    let k = k_pi(&g, &PiSet::p_prime(p))?;
    let bound = ratio(n_order, p) + ratio((p - 1) * fixed, p);
    let k_rat = Rational::from_integer(k.into());
    v.hypothesis = Some(true);
    v.d_value = Some(ratio(k, n_order));
    v.threshold = Some(&bound / Rational::from_integer(n_order.into()));
    v.sharp = k_rat == bound;
    let w = format!(
        "k_{p}'(G) = {k}, |N| = {n_order}, |C_N(P)| = {fixed}, bound {}",
        to_fraction_string(&bound)
    );
    v.decide(
        "k_{p'}(G) <= |N|/p + ((p-1)/p)|C_N(P)|",
        Ok((k_rat <= bound, w)),
    )?;
    Ok(v)
}

/// The sufficient test `d_2(G) < 1/(p~ - 1)`, `p~` the largest prime divisor,
/// followed by `d_{p'}(G) < 1/(p-1)` for each odd prime divisor computed directly.
pub fn remark32_check(g: &GroupHandle) -> Result<Verdict> {
    let order = g.order();
    let primes = prime_divisors_big(&order);
    let top = *primes
        .last()
        .ok_or_else(|| Error::param("the trivial group has no prime divisors"))?;
    let mut v = Verdict::new("R32", g.label());
    v.p = Some(top);
    v.pi = Some("{2}".into());
    let d2 = d_pi(g, &PiSet::only(2))?;
    let t = ratio(1, top - 1);
    v.hypothesis = Some(d2 < t);
    v.sharp = d2 == t;
    v.d_value = Some(d2);
    v.threshold = Some(t);
    for &p in primes.iter().filter(|&&p| p != 2) {
        let d = d_pi(g, &PiSet::p_prime(p))?;
        let w = format!("d_{p}'(G) = {}", to_fraction_string(&d));
        v.decide(
            format!("d_{{{p}'}}(G) < 1/{}", p - 1),
            Ok((d < ratio(1, p - 1), w)),
        )?;
    }
    Ok(v)
}

/// `d(S) <= 1/12` for nonabelian simple `S`.
pub fn dixon_check(g: &GroupHandle) -> Result<Verdict> {
    let mut v = Verdict::new("dixon", g.label());
    let nonabelian = g.generators().iter().any(|a| {
        g.generators()
            .iter()
            .any(|b| !a.commutator(b).is_identity())
    });
    v.hypothesis = Some(nonabelian && is_simple(g)?);
    let d = commuting_degree(g)?;
    let t = ratio(1, 12);
    v.sharp = d == t;
    v.decide("d(G) <= 1/12", Ok((d <= t, to_fraction_string(&d))))?;
    v.d_value = Some(d);
    v.threshold = Some(t);
    Ok(v)
}
