use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use super::{Permutation, StrongGenSet};
use crate::error::{Error, Result};
use crate::invariants::ClassTable;

/// Resource limits carried by every handle and inherited by derived groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest permitted degree.
    pub max_degree: usize,
    /// Largest group order that may be enumerated element by element.
    pub enumeration: u64,
    /// Largest group order for the full normal-subgroup lattice.
    pub normal_subgroups: u64,
    /// Largest index for a coset-action quotient.
    pub quotient_index: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 1_000_000,
            enumeration: 1 << 20,
            normal_subgroups: 5000,
            quotient_index: 1 << 16,
        }
    }
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain and optional construction hints.
///
/// `hints` is an ordered chain of generator sets of subgroups the constructor
/// knows to be normal (smallest first). They are checked for normality the
/// first time they are used.
#[derive(Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    hints: Vec<Vec<Permutation>>,
    label: String,
    limits: Limits,
    sgs: OnceLock<Arc<StrongGenSet>>,
    checked_hints: OnceLock<std::result::Result<Arc<Vec<GroupHandle>>, String>>,
    pub(crate) classes: OnceLock<Arc<ClassTable>>,
    pub(crate) class_closures: OnceLock<Arc<Vec<GroupHandle>>>,
}

impl GroupHandle {
    pub fn new(generators: Vec<Permutation>, label: impl Into<String>) -> Result<Self> {
        Self::with_limits(generators, label, Limits::default())
    }

    pub fn with_limits(
        generators: Vec<Permutation>,
        label: impl Into<String>,
        limits: Limits,
    ) -> Result<Self> {
        let degree = generators
            .first()
            .ok_or_else(|| Error::param("a group needs at least one generator"))?
            .degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        if degree > limits.max_degree {
            return Err(Error::limit(
                format!("degree {degree}"),
                limits.max_degree as u64,
            ));
        }
        Ok(GroupHandle {
            degree,
            generators,
            hints: Vec::new(),
            label: label.into(),
            limits,
            sgs: OnceLock::new(),
            checked_hints: OnceLock::new(),
            classes: OnceLock::new(),
            class_closures: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)], "1").expect("identity generator")
    }

    /// A subgroup of this group's domain, inheriting the limits.
    pub fn subgroup(&self, generators: Vec<Permutation>, label: impl Into<String>) -> Result<Self> {
        let generators = if generators.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            generators
        };
        Self::with_limits(generators, label, self.limits)
    }

    pub fn with_hints(mut self, hints: Vec<Vec<Permutation>>) -> Self {
        self.hints = hints;
        self.checked_hints = OnceLock::new();
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Replaces the limits. Cached results are kept.
    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
        if let Some(h) = self.checked_hints.get_mut() {
            if let Ok(list) = h {
                let updated: Vec<GroupHandle> = list
                    .iter()
                    .map(|g| {
                        let mut g = g.clone();
                        g.limits = limits;
                        g
                    })
                    .collect();
                *list = Arc::new(updated);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn hints(&self) -> &[Vec<Permutation>] {
        &self.hints
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn sgs(&self) -> &StrongGenSet {
        self.sgs
            .get_or_init(|| Arc::new(StrongGenSet::new(self.degree, &self.generators)))
    }

    /// Seeds the stabilizer chain, e.g. when it is a by-product of a closure.
    pub(crate) fn set_sgs(&self, sgs: StrongGenSet) {
        let _ = self.sgs.set(Arc::new(sgs));
    }

    pub fn order(&self) -> BigUint {
        self.sgs().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.sgs().order_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: x.degree(),
            });
        }
        Ok(self.sgs().contains(x))
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &GroupHandle) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.sgs().contains(g))
    }

    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Conjugates of the generators of `self` by generators of `g` stay in `self`.
    pub fn is_normal_in(&self, g: &GroupHandle) -> bool {
        self.is_subgroup_of(g)
            && self.generators.iter().all(|x| {
                g.generators
                    .iter()
                    .all(|s| self.sgs().contains(&x.conjugate_by(s)))
            })
    }

    /// Hint subgroups, each verified normal. Fails if any is not.
    pub fn verified_hints(&self) -> Result<Arc<Vec<GroupHandle>>> {
        let res = self.checked_hints.get_or_init(|| {
            let mut out = Vec::new();
            for (i, gens) in self.hints.iter().enumerate() {
                let h = self
                    .subgroup(gens.clone(), format!("{}:hint{}", self.label, i))
                    .map_err(|e| e.to_string())?;
                if !h.is_normal_in(self) {
                    return Err(format!(
                        "hint {i} of {} is not a normal subgroup",
                        self.label
                    ));
                }
                out.push(h);
            }
            Ok(Arc::new(out))
        });
        res.clone().map_err(Error::NotNormal)
    }

    pub fn is_enumerable(&self) -> bool {
        self.order_u64()
            .is_some_and(|n| n <= self.limits.enumeration)
    }

    pub fn enumerator(&self) -> Result<Enumerator> {
        let n = self.order_u64().unwrap_or(u64::MAX);
        if n > self.limits.enumeration {
            return Err(Error::limit(
                format!("enumerating {} (order {})", self.label, self.order()),
                self.limits.enumeration,
            ));
        }
        Ok(Enumerator::new(self))
    }

    /// Every element exactly once, in a fixed order.
    pub fn elements(&self) -> Result<Elements> {
        let en = self.enumerator()?;
        Ok(Elements { en, next: 0 })
    }
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .field("hints", &self.hints.len())
            .finish()
    }
}

impl fmt::Display for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Bijection between `0..|G|` and the elements of `G`, via the stabilizer chain.
///
/// Rank digits are the transversal indices, level 0 least significant;
/// the element is `u_{k-1} ... u_1 u_0`.
pub struct Enumerator {
    sgs: Arc<StrongGenSet>,
    degree: usize,
    base: Vec<usize>,
    reps: Vec<Vec<Permutation>>,
    reps_inv: Vec<Vec<Permutation>>,
    len: u64,
}

impl Enumerator {
    fn new(g: &GroupHandle) -> Self {
        g.sgs();
        let sgs = g.sgs.get().expect("initialised above").clone();
        let (reps, reps_inv): (Vec<_>, Vec<_>) = sgs.transversals().into_iter().unzip();
        let len = sgs.order_u64().expect("checked by caller");
        Enumerator {
            degree: g.degree,
            base: sgs.base(),
            sgs,
            reps,
            reps_inv,
            len,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, mut rank: u64) -> Permutation {
        let mut digits = Vec::with_capacity(self.reps.len());
        for level in &self.reps {
            let r = level.len() as u64;
            digits.push((rank % r) as usize);
            rank /= r;
        }
        let mut g = Permutation::identity(self.degree);
        for (lvl, &d) in digits.iter().enumerate().rev() {
            if d != 0 {
                g = g.then(&self.reps[lvl][d]);
            }
        }
        g
    }

    /// Rank of a group element, `None` if it is not in the group.
    pub fn rank(&self, x: &Permutation) -> Option<u64> {
        if x.degree() != self.degree {
            return None;
        }
        let k = self.base.len();
        let mut images: Vec<usize> = self.base.iter().map(|&b| x.image(b)).collect();
        let mut rank = 0u64;
        let mut radix = 1u64;
        for lvl in 0..k {
            let j = self.sgs.orbit_position(lvl, images[lvl])?;
            rank += j as u64 * radix;
            radix *= self.reps[lvl].len() as u64;
            if j != 0 {
                let inv = &self.reps_inv[lvl][j];
                for img in images.iter_mut().skip(lvl + 1) {
                    *img = inv.image(*img);
                }
            }
        }
        // base images pin down at most one group element; check it is `x`
        Some(rank).filter(|&r| self.element(r) == *x)
    }

    /// Rank of an element known to lie in the group (no membership check).
    pub fn rank_of_member(&self, x: &Permutation) -> u64 {
        let mut images: Vec<usize> = self.base.iter().map(|&b| x.image(b)).collect();
        let mut rank = 0u64;
        let mut radix = 1u64;
        for lvl in 0..self.base.len() {
            let j = self
                .sgs
                .orbit_position(lvl, images[lvl])
                .expect("element of the group");
            rank += j as u64 * radix;
            radix *= self.reps[lvl].len() as u64;
            if j != 0 {
                let inv = &self.reps_inv[lvl][j];
                for img in images.iter_mut().skip(lvl + 1) {
                    *img = inv.image(*img);
                }
            }
        }
        rank
    }
}

pub struct Elements {
    en: Enumerator,
    next: u64,
}

impl Iterator for Elements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.en.len {
            return None;
        }
        let x = self.en.element(self.next);
        self.next += 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.en.len - self.next) as usize;
        (left, Some(left))
    }
}

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &GroupHandle, seeds: &[Permutation]) -> Result<GroupHandle> {
    normal_closure_over(g, None, seeds)
}

/// Normal closure of `base ∪ seeds` in `g`, where `base` is already normal in
/// `g`. Reuses the stabilizer chain of `base`.
pub fn normal_closure_over(
    g: &GroupHandle,
    base: Option<&GroupHandle>,
    seeds: &[Permutation],
) -> Result<GroupHandle> {
    for s in seeds {
        if s.degree() != g.degree {
            return Err(Error::DegreeMismatch {
                left: g.degree,
                right: s.degree(),
            });
        }
    }
    let (mut sgs, mut gens) = match base {
        Some(b) => (b.sgs().clone(), b.generators().to_vec()),
        None => (StrongGenSet::new(g.degree, &[]), Vec::new()),
    };
    gens.retain(|x| !x.is_identity());
    let mut queue: Vec<Permutation> = Vec::new();
    for s in seeds {
        if sgs.extend(s) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for s in &g.generators {
            let c = x.conjugate_by(s);
            if sgs.extend(&c) {
                gens.push(c.clone());
                queue.push(c);
            }
        }
    }
    let label = format!("ncl_{}", g.label);
    let h = g.subgroup(gens, label)?;
    h.set_sgs(sgs);
    Ok(h)
}

/// Subgroup generated by the union of generator sets.
pub fn join(g: &GroupHandle, parts: &[&GroupHandle]) -> Result<GroupHandle> {
    let mut sgs = StrongGenSet::new(g.degree, &[]);
    let mut gens = Vec::new();
    for part in parts {
        for x in part.generators() {
            if sgs.extend(x) {
                gens.push(x.clone());
            }
        }
    }
    let h = g.subgroup(gens, format!("join_{}", g.label))?;
    h.set_sgs(sgs);
    Ok(h)
}

/// The right-coset action of `g` on a normal subgroup, with the data needed
/// to lift quotient elements back to `g`.
pub struct Quotient {
    pub group: GroupHandle,
    pub kernel: GroupHandle,
    /// `coset_reps[i]` lies in coset `i`; coset 0 is the kernel itself.
    pub coset_reps: Vec<Permutation>,
    keys: HashMap<Vec<u32>, usize>,
    kernel_chain: Arc<StrongGenSet>,
    parent_base: Vec<usize>,
}

impl Quotient {
    /// An element of the parent group mapping to `q`.
    pub fn lift(&self, q: &Permutation) -> Permutation {
        self.coset_reps[q.image(0)].clone()
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        let key = coset_key(&self.kernel_chain, &self.parent_base, x);
        self.keys.get(&key).copied()
    }

    /// Image of a parent element in the quotient.
    pub fn image(&self, x: &Permutation) -> Option<Permutation> {
        let n = self.coset_reps.len();
        let mut images = Vec::with_capacity(n);
        for r in &self.coset_reps {
            images.push(self.coset_of(&r.then(x))? as u32);
        }
        Some(Permutation::from_images_unchecked(images))
    }

    /// Preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent: &GroupHandle, sub: &GroupHandle) -> Result<GroupHandle> {
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        gens.extend(sub.generators().iter().map(|q| self.lift(q)));
        let gens: Vec<Permutation> = gens.into_iter().filter(|x| !x.is_identity()).collect();
        let h = parent.subgroup(gens, format!("pre_{}", sub.label()))?;
        Ok(h)
    }
}

/// Canonical key of the coset `N x`: the base images (of the parent base) of
/// the element of `N x` whose images of the base of `N` are lexicographically least.
fn coset_key(kernel: &StrongGenSet, parent_base: &[usize], x: &Permutation) -> Vec<u32> {
    let mut y = x.clone();
    let orbits = kernel.basic_orbits();
    for (lvl, orbit) in orbits.iter().enumerate() {
        let (j, _) = orbit
            .iter()
            .enumerate()
            .min_by_key(|(_, &d)| y.image(d))
            .expect("nonempty orbit");
        if j != 0 {
            y = kernel.rep(lvl, j).then(&y);
        }
    }
    parent_base.iter().map(|&b| y.image(b) as u32).collect()
}

/// The faithful action of `g` on the right cosets of the normal subgroup `n`.
pub fn quotient(g: &GroupHandle, n: &GroupHandle) -> Result<GroupHandle> {
    Ok(quotient_map(g, n)?.group)
}

pub fn quotient_map(g: &GroupHandle, n: &GroupHandle) -> Result<Quotient> {
    if n.degree != g.degree {
        return Err(Error::DegreeMismatch {
            left: g.degree,
            right: n.degree,
        });
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal(format!("{} in {}", n.label, g.label)));
    }
    let index = g.order() / n.order();
    let limit = g.limits.quotient_index;
    let index: u64 = u64::try_from(&index)
        .ok()
        .filter(|&i| i <= limit)
        .ok_or_else(|| Error::limit(format!("quotient index {index}"), limit))?;

    let kernel_chain = Arc::new(n.sgs().clone());
    let parent_base = {
        let mut b = g.sgs().base();
        if b.is_empty() {
            b.push(0);
        }
        b
    };
    let mut keys = HashMap::new();
    let mut reps = vec![Permutation::identity(g.degree)];
    keys.insert(coset_key(&kernel_chain, &parent_base, &reps[0]), 0usize);
    let mut actions: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); g.generators.len()];
    let mut head = 0;
    while head < reps.len() {
        for (k, s) in g.generators.iter().enumerate() {
            let y = reps[head].then(s);
            let key = coset_key(&kernel_chain, &parent_base, &y);
            let next = keys.len();
            let c = *keys.entry(key).or_insert(next);
            if c == next {
                reps.push(y);
            }
            actions[k].push(c as u32);
        }
        head += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let gens: Vec<Permutation> = actions
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    let group = GroupHandle::with_limits(gens, format!("{}/{}", g.label, n.label), g.limits)?;
    Ok(Quotient {
        group,
        kernel: n.clone(),
        coset_reps: reps,
        keys,
        kernel_chain,
        parent_base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cs).unwrap()
    }

    fn s4() -> GroupHandle {
        GroupHandle::new(vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])], "S4").unwrap()
    }

    /// Brute-force closure of a generating set under multiplication.
    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(gens[0].degree());
        let mut frontier = vec![id.clone()];
        set.insert(id);
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = x.then(s);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn enumeration_matches_order_and_is_unique() {
        let g = s4();
        let elems: Vec<Permutation> = g.elements().unwrap().collect();
        assert_eq!(elems.len(), 24);
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set, closure(g.generators()));
        let en = g.enumerator().unwrap();
        for (i, x) in elems.iter().enumerate() {
            assert_eq!(en.rank(x), Some(i as u64));
        }
        assert_eq!(en.rank(&cyc(5, &[&[1, 5]])), None);
    }

    #[test]
    fn normal_closure_of_double_transposition_is_klein_four() {
        let g = s4();
        let v = normal_closure(&g, &[cyc(4, &[&[1, 2], &[3, 4]])]).unwrap();
        assert_eq!(v.order_u64(), Some(4));
        // brute force: close the conjugacy class under products
        let class: HashSet<Permutation> = closure(g.generators())
            .iter()
            .map(|x| cyc(4, &[&[1, 2], &[3, 4]]).conjugate_by(x))
            .collect();
        let class: Vec<Permutation> = class.into_iter().collect();
        assert_eq!(closure(&class).len(), 4);
        assert!(v.is_normal_in(&g));
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let g = s4();
        let t = normal_closure(&g, &[Permutation::identity(4)]).unwrap();
        assert_eq!(t.order_u64(), Some(1));
    }

    #[test]
    fn quotient_by_klein_four_is_s3() {
        let g = s4();
        let v = normal_closure(&g, &[cyc(4, &[&[1, 2], &[3, 4]])]).unwrap();
        let q = quotient_map(&g, &v).unwrap();
        assert_eq!(q.group.degree(), 6);
        assert_eq!(q.group.order_u64(), Some(6));
        // brute-force coset action: cosets as sets of elements
        let all: Vec<Permutation> = g.elements().unwrap().collect();
        let vset: HashSet<Permutation> = v.elements().unwrap().collect();
        let mut cosets: Vec<HashSet<Permutation>> = Vec::new();
        for x in &all {
            if cosets.iter().any(|c| c.contains(x)) {
                continue;
            }
            cosets.push(vset.iter().map(|n| n.then(x)).collect());
        }
        assert_eq!(cosets.len(), 6);
        for x in &all {
            let img = q.image(x).unwrap();
            for (i, r) in q.coset_reps.iter().enumerate() {
                let target = r.then(x);
                let j = img.image(i);
                let rep_j = &q.coset_reps[j];
                // target and rep_j lie in the same coset
                assert!(vset.contains(&target.then(&rep_j.inverse())));
            }
        }
    }

    #[test]
    fn quotient_by_whole_group_is_trivial_of_degree_one() {
        let g = s4();
        let q = quotient(&g, &g).unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.order_u64(), Some(1));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = s4();
        let h = g.subgroup(vec![cyc(4, &[&[1, 2]])], "C2").unwrap();
        assert!(matches!(quotient(&g, &h), Err(Error::NotNormal(_))));
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let g = GroupHandle::new(vec![cyc(5, &[&[1, 2, 3]]), cyc(5, &[&[3, 4, 5]])], "A5").unwrap();
        let set: HashSet<Permutation> = g.elements().unwrap().collect();
        assert_eq!(set.len(), 60);
        let s5 =
            GroupHandle::new(vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])], "S5").unwrap();
        for x in s5.elements().unwrap() {
            assert_eq!(g.contains(&x).unwrap(), set.contains(&x));
        }
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn hints_are_checked_for_normality() {
        let good = s4().with_hints(vec![vec![
            cyc(4, &[&[1, 2], &[3, 4]]),
            cyc(4, &[&[1, 3], &[2, 4]]),
        ]]);
        assert_eq!(good.verified_hints().unwrap().len(), 1);
        let bad = s4().with_hints(vec![vec![cyc(4, &[&[1, 2]])]]);
        assert!(matches!(bad.verified_hints(), Err(Error::NotNormal(_))));
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let mut limits = Limits::default();
        limits.enumeration = 10;
        let g = GroupHandle::with_limits(s4().generators().to_vec(), "S4", limits).unwrap();
        assert!(matches!(g.elements(), Err(Error::LimitExceeded { .. })));
    }
}
