//! Deterministic Schreier–Sims.
//!
//! The stabilizer chain is `G = G^(0) >= G^(1) >= ... >= G^(k) = 1` where
//! `G^(i)` fixes `base[0..i]`. Level `i` keeps the strong generators lying in
//! `G^(i)` and the basic orbit of `base[i]` under them, with a Schreier tree
//! (back-pointers to the generator that first reached each point). For small
//! degrees the coset representatives are also stored explicitly.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;

const NONE: u32 = u32::MAX;
/// Above this degree transversals are recovered from the Schreier tree on demand.
const EXPLICIT_TRANSVERSAL_MAX_DEGREE: usize = 2048;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) gens: Vec<usize>,
    pub(crate) orbit: Vec<u32>,
    /// `pos[point]` is the orbit index of `point`, or `NONE`.
    pos: Vec<u32>,
    /// Strong generator index that first reached `orbit[j]`; `NONE` for the base point.
    edge: Vec<u32>,
    reps: Option<Vec<Permutation>>,
    reps_inv: Option<Vec<Permutation>>,
    checked: HashSet<(u32, u32)>,
}

/// A base and strong generating set with its basic orbits.
#[derive(Clone, Debug)]
pub struct StrongGenSet {
    degree: usize,
    base: Vec<u32>,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StrongGenSet {
    /// Runs Schreier–Sims on the given generators. Identity generators are dropped.
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// As [`new`](Self::new) but starting the base with `prefix` (0-indexed points).
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut sgs = StrongGenSet {
            degree,
            base: Vec::new(),
            gens: Vec::new(),
            gens_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in prefix {
            sgs.push_level(b as u32);
        }
        for g in generators {
            if g.is_identity() {
                continue;
            }
            sgs.install(g.clone(), None);
        }
        sgs.complete(sgs.levels.len());
        sgs
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 0-indexed.
    pub fn base(&self) -> Vec<usize> {
        self.base.iter().map(|&b| b as usize).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Basic orbits, 0-indexed, in discovery order.
    pub fn basic_orbits(&self) -> Vec<Vec<usize>> {
        self.levels
            .iter()
            .map(|l| l.orbit.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    #[cfg(test)]
    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Sifts `g` through the chain. Returns the residue and the number of
    /// levels passed; `g` is a member iff the residue is the identity and all
    /// levels were passed.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g.clone(), 0)
    }

    fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for i in start..self.levels.len() {
            let beta = self.base[i] as usize;
            let delta = h.image(beta);
            let j = self.levels[i].pos[delta];
            if j == NONE {
                return (h, i);
            }
            h = self.strip_rep(h, i, j as usize);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, lvl) = self.sift(g);
        lvl == self.levels.len() && res.is_identity()
    }

    /// Adds a generator and restores completeness. Returns false if `g` was
    /// already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        if self.contains(g) {
            return false;
        }
        self.install(g.clone(), None);
        self.complete(self.levels.len());
        true
    }

    /// Coset representative `u` at `level` with `base[level]^u = orbit[j]`.
    pub(crate) fn rep(&self, level: usize, j: usize) -> Permutation {
        let l = &self.levels[level];
        if let Some(reps) = &l.reps {
            return reps[j].clone();
        }
        let mut path = Vec::new();
        let mut idx = j;
        while l.edge[idx] != NONE {
            let s = l.edge[idx] as usize;
            path.push(s);
            let parent = self.gens_inv[s].image(l.orbit[idx] as usize);
            idx = l.pos[parent] as usize;
        }
        let mut u = Permutation::identity(self.degree);
        for &s in path.iter().rev() {
            u = u.then(&self.gens[s]);
        }
        u
    }

    /// `h * rep(level, j)^-1`.
    fn strip_rep(&self, h: Permutation, level: usize, j: usize) -> Permutation {
        let l = &self.levels[level];
        if let Some(inv) = &l.reps_inv {
            return h.then(&inv[j]);
        }
        // walk the Schreier tree back to the base point
        let mut h = h;
        let mut idx = j;
        while l.edge[idx] != NONE {
            let s = l.edge[idx] as usize;
            h = h.then(&self.gens_inv[s]);
            let parent = self.gens_inv[s].image(l.orbit[idx] as usize);
            idx = l.pos[parent] as usize;
        }
        h
    }

    fn push_level(&mut self, point: u32) {
        let mut pos = vec![NONE; self.degree];
        pos[point as usize] = 0;
        let explicit = self.degree <= EXPLICIT_TRANSVERSAL_MAX_DEGREE;
        self.base.push(point);
        self.levels.push(Level {
            gens: Vec::new(),
            orbit: vec![point],
            pos,
            edge: vec![NONE],
            reps: explicit.then(|| vec![Permutation::identity(self.degree)]),
            reps_inv: explicit.then(|| vec![Permutation::identity(self.degree)]),
            checked: HashSet::new(),
        });
    }

    /// Registers `g` as a strong generator on every level up to `max_level`
    /// (inclusive) whose base prefix it fixes, extending the base when `g`
    /// fixes all base points.
    fn install(&mut self, g: Permutation, max_level: Option<usize>) {
        let fixes = self
            .base
            .iter()
            .take_while(|&&b| g.image(b as usize) == b as usize)
            .count();
        if fixes == self.base.len() {
            let moved = g.support().next().expect("identity is never installed") as u32;
            self.push_level(moved);
        }
        let idx = self.gens.len();
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let top = max_level.unwrap_or(usize::MAX).min(fixes);
        for lvl in 0..=top.min(self.levels.len() - 1) {
            self.levels[lvl].gens.push(idx);
            self.grow_orbit(lvl);
        }
    }

    /// Extends the basic orbit at `lvl` by breadth-first search over its generators.
    ///
    /// Without explicit transversals the tree is rebuilt from the base point,
    /// since extending it in place can leave long paths (think of a cycle
    /// added before the generator that shortcuts it). The transversal changes,
    /// so the level's checked Schreier generators are forgotten.
    fn grow_orbit(&mut self, lvl: usize) {
        if self.levels[lvl].reps.is_none() && self.levels[lvl].orbit.len() > 1 {
            let level = &mut self.levels[lvl];
            for &x in &level.orbit[1..] {
                level.pos[x as usize] = NONE;
            }
            level.orbit.truncate(1);
            level.edge.truncate(1);
            level.checked.clear();
        }
        let mut head = 0;
        while head < self.levels[lvl].orbit.len() {
            let delta = self.levels[lvl].orbit[head] as usize;
            let ngens = self.levels[lvl].gens.len();
            for k in 0..ngens {
                let s = self.levels[lvl].gens[k];
                let gamma = self.gens[s].image(delta);
                if self.levels[lvl].pos[gamma] != NONE {
                    continue;
                }
                let new_rep = self.levels[lvl]
                    .reps
                    .as_ref()
                    .map(|r| r[head].then(&self.gens[s]));
                let level = &mut self.levels[lvl];
                level.pos[gamma] = level.orbit.len() as u32;
                level.orbit.push(gamma as u32);
                level.edge.push(s as u32);
                if let Some(u) = new_rep {
                    level.reps_inv.as_mut().unwrap().push(u.inverse());
                    level.reps.as_mut().unwrap().push(u);
                }
            }
            head += 1;
        }
    }

    /// Schreier–Sims main loop, starting from level `start - 1` downwards.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let mut j = 0;
            while j < self.levels[lvl].orbit.len() {
                let ngens = self.levels[lvl].gens.len();
                for k in 0..ngens {
                    let s = self.levels[lvl].gens[k];
                    if !self.levels[lvl].checked.insert((j as u32, s as u32)) {
                        continue;
                    }
                    let delta = self.levels[lvl].orbit[j] as usize;
                    let gamma = self.gens[s].image(delta);
                    let jg = self.levels[lvl].pos[gamma] as usize;
                    // Schreier generator u_delta * s * u_gamma^-1
                    let h = self.rep(lvl, j).then(&self.gens[s]);
                    let h = self.strip_rep(h, lvl, jg);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, drop) = self.sift_from(h, lvl + 1);
                    if drop < self.levels.len() || !res.is_identity() {
                        let n_before = self.levels.len();
                        self.install_from(res, lvl + 1, drop);
                        let target = if drop == n_before {
                            self.levels.len() - 1
                        } else {
                            drop
                        };
                        i = target as isize;
                        continue 'outer;
                    }
                }
                j += 1;
            }
            i -= 1;
        }
    }

    /// Installs a sifted residue on levels `from..=to`, adding a base point if
    /// it survived every level.
    fn install_from(&mut self, g: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let moved = g.support().next().expect("nontrivial residue") as u32;
            self.push_level(moved);
        }
        let idx = self.gens.len();
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        for lvl in from..=to {
            self.levels[lvl].gens.push(idx);
            self.grow_orbit(lvl);
        }
    }

    /// Explicit transversals for every level, as `(reps, reps_inv)`.
    pub(crate) fn transversals(&self) -> Vec<(Vec<Permutation>, Vec<Permutation>)> {
        (0..self.levels.len())
            .map(|lvl| {
                let n = self.levels[lvl].orbit.len();
                let reps: Vec<Permutation> = (0..n).map(|j| self.rep(lvl, j)).collect();
                let inv = match &self.levels[lvl].reps_inv {
                    Some(inv) => inv.clone(),
                    None => reps.iter().map(Permutation::inverse).collect(),
                };
                (reps, inv)
            })
            .collect()
    }

    pub(crate) fn orbit_position(&self, level: usize, point: usize) -> Option<usize> {
        let p = self.levels[level].pos[point];
        (p != NONE).then_some(p as usize)
    }
}
