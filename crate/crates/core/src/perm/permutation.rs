use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{1..degree}`, stored 0-indexed as an image table.
///
/// Products are read left to right: `a.compose(&b)` applies `a` first and then
/// `b`, so `x^(ab) = (x^a)^b`. Every module in the crate uses this convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-indexed images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image table {:?} is not a bijection",
                    &images[..images.len().min(16)]
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of the given degree from 1-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if touched[pt - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears in more than one cycle"
                    )));
                }
                touched[pt - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-indexed point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked [`compose`](Self::compose) for internal callers that already
    /// guarantee equal degrees.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length > 1, 0-indexed, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Element order, or `None` if it overflows `u64`.
    pub fn order(&self) -> Option<u64> {
        let mut lengths = self.cycle_lengths();
        lengths.sort_unstable();
        lengths.dedup();
        lengths.into_iter().try_fold(1u64, |acc, l| {
            let l = l as u64;
            (acc / acc.gcd(&l)).checked_mul(l)
        })
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// Points moved by the permutation, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(move |&i| self.image(i) != i)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u32..degree as u32);
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Shifts the action to points `offset..offset+degree` inside a larger domain.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset as u32) + x;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

/// Free-function form of [`Permutation::compose`]: applies `a` first.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cs).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let c = cyc(3, &[&[1, 2, 3]]);
        assert_eq!(compose(&c, &Permutation::identity(3)).unwrap(), c);
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = cyc(3, &[&[1, 2]]);
        assert!(compose(&t, &t).unwrap().is_identity());
    }

    #[test]
    fn left_factor_applies_first() {
        // 1 -(12)-> 2 -(23)-> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        let p = compose(&cyc(3, &[&[1, 2]]), &cyc(3, &[&[2, 3]])).unwrap();
        assert_eq!(p, cyc(3, &[&[1, 3, 2]]));
        // the other convention would give (1,2,3)
        assert_ne!(p, cyc(3, &[&[1, 2, 3]]));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
    }

    #[test]
    fn orders_and_display() {
        let p = cyc(7, &[&[1, 2, 3], &[4, 5]]);
        assert_eq!(p.order(), Some(6));
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!(!p.is_even());
        assert_eq!(p.pow(6), Permutation::identity(7));
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = cyc(4, &[&[1, 2]]);
        let g = cyc(4, &[&[2, 3, 4]]);
        // g^-1 x g = (1^g, 2^g)
        assert_eq!(x.conjugate_by(&g), cyc(4, &[&[1, 3]]));
        let direct = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #[test]
            fn inverse_cancels(p in perm(9)) {
                prop_assert!(p.then(&p.inverse()).is_identity());
                prop_assert!(p.inverse().then(&p).is_identity());
            }

            #[test]
            fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
                prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            }

            #[test]
            fn display_round_trips(p in perm(8)) {
                let text = p.to_string();
                let back = crate::perm::parse_cycles(&text, 8).unwrap();
                prop_assert_eq!(back, p);
            }
        }
    }
}
