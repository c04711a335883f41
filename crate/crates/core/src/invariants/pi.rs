use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PiMode {
    Explicit,
    Complement,
}

/// A set of primes, listed explicitly or as the complement of a finite list.
///
/// `Explicit` with no primes is the empty set; `Complement` with no primes is
/// the set of all primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PiSet {
    pub mode: PiMode,
    pub primes: BTreeSet<u64>,
}

impl PiSet {
    pub fn explicit(primes: impl IntoIterator<Item = u64>) -> Self {
        PiSet {
            mode: PiMode::Explicit,
            primes: primes.into_iter().collect(),
        }
    }

    pub fn complement(primes: impl IntoIterator<Item = u64>) -> Self {
        PiSet {
            mode: PiMode::Complement,
            primes: primes.into_iter().collect(),
        }
    }

    /// `{p}`.
    pub fn only(p: u64) -> Self {
        Self::explicit([p])
    }

    /// `p'`, all primes except `p`.
    pub fn p_prime(p: u64) -> Self {
        Self::complement([p])
    }

    pub fn empty() -> Self {
        Self::explicit([])
    }

    pub fn all() -> Self {
        Self::complement([])
    }

    pub fn contains(&self, p: u64) -> bool {
        match self.mode {
            PiMode::Explicit => self.primes.contains(&p),
            PiMode::Complement => !self.primes.contains(&p),
        }
    }

    /// Whether every prime divisor of `n` lies in the set.
    pub fn is_pi_number(&self, mut n: u64) -> bool {
        match self.mode {
            PiMode::Complement => self.primes.iter().all(|&p| !n.is_multiple_of(p)),
            PiMode::Explicit => {
                for &p in &self.primes {
                    while n.is_multiple_of(p) {
                        n /= p;
                    }
                }
                n == 1
            }
        }
    }

    /// Largest divisor of `n` that is a π-number.
    pub fn part(&self, n: &BigUint) -> BigUint {
        let mut excluded_part = BigUint::one();
        let mut included_part = BigUint::one();
        for &p in &self.primes {
            let bp = BigUint::from(p);
            let mut m = n.clone();
            let mut pp = BigUint::one();
            while !m.is_zero() && m.is_multiple_of(&bp) {
                m /= &bp;
                pp *= &bp;
            }
            included_part *= &pp;
            excluded_part *= pp;
        }
        match self.mode {
            PiMode::Explicit => included_part,
            PiMode::Complement => n / excluded_part,
        }
    }

    pub fn part_u64(&self, n: u64) -> u64 {
        let big = self.part(&BigUint::from(n));
        u64::try_from(&big).expect("divides a u64")
    }

    /// Restriction to a given finite list of primes.
    pub fn restrict(&self, primes: &[u64]) -> Vec<u64> {
        primes
            .iter()
            .copied()
            .filter(|&p| self.contains(p))
            .collect()
    }
}

impl fmt::Display for PiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        match self.mode {
            PiMode::Explicit => write!(f, "{{{}}}", list.join(",")),
            PiMode::Complement if list.is_empty() => f.write_str("all"),
            PiMode::Complement if list.len() == 1 => write!(f, "{}'", list[0]),
            PiMode::Complement => write!(f, "{{{}}}'", list.join(",")),
        }
    }
}

/// Largest divisor of `n` whose prime factors all lie in `pi`.
pub fn pi_part(n: &BigUint, pi: &PiSet) -> BigUint {
    pi.part(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn parts() {
        assert_eq!(pi_part(&big(60), &PiSet::explicit([2, 3, 5])), big(60));
        assert_eq!(pi_part(&big(60), &PiSet::p_prime(2)), big(15));
        assert_eq!(pi_part(&big(7920), &PiSet::p_prime(3)), big(880));
        assert_eq!(pi_part(&big(7920), &PiSet::empty()), big(1));
        assert_eq!(pi_part(&big(7920), &PiSet::all()), big(7920));
    }

    #[test]
    fn pi_numbers() {
        let two_prime = PiSet::p_prime(2);
        assert!(two_prime.is_pi_number(15));
        assert!(!two_prime.is_pi_number(6));
        assert!(PiSet::only(2).is_pi_number(8));
        assert!(PiSet::only(2).is_pi_number(1));
        assert!(!PiSet::only(2).is_pi_number(12));
        assert!(PiSet::empty().is_pi_number(1));
    }

    #[test]
    fn display() {
        assert_eq!(PiSet::p_prime(7).to_string(), "7'");
        assert_eq!(PiSet::explicit([2, 3]).to_string(), "{2,3}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn part_is_the_largest_pi_divisor(n in 1u64..20_000, mask in 0u8..16) {
                let primes: Vec<u64> = [2u64, 3, 5, 7]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                for pi in [PiSet::explicit(primes.clone()), PiSet::complement(primes.clone())] {
                    let part = pi.part_u64(n);
                    let brute = (1..=n)
                        .filter(|d| n % d == 0 && pi.is_pi_number(*d))
                        .max()
                        .unwrap();
                    prop_assert_eq!(part, brute);
                }
            }
        }
    }
}
