use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::cyclo::{cyclo, cyclo_primes, semicyclo, SemiSign};
use crate::arith::{gcd, pow_big, prime_power};
use crate::error::{Error, Result};

/// Simply connected groups `G^F` of Lie type, with `q` the field size, or
/// `q^2` for the Suzuki and Ree families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LieFamily {
    Sl(u32),
    Su(u32),
    SpinOdd(u32),
    Sp(u32),
    SpinPlus(u32),
    SpinMinus(u32),
    G2,
    F4,
    E6,
    E6Twisted,
    E7,
    E8,
    Ree2G2,
    Triality3D4,
    Suzuki2B2,
    Ree2F4,
    Psl2,
    Psl3,
    Psu3,
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LieFamily::*;
        match self {
            Sl(n) => write!(f, "SL_{n}"),
            Su(n) => write!(f, "SU_{n}"),
            SpinOdd(n) => write!(f, "Spin_{}", 2 * n + 1),
            Sp(n) => write!(f, "Sp_{}", 2 * n),
            SpinPlus(n) => write!(f, "Spin+_{}", 2 * n),
            SpinMinus(n) => write!(f, "Spin-_{}", 2 * n),
            G2 => f.write_str("G2"),
            F4 => f.write_str("F4"),
            E6 => f.write_str("E6"),
            E6Twisted => f.write_str("2E6"),
            E7 => f.write_str("E7"),
            E8 => f.write_str("E8"),
            Ree2G2 => f.write_str("2G2"),
            Triality3D4 => f.write_str("3D4"),
            Suzuki2B2 => f.write_str("2B2"),
            Ree2F4 => f.write_str("2F4"),
            Psl2 => f.write_str("PSL2"),
            Psl3 => f.write_str("PSL3"),
            Psu3 => f.write_str("PSU3"),
        }
    }
}

/// One factor of `|G^F|_{r'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Factor {
    /// `q^d - 1`
    Minus(u32),
    /// `q^d + 1`
    Plus(u32),
    /// `(q^a - 1)/(q^b - 1)`
    Ratio(u32, u32),
}

impl Factor {
    pub(crate) fn value(self, q: u64) -> BigUint {
        match self {
            Factor::Minus(d) => pow_big(q, d) - 1u32,
            Factor::Plus(d) => pow_big(q, d) + 1u32,
            Factor::Ratio(a, b) => (pow_big(q, a) - 1u32) / (pow_big(q, b) - 1u32),
        }
    }

    /// Indices `n` with `Phi_n(q)` dividing the factor.
    fn cyclotomic_indices(self) -> Vec<u64> {
        let divisors = |m: u32| (1..=m as u64).filter(move |d| (m as u64).is_multiple_of(*d));
        match self {
            Factor::Minus(d) => divisors(d).collect(),
            Factor::Plus(d) => divisors(2 * d)
                .filter(|n| !(d as u64).is_multiple_of(*n))
                .collect(),
            Factor::Ratio(a, b) => divisors(a)
                .filter(|n| !(b as u64).is_multiple_of(*n))
                .collect(),
        }
    }
}

fn degrees(ds: &[u32]) -> Vec<Factor> {
    ds.iter().map(|&d| Factor::Minus(d)).collect()
}

impl LieFamily {
    /// Families listed in the tori table.
    pub fn torus_families() -> Vec<LieFamily> {
        use LieFamily::*;
        let mut v = Vec::new();
        v.extend((3..=8).map(Sl));
        v.extend((3..=8).map(Su));
        v.extend((2..=6).map(SpinOdd));
        v.extend((2..=6).map(Sp));
        v.extend((4..=8).map(SpinPlus));
        v.extend((4..=8).map(SpinMinus));
        v.extend([G2, F4, E6, E6Twisted, E7, E8, Ree2G2, Triality3D4]);
        v
    }

    /// Defining characteristic, checking the parameter domain.
    pub fn characteristic(self, q: u64) -> Result<u64> {
        use LieFamily::*;
        let (r, e) =
            prime_power(q).ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        let min_rank = match self {
            Sl(n) | Su(n) => Some((n, 3)),
            SpinOdd(n) | Sp(n) => Some((n, 2)),
            SpinPlus(n) | SpinMinus(n) => Some((n, 4)),
            _ => None,
        };
        if let Some((n, m)) = min_rank {
            if n < m {
                return Err(Error::param(format!("{self} needs rank >= {m}")));
            }
        }
        let odd_power = |base: u64| r == base && e % 2 == 1 && e >= 3;
        match self {
            Ree2G2 if !odd_power(3) => Err(Error::param(format!(
                "2G2 needs q^2 = 3^(2f+1), f >= 1, got {q}"
            ))),
            Suzuki2B2 | Ree2F4 if !odd_power(2) => Err(Error::param(format!(
                "{self} needs q^2 = 2^(2f+1), f >= 1, got {q}"
            ))),
            _ => Ok(r),
        }
    }

    /// `(N, factors)` with `|G^F| = q^N * prod(factors)`.
    pub(crate) fn order_shape(self) -> (u32, Vec<Factor>) {
        use Factor::*;
        use LieFamily::*;
        match self {
            Sl(n) => (n * (n - 1) / 2, degrees(&(2..=n).collect::<Vec<_>>())),
            Su(n) => (
                n * (n - 1) / 2,
                (2..=n)
                    .map(|i| if i % 2 == 0 { Minus(i) } else { Plus(i) })
                    .collect(),
            ),
            SpinOdd(n) | Sp(n) => (n * n, (1..=n).map(|i| Minus(2 * i)).collect()),
            SpinPlus(n) | SpinMinus(n) => {
                let mut f: Vec<Factor> = (1..n).map(|i| Minus(2 * i)).collect();
                f.push(if matches!(self, SpinPlus(_)) {
                    Minus(n)
                } else {
                    Plus(n)
                });
                (n * (n - 1), f)
            }
            G2 => (6, degrees(&[2, 6])),
            F4 => (24, degrees(&[2, 6, 8, 12])),
            E6 => (36, degrees(&[2, 5, 6, 8, 9, 12])),
            E6Twisted => (
                36,
                vec![Minus(2), Plus(5), Minus(6), Minus(8), Plus(9), Minus(12)],
            ),
            E7 => (63, degrees(&[2, 6, 8, 10, 12, 14, 18])),
            E8 => (120, degrees(&[2, 8, 12, 14, 18, 20, 24, 30])),
            Ree2G2 => (3, vec![Minus(1), Plus(3)]),
            Triality3D4 => (12, vec![Minus(2), Minus(6), Ratio(12, 4)]),
            Suzuki2B2 => (2, vec![Minus(1), Plus(2)]),
            Ree2F4 => (12, vec![Minus(1), Plus(3), Minus(4), Plus(6)]),
            Psl2 => (1, degrees(&[2])),
            Psl3 => (3, degrees(&[2, 3])),
            Psu3 => (3, vec![Minus(2), Plus(3)]),
        }
    }

    /// `|G^F|` for the simply connected group.
    pub fn generic_order(self, q: u64) -> Result<BigUint> {
        self.characteristic(q)?;
        let (n, factors) = self.order_shape();
        Ok(factors
            .iter()
            .fold(pow_big(q, n), |acc, f| acc * f.value(q)))
    }

    /// `|Z(G^F)|` from the standard order formulas for the simply connected groups.
    pub fn center_order(self, q: u64) -> Result<u64> {
        use LieFamily::*;
        self.characteristic(q)?;
        let qn = |n: u32, plus: bool| -> u64 {
            // q^n +- 1 mod 4, without overflow
            let m = (0..n).fold(1u64, |acc, _| acc * (q % 4) % 4);
            (m + if plus { 1 } else { 3 }) % 4
        };
        Ok(match self {
            Sl(n) => gcd(n as u64, q - 1),
            Su(n) => gcd(n as u64, q + 1),
            SpinOdd(_) | Sp(_) | E7 => gcd(2, q - 1),
            SpinPlus(n) => gcd(4, qn(n, false)),
            SpinMinus(n) => gcd(4, qn(n, true)),
            E6 => gcd(3, q - 1),
            E6Twisted => gcd(3, q + 1),
            Psl2 => gcd(2, q - 1),
            Psl3 => gcd(3, q - 1),
            Psu3 => gcd(3, q + 1),
            G2 | F4 | E8 | Ree2G2 | Triality3D4 | Suzuki2B2 | Ree2F4 => 1,
        })
    }

    /// Order of the simple group `G^F / Z`.
    pub fn simple_order(self, q: u64) -> Result<BigUint> {
        Ok(self.generic_order(q)? / self.center_order(q)?)
    }

    /// Prime divisors of `|G^F|`, from the cyclotomic factors.
    pub fn order_primes(self, q: u64) -> Result<Vec<u64>> {
        let r = self.characteristic(q)?;
        let mut primes = vec![r];
        for f in self.order_shape().1 {
            for n in f.cyclotomic_indices() {
                primes.extend(cyclo_primes(n, q)?);
            }
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(primes)
    }

    /// Prime divisors of the simple group's order.
    pub fn simple_order_primes(self, q: u64) -> Result<Vec<u64>> {
        let order = self.simple_order(q)?;
        let big_zero = BigUint::ZERO;
        Ok(self
            .order_primes(q)?
            .into_iter()
            .filter(|&p| &order % p == big_zero)
            .collect())
    }

    /// `k(G)` for the small rank families where closed forms are known.
    pub fn class_number(self, q: u64) -> Result<BigUint> {
        use LieFamily::*;
        self.characteristic(q)?;
        let k = match self {
            Psl2 if q.is_multiple_of(2) => q + 1,
            Psl2 => (q + 5) / 2,
            Psl3 if gcd(3, q - 1) == 1 => q * q + q,
            Psl3 => (q * q + q + 10) / 3,
            Psu3 if gcd(3, q + 1) == 1 => q * q + q + 2,
            Psu3 => (q * q + q + 12) / 3,
            _ => return Err(Error::param(format!("no class number formula for {self}"))),
        };
        Ok(BigUint::from(k))
    }

    /// `(|T|, k)` from the tori table.
    pub fn torus_row(self, q: u64) -> Result<(BigUint, BigUint)> {
        use LieFamily::*;
        self.characteristic(q)?;
        let phi = |n| cyclo(n, q);
        let pow = |b: BigUint, e: u32| num_traits::pow(b, e as usize);
        Ok(match self {
            Sl(n) => ((pow_big(q, n) - 1u32) / (q - 1), phi(2)?),
            Psl3 => ((pow_big(q, 3) - 1u32) / (q - 1), phi(2)?),
            Su(n) => (pow(phi(2)?, n - 1), phi(6)?),
            Psu3 => (pow(phi(2)?, 2), phi(6)?),
            SpinOdd(n) | Sp(n) => (pow(phi(2)?, n), phi(4)?),
            SpinPlus(n) => (phi(4)? * (pow_big(q, n - 2) + 1u32), phi(2)?),
            SpinMinus(n) if n % 2 == 1 => (pow(phi(2)?, n), phi(6)?),
            SpinMinus(n) => (pow(phi(2)?, n - 2) * phi(4)?, phi(6)?),
            G2 => (pow(phi(2)?, 2), phi(6)?),
            F4 => (pow(phi(2)?, 4), phi(6)?),
            E6 => (pow(phi(3)?, 3), phi(6)?),
            E6Twisted => (pow(phi(2)?, 6), phi(6)?),
            E7 => (pow(phi(2)?, 7), phi(6)?),
            E8 => (pow(phi(2)?, 8), phi(8)?),
            Ree2G2 => (semicyclo(SemiSign::Plus, q)?, phi(1)?),
            Triality3D4 => (pow(phi(3)?, 2), phi(6)?),
            _ => return Err(Error::param(format!("{self} has no row in the tori table"))),
        })
    }

    /// For the families whose largest order factor is `q^(2k) - 1`: that `k`.
    pub(crate) fn even_top_degree(self) -> Option<u32> {
        use LieFamily::*;
        match self {
            Sl(n) | Su(n) if n % 2 == 0 => Some(n / 2),
            SpinOdd(n) | Sp(n) => Some(n),
            SpinPlus(n) | SpinMinus(n) => Some(n - 1),
            G2 => Some(3),
            F4 | E6 | E6Twisted => Some(6),
            E7 => Some(9),
            E8 => Some(15),
            _ => None,
        }
    }
}
