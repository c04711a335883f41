//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 17u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Prime divisors of a big integer, assuming every prime factor fits in a `u64`
/// and the part above `u64` range is a product of primes below `2^32`.
pub fn prime_divisors_big(n: &BigUint) -> Vec<u64> {
    if let Some(small) = n.to_u64() {
        return prime_divisors(small);
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while n.to_u64().is_none() {
        let bd = BigUint::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let rest = n.to_u64().expect("fits");
    for p in prime_divisors(rest) {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_unstable();
    out
}

/// `(r, k)` with `q = r^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factor(q).as_slice() {
        [(r, k)] => Some((*r, *k)),
        _ => None,
    }
}

pub fn pow_big(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// The `p`-part of `n`.
pub fn p_part_big(n: &BigUint, p: u64) -> BigUint {
    let bp = BigUint::from(p);
    let mut n = n.clone();
    let mut part = BigUint::one();
    while !n.is_zero() && (&n % &bp).is_zero() {
        n /= &bp;
        part *= &bp;
    }
    part
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`, `n > 1`).
pub fn mult_order_mod(a: u64, n: u64) -> u64 {
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation() {
        assert_eq!(factor(7920), vec![(2, 4), (3, 2), (5, 1), (11, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(6), None);
        assert!(is_prime(65537));
        assert!(!is_prime(65535));
    }

    #[test]
    fn big_divisors() {
        let n = pow_big(2, 80) * BigUint::from(3u32 * 7 * 65537);
        assert_eq!(prime_divisors_big(&n), vec![2, 3, 7, 65537]);
    }

    #[test]
    fn orders_mod_n() {
        assert_eq!(mult_order_mod(2, 5), 4);
        assert_eq!(mult_order_mod(2, 7), 3);
        assert_eq!(mult_order_mod(1, 9), 1);
    }
}
