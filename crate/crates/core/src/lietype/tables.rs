use serde::Serialize;

use crate::arith::prime_power;
use crate::construct::GroupSpec;
use crate::invariants::{ratio, Rational};

/// A row of the table of simple groups with at most three prime divisors.
#[derive(Clone, Debug, Serialize)]
pub struct FourPrimeRow {
    pub label: &'static str,
    #[serde(skip)]
    pub spec: GroupSpec,
    pub primes: Vec<u64>,
    /// As printed, possibly unreduced.
    pub printed: &'static str,
    #[serde(skip)]
    pub expected: Rational,
}

pub fn four_prime_table() -> Vec<FourPrimeRow> {
    use GroupSpec::*;
    let r = |label, spec, primes: &[u64], printed, n: u64, d: u64| FourPrimeRow {
        label,
        spec,
        primes: primes.to_vec(),
        printed,
        expected: ratio(n, d),
    };
    vec![
        r("A5", Psl { n: 2, q: 5 }, &[2, 3, 5], "4/15", 4, 15),
        r("A6", Psl { n: 2, q: 9 }, &[2, 3, 5], "5/45", 5, 45),
        r("PSp(4,3)", Psp4(3), &[2, 3, 5], "8/405", 8, 405),
        r("PSL(2,7)", Psl { n: 2, q: 7 }, &[2, 3, 7], "4/21", 4, 21),
        r("PSL(2,8)", Psl { n: 2, q: 8 }, &[2, 3, 7], "8/63", 8, 63),
        r("PSU(3,3)", Psu3(3), &[2, 3, 7], "5/189", 5, 189),
        r("PSL(3,3)", Psl { n: 3, q: 3 }, &[2, 3, 13], "7/351", 7, 351),
        r(
            "PSL(2,17)",
            Psl { n: 2, q: 17 },
            &[2, 3, 17],
            "7/153",
            7,
            153,
        ),
    ]
}

/// Least `k` with `1 <= k < p - 2` and `pk + 1` a prime power.
pub fn prime_power_k_search(p: u64) -> Option<u64> {
    (1..p.saturating_sub(2)).find(|&k| prime_power(p * k + 1).is_some())
}
