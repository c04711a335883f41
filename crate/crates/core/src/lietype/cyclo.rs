use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};

use crate::arith::{factor, pow_big};
use crate::error::{Error, Result};

/// `Phi_n(q)`, by the Moebius product over the divisors of `n`.
pub fn cyclo(n: u64, q: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::param("cyclotomic index must be positive"));
    }
    if q < 2 {
        return Err(Error::param(format!(
            "cyclotomic argument must be >= 2, got {q}"
        )));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let term = pow_big(q, d as u32) - 1u32;
        match moebius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    Ok(num / den)
}

fn moebius(n: u64) -> i32 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiSign {
    Plus,
    Minus,
}

/// `Phi_6^{+-}(x) = x +- sqrt(3x) + 1`, defined when `3x` is a square,
/// i.e. `x = 3^(2f+1)`.
pub fn semicyclo(sign: SemiSign, q2: u64) -> Result<BigUint> {
    let s = (3 * q2).sqrt();
    if s * s != 3 * q2 {
        return Err(Error::param(format!("3*{q2} is not a perfect square")));
    }
    Ok(BigUint::from(match sign {
        SemiSign::Plus => q2 + s + 1,
        SemiSign::Minus => q2 - s + 1,
    }))
}

/// Prime divisors of `Phi_n(q)`, memoised. Values are factored by trial
/// division, so they must fit in a `u64`.
pub(crate) fn cyclo_primes(n: u64, q: u64) -> Result<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&(n, q)) {
        return Ok(v.clone());
    }
    let value = cyclo(n, q)?;
    let small = value.to_u64().filter(|&v| v < 1 << 50).ok_or_else(|| {
        Error::Undecidable(format!("Phi_{n}({q}) = {value} is too large to factor"))
    })?;
    let primes: Vec<u64> = factor(small).into_iter().map(|(p, _)| p).collect();
    cache
        .lock()
        .expect("cache lock")
        .insert((n, q), primes.clone());
    Ok(primes)
}
