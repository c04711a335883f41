//! Arithmetic in small finite fields `GF(r^k)`.
//!
//! Elements are `u32` codes: the coefficient vector `c0 + c1 x + ...` of the
//! residue modulo the field's modulus, read as a base-`r` number. Codes below
//! `r` are the prime subfield. Multiplication uses log/exp tables built from
//! a primitive modulus, so `x` itself generates the multiplicative group.
//!
//! The moduli live in `data/moduli.txt`, one per line as `r k c0 c1 ... ck`.

use std::sync::Arc;

use crate::arith::{factor, is_prime};
use crate::error::{Error, Result};

pub type Elem = u32;

const MODULI: &str = include_str!("../../data/moduli.txt");
const MAX_SIZE: u64 = 1 << 16;
const MAX_DEGREE: u32 = 16;

#[derive(Debug)]
pub struct FieldSpec {
    r: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// Looks up (or for `k = 1` derives) the field of order `r^k`.
pub fn field(r: u64, k: u32) -> Result<Arc<FieldSpec>> {
    if !is_prime(r) {
        return Err(Error::param(format!("{r} is not prime")));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::param(format!(
            "extension degree {k} outside 1..={MAX_DEGREE}"
        )));
    }
    let q = r
        .checked_pow(k)
        .filter(|&q| q <= MAX_SIZE)
        .ok_or_else(|| Error::limit(format!("field size {r}^{k}"), MAX_SIZE))?;
    let modulus = if k == 1 {
        // x - g for a primitive root g, so that the code of x is g
        let g = primitive_root(r);
        vec![((r - g) % r) as u32, 1]
    } else {
        table_modulus(r as u32, k)?
    };
    FieldSpec::build(r as u32, k, q as u32, modulus).map(Arc::new)
}

/// Field of order `q`, a prime power.
pub fn field_of_order(q: u64) -> Result<Arc<FieldSpec>> {
    match factor(q).as_slice() {
        [(r, k)] => field(*r, *k),
        _ => Err(Error::param(format!("{q} is not a prime power"))),
    }
}

fn primitive_root(r: u64) -> u64 {
    if r == 2 {
        return 1;
    }
    let primes: Vec<u64> = factor(r - 1).into_iter().map(|(p, _)| p).collect();
    (2..r)
        .find(|&g| primes.iter().all(|&p| pow_mod(g, (r - 1) / p, r) != 1))
        .expect("primes have primitive roots")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn table_modulus(r: u32, k: u32) -> Result<Vec<u32>> {
    for line in MODULI.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().expect("moduli table is numeric"))
            .collect();
        if nums[0] == r && nums[1] == k {
            return Ok(nums[2..].to_vec());
        }
    }
    Err(Error::param(format!(
        "no modulus for GF({r}^{k}) in the table"
    )))
}

impl FieldSpec {
    fn build(r: u32, k: u32, q: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::param(
                "modulus must be monic of the extension degree",
            ));
        }
        if k > 1 && !poly::is_irreducible(&modulus, r) {
            return Err(Error::param(format!(
                "modulus for GF({r}^{k}) is reducible"
            )));
        }
        let mut spec = FieldSpec {
            r,
            k,
            q,
            modulus,
            exp: Vec::with_capacity(q as usize - 1),
            log: vec![u32::MAX; q as usize],
        };
        // powers of x, multiplying coefficient vectors by x and reducing
        let mut coeffs = vec![0u32; k as usize];
        coeffs[0] = 1;
        for i in 0..q - 1 {
            let code = spec.from_coeffs(&coeffs);
            if spec.log[code as usize] != u32::MAX {
                return Err(Error::param(format!(
                    "modulus for GF({r}^{k}) is not primitive"
                )));
            }
            spec.log[code as usize] = i;
            spec.exp.push(code);
            let top = coeffs[k as usize - 1];
            for j in (1..k as usize).rev() {
                coeffs[j] = coeffs[j - 1];
            }
            coeffs[0] = 0;
            for (j, c) in coeffs.iter_mut().enumerate() {
                *c = (*c + (r - spec.modulus[j]) * top) % r;
            }
        }
        Ok(spec)
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The fixed generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let c = a % self.r;
                a /= self.r;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.r + c % self.r)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.r as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.r == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.r + b % self.r) % self.r) * place;
            a /= self.r;
            b /= self.r;
            place *= self.r;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.r == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.r - a % self.r) % self.r) * place;
            a /= self.r;
            place *= self.r;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::param("zero has no inverse"));
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)) % n;
        self.exp[l as usize]
    }

    /// Discrete logarithm to the base [`primitive`](Self::primitive).
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `primitive()^i`.
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        let l = self
            .log(a)
            .ok_or_else(|| Error::param("zero has no multiplicative order"))?;
        let n = self.q as u64 - 1;
        Ok(n / num_integer::gcd(n, l as u64))
    }

    /// `x -> x^r`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.r as i64)
    }

    /// `x -> x^(r^(k/2))`, the involution of `GF(q^2)` over `GF(q)`.
    pub fn conjugate(&self, a: Elem) -> Result<Elem> {
        if !self.k.is_multiple_of(2) {
            return Err(Error::param(format!(
                "GF({}^{}) is not a quadratic extension",
                self.r, self.k
            )));
        }
        let q0 = (self.r as i64).pow(self.k / 2);
        Ok(self.pow(a, q0))
    }

    /// Whether `a` lies in the subfield of order `r^d`.
    pub fn in_subfield(&self, a: Elem, d: u32) -> bool {
        self.pow(a, (self.r as i64).pow(d)) == a
    }
}

/// Polynomials over `GF(r)` as coefficient vectors, lowest degree first.
mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, r: u32) -> u32 {
        (1..r)
            .find(|&b| a * b % r == 1)
            .expect("nonzero residue mod a prime")
    }

    fn rem(a: &[u32], m: &[u32], r: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let lead_inv = inv_mod(*m.last().unwrap(), r);
        while a.len() >= m.len() {
            let shift = a.len() - m.len();
            let c = a.last().unwrap() * lead_inv % r;
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + (r - c) * mi % r) % r;
            }
            a = trim(a);
        }
        a
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], r: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % r;
            }
        }
        rem(&out, m, r)
    }

    fn gcd(a: &[u32], b: &[u32], r: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let t = rem(&a, &b, r);
            a = b;
            b = t;
        }
        a
    }

    /// Rabin-style test: no factor of degree `<= k/2`, via `gcd(f, x^(r^i) - x)`.
    pub(super) fn is_irreducible(f: &[u32], r: u32) -> bool {
        let k = f.len() - 1;
        let x = rem(&[0, 1], f, r);
        let mut power = x.clone();
        for _ in 1..=k / 2 {
            // power <- power^r
            let mut acc = vec![1u32];
            for _ in 0..r {
                acc = mul_mod(&acc, &power, f, r);
            }
            power = acc;
            let mut diff = power.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + r - 1) % r;
            let g = gcd(f, &diff, r);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every (r, k) in the table.
    fn table_fields() -> Vec<(u64, u32)> {
        MODULI
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| {
                let mut it = l.split_whitespace();
                (
                    it.next().unwrap().parse().unwrap(),
                    it.next().unwrap().parse().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn every_table_modulus_builds() {
        for (r, k) in table_fields() {
            let f = field(r, k).unwrap();
            assert_eq!(f.size() as u64, r.pow(k));
            assert_eq!(f.mult_order(f.primitive()).unwrap(), f.size() as u64 - 1);
        }
    }

    #[test]
    fn small_fields() {
        let f = field(7, 1).unwrap();
        assert_eq!(f.size(), 7);
        let f9 = field(3, 2).unwrap();
        assert_eq!(f9.elements().filter(|&a| a != 0).count(), 8);
        let f8 = field(2, 3).unwrap();
        for a in f8.elements().skip(1) {
            assert_eq!(f8.pow(a, 7), 1);
        }
    }

    #[test]
    fn orders_by_direct_powering() {
        let f = field(11, 1).unwrap();
        assert_eq!(f.mult_order(1).unwrap(), 1);
        assert_eq!(f.mult_order(2).unwrap(), 10);
        assert!(f.mult_order(0).is_err());
        // brute-force powering in every field up to 256 elements
        for q in [
            4u64, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128, 169, 243, 256,
        ] {
            let f = field_of_order(q).unwrap();
            for a in f.elements().skip(1) {
                let mut x = a;
                let mut n = 1;
                while x != 1 {
                    x = f.mul(x, a);
                    n += 1;
                }
                assert_eq!(f.mult_order(a).unwrap(), n);
            }
        }
    }

    #[test]
    fn multiplication_matches_schoolbook_polynomials() {
        // independent oracle: multiply coefficient vectors and reduce by the modulus
        for (r, k) in [(2u64, 4u32), (3, 2), (5, 2), (3, 3), (7, 2)] {
            let f = field(r, k).unwrap();
            let m = f.modulus().to_vec();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    let prod = poly::mul_mod(&f.coeffs(a), &f.coeffs(b), &m, r as u32);
                    let mut padded = prod;
                    padded.resize(k as usize, 0);
                    assert_eq!(f.mul(a, b), f.from_coeffs(&padded), "GF({r}^{k}) {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn conjugation() {
        let f9 = field(3, 2).unwrap();
        assert_eq!(f9.conjugate(1).unwrap(), 1);
        for a in f9.elements() {
            assert_eq!(f9.conjugate(f9.conjugate(a).unwrap()).unwrap(), a);
        }
        let f16 = field(2, 4).unwrap();
        for a in f16.elements() {
            let t = f16.add(a, f16.conjugate(a).unwrap());
            // GF(4) inside GF(16): fixed by x -> x^4
            assert_eq!(f16.pow(t, 4), t);
            assert!(f16.in_subfield(t, 2));
        }
        assert!(field(2, 3).unwrap().conjugate(1).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(field(6, 1).is_err());
        assert!(field(2, 17).is_err());
        assert!(matches!(field(257, 2), Err(Error::LimitExceeded { .. })));
        assert!(field_of_order(12).is_err());
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        let f = field(5, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
                assert_eq!(
                    f.frobenius(f.mul(a, b)),
                    f.mul(f.frobenius(a), f.frobenius(b))
                );
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field_and_triple() -> impl Strategy<Value = (Arc<FieldSpec>, Elem, Elem, Elem)> {
            proptest::sample::select(table_fields())
                .prop_map(|(r, k)| field(r, k).unwrap())
                .prop_flat_map(|f| {
                    let q = f.size();
                    (Just(f), 0..q, 0..q, 0..q)
                })
        }

        proptest! {
            #[test]
            fn field_axioms((f, a, b, c) in field_and_triple()) {
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), 0);
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != 0 {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }
}
