use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rationals used for every invariant and threshold.
pub type Rational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn ratio_big(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `"num/den"` in lowest terms; integers are written `"n/1"`.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or an integer.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Decimal rendering with `places` digits, rounding halves away from zero.
pub fn to_decimal(r: &Rational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let neg = r.is_negative();
    let abs = r.abs();
    let scaled: BigInt = abs.numer() * &scale * 2 + abs.denom();
    let (rounded, _) = scaled.div_rem(&(abs.denom() * BigInt::from(2)));
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int}");
    }
    let frac = frac.to_string();
    let pad = "0".repeat(places as usize - frac.len());
    format!("{sign}{int}.{pad}{frac}")
}

/// Five decimal places, the display format of the calculation tables.
pub fn decimal5(r: &Rational) -> String {
    to_decimal(r, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_up_rounding() {
        assert_eq!(decimal5(&ratio(7, 64)), "0.10938");
        assert_eq!(decimal5(&ratio(5, 16)), "0.31250");
        assert_eq!(decimal5(&ratio(4, 15)), "0.26667");
        assert_eq!(decimal5(&ratio(7, 360)), "0.01944");
        assert_eq!(decimal5(&ratio(1, 10)), "0.10000");
        assert_eq!(decimal5(&ratio(1, 1)), "1.00000");
        assert_eq!(to_decimal(&ratio(1, 8), 2), "0.13");
        assert_eq!(to_decimal(&ratio(-1, 8), 2), "-0.13");
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&ratio(5, 45)), "1/9");
        assert_eq!(parse_fraction("5/45"), Some(ratio(1, 9)));
        assert_eq!(parse_fraction("3"), Some(ratio(3, 1)));
        assert_eq!(parse_fraction("1/0"), None);
    }
}
