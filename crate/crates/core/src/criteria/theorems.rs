use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::{require_prime, soft, Verdict};
use crate::error::{Error, Result};
use crate::invariants::{d_pi, ratio, PiSet, Rational};
use crate::perm::GroupHandle;
use crate::structure::{
    count_nonabelian_pprime_simple_factors, has_normal_sylow, is_solvable, upper_p_series,
};

fn with_d(theorem: &str, g: &GroupHandle, p: u64, threshold: Rational) -> Result<Verdict> {
    let mut v = Verdict::new(theorem, g.label());
    v.p = Some(p);
    v.d_value = soft(d_pi(g, &PiSet::p_prime(p)))?;
    v.threshold = Some(threshold);
    Ok(v)
}

fn strictly_above(v: &mut Verdict) {
    if let (Some(d), Some(t)) = (&v.d_value, &v.threshold) {
        v.hypothesis = Some(d > t);
        v.sharp = d == t;
    }
}

/// `d_{p'}(G) > 1/(p-1)` for odd `p`: `p`-solvable, `p`-length at most 2,
/// and fewer than `ln(p-1)/ln 12` nonabelian simple `p'`-factors.
pub fn check_theorem1(g: &GroupHandle, p: u64) -> Result<Verdict> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::param("the odd-prime criterion needs p > 2"));
    }
    let mut v = with_d("1", g, p, ratio(1, p - 1))?;
    strictly_above(&mut v);

    let series = upper_p_series(g, p);
    v.decide(
        "p-solvable",
        series.clone().map(|s| {
            let w = format!("upper {p}-series orders {:?}", s.summary().orders);
            (s.reached_whole_group, w)
        }),
    )?;
    v.decide(
        "p-length <= 2",
        series.map(|s| match s.reached_whole_group {
            true => (s.p_steps() <= 2, format!("p-length {}", s.p_steps())),
            false => (false, "not p-solvable".into()),
        }),
    )?;
    let count = count_nonabelian_pprime_simple_factors(g, p).map(|j| {
        // 12^J < p-1, equivalent to J < ln(p-1)/ln 12
        let lhs: BigUint = Pow::pow(BigUint::from(12u32), j as u32);
        (
            lhs < BigUint::from(p - 1),
            format!("J = {j}, 12^J = {lhs}, p-1 = {}", p - 1),
        )
    });
    v.decide("12^J < p-1", count)?;
    Ok(v)
}

/// `d_{2'}(G) > 4/15`: solvable with 2-length at most 4.
pub fn check_theorem2(g: &GroupHandle) -> Result<Verdict> {
    let mut v = with_d("2", g, 2, ratio(4, 15))?;
    strictly_above(&mut v);
    v.decide(
        "solvable",
        is_solvable(g).map(|s| (s, format!("derived series reaches 1: {s}"))),
    )?;
    let length = upper_p_series(g, 2).map(|s| {
        if s.reached_whole_group {
            let l = s.p_steps();
            (l <= 4, format!("2-length {l}"))
        } else {
            (false, "not solvable".into())
        }
    });
    v.decide("2-length <= 4", length)?;
    Ok(v)
}

/// `d_{p'}(G) > 2/(p+1)`: normal Sylow `p`-subgroup.
pub fn check_theorem3(g: &GroupHandle, p: u64) -> Result<Verdict> {
    require_prime(p)?;
    let mut v = with_d("3", g, p, ratio(2, p + 1))?;
    strictly_above(&mut v);
    v.decide(
        "normal Sylow p-subgroup",
        has_normal_sylow(g, p).map(|b| (b, format!("O_p(G) is Sylow: {b}"))),
    )?;
    Ok(v)
}

/// `p`-solvable of `p`-length `k`: `d_{p'}(G) <= (2/(p+1))^(k-1)`.
pub fn check_theorem4(g: &GroupHandle, p: u64) -> Result<Verdict> {
    require_prime(p)?;
    let mut v = Verdict::new("4", g.label());
    v.p = Some(p);
    let d = d_pi(g, &PiSet::p_prime(p));
    v.d_value = soft(d.clone())?;
    let claim = "d <= (2/(p+1))^(k-1)";
    let series = match upper_p_series(g, p) {
        Ok(s) => s,
        Err(e) => {
            v.decide(claim, Err(e))?;
            return Ok(v);
        }
    };
    v.hypothesis = Some(series.reached_whole_group);
    if !series.reached_whole_group {
        return Ok(v);
    }
    let k = series.p_steps();
    let base = ratio(2, p + 1);
    let bound = if k >= 1 {
        Pow::pow(&base, (k - 1) as u32)
    } else {
        Rational::one() / base
    };
    v.threshold = Some(bound.clone());
    v.sharp = v.d_value.as_ref() == Some(&bound);
    v.decide(claim, d.map(|d| (d <= bound, format!("k = {k}"))))?;
    Ok(v)
}
