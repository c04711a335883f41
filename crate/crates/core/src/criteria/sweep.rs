use serde::Serialize;

use super::{check_theorem1, check_theorem2, check_theorem3, check_theorem4, Verdict};
use crate::arith::prime_divisors_big;
use crate::error::Result;
use crate::perm::GroupHandle;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub verdicts: usize,
    pub counterexamples: usize,
    pub undecidable: usize,
    pub sharp: Vec<String>,
}

impl SweepSummary {
    pub fn add(&mut self, v: &Verdict) {
        self.verdicts += 1;
        self.counterexamples += v.is_counterexample() as usize;
        self.undecidable += v.is_undecided() as usize;
        if v.sharp {
            let p = v.p.map(|p| format!(", p={p}")).unwrap_or_default();
            self.sharp.push(format!("{}: {}{p}", v.theorem, v.group));
        }
    }
}

/// The four structural checkers at every prime `p <= max_prime` dividing `|G|`.
pub fn soundness_sweep(g: &GroupHandle, max_prime: u64) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let primes = prime_divisors_big(&g.order());
    for &p in primes.iter().filter(|&&p| p <= max_prime) {
        if p == 2 {
            out.push(check_theorem2(g)?);
        } else {
            out.push(check_theorem1(g, p)?);
        }
        out.push(check_theorem3(g, p)?);
        out.push(check_theorem4(g, p)?);
    }
    Ok(out)
}
