//! Executable checks of the d_{p'} bounds, producing structured verdicts.

mod equality;
mod lemmas;
mod sweep;
mod theorems;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::{to_fraction_string, Rational};

pub use equality::{equality_case_prop63, prop64_shape};
pub use lemmas::{
    check_lemma21, check_lemma21_all, dixon_check, orbit_counting_bound, remark32_check,
};
pub use sweep::{soundness_sweep, SweepSummary};
pub use theorems::{check_theorem1, check_theorem2, check_theorem3, check_theorem4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    Undecidable,
    ProxyVerified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub claim: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub theorem: String,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<String>,
    #[serde(serialize_with = "fraction_opt")]
    pub d_value: Option<Rational>,
    #[serde(serialize_with = "fraction_opt")]
    pub threshold: Option<Rational>,
    /// `None` when the hypothesis itself could not be evaluated.
    pub hypothesis: Option<bool>,
    pub conclusions: Vec<Conclusion>,
    pub sharp: bool,
}

fn fraction_opt<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&to_fraction_string(r)),
        None => s.serialize_none(),
    }
}

impl Verdict {
    pub(crate) fn new(theorem: &str, group: &str) -> Self {
        Verdict {
            theorem: theorem.into(),
            group: group.into(),
            p: None,
            pi: None,
            d_value: None,
            threshold: None,
            hypothesis: None,
            conclusions: Vec::new(),
            sharp: false,
        }
    }

    pub(crate) fn push(
        &mut self,
        claim: impl Into<String>,
        status: Status,
        witness: impl Into<String>,
    ) {
        self.conclusions.push(Conclusion {
            claim: claim.into(),
            status,
            witness: witness.into(),
        });
    }

    /// Records a yes/no claim, turning "could not decide" errors into an
    /// undecidable status.
    pub(crate) fn decide(
        &mut self,
        claim: impl Into<String>,
        outcome: Result<(bool, String)>,
    ) -> Result<()> {
        self.decide_as(claim, Status::Verified, outcome)
    }

    pub(crate) fn decide_as(
        &mut self,
        claim: impl Into<String>,
        positive: Status,
        outcome: Result<(bool, String)>,
    ) -> Result<()> {
        let (status, witness) = match outcome {
            Ok((true, w)) => (positive, w),
            Ok((false, w)) => (Status::Refuted, w),
            Err(e) if e.is_undecided() => (Status::Undecidable, e.to_string()),
            Err(e) => return Err(e),
        };
        self.push(claim, status, witness);
        Ok(())
    }

    /// Hypothesis holds and some conclusion failed.
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis == Some(true) && self.has_status(Status::Refuted)
    }

    pub fn has_status(&self, status: Status) -> bool {
        self.conclusions.iter().any(|c| c.status == status)
    }

    pub fn is_undecided(&self) -> bool {
        self.hypothesis.is_none() || self.has_status(Status::Undecidable)
    }

    pub fn status_of(&self, claim_prefix: &str) -> Option<Status> {
        self.conclusions
            .iter()
            .find(|c| c.claim.starts_with(claim_prefix))
            .map(|c| c.status)
    }
}

/// Lifts a computation into `Ok(None)` when it hit a limit.
pub(crate) fn soft<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_undecided() => Ok(None),
        Err(e) => Err(e),
    }
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::param(format!("{p} is not prime")))
    }
}

#[cfg(test)]
mod tests;
