use num_bigint::BigUint;
use serde::Serialize;

use super::cores::{relative_core, CoreKind, Tier};
use crate::error::{Error, Result};
use crate::invariants::PiSet;
use crate::perm::GroupHandle;

/// The upper `p`-series `1 = M_0 <= M_1 <= ...` with
/// `M_{i+1}/M_i = O_{p',p}(G/M_i)`.
#[derive(Clone, Debug)]
pub struct PSeries {
    pub p: u64,
    pub chain: Vec<GroupHandle>,
    /// Per step, `(|O_p'|, |O_p|)` of the section `M_{i+1}/M_i`.
    pub factor_kinds: Vec<(BigUint, BigUint)>,
    pub reached_whole_group: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PSeriesSummary {
    pub p: u64,
    pub orders: Vec<String>,
    pub factor_kinds: Vec<(String, String)>,
    pub reached_whole_group: bool,
    pub p_length: Option<u64>,
}

impl PSeries {
    /// Steps whose `p`-part is nontrivial. Meaningful when the series reaches `G`.
    pub fn p_steps(&self) -> u64 {
        self.factor_kinds
            .iter()
            .filter(|(_, pp)| *pp != BigUint::from(1u32))
            .count() as u64
    }

    pub fn summary(&self) -> PSeriesSummary {
        PSeriesSummary {
            p: self.p,
            orders: self.chain.iter().map(|m| m.order().to_string()).collect(),
            factor_kinds: self
                .factor_kinds
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            reached_whole_group: self.reached_whole_group,
            p_length: self.reached_whole_group.then(|| self.p_steps()),
        }
    }
}

pub fn upper_p_series(g: &GroupHandle, p: u64) -> Result<PSeries> {
    upper_p_series_with(g, p, Tier::Auto)
}

pub fn upper_p_series_with(g: &GroupHandle, p: u64, tier: Tier) -> Result<PSeries> {
    let g_order = g.order();
    let mut m = GroupHandle::trivial(g.degree());
    let mut chain = vec![m.clone()];
    let mut factor_kinds = Vec::new();
    while m.order() != g_order {
        let a = relative_core(g, &m, p, CoreKind::PPrime, tier)?;
        let b = relative_core(g, &a, p, CoreKind::P, tier)?;
        if b.order() == m.order() {
            return Ok(PSeries {
                p,
                chain,
                factor_kinds,
                reached_whole_group: false,
            });
        }
        factor_kinds.push((a.order() / m.order(), b.order() / a.order()));
        m = b.with_label(format!("M_{}", chain.len()));
        chain.push(m.clone());
    }
    Ok(PSeries {
        p,
        chain,
        factor_kinds,
        reached_whole_group: true,
    })
}

pub fn is_p_solvable(g: &GroupHandle, p: u64) -> Result<bool> {
    Ok(upper_p_series(g, p)?.reached_whole_group)
}

/// Number of `p`-factors in the upper `p`-series. Fails for groups that are
/// not `p`-solvable.
pub fn p_length(g: &GroupHandle, p: u64) -> Result<u64> {
    let s = upper_p_series(g, p)?;
    if !s.reached_whole_group {
        return Err(Error::param(format!("{} is not {p}-solvable", g.label())));
    }
    Ok(s.p_steps())
}

/// `|O_p(G)| = |G|_p`.
pub fn has_normal_sylow(g: &GroupHandle, p: u64) -> Result<bool> {
    let core = super::p_core(g, p)?;
    Ok(core.order() == PiSet::only(p).part(&g.order()))
}
