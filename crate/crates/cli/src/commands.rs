use anyhow::{bail, Result};
use pregular_core::arith::prime_divisors_big;
use pregular_core::construct::{catalog, GroupSpec};
use pregular_core::criteria::soundness_sweep;
use pregular_core::criteria::{
    check_lemma21, check_lemma21_all, check_theorem1, check_theorem2, check_theorem3,
    check_theorem4, dixon_check, equality_case_prop63, prop64_shape, remark32_check, Status,
    SweepSummary, Verdict,
};
use pregular_core::invariants::{
    class_number, commuting_degree, decimal5, k_pi, ratio_big, to_fraction_string, PiMode,
};
use pregular_core::{Error, GroupHandle, PiSet};
use serde_json::{json, Value};

use crate::config::Config;
use crate::report::{Outcome, Report};

/// The π given on the command line: an explicit list, a complement, or `p'`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiChoice {
    pub pi: Option<Vec<u64>>,
    pub complement: Option<Vec<u64>>,
    pub p: Option<u64>,
}

impl PiChoice {
    /// The chosen set, or `None` when no flag was given.
    pub fn resolve(&self) -> Result<Option<PiSet>> {
        match (&self.pi, &self.complement) {
            (Some(_), Some(_)) => bail!("--pi and --pi-complement are mutually exclusive"),
            (Some(l), None) => Ok(Some(PiSet::explicit(l.iter().copied()))),
            (None, Some(l)) => Ok(Some(PiSet::complement(l.iter().copied()))),
            (None, None) => Ok(self.p.map(PiSet::p_prime)),
        }
    }
}

pub fn build(spec: &GroupSpec, config: &Config) -> pregular_core::Result<GroupHandle> {
    spec.build_with(config.limits)
}

fn frac(r: &pregular_core::Rational) -> Value {
    to_fraction_string(r).into()
}

fn status_name(s: Status) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// One-word summary of a verdict.
pub fn verdict_status(v: &Verdict) -> &'static str {
    if v.is_counterexample() {
        "counterexample"
    } else if v.is_undecided() {
        "undecidable"
    } else if v.hypothesis == Some(false) {
        "hypothesis fails"
    } else if v.has_status(Status::ProxyVerified) {
        "proxy-verified"
    } else {
        "verified"
    }
}

pub const VERDICT_COLUMNS: &[&str] = &[
    "theorem",
    "group",
    "p",
    "pi",
    "d",
    "threshold",
    "hypothesis",
    "sharp",
    "status",
    "conclusions",
];

pub fn verdict_row(v: &Verdict) -> Vec<Value> {
    let conclusions: Vec<Value> = v
        .conclusions
        .iter()
        .map(|c| {
            let w = if c.witness.is_empty() {
                String::new()
            } else {
                format!(" ({})", c.witness)
            };
            format!("{}: {}{w}", c.claim, status_name(c.status)).into()
        })
        .collect();
    vec![
        v.theorem.clone().into(),
        v.group.clone().into(),
        json!(v.p),
        json!(v.pi),
        v.d_value.as_ref().map(frac).unwrap_or(Value::Null),
        v.threshold.as_ref().map(frac).unwrap_or(Value::Null),
        json!(v.hypothesis),
        v.sharp.into(),
        verdict_status(v).into(),
        conclusions.into(),
    ]
}

/// Exit status contributed by a verdict.
pub fn verdict_outcome(v: &Verdict) -> Outcome {
    if v.is_counterexample() {
        Outcome::Refuted
    } else if v.is_undecided() {
        Outcome::Undecidable
    } else {
        Outcome::Ok
    }
}

fn limit_outcome(e: &Error) -> Outcome {
    match e {
        Error::LimitExceeded { .. } => Outcome::LimitExceeded,
        _ => Outcome::Undecidable,
    }
}

fn pi_flag(pi: &PiSet) -> String {
    let list: Vec<String> = pi.primes.iter().map(u64::to_string).collect();
    match pi.mode {
        PiMode::Explicit => format!(" --pi {}", list.join(",")),
        PiMode::Complement if list.is_empty() => String::new(),
        PiMode::Complement => format!(" --pi-complement {}", list.join(",")),
    }
}

/// `|G|`, `|G|_π`, `k_π`, `d_π`, `k(G)` and `d(G)`.
///
/// Without a π flag, π is every prime and `d_π = d`.
pub fn cmd_invariants(spec: &GroupSpec, pi: &PiChoice, config: &Config) -> Result<Report> {
    let pi = pi.resolve()?.unwrap_or_else(PiSet::all);
    let mut r = Report::new(
        format!("invariants {spec}{}", pi_flag(&pi)),
        &[
            "group",
            "pi",
            "order",
            "pi_part",
            "k_pi",
            "d_pi",
            "d_pi_decimal",
            "k",
            "d",
            "d_decimal",
            "status",
        ],
    );
    let mut row = vec![Value::Null; r.columns.len()];
    row[0] = spec.to_string().into();
    row[1] = pi.to_string().into();
    let status = (|| -> pregular_core::Result<()> {
        let g = build(spec, config)?;
        let order = g.order();
        let part = pi.part(&order);
        row[2] = order.to_string().into();
        row[3] = part.to_string().into();
        let k = k_pi(&g, &pi)?;
        let d = ratio_big(&k.into(), &part);
        row[4] = k.into();
        row[5] = frac(&d);
        row[6] = decimal5(&d).into();
        row[7] = class_number(&g)?.into();
        let dg = commuting_degree(&g)?;
        row[8] = frac(&dg);
        row[9] = decimal5(&dg).into();
        Ok(())
    })();
    match status {
        Ok(()) => row[10] = "ok".into(),
        Err(e) if e.is_undecided() => {
            r.escalate(limit_outcome(&e));
            row[10] = e.to_string().into();
        }
        Err(e) => return Err(e.into()),
    }
    r.push(row);
    Ok(r)
}

/// Theorem ids accepted by `check`.
pub const THEOREMS: &[&str] = &["1", "2", "3", "4", "L21", "P63", "P64", "R32", "dixon"];

fn primes_for(g: &GroupHandle, p: Option<u64>, odd_only: bool) -> Vec<u64> {
    match p {
        Some(p) => vec![p],
        None => prime_divisors_big(&g.order())
            .into_iter()
            .filter(|&q| !odd_only || q != 2)
            .collect(),
    }
}

fn run_check(theorem: &str, g: &GroupHandle, pi: &PiChoice) -> Result<Vec<Verdict>> {
    let each = |odd: bool, f: &dyn Fn(u64) -> pregular_core::Result<Verdict>| {
        primes_for(g, pi.p, odd)
            .into_iter()
            .map(f)
            .collect::<pregular_core::Result<Vec<_>>>()
    };
    Ok(match theorem {
        "1" => each(true, &|p| check_theorem1(g, p))?,
        "2" => vec![check_theorem2(g)?],
        "3" => each(false, &|p| check_theorem3(g, p))?,
        "4" => each(false, &|p| check_theorem4(g, p))?,
        "P63" => each(true, &|p| equality_case_prop63(g, p))?,
        "P64" => vec![prop64_shape(g)?],
        "R32" => vec![remark32_check(g)?],
        "dixon" => vec![dixon_check(g)?],
        "L21" => match pi.resolve()? {
            Some(set) => vec![check_lemma21(g, &set)?],
            None => vec![check_lemma21_all(g)?],
        },
        other => bail!(
            "unknown theorem '{other}', expected one of {}",
            THEOREMS.join(", ")
        ),
    })
}

/// Runs one checker on a group; the exit status follows the verdicts.
pub fn cmd_check(
    theorem: &str,
    spec: &GroupSpec,
    pi: &PiChoice,
    config: &Config,
) -> Result<Report> {
    if !THEOREMS.contains(&theorem) {
        bail!(
            "unknown theorem '{theorem}', expected one of {}",
            THEOREMS.join(", ")
        );
    }
    let p = pi.p.map(|p| format!(" --p {p}")).unwrap_or_default();
    let mut r = Report::new(format!("check {theorem} {spec}{p}"), VERDICT_COLUMNS);
    let verdicts = build(spec, config)
        .map_err(anyhow::Error::from)
        .and_then(|g| run_check(theorem, &g, pi));
    match verdicts {
        Ok(vs) => {
            for v in &vs {
                r.escalate(verdict_outcome(v));
                r.push(verdict_row(v));
            }
        }
        Err(e) => match e.downcast_ref::<Error>() {
            Some(core) if core.is_undecided() => {
                r.escalate(limit_outcome(core));
                r.notes.push(core.to_string());
            }
            _ => return Err(e),
        },
    }
    Ok(r)
}

/// Runs `f` over `items` on all cores and returns results in input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = f(&items[i]);
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The four structural checkers at every prime up to `max_prime`.
    Theorems,
    /// Submultiplicativity and monotonicity on groups of order up to `lemma_max_order`.
    Lemma,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "theorems" => Ok(Suite::Theorems),
            "lemma" => Ok(Suite::Lemma),
            _ => Err(format!("unknown suite '{s}', expected theorems or lemma")),
        }
    }
}

struct GroupRun {
    order: String,
    enumerable: bool,
    verdicts: Vec<Verdict>,
    error: Option<Error>,
}

fn sweep_group(spec: &GroupSpec, suite: Suite, config: &Config) -> Option<GroupRun> {
    let g = match build(spec, config) {
        Ok(g) => g,
        Err(e) => {
            return Some(GroupRun {
                order: String::new(),
                enumerable: false,
                verdicts: vec![],
                error: Some(e),
            })
        }
    };
    let order = g.order();
    let small = order <= config.lemma_max_order.into();
    if suite == Suite::Lemma && !small {
        return None;
    }
    let result = match suite {
        Suite::Theorems => soundness_sweep(&g, config.max_prime),
        Suite::Lemma => check_lemma21_all(&g).map(|v| vec![v]),
    };
    let (verdicts, error) = match result {
        Ok(v) => (v, None),
        Err(e) => (vec![], Some(e)),
    };
    Some(GroupRun {
        order: order.to_string(),
        enumerable: g.is_enumerable(),
        verdicts,
        error,
    })
}

/// Runs a suite over the catalog. Counterexamples give exit 1; undecided
/// verdicts on enumerable groups give exit 2.
pub fn cmd_sweep(suite: Suite, config: &Config) -> Result<Report> {
    let name = match suite {
        Suite::Theorems => format!("sweep theorems --max-prime {}", config.max_prime),
        Suite::Lemma => format!("sweep lemma --max-order {}", config.lemma_max_order),
    };
    let mut r = Report::new(
        name,
        &[
            "group",
            "order",
            "verdicts",
            "counterexamples",
            "undecidable",
            "sharp",
            "error",
        ],
    );
    let specs = catalog();
    let runs = par_map(&specs, |s| sweep_group(s, suite, config));
    let mut total = SweepSummary::default();
    let mut undecided_enumerable = 0;
    for (spec, run) in specs.iter().zip(runs) {
        let Some(run) = run else { continue };
        let mut s = SweepSummary::default();
        for v in &run.verdicts {
            s.add(v);
            total.add(v);
        }
        if let Some(e) = &run.error {
            if !e.is_undecided() {
                bail!("{spec}: {e}");
            }
            s.undecidable += 1;
            total.undecidable += 1;
        }
        if run.enumerable {
            undecided_enumerable += s.undecidable;
        }
        for v in run.verdicts.iter().filter(|v| v.is_counterexample()) {
            r.notes.push(format!(
                "counterexample: {} {}, p={:?}",
                v.theorem, v.group, v.p
            ));
        }
        r.push(vec![
            spec.to_string().into(),
            run.order.into(),
            s.verdicts.into(),
            s.counterexamples.into(),
            s.undecidable.into(),
            s.sharp.into(),
            run.error.map(|e| e.to_string()).into(),
        ]);
    }
    r.notes.push(format!(
        "total: {} verdicts, {} counterexamples, {} undecidable ({} within enumeration limits), {} sharp",
        total.verdicts,
        total.counterexamples,
        total.undecidable,
        undecided_enumerable,
        total.sharp.len()
    ));
    if total.counterexamples > 0 {
        r.escalate(Outcome::Refuted);
    }
    if undecided_enumerable > 0 {
        r.escalate(Outcome::Undecidable);
    }
    Ok(r)
}
