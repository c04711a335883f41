//! Regeneration of the published calculation tables, diffed against the
//! values printed there.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use pregular_core::arith::prime_divisors_big;
use pregular_core::construct::GroupSpec;
use pregular_core::criteria::Verdict;
use pregular_core::invariants::{
    decimal5, k_pi, parse_fraction, ratio, ratio_big, to_fraction_string,
};
use pregular_core::lietype::{
    four_prime_table, tori_grid, unipotent_grid, verify_alternating_inequalities,
    verify_branch_inequalities, LieFamily,
};
use pregular_core::{GroupHandle, PiSet};
use serde_json::Value;

use crate::commands::{build, par_map, verdict_outcome, verdict_row, VERDICT_COLUMNS};
use crate::config::Config;
use crate::report::{Outcome, Report};

pub const TABLES: &[&str] = &[
    "table1",
    "alternating",
    "sporadic-small",
    "lie-grid",
    "tori",
];

/// Which π a printed row counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Count {
    /// `k_{p'}` against `1/(p-1)`.
    PRegular,
    /// `k_2` against `1/(p-1)` with `p` the largest prime divisor.
    TwoElements,
}

/// A printed row: counts, the two decimals and the sign between them.
struct Printed {
    group: &'static str,
    count: Count,
    p: u64,
    k: u64,
    part: u64,
    d: &'static str,
    cmp: &'static str,
    bound: &'static str,
}

const fn pr(
    group: &'static str,
    p: u64,
    k: u64,
    part: u64,
    d: &'static str,
    cmp: &'static str,
    bound: &'static str,
) -> Printed {
    Printed {
        group,
        count: Count::PRegular,
        p,
        k,
        part,
        d,
        cmp,
        bound,
    }
}

const fn two(
    group: &'static str,
    p: u64,
    k: u64,
    part: u64,
    d: &'static str,
    cmp: &'static str,
    bound: &'static str,
) -> Printed {
    Printed {
        group,
        count: Count::TwoElements,
        p,
        k,
        part,
        d,
        cmp,
        bound,
    }
}

const ALTERNATING: &[Printed] = &[
    pr("A(5)", 5, 3, 12, "0.25000", "=", "0.25000"),
    pr("A(5)", 3, 4, 20, "0.20000", "<", "0.50000"),
    pr("A(6)", 5, 5, 72, "0.06944", "<", "0.25000"),
    pr("A(6)", 3, 5, 40, "0.12500", "<", "0.50000"),
    pr("A(7)", 7, 7, 360, "0.01944", "<", "0.16667"),
    pr("A(7)", 5, 8, 504, "0.01587", "<", "0.25000"),
    pr("A(7)", 3, 6, 280, "0.02143", "<", "0.50000"),
    two("A(8)", 7, 5, 64, "0.07813", "<", "0.16667"),
    two("A(9)", 7, 5, 64, "0.07813", "<", "0.16667"),
];

const SPORADIC: &[Printed] = &[
    two("M(11)", 11, 5, 16, "0.31250", ">", "0.10000"),
    pr("M(11)", 3, 8, 880, "0.00909", "<", "0.50000"),
    pr("M(11)", 5, 9, 1584, "0.00568", "<", "0.25000"),
    pr("M(11)", 11, 8, 720, "0.01111", "<", "0.10000"),
    two("M(12)", 11, 7, 64, "0.10938", ">", "0.10000"),
    pr("M(12)", 3, 11, 3520, "0.00313", "<", "0.50000"),
    pr("M(12)", 5, 13, 19008, "0.00068", "<", "0.25000"),
    pr("M(12)", 11, 13, 8640, "0.00150", "<", "0.10000"),
    two("M(22)", 11, 5, 128, "0.03906", "<", "0.10000"),
];

/// Regenerates one table. Any difference from the printed values gives exit 1.
pub fn cmd_tables(name: &str, config: &Config) -> Result<Report> {
    match name {
        "table1" => table1(config),
        "alternating" => printed_table(name, ALTERNATING, config),
        "sporadic-small" => printed_table(name, SPORADIC, config),
        "lie-grid" => lie_grid(config),
        "tori" => tori(config),
        _ => bail!(
            "unknown table '{name}', expected one of {}",
            TABLES.join(", ")
        ),
    }
}

fn parse(label: &str) -> GroupSpec {
    crate::spec::parse_spec(label).expect("embedded spec")
}

fn build_all(specs: &[GroupSpec], config: &Config) -> Result<BTreeMap<String, GroupHandle>> {
    let built = par_map(specs, |s| {
        let g = build(s, config)?;
        // Warm the class table in parallel.
        pregular_core::invariants::conjugacy_classes(&g)?;
        Ok::<_, pregular_core::Error>(g)
    });
    specs
        .iter()
        .zip(built)
        .map(|(s, g)| Ok((s.to_string(), g?)))
        .collect()
}

fn mismatch(r: &mut Report, diffs: Vec<String>) -> Value {
    if diffs.is_empty() {
        "ok".into()
    } else {
        r.escalate(Outcome::Refuted);
        format!("mismatch: {}", diffs.join("; ")).into()
    }
}

fn table1(config: &Config) -> Result<Report> {
    let rows = four_prime_table();
    let specs: Vec<GroupSpec> = rows.iter().map(|row| row.spec.clone()).collect();
    let groups = build_all(&specs, config)?;
    let mut r = Report::new(
        "tables table1",
        &[
            "group", "spec", "primes", "k_2'", "order_2'", "d_2'", "printed", "decimal", "status",
        ],
    );
    let pi = PiSet::p_prime(2);
    for row in &rows {
        let g = &groups[&row.spec.to_string()];
        let order = g.order();
        let primes = prime_divisors_big(&order);
        let k = k_pi(g, &pi)?;
        let part = pi.part(&order);
        let d = ratio_big(&k.into(), &part);
        let mut diffs = Vec::new();
        if primes != row.primes {
            diffs.push(format!("primes {:?}", row.primes));
        }
        if Some(&d) != parse_fraction(row.printed).as_ref() {
            diffs.push(format!("d_2' = {}", row.printed));
        }
        let status = mismatch(&mut r, diffs);
        r.push(vec![
            row.label.into(),
            row.spec.to_string().into(),
            primes.into(),
            k.into(),
            part.to_string().into(),
            to_fraction_string(&d).into(),
            row.printed.into(),
            decimal5(&d).into(),
            status,
        ]);
    }
    Ok(r)
}

fn printed_table(name: &str, rows: &[Printed], config: &Config) -> Result<Report> {
    let mut specs: Vec<GroupSpec> = rows.iter().map(|p| parse(p.group)).collect();
    specs.dedup();
    let groups = build_all(&specs, config)?;
    let mut r = Report::new(
        format!("tables {name}"),
        &[
            "group", "pi", "p", "k", "order_pi", "d", "decimal", "cmp", "bound", "status",
        ],
    );
    for row in rows {
        let g = &groups[row.group];
        let order = g.order();
        let (pi, p) = match row.count {
            Count::PRegular => (PiSet::p_prime(row.p), row.p),
            Count::TwoElements => {
                let top = *prime_divisors_big(&order).last().expect("nontrivial");
                (PiSet::only(2), top)
            }
        };
        let k = k_pi(g, &pi)?;
        let part = pi.part(&order);
        let d = ratio_big(&k.into(), &part);
        let bound = ratio(1, p - 1);
        let cmp = match d.cmp(&bound) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        let mut diffs = Vec::new();
        let check = |diffs: &mut Vec<String>, what: &str, got: String, want: String| {
            if got != want {
                diffs.push(format!("{what} {want}"));
            }
        };
        check(&mut diffs, "p", p.to_string(), row.p.to_string());
        check(&mut diffs, "k", k.to_string(), row.k.to_string());
        check(&mut diffs, "order", part.to_string(), row.part.to_string());
        check(&mut diffs, "d", decimal5(&d), row.d.into());
        check(&mut diffs, "cmp", cmp.into(), row.cmp.into());
        check(&mut diffs, "bound", decimal5(&bound), row.bound.into());
        let status = mismatch(&mut r, diffs);
        r.push(vec![
            row.group.into(),
            pi.to_string().into(),
            p.into(),
            k.into(),
            part.to_string().into(),
            to_fraction_string(&d).into(),
            decimal5(&d).into(),
            cmp.into(),
            decimal5(&bound).into(),
            status,
        ]);
    }
    Ok(r)
}

fn verdict_table(command: String, verdicts: &[Verdict]) -> Report {
    let mut r = Report::new(command, VERDICT_COLUMNS);
    for v in verdicts {
        let refuted =
            v.hypothesis == Some(true) && v.has_status(pregular_core::criteria::Status::Refuted);
        r.escalate(if refuted {
            Outcome::Refuted
        } else {
            verdict_outcome(v)
        });
        r.push(verdict_row(v));
    }
    r
}

fn lie_grid(config: &Config) -> Result<Report> {
    let q_max = config.grid_qmax.unwrap_or(64);
    let mut verdicts = Vec::new();
    for f in [LieFamily::Psl2, LieFamily::Psl3, LieFamily::Psu3] {
        verdicts.extend(verify_branch_inequalities(f, q_max)?);
    }
    verdicts.extend(verify_alternating_inequalities(config.grid_nmax)?);
    Ok(verdict_table(
        format!(
            "tables lie-grid --grid-qmax {q_max} --grid-nmax {}",
            config.grid_nmax
        ),
        &verdicts,
    ))
}

fn tori(config: &Config) -> Result<Report> {
    let q_max = config.grid_qmax.unwrap_or(32);
    let mut verdicts = tori_grid(q_max)?;
    verdicts.extend(unipotent_grid(q_max)?);
    Ok(verdict_table(
        format!("tables tori --grid-qmax {q_max}"),
        &verdicts,
    ))
}
