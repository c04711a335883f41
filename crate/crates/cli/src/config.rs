use std::path::Path;

use anyhow::{bail, Context, Result};
use pregular_core::Limits;

/// Settings shared by all commands.
///
/// Read from a `key = value` file (`#` starts a comment), then overridden by
/// `PREGULAR_LIMIT` and finally by command-line flags. Keys:
///
/// | key                | meaning                                        |
/// |--------------------|------------------------------------------------|
/// | `limit`            | largest group order enumerated element-wise    |
/// | `normal_subgroups` | largest order for the normal-subgroup lattice  |
/// | `quotient_index`   | largest index of a coset-action quotient       |
/// | `max_degree`       | largest permutation degree                     |
/// | `grid_qmax`        | `q` bound for the `tori` and `lie-grid` tables |
/// | `grid_nmax`        | `n` bound for the alternating route            |
/// | `max_prime`        | largest prime visited by `sweep`               |
/// | `lemma_max_order`  | largest order in the `sweep --suite lemma` run |
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    pub grid_qmax: Option<u64>,
    pub grid_nmax: u64,
    pub max_prime: u64,
    pub lemma_max_order: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            limits: Limits::default(),
            grid_qmax: None,
            grid_nmax: 40,
            max_prime: 31,
            lemma_max_order: 2000,
        }
    }
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", i + 1);
            };
            c.set(key.trim(), value.trim())
                .with_context(|| format!("line {}", i + 1))?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let n: u64 = value
            .replace('_', "")
            .parse()
            .with_context(|| format!("{key}: '{value}' is not a non-negative integer"))?;
        match key {
            "limit" => self.limits.enumeration = n,
            "normal_subgroups" => self.limits.normal_subgroups = n,
            "quotient_index" => self.limits.quotient_index = n,
            "max_degree" => self.limits.max_degree = n as usize,
            "grid_qmax" => self.grid_qmax = Some(n),
            "grid_nmax" => self.grid_nmax = n,
            "max_prime" => self.max_prime = n,
            "lemma_max_order" => self.lemma_max_order = n,
            _ => bail!("unknown key '{key}'"),
        }
        Ok(())
    }

    /// Applies `PREGULAR_LIMIT` if it is set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var("PREGULAR_LIMIT") {
            self.set("limit", v.trim()).context("PREGULAR_LIMIT")?;
        }
        Ok(())
    }
}
