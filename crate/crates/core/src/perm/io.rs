//! Cycle notation and the generator file format.
//!
//! A generator file holds one permutation per line in 1-indexed cycle
//! notation such as `(1,2,3)(4,5)`. Blank lines and `#` comments are ignored,
//! and the first non-comment line may be `degree N`. Without it the degree is
//! the largest point mentioned.

use std::path::Path;

use super::{GroupHandle, Permutation};
use crate::error::{Error, Result};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Cycles of one line, 1-indexed, with columns for error reporting.
fn cycles_of(text: &str, line: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(col, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(parse_error(
                line,
                col + 1,
                format!("expected '(', found {c:?}"),
            ));
        }
        chars.next();
        let mut cycle = Vec::new();
        let mut number = String::new();
        let mut closed = false;
        for (col, c) in chars.by_ref() {
            match c {
                '0'..='9' => number.push(c),
                ',' | ')' | ' ' | '\t' => {
                    if !number.is_empty() {
                        let x: usize = number
                            .parse()
                            .map_err(|_| parse_error(line, col + 1, "point out of range"))?;
                        if x == 0 {
                            return Err(parse_error(line, col + 1, "points are numbered from 1"));
                        }
                        cycle.push(x);
                        number.clear();
                    } else if c == ',' {
                        return Err(parse_error(line, col + 1, "empty entry in cycle"));
                    }
                    if c == ')' {
                        closed = true;
                        break;
                    }
                }
                _ => return Err(parse_error(line, col + 1, format!("unexpected {c:?}"))),
            }
        }
        if !closed {
            return Err(parse_error(line, text.len() + 1, "unclosed cycle"));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Parses cycle notation on `degree` points; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let cycles = cycles_of(text, 1)?;
    Permutation::from_cycles(degree, &cycles)
}

/// Parses a generator file into its degree and generators.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut declared = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            if declared.is_some() || !rows.is_empty() {
                return Err(parse_error(i + 1, 1, "degree must come first"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| parse_error(i + 1, 8, "expected a degree"))?;
            if n == 0 {
                return Err(parse_error(i + 1, 8, "degree must be positive"));
            }
            declared = Some(n);
            continue;
        }
        rows.push((i + 1, cycles_of(line, i + 1)?));
    }
    let largest = rows
        .iter()
        .flat_map(|(_, cs)| cs.iter().flatten().copied())
        .max()
        .unwrap_or(1);
    let degree = match declared {
        Some(n) if n < largest => {
            return Err(Error::InvalidPermutation(format!(
                "point {largest} exceeds declared degree {n}"
            )))
        }
        Some(n) => n,
        None => largest,
    };
    let mut gens = Vec::with_capacity(rows.len());
    for (line, cs) in rows {
        let p = Permutation::from_cycles(degree, &cs).map_err(|e| match e {
            Error::InvalidPermutation(m) => parse_error(line, 1, m),
            other => other,
        })?;
        gens.push(p);
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    Ok((degree, gens))
}

pub fn read_generator_file(path: &Path) -> Result<GroupHandle> {
    let text = std::fs::read_to_string(path)?;
    let (_, gens) = parse_generator_file(&text)?;
    GroupHandle::new(gens, format!("file:{}", path.display()))
}

pub fn write_generator_file(g: &GroupHandle) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}
