use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Md,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "md" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format '{s}', expected json, md or csv")),
        }
    }
}

/// Process exit status, ordered by severity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    #[default]
    Ok,
    /// A theorem was refuted or a table row differs from the expected value.
    Refuted,
    Undecidable,
    LimitExceeded,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Refuted => 1,
            Outcome::Undecidable => 2,
            Outcome::LimitExceeded => 3,
        }
    }
}

/// Tabular command output. Every row has one value per column.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Free-form lines printed after the table.
    pub notes: Vec<String>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn escalate(&mut self, outcome: Outcome) {
        self.outcome = self.outcome.max(outcome);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Md => self.render_md(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone().into());
        top.insert("rows".into(), rows.into());
        if !self.notes.is_empty() {
            top.insert("notes".into(), self.notes.clone().into());
        }
        top.insert("exit_code".into(), self.outcome.code().into());
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
        s.push('\n');
        s
    }

    fn render_md(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(cell).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.columns[i].chars().count(), 3])
                    .max()
                    .unwrap_or(3)
            })
            .collect();
        let line = |vals: &[String]| {
            let padded: Vec<String> = vals
                .iter()
                .zip(&widths)
                .map(|(v, &w)| format!("{v}{}", " ".repeat(w - v.chars().count())))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut out = format!("`{}`\n\n", self.command);
        out += &line(&self.columns);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out += &line(&rule);
        for r in &cells {
            out += &line(r);
        }
        for n in &self.notes {
            let _ = write!(out, "\n{n}");
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        let row = |vals: Vec<String>| {
            vals.iter()
                .map(|v| csv_field(v))
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        };
        out += &row(self.columns.clone());
        for r in &self.rows {
            out += &row(r.iter().map(cell).collect());
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join("; "),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("invariants A(5)", &["name", "value"]);
        r.push(vec![json!("d"), json!("4/15")]);
        r.push(vec![json!("primes"), json!([2, 3, 5])]);
        r.push(vec![json!("note"), json!("a, \"b\"")]);
        r
    }

    #[test]
    fn json_keeps_column_order() {
        let s = sample().render(Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0]["value"], "4/15");
        assert_eq!(v["exit_code"], 0);
        assert!(s.find("\"name\"").unwrap() < s.find("\"value\"").unwrap());
    }

    #[test]
    fn md_and_csv() {
        let md = sample().render(Format::Md);
        assert!(md.contains("| d      | 4/15"), "{md}");
        let csv = sample().render(Format::Csv);
        assert_eq!(
            csv,
            "name,value\nd,4/15\nprimes,2; 3; 5\nnote,\"a, \"\"b\"\"\"\n"
        );
    }

    #[test]
    fn outcome_escalates() {
        let mut r = sample();
        r.escalate(Outcome::Undecidable);
        r.escalate(Outcome::Refuted);
        assert_eq!(r.outcome.code(), 2);
    }
}
