use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::REPORT_V1;
use crate::hodge::{AxiomVerdict, HodgeVerdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub axiom: String,
    pub degree: i32,
    pub level: i32,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub axiom: String,
    pub pass: bool,
    pub witnesses: Vec<WitnessDoc>,
}

fn axiom_doc(a: &AxiomVerdict) -> VerdictDoc {
    VerdictDoc {
        axiom: a.axiom.as_str().into(),
        pass: a.pass,
        witnesses: a
            .witnesses
            .iter()
            .map(|w| WitnessDoc { axiom: w.axiom.as_str().into(), degree: w.degree, level: w.level, detail: w.detail.clone() })
            .collect(),
    }
}

pub fn verdict_doc(v: &HodgeVerdict) -> Vec<VerdictDoc> {
    v.axioms.iter().map(axiom_doc).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    /// Aligned text with a title line.
    pub fn render(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &body {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = format!("{}\n", self.name);
        out.push_str(&line(&self.columns));
        out.push('\n');
        for r in &body {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Machine-readable output of any command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub command: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            format: REPORT_V1.into(),
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            pass: None,
            verdicts: Vec::new(),
            tables: Vec::new(),
            data: None,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(p) = self.pass {
            out.push_str(&format!("{}: {}\n", self.command, if p { "pass" } else { "FAIL" }));
        }
        for v in &self.verdicts {
            out.push_str(&format!("  {:<4} {}\n", v.axiom, if v.pass { "pass" } else { "FAIL" }));
            for w in &v.witnesses {
                out.push_str(&format!("       degree {} level {}: {}\n", w.degree, w.level, w.detail));
            }
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&t.render());
        }
        out
    }
}
