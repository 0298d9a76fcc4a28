//! Reports: named results plus pass/fail assertions, rendered as text or JSON.
//! Rendering depends only on the contents, never on timing or cache state.

use std::collections::BTreeMap;

use kvcs_core::forms::CyclicForm;
use kvcs_core::freelie::LieSeries;
use kvcs_core::simplicial::level_of;
use kvcs_core::text::{format_form, format_series};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Config, Format};

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
enum Body {
    Line(String),
    /// Lines of a per-degree table.
    Table(Vec<String>),
}

#[derive(Clone, Debug)]
struct Entry {
    name: String,
    body: Body,
    json: Value,
}

#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    config: Vec<(String, String)>,
    ledger_hash: String,
    overrides: Vec<String>,
    entries: Vec<Entry>,
    assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: &str, cfg: &Config) -> Self {
        Report {
            command: command.to_string(),
            config: cfg.snapshot(),
            ledger_hash: cfg.ledger_hash(),
            overrides: cfg.ledger.overrides(),
            entries: Vec::new(),
            assertions: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn value(&mut self, name: &str, v: impl ToString) {
        let s = v.to_string();
        self.entries.push(Entry {
            name: name.into(),
            body: Body::Line(s.clone()),
            json: Value::String(s),
        });
    }

    pub fn json_value(&mut self, name: &str, text: impl ToString, v: Value) {
        self.entries.push(Entry {
            name: name.into(),
            body: Body::Line(text.to_string()),
            json: v,
        });
    }

    pub fn series(&mut self, name: &str, s: &LieSeries) {
        self.value(name, format_series(s));
    }

    /// A form, tabulated by (de Rham degree, letter count).
    pub fn form(&mut self, name: &str, f: &CyclicForm) {
        let mut lines = Vec::new();
        for ((j, k), part) in split_form(f) {
            lines.push(format!("degree {j}, letters {k}: {}", format_form(&part)));
        }
        if lines.is_empty() {
            lines.push("0".into());
        }
        self.entries.push(Entry {
            name: name.into(),
            body: Body::Table(lines),
            json: form_json(f),
        });
    }

    pub fn assert(&mut self, name: &str, pass: bool, detail: impl ToString) {
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            detail: detail.to_string(),
        });
    }

    pub fn extend_assertions(&mut self, prefix: &str, items: Vec<Assertion>) {
        for a in items {
            self.assertions.push(Assertion {
                name: format!("{prefix}{}", a.name),
                ..a
            });
        }
    }

    pub fn assertions(&self) -> &[Assertion] {
        &self.assertions
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        let cfg: Vec<String> = self
            .config
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!("config: {}\n", cfg.join(" ")));
        out.push_str(&format!("ledger: {}\n", self.ledger_hash));
        for o in &self.overrides {
            out.push_str(&format!("ledger override: {o}\n"));
        }
        if !self.entries.is_empty() {
            out.push_str("results:\n");
            for e in &self.entries {
                match &e.body {
                    Body::Line(s) => out.push_str(&format!("  {} = {}\n", e.name, s)),
                    Body::Table(lines) => {
                        out.push_str(&format!("  {}:\n", e.name));
                        for l in lines {
                            out.push_str(&format!("    {l}\n"));
                        }
                    }
                }
            }
        }
        if !self.assertions.is_empty() {
            out.push_str("assertions:\n");
            for a in &self.assertions {
                let tag = if a.pass { "pass" } else { "FAIL" };
                if a.detail.is_empty() {
                    out.push_str(&format!("  [{tag}] {}\n", a.name));
                } else {
                    out.push_str(&format!("  [{tag}] {}: {}\n", a.name, a.detail));
                }
            }
        }
        out.push_str(&format!(
            "status: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        let config: BTreeMap<&str, &str> = self
            .config
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        let results: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({ "name": e.name, "value": e.json }))
            .collect();
        json!({
            "command": self.command,
            "config": config,
            "ledger_hash": self.ledger_hash,
            "ledger_overrides": self.overrides,
            "results": results,
            "assertions": self.assertions,
            "passed": self.passed(),
        })
    }
}

/// Homogeneous pieces of a form keyed by (de Rham degree, letter count).
fn split_form(f: &CyclicForm) -> BTreeMap<(u32, usize), CyclicForm> {
    let mut out: BTreeMap<(u32, usize), CyclicForm> = BTreeMap::new();
    for (w, c) in f.iter() {
        let j = w.degree();
        let entry = out
            .entry((j, w.len()))
            .or_insert_with(|| CyclicForm::zero(f.gens(), f.truncation()));
        entry.add_word(w, c.clone());
    }
    out
}

/// `{level, truncation, groups: [{de_rham_degree, letters, coefficients}]}`,
/// coefficients keyed by canonical cyclic words.
pub fn form_json(f: &CyclicForm) -> Value {
    let groups: Vec<Value> = split_form(f)
        .into_iter()
        .map(|((j, k), part)| {
            let coeffs: BTreeMap<String, String> = part
                .iter()
                .map(|(w, c)| (w.to_string(), c.to_string()))
                .collect();
            json!({ "de_rham_degree": j, "letters": k, "coefficients": coeffs })
        })
        .collect();
    json!({
        "level": level_of(f).ok(),
        "truncation": f.truncation(),
        "groups": groups,
    })
}
