//! Verification reports: a header (command, inputs, verdict) and a body
//! listing every nonzero residual entry. Keys are emitted sorted.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::document::Document;
use crate::exactlin::format_rational;
use crate::multilinear::{GradedMap, MixedMap, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Invalid,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::Invalid => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Invalid => "invalid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub location: String,
    pub expected: String,
    pub got: String,
}

impl Finding {
    pub fn new(location: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        Finding { location: location.into(), expected: expected.into(), got: got.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub body: Vec<Finding>,
    /// Extra structured output, e.g. cohomology dimensions.
    pub data: BTreeMap<String, Value>,
    verdict: Option<Verdict>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: BTreeMap::new(), body: Vec::new(), data: BTreeMap::new(), verdict: None }
    }

    pub fn input(mut self, key: &str, value: impl Into<String>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    /// Forces a verdict; otherwise it is `holds` iff the body is empty.
    pub fn set_verdict(&mut self, v: Verdict) {
        self.verdict = Some(v);
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict.unwrap_or(if self.body.is_empty() { Verdict::Holds } else { Verdict::Fails })
    }

    pub fn to_text(&self) -> String {
        let mut top = serde_json::Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("inputs".into(), serde_json::to_value(&self.inputs).expect("map"));
        top.insert("verdict".into(), Value::String(self.verdict().as_str().into()));
        top.insert("body".into(), serde_json::to_value(&self.body).expect("findings"));
        if !self.data.is_empty() {
            top.insert("data".into(), serde_json::to_value(&self.data).expect("map"));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        text.push('\n');
        text
    }
}

fn label_global(doc: &Document, i: usize) -> String {
    if doc.space.is_g(i) {
        doc.label(Target::IntoG, i)
    } else {
        doc.label(Target::IntoH, i - doc.space.dim_g)
    }
}

/// One finding per nonzero coordinate of a component-shaped map.
pub fn mixed_findings(doc: &Document, name: &str, m: &MixedMap) -> Vec<Finding> {
    let mut out = Vec::new();
    for ((gt, ht), v) in m.entries() {
        let args: Vec<String> = gt
            .iter()
            .map(|&i| doc.label(Target::IntoG, i))
            .chain(ht.iter().map(|&j| doc.label(Target::IntoH, j)))
            .collect();
        for (i, c) in v.iter().enumerate() {
            if *c.numer() != 0.into() {
                let loc = format!("{name}({})[{}]", args.join(","), doc.label(m.target(), i));
                out.push(Finding::new(loc, "0", format_rational(c)));
            }
        }
    }
    out
}

/// Findings for a map on all of `g ⊕ h`.
pub fn graded_findings(doc: &Document, name: &str, m: &GradedMap) -> Vec<Finding> {
    let mut out = Vec::new();
    for (t, v) in m.entries() {
        let args: Vec<String> = t.iter().map(|&i| label_global(doc, i)).collect();
        for (i, c) in v.iter().enumerate() {
            if *c.numer() != 0.into() {
                let loc = format!("{name}({})[{}]", args.join(","), label_global(doc, i));
                out.push(Finding::new(loc, "0", format_rational(c)));
            }
        }
    }
    out
}
