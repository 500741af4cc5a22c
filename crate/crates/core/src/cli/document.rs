//! The JSON document format shared by every command.
//!
//! ```json
//! { "format_version": "1", "scalars": "rational",
//!   "space": { "dim_g": 3, "dim_h": 3, "names": { "g": ["e","h","f"], "h": [] } },
//!   "components": { "pi": [ { "g_tuple": [1,2], "h_tuple": [], "target_index": 1, "coefficient": "-2" } ] },
//!   "operators": { "R": { "direction": "g->h", "matrix": [["1","0","0"], …] } } }
//! ```
//! Indices are 1-based in files. Coefficients are integers or `"p/q"`
//! strings. Emission is canonical: sorted keys, sorted entries, zero entries
//! dropped, every coefficient a string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use crate::defmaps::{OperatorB, OperatorD, TwistedB};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Matrix, Rational};
use crate::multilinear::{GradedMap, MixedMap, SplitSpace, Target};
use crate::qtla::{QuasiTwilled, COMPONENT_NAMES, COMPONENT_SHAPES};

pub const FORMAT_VERSION: &str = "1";

/// Shape of the optional sixth component `ξ: ∧²h → g`.
const XI_SHAPE: ((usize, usize), Target) = ((0, 2), Target::IntoG);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational> {
        match self {
            Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub g_tuple: Vec<usize>,
    pub h_tuple: Vec<usize>,
    pub target_index: usize,
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Names {
    #[serde(default)]
    pub g: Vec<String>,
    #[serde(default)]
    pub h: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub dim_g: usize,
    pub dim_h: usize,
    #[serde(default)]
    pub names: Names,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub direction: String,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    scalars: String,
    space: SpaceSpec,
    #[serde(default)]
    components: BTreeMap<String, Vec<Entry>>,
    #[serde(default)]
    operators: BTreeMap<String, OperatorSpec>,
}

/// A named operator, already shape-checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    D(OperatorD),
    B(OperatorB),
}

impl Operator {
    pub fn direction(&self) -> &'static str {
        match self {
            Operator::D(_) => "g->h",
            Operator::B(_) => "h->g",
        }
    }

    pub fn matrix(&self) -> &Matrix {
        match self {
            Operator::D(d) => d.matrix(),
            Operator::B(b) => b.matrix(),
        }
    }
}

/// A validated document: a bracket on `g ⊕ h` by components, plus operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub space: SplitSpace,
    pub names: Names,
    /// `pi, rho, mu, eta, theta` and possibly `xi`, in that order.
    pub components: Vec<(String, MixedMap)>,
    pub operators: BTreeMap<String, Operator>,
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn shape_of(name: &str) -> Option<((usize, usize), Target)> {
    if name == "xi" {
        return Some(XI_SHAPE);
    }
    COMPONENT_NAMES.iter().position(|n| *n == name).map(|i| COMPONENT_SHAPES[i])
}

fn check_tuple(what: &str, t: &[usize], dim: usize) -> Result<Vec<usize>> {
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(semantic(format!("{what}: tuple not strictly increasing: {t:?}")));
    }
    if let Some(&i) = t.iter().find(|&&i| i == 0 || i > dim) {
        return Err(semantic(format!("{what}: index {i} out of range 1..={dim}")));
    }
    Ok(t.iter().map(|i| i - 1).collect())
}

fn build_component(space: SplitSpace, name: &str, entries: &[Entry]) -> Result<MixedMap> {
    let Some(((k, l), target)) = shape_of(name) else {
        return Err(semantic(format!("unknown component {name:?}; expected one of pi, rho, mu, eta, theta, xi")));
    };
    let tgt_dim = space.dim(target);
    let mut table: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Rational>> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for (n, e) in entries.iter().enumerate() {
        let what = format!("components.{name}[{n}]");
        if e.g_tuple.len() != k || e.h_tuple.len() != l {
            return Err(semantic(format!(
                "{what}: component {name} takes {k} g-arguments and {l} h-arguments, got {} and {}",
                e.g_tuple.len(),
                e.h_tuple.len()
            )));
        }
        let gt = check_tuple(&format!("{what}.g_tuple"), &e.g_tuple, space.dim_g)?;
        let ht = check_tuple(&format!("{what}.h_tuple"), &e.h_tuple, space.dim_h)?;
        if e.target_index == 0 || e.target_index > tgt_dim {
            return Err(semantic(format!("{what}: target_index {} out of range 1..={tgt_dim}", e.target_index)));
        }
        if !seen.insert((gt.clone(), ht.clone(), e.target_index)) {
            return Err(semantic(format!("{what}: duplicate entry")));
        }
        let c = e.coefficient.value().map_err(|err| semantic(format!("{what}.coefficient: {err}")))?;
        table.entry((gt, ht)).or_insert_with(|| vec![Rational::from_integer(0.into()); tgt_dim])[e.target_index - 1] = c;
    }
    let mut m = MixedMap::zero(space, k, l, target);
    for ((gt, ht), v) in table {
        m.set(&gt, &ht, v)?;
    }
    Ok(m)
}

fn build_operator(space: SplitSpace, name: &str, spec: &OperatorSpec) -> Result<Operator> {
    let what = format!("operators.{name}");
    let (rows, cols) = match spec.direction.as_str() {
        "g->h" => (space.dim_h, space.dim_g),
        "h->g" => (space.dim_g, space.dim_h),
        other => return Err(semantic(format!("{what}.direction: expected \"g->h\" or \"h->g\", got {other:?}"))),
    };
    if spec.matrix.len() != rows || spec.matrix.iter().any(|r| r.len() != cols) {
        return Err(semantic(format!("{what}.matrix: expected {rows} rows of {cols} entries for {}", spec.direction)));
    }
    let mut values = Vec::with_capacity(rows);
    for (i, r) in spec.matrix.iter().enumerate() {
        let row = r
            .iter()
            .enumerate()
            .map(|(j, c)| c.value().map_err(|e| semantic(format!("{what}.matrix[{i}][{j}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    let m = if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(values)? };
    Ok(match spec.direction.as_str() {
        "g->h" => Operator::D(OperatorD::new(space, m)?),
        _ => Operator::B(OperatorB::new(space, m)?),
    })
}

/// Parses and validates a document. Syntax errors carry line and column.
pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        // serde_json appends its own position; keep only the message
        let full = e.to_string();
        let msg = full.strip_suffix(&format!(" at line {} column {}", e.line(), e.column())).unwrap_or(&full);
        let what = match e.classify() {
            Category::Data => "invalid document",
            _ => "syntax error",
        };
        semantic(format!("{what} at line {}, column {}: {msg}", e.line(), e.column()))
    })?;

    if raw.format_version != FORMAT_VERSION {
        return Err(semantic(format!("unsupported format_version {:?}; expected {FORMAT_VERSION:?}", raw.format_version)));
    }
    if raw.scalars != "rational" {
        return Err(semantic(format!("scalars must be \"rational\", got {:?}", raw.scalars)));
    }
    let space = SplitSpace::new(raw.space.dim_g, raw.space.dim_h);
    let names = raw.space.names.clone();
    for (which, list, dim) in [("g", &names.g, space.dim_g), ("h", &names.h, space.dim_h)] {
        if !list.is_empty() && list.len() != dim {
            return Err(semantic(format!("space.names.{which}: {} names for dimension {dim}", list.len())));
        }
    }
    let mut components = Vec::new();
    for name in raw.components.keys() {
        if shape_of(name).is_none() {
            return Err(semantic(format!("unknown component {name:?}; expected one of pi, rho, mu, eta, theta, xi")));
        }
    }
    for name in COMPONENT_NAMES.iter().copied().chain(["xi"]) {
        match raw.components.get(name) {
            Some(entries) => components.push((name.to_string(), build_component(space, name, entries)?)),
            None if name == "xi" => {}
            None => {
                let ((k, l), t) = shape_of(name).expect("known");
                components.push((name.to_string(), MixedMap::zero(space, k, l, t)));
            }
        }
    }
    let mut operators = BTreeMap::new();
    for (name, spec) in &raw.operators {
        operators.insert(name.clone(), build_operator(space, name, spec)?);
    }
    Ok(Document { space, names, components, operators })
}

fn scalar(q: &Rational) -> Scalar {
    Scalar::Text(format_rational(q))
}

fn entries_of(m: &MixedMap) -> Vec<Entry> {
    let mut out = Vec::new();
    for ((gt, ht), v) in m.entries() {
        for (i, c) in v.iter().enumerate() {
            if *c.numer() != 0.into() {
                out.push(Entry {
                    g_tuple: gt.iter().map(|x| x + 1).collect(),
                    h_tuple: ht.iter().map(|x| x + 1).collect(),
                    target_index: i + 1,
                    coefficient: scalar(c),
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.g_tuple, &a.h_tuple, a.target_index).cmp(&(&b.g_tuple, &b.h_tuple, b.target_index)));
    out
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn emit_document(doc: &Document) -> String {
    let raw = RawDocument {
        format_version: FORMAT_VERSION.into(),
        scalars: "rational".into(),
        space: SpaceSpec { dim_g: doc.space.dim_g, dim_h: doc.space.dim_h, names: doc.names.clone() },
        components: doc.components.iter().map(|(n, m)| (n.clone(), entries_of(m))).collect(),
        operators: doc
            .operators
            .iter()
            .map(|(n, op)| {
                let m = op.matrix();
                let matrix = (0..m.rows()).map(|r| m.row(r).iter().map(scalar).collect()).collect();
                (n.clone(), OperatorSpec { direction: op.direction().into(), matrix })
            })
            .collect(),
    };
    let value = serde_json::to_value(&raw).expect("serializable");
    let mut text = serde_json::to_string_pretty(&value).expect("serializable");
    text.push('\n');
    text
}

impl Document {
    pub fn from_quasi_twilled(qt: &QuasiTwilled, names: Names) -> Self {
        let components =
            COMPONENT_NAMES.iter().zip(qt.components()).map(|(n, m)| (n.to_string(), m.clone())).collect();
        Document { space: qt.space(), names, components, operators: BTreeMap::new() }
    }

    /// `π, ρ, μ, η, θ` and `ξ`.
    pub fn from_twisted_b(tw: &TwistedB, names: Names) -> Self {
        let comps = [&tw.pi, &tw.rho, &tw.mu, &tw.eta, &tw.theta, &tw.xi];
        let components =
            COMPONENT_NAMES.iter().copied().chain(["xi"]).zip(comps).map(|(n, m)| (n.to_string(), m.clone())).collect();
        Document { space: tw.space(), names, components, operators: BTreeMap::new() }
    }

    pub fn component(&self, name: &str) -> Option<&MixedMap> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// The full bracket, including `ξ` when present.
    pub fn omega(&self) -> GradedMap {
        let comps: Vec<MixedMap> = self.components.iter().map(|(_, m)| m.clone()).collect();
        GradedMap::from_components(self.space, 2, &comps).expect("component shapes")
    }

    /// The quasi-twilled data; fails if `ξ` is present and nonzero.
    pub fn quasi_twilled(&self) -> Result<QuasiTwilled> {
        if self.component("xi").is_some_and(|x| !x.is_zero()) {
            return Err(Error::PremiseViolated("component xi is nonzero, so h is not a subalgebra".into()));
        }
        let get = |n: &str| self.component(n).expect("five components").clone();
        QuasiTwilled::new(self.space, get("pi"), get("rho"), get("mu"), get("eta"), get("theta"))
    }

    pub fn operator(&self, name: &str) -> Result<&Operator> {
        self.operators.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.operators.keys().map(String::as_str).collect();
            semantic(format!("no operator named {name:?}; the document defines {known:?}"))
        })
    }

    /// Basis label of global index `i`, 1-based in output.
    pub fn label(&self, target: Target, i: usize) -> String {
        let list = match target {
            Target::IntoG => &self.names.g,
            Target::IntoH => &self.names.h,
        };
        match list.get(i) {
            Some(n) => n.clone(),
            None => format!("{}{}", if target == Target::IntoG { "g" } else { "h" }, i + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::qtla::{Catalog, LieAlgebra};

    const MINIMAL: &str = r#"{"format_version":"1","scalars":"rational","space":{"dim_g":1,"dim_h":1}}"#;

    #[test]
    fn minimal_document() {
        let doc = parse_document(MINIMAL).unwrap();
        let qt = doc.quasi_twilled().unwrap();
        assert!(qt.omega().is_zero() && qt.is_quasi_twilled());
        assert!(doc.operators.is_empty());
    }

    #[test]
    fn round_trip_is_canonical() {
        let qt = Catalog::Modified { lie: LieAlgebra::sl2(), lambda: rat(1) }.build().unwrap();
        let mut doc = Document::from_quasi_twilled(&qt, Names::default());
        let r = OperatorD::new(qt.space(), Matrix::diagonal(&[rat(1), rat(0), rat(-1)])).unwrap();
        doc.operators.insert("R".into(), Operator::D(r));
        let text = emit_document(&doc);
        let back = parse_document(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(emit_document(&back), text);
    }

    #[test]
    fn rejects_unsorted_tuple() {
        let text = r#"{"format_version":"1","scalars":"rational","space":{"dim_g":2,"dim_h":0},
            "components":{"pi":[{"g_tuple":[2,1],"h_tuple":[],"target_index":1,"coefficient":1}]}}"#;
        let err = parse_document(text).unwrap_err().to_string();
        assert!(err.contains("tuple not strictly increasing"), "{err}");
    }

    #[test]
    fn rejects_unknown_fields_and_reports_syntax_position() {
        let text = MINIMAL.replace("\"scalars\"", "\"colour\":1,\"scalars\"");
        assert!(parse_document(&text).unwrap_err().to_string().contains("unknown field"));
        let err = parse_document("{\n  \"format_version\": \"1\",\n  oops\n}").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn rejects_bad_scalars() {
        let text = r#"{"format_version":"1","scalars":"rational","space":{"dim_g":1,"dim_h":1},
            "operators":{"D":{"direction":"g->h","matrix":[["1/0"]]}}}"#;
        assert!(parse_document(text).is_err());
        let float = text.replace("\"1/0\"", "0.5");
        assert!(parse_document(&float).is_err());
        let ok = text.replace("\"1/0\"", "\"-3/6\"");
        let doc = parse_document(&ok).unwrap();
        assert_eq!(doc.operator("D").unwrap().matrix().get(0, 0), &crate::exactlin::ratio(-1, 2));
    }
}
