//! Command-line surface. [`run`] is the whole program minus process I/O, so
//! it can be driven from tests.
//!
//! Exit codes: 0 the checked property holds, 1 it fails (witnesses in the
//! report), 2 the input is invalid or a precondition is not met.

pub mod document;
pub mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cohomology::{check_l1_equals_d, cohomology_report, CochainComplex, DeformationMap, induced_pair};
use crate::defmaps::{ddmap_residual, dmap_residual, graph_subalgebra_check, twist_by_b, twist_by_d, OperatorB, OperatorD};
use crate::error::{Error, Result};
use crate::exactlin::{parse_rational, rat, Matrix, Rational};
use crate::mcalg::closed_form::{ClosedForm, ClosedFormKind};
use crate::mcalg::{
    derived_bracket, operator_cochain, twist_type1, twist_type2, type1_mc_residual, type2_mc_residual, VData,
};
use crate::multilinear::{MixedMap, Target};
use crate::qtla::catalog::CatalogKind;
use crate::qtla::{Catalog, LieAlgebra, QuasiTwilled, STRUCTURE_EQUATIONS};
use crate::sampling;
use document::{emit_document, parse_document, Document, Names, Operator};
use report::{graded_findings, mixed_findings, Finding, Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "qtwilled", version, about = "Exact checks for quasi-twilled structures and operators on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapType {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a catalog structure as a document.
    Catalog {
        kind: String,
        /// A preset (sl2, aff1, heis3, abelianN) or a document whose pi is the bracket.
        #[arg(long, default_value = "sl2")]
        lie: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check structure equations or a deformation map.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Twist the structure by an operator.
    Twist {
        file: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long = "type")]
        ty: MapType,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maurer-Cartan residual, optionally in the algebra twisted around a map.
    McResidual {
        file: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long = "type")]
        ty: MapType,
        #[arg(long)]
        twisted_around: Option<String>,
    },
    /// Cohomology dimensions of a deformation map.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long = "type")]
        ty: MapType,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Generic-vs-closed-form brackets and d² = 0 on built-in catalogs.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// The seven structure equations.
    Qtla { file: PathBuf },
    /// The type I deformation map equation.
    Dmap {
        file: PathBuf,
        #[arg(long)]
        op: String,
    },
    /// The type II deformation map equation.
    Ddmap {
        file: PathBuf,
        #[arg(long)]
        op: String,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => {
            let mut r = Report::new(name);
            r.body.push(Finding::new("input", "valid input", e.to_string()));
            r.set_verdict(Verdict::Invalid);
            Outcome { code: 2, stdout: r.to_text(), stderr: format!("error: {e}\n") }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog { .. } => "catalog",
        Command::Check(CheckCommand::Qtla { .. }) => "check qtla",
        Command::Check(CheckCommand::Dmap { .. }) => "check dmap",
        Command::Check(CheckCommand::Ddmap { .. }) => "check ddmap",
        Command::Twist { .. } => "twist",
        Command::McResidual { .. } => "mc-residual",
        Command::Cohomology { .. } => "cohomology",
        Command::Selftest => "selftest",
    }
}

fn report_outcome(r: &Report) -> Outcome {
    Outcome { code: r.verdict().exit_code(), stdout: r.to_text(), stderr: String::new() }
}

fn file_label(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string())
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display())))
}

fn operator_d(doc: &Document, name: &str) -> Result<OperatorD> {
    match doc.operator(name)? {
        Operator::D(d) => Ok(d.clone()),
        Operator::B(_) => Err(Error::Document(format!("operator {name:?} has direction h->g; type I needs g->h"))),
    }
}

fn operator_b(doc: &Document, name: &str) -> Result<OperatorB> {
    match doc.operator(name)? {
        Operator::B(b) => Ok(b.clone()),
        Operator::D(_) => Err(Error::Document(format!("operator {name:?} has direction g->h; type II needs h->g"))),
    }
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Catalog { kind, lie, lambda, out } => catalog(&kind, &lie, &lambda, out.as_deref()),
        Command::Check(CheckCommand::Qtla { file }) => check_qtla(&file),
        Command::Check(CheckCommand::Dmap { file, op }) => check_dmap(&file, &op),
        Command::Check(CheckCommand::Ddmap { file, op }) => check_ddmap(&file, &op),
        Command::Twist { file, op, ty, out } => twist(&file, &op, ty, out.as_deref()),
        Command::McResidual { file, op, ty, twisted_around } => mc_residual(&file, &op, ty, twisted_around.as_deref()),
        Command::Cohomology { file, op, ty, max_degree } => cohomology(&file, &op, ty, max_degree),
        Command::Selftest => Ok(report_outcome(&selftest())),
    }
}

fn catalog_lie(spec: &str) -> Result<(LieAlgebra, Vec<String>)> {
    if let Some(lie) = LieAlgebra::preset(spec) {
        return Ok((lie, LieAlgebra::preset_basis_names(spec).unwrap_or_default()));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Document(format!("--lie {spec:?} is neither a preset (sl2, aff1, heis3, abelianN) nor a file")));
    }
    let doc = load(path)?;
    let pi = doc.component("pi").expect("pi is always present").to_alt();
    Ok((LieAlgebra::new(pi)?, doc.names.g.clone()))
}

/// `g` keeps the preset names; `h` gets primed copies when it has the same
/// dimension, so report locations stay unambiguous.
fn catalog_names(space: crate::multilinear::SplitSpace, names: Vec<String>) -> Names {
    let numbered = |p: &str, n: usize| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let g = if names.len() == space.dim_g { names } else { numbered("g", space.dim_g) };
    let h = if g.len() == space.dim_h { g.iter().map(|n| format!("{n}'")).collect() } else { numbered("h", space.dim_h) };
    Names { g, h }
}

fn standard_operators(space: crate::multilinear::SplitSpace) -> BTreeMap<String, Operator> {
    let mut ops = BTreeMap::new();
    ops.insert("zero".to_string(), Operator::D(OperatorD::zero(space)));
    ops.insert("zero_hg".to_string(), Operator::B(OperatorB::zero(space)));
    if space.dim_g == space.dim_h {
        let id = Matrix::identity(space.dim_g);
        ops.insert("identity".to_string(), Operator::D(OperatorD::new(space, id.clone()).expect("square")));
        ops.insert("identity_hg".to_string(), Operator::B(OperatorB::new(space, id).expect("square")));
    }
    ops
}

fn catalog(kind: &str, lie: &str, lambda: &str, out: Option<&Path>) -> Result<Outcome> {
    let kind: CatalogKind = kind.parse()?;
    let lambda = parse_rational(lambda)?;
    let (g, names) = catalog_lie(lie)?;
    let qt = Catalog::standard(kind, &g, &lambda).build()?;
    let mut doc = Document::from_quasi_twilled(&qt, catalog_names(qt.space(), names));
    doc.operators = standard_operators(qt.space());
    let text = emit_document(&doc);
    let mut r = Report::new("catalog").input("kind", kind.name()).input("lie", lie).input("lambda", lambda.to_string());
    for i in qt.verify_structure_equations().failing() {
        r.body.push(Finding::new(format!("equation {i}"), "0", "nonzero"));
    }
    match out {
        Some(path) => {
            write_out(path, &text)?;
            let r = r.input("out", file_label(path));
            Ok(report_outcome(&r))
        }
        None => Ok(Outcome { code: r.verdict().exit_code(), stdout: text, stderr: String::new() }),
    }
}

fn check_qtla(file: &Path) -> Result<Outcome> {
    let doc = load(file)?;
    let mut r = Report::new("check qtla").input("file", file_label(file));
    if let Some(xi) = doc.component("xi") {
        r.body.extend(mixed_findings(&doc, "xi", xi));
    }
    let qt = QuasiTwilled::new(
        doc.space,
        doc.component("pi").expect("present").clone(),
        doc.component("rho").expect("present").clone(),
        doc.component("mu").expect("present").clone(),
        doc.component("eta").expect("present").clone(),
        doc.component("theta").expect("present").clone(),
    )?;
    let rep = qt.verify_structure_equations();
    for (i, res) in rep.residuals.iter().enumerate() {
        let name = format!("equation {} [{}]", i + 1, STRUCTURE_EQUATIONS[i]);
        r.body.extend(graded_findings(&doc, &name, res));
    }
    let omega = doc.omega();
    r.body.extend(graded_findings(&doc, "[Omega,Omega]", &crate::nrbracket::nr_bracket(&omega, &omega)));
    r.data.insert("failing_equations".into(), json!(rep.failing()));
    Ok(report_outcome(&r))
}

fn check_dmap(file: &Path, op: &str) -> Result<Outcome> {
    let doc = load(file)?;
    let qt = doc.quasi_twilled()?;
    let d = operator_d(&doc, op)?;
    let mut r = Report::new("check dmap").input("file", file_label(file)).input("op", op);
    let residual = dmap_residual(&qt, &d)?;
    r.body.extend(mixed_findings(&doc, "R", &residual));
    let graph = graph_subalgebra_check(&qt, &d)?;
    let mc = type1_mc_residual(&qt, &d).is_zero();
    if graph != residual.is_zero() || mc != residual.is_zero() {
        r.body.push(Finding::new("agreement", "residual, graph and MC verdicts agree", format!("graph {graph}, mc {mc}")));
    }
    r.data.insert("graph_subalgebra".into(), json!(graph));
    r.data.insert("mc_residual_zero".into(), json!(mc));
    Ok(report_outcome(&r))
}

fn check_ddmap(file: &Path, op: &str) -> Result<Outcome> {
    let doc = load(file)?;
    let qt = doc.quasi_twilled()?;
    let b = operator_b(&doc, op)?;
    let mut r = Report::new("check ddmap").input("file", file_label(file)).input("op", op);
    let residual = ddmap_residual(&qt, &b)?;
    r.body.extend(mixed_findings(&doc, "S", &residual));
    let mc = type2_mc_residual(&qt, &b).is_zero();
    if mc != residual.is_zero() {
        r.body.push(Finding::new("agreement", "residual and MC verdicts agree", format!("mc {mc}")));
    }
    r.data.insert("mc_residual_zero".into(), json!(mc));
    Ok(report_outcome(&r))
}

fn twist(file: &Path, op: &str, ty: MapType, out: Option<&Path>) -> Result<Outcome> {
    let doc = load(file)?;
    let qt = doc.quasi_twilled()?;
    let mut r = Report::new("twist").input("file", file_label(file)).input("op", op).input("type", type_name(ty));
    let mut twisted = match ty {
        MapType::I => Document::from_quasi_twilled(&twist_by_d(&qt, &operator_d(&doc, op)?)?, doc.names.clone()),
        MapType::II => {
            let tw = twist_by_b(&qt, &operator_b(&doc, op)?)?;
            // ξ^B is the obstruction to h staying a subalgebra
            r.body.extend(mixed_findings(&doc, "xi", &tw.xi));
            Document::from_twisted_b(&tw, doc.names.clone())
        }
    };
    twisted.operators = doc.operators.clone();
    let text = emit_document(&twisted);
    match out {
        Some(path) => {
            write_out(path, &text)?;
            let r = r.input("out", file_label(path));
            Ok(report_outcome(&r))
        }
        None => Ok(Outcome { code: r.verdict().exit_code(), stdout: text, stderr: String::new() }),
    }
}

fn type_name(ty: MapType) -> &'static str {
    match ty {
        MapType::I => "I",
        MapType::II => "II",
    }
}

fn mc_residual(file: &Path, op: &str, ty: MapType, around: Option<&str>) -> Result<Outcome> {
    let doc = load(file)?;
    let qt = doc.quasi_twilled()?;
    let mut r = Report::new("mc-residual").input("file", file_label(file)).input("op", op).input("type", type_name(ty));
    if let Some(a) = around {
        r = r.input("twisted_around", a);
    }
    let sp = qt.space();
    let residual: MixedMap = match (ty, around) {
        (MapType::I, None) => type1_mc_residual(&qt, &operator_d(&doc, op)?),
        (MapType::II, None) => type2_mc_residual(&qt, &operator_b(&doc, op)?),
        (MapType::I, Some(a)) => {
            let tw = twist_type1(&qt, &operator_d(&doc, a)?)?;
            let res = tw.mc_residual(&operator_cochain(operator_d(&doc, op)?.matrix()));
            MixedMap::from_g_alt(sp, Target::IntoH, &res)
        }
        (MapType::II, Some(a)) => {
            let tw = twist_type2(&qt, &operator_b(&doc, a)?)?;
            let res = tw.mc_residual(&operator_cochain(operator_b(&doc, op)?.matrix()));
            MixedMap::from_h_alt(sp, Target::IntoG, &res)
        }
    };
    r.body.extend(mixed_findings(&doc, "MC", &residual));
    Ok(report_outcome(&r))
}

fn cohomology(file: &Path, op: &str, ty: MapType, max_degree: usize) -> Result<Outcome> {
    let doc = load(file)?;
    let qt = doc.quasi_twilled()?;
    let map = match ty {
        MapType::I => DeformationMap::TypeI(operator_d(&doc, op)?),
        MapType::II => DeformationMap::TypeII(operator_b(&doc, op)?),
    };
    let mut r = Report::new("cohomology")
        .input("file", file_label(file))
        .input("op", op)
        .input("type", type_name(ty))
        .input("max_degree", max_degree.to_string());
    match cohomology_report(&qt, &map, max_degree) {
        Ok(degrees) => {
            let rows: Vec<_> = degrees
                .iter()
                .map(|d| {
                    json!({"degree": d.degree, "cochain_dim": d.cochain_dim, "rank": d.rank, "cohomology_dim": d.cohomology_dim})
                })
                .collect();
            r.data.insert("degrees".into(), json!(rows));
        }
        Err(Error::NonzeroSquare(n)) => {
            r.body.push(Finding::new(format!("d{} d{n}", n + 1), "0", "nonzero"));
        }
        Err(e) => return Err(e),
    }
    Ok(report_outcome(&r))
}

/// Generic-vs-closed-form brackets, `l₁ = ±d` and `d² = 0` on the built-in
/// catalogs, with a fixed seed.
pub fn selftest() -> Report {
    let mut r = Report::new("selftest");
    let mut rng = sampling::rng(2024);
    let mut checks = 0usize;
    for lie_name in ["sl2", "aff1", "heis3", "abelian2"] {
        let lie = LieAlgebra::preset(lie_name).expect("preset");
        for kind in ClosedFormKind::ALL {
            let cat = Catalog::standard(kind.catalog_kind(), &lie, &rat(1));
            let qt = match cat.build() {
                Ok(q) => q,
                Err(e) => {
                    r.body.push(Finding::new(format!("{lie_name}/{kind}"), "catalog builds", e.to_string()));
                    continue;
                }
            };
            if !qt.is_quasi_twilled() {
                r.body.push(Finding::new(format!("{lie_name}/{kind}"), "structure equations hold", "fail"));
            }
            let cf = ClosedForm::new(kind, &cat).expect("matching kind");
            let v = VData::new(kind.side(), qt.omega()).expect("V-data");
            let (s, t) = cf.dims();
            for p in 0..=2 {
                let f = sampling::alt_map(&mut rng, s, t, p);
                let g = sampling::alt_map(&mut rng, s, t, 1);
                let h = sampling::alt_map(&mut rng, s, t, 1);
                let pairs = [
                    ("l1", derived_bracket(&v, std::slice::from_ref(&f)), cf.l1(&f)),
                    ("l2", derived_bracket(&v, &[f.clone(), g.clone()]), cf.l2(&f, &g)),
                    ("l3", derived_bracket(&v, &[f.clone(), g.clone(), h.clone()]), cf.l3(&f, &g, &h)),
                ];
                for (which, generic, closed) in pairs {
                    checks += 1;
                    if generic != closed {
                        r.body.push(Finding::new(format!("{lie_name}/{kind}/{which}/arity {p}"), "generic = closed form", "differ"));
                    }
                }
            }
            let map = match kind.side() {
                crate::mcalg::Side::TypeI => DeformationMap::TypeI(OperatorD::zero(qt.space())),
                crate::mcalg::Side::TypeII => DeformationMap::TypeII(OperatorB::zero(qt.space())),
            };
            if !qt.theta().is_zero() && matches!(map, DeformationMap::TypeI(_)) {
                continue;
            }
            let pair = induced_pair(&qt, &map).expect("zero map is a deformation map");
            checks += 1;
            if let Err(e) = CochainComplex::new(&pair, 3) {
                r.body.push(Finding::new(format!("{lie_name}/{kind}/complex"), "d squares to zero", e.to_string()));
            }
            let f = sampling::alt_map(&mut rng, s, t, 2);
            checks += 1;
            if !check_l1_equals_d(&qt, &map, &f).unwrap_or(false) {
                r.body.push(Finding::new(format!("{lie_name}/{kind}/l1"), "l1 = -d on arity 2", "differ"));
            }
        }
    }
    r.data.insert("checks".into(), json!(checks));
    r
}

/// Parses a `p/q` helper used by tests.
pub fn rational(text: &str) -> Rational {
    parse_rational(text).expect("rational literal")
}
