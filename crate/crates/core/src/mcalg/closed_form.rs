//! Closed formulas for the controlling brackets of each catalog construction,
//! written directly on cochains. They serve as an independent check of the
//! derived brackets and are what the CLI prints for a catalog.
//!
//! Printed differentials `d` and binary brackets follow the usual suspended
//! conventions; [`ClosedForm::l1`], [`ClosedForm::l2`], [`ClosedForm::l3`]
//! apply the sign relations so that they equal the derived brackets.

use super::{parity_sign, Side};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, rat, unit_vec, zero_vec, Matrix, Rational};
use crate::multilinear::{multi_shuffles, AltMap};
use crate::qtla::catalog::CatalogKind;
use crate::qtla::{Catalog, LieAlgebra, Representation};

/// Which deformation problem a closed formula describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormKind {
    /// Modified r-matrices, on the modified double.
    ModifiedRMatrix,
    /// Crossed homomorphisms, on an action algebra.
    CrossedHomomorphism,
    /// Derivations, on a semidirect product.
    Derivation,
    /// Homomorphisms, on a direct sum.
    Homomorphism,
    /// Relative Rota–Baxter operators of weight λ, on an action algebra.
    RelativeRotaBaxter,
    /// O-operators, on a semidirect product.
    OOperator,
    /// Twisted Rota–Baxter operators, on a cocycle extension.
    TwistedRotaBaxter,
    /// Reynolds operators.
    Reynolds,
    /// Deformation maps of a matched pair.
    MatchedPair,
}

impl ClosedFormKind {
    pub const ALL: [ClosedFormKind; 9] = [
        ClosedFormKind::ModifiedRMatrix,
        ClosedFormKind::CrossedHomomorphism,
        ClosedFormKind::Derivation,
        ClosedFormKind::Homomorphism,
        ClosedFormKind::RelativeRotaBaxter,
        ClosedFormKind::OOperator,
        ClosedFormKind::TwistedRotaBaxter,
        ClosedFormKind::Reynolds,
        ClosedFormKind::MatchedPair,
    ];

    pub fn side(self) -> Side {
        use ClosedFormKind::*;
        match self {
            ModifiedRMatrix | CrossedHomomorphism | Derivation | Homomorphism => Side::TypeI,
            _ => Side::TypeII,
        }
    }

    /// The catalog construction the formula belongs to.
    pub fn catalog_kind(self) -> CatalogKind {
        use ClosedFormKind::*;
        match self {
            ModifiedRMatrix => CatalogKind::Modified,
            CrossedHomomorphism | RelativeRotaBaxter => CatalogKind::Action,
            Derivation | OOperator => CatalogKind::Semidirect,
            Homomorphism => CatalogKind::Direct,
            TwistedRotaBaxter => CatalogKind::Cocycle,
            Reynolds => CatalogKind::Reynolds,
            MatchedPair => CatalogKind::Matched,
        }
    }

    pub fn name(self) -> &'static str {
        use ClosedFormKind::*;
        match self {
            ModifiedRMatrix => "modified-r-matrix",
            CrossedHomomorphism => "crossed-homomorphism",
            Derivation => "derivation",
            Homomorphism => "homomorphism",
            RelativeRotaBaxter => "relative-rota-baxter",
            OOperator => "o-operator",
            TwistedRotaBaxter => "twisted-rota-baxter",
            Reynolds => "reynolds",
            MatchedPair => "matched-pair",
        }
    }

    /// The type I and type II formulas over one catalog construction.
    pub fn for_catalog(kind: CatalogKind) -> Vec<ClosedFormKind> {
        ClosedFormKind::ALL.into_iter().filter(|k| k.catalog_kind() == kind).collect()
    }
}

impl std::fmt::Display for ClosedFormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How the value of an inner cochain acts on an input vector.
#[derive(Clone, Debug)]
enum Insertion {
    /// `[g(…), x]` inside one Lie algebra.
    Bracket(LieAlgebra),
    /// `ρ(g(…))u`.
    Action(Representation),
}

impl Insertion {
    fn apply(&self, value: &[Rational], input: usize, dim: usize) -> Vec<Rational> {
        let e = unit_vec(dim, input);
        match self {
            Insertion::Bracket(lie) => lie.br(value, &e),
            Insertion::Action(rep) => rep.act(value, &e),
        }
    }
}

/// Coefficients of the three sums in a binary bracket, as functions of the
/// arities `(p, q)`: insertion of the second into the first, of the first
/// into the second, and the bracket of the values.
#[derive(Clone, Copy, Debug)]
enum Pattern {
    /// `(−1)^p`, `−(−1)^{p(q+1)}`, `(−1)^{p(q+1)}`.
    Plain,
    /// `−1`, `(−1)^{pq}`, `−(−1)^{pq}`.
    Courant,
    /// Values only, `(−1)^{pq+1}`.
    ValuesOnly,
}

impl Pattern {
    fn coefficients(self, p: usize, q: usize) -> [Rational; 3] {
        let s = parity_sign;
        match self {
            Pattern::Plain => [s(p), -s(p * (q + 1)), s(p * (q + 1))],
            Pattern::Courant => [rat(-1), s(p * q), -s(p * q)],
            Pattern::ValuesOnly => [rat(0), rat(0), s(p * q + 1)],
        }
    }
}

/// The ingredients of one closed formula.
#[derive(Clone, Debug)]
struct Data {
    src_dim: usize,
    tgt_dim: usize,
    /// Bracket on the source, used by `d`, with its scale.
    src_bracket: Option<(LieAlgebra, Rational)>,
    /// Action of the source on the target, used by `d`.
    src_action: Option<Representation>,
    insertion: Option<Insertion>,
    /// Bracket on the target for the value term, with its scale.
    tgt_bracket: Option<(LieAlgebra, Rational)>,
    pattern: Pattern,
    /// `Φ` in the ternary bracket.
    phi: Option<AltMap>,
    l0: AltMap,
}

/// A closed formula bound to one catalog instance.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    kind: ClosedFormKind,
    data: Data,
}

fn kind_mismatch(kind: ClosedFormKind, catalog: &Catalog) -> Error {
    Error::KindMismatch { kind: kind.name().into(), catalog: catalog.kind().name().into() }
}

impl ClosedForm {
    pub fn new(kind: ClosedFormKind, catalog: &Catalog) -> Result<Self> {
        use ClosedFormKind as K;
        if kind.catalog_kind() != catalog.kind() {
            return Err(kind_mismatch(kind, catalog));
        }
        catalog.build()?;
        let one = rat(1);
        let data = match (kind, catalog) {
            (K::ModifiedRMatrix, Catalog::Modified { lie, lambda }) => Data {
                src_dim: lie.dim(),
                tgt_dim: lie.dim(),
                src_bracket: None,
                src_action: None,
                insertion: Some(Insertion::Bracket(lie.clone())),
                tgt_bracket: Some((lie.clone(), one)),
                pattern: Pattern::Plain,
                phi: None,
                l0: lie.scaled(lambda),
            },
            (K::CrossedHomomorphism, Catalog::Action { g, h, rho, lambda }) => Data {
                src_dim: g.dim(),
                tgt_dim: h.dim(),
                src_bracket: Some((g.clone(), one)),
                src_action: Some(rho.clone()),
                insertion: None,
                tgt_bracket: Some((h.clone(), lambda.clone())),
                pattern: Pattern::ValuesOnly,
                phi: None,
                l0: AltMap::zero(g.dim(), h.dim(), 2),
            },
            (K::Derivation, Catalog::Semidirect { g, rho }) => Data {
                src_dim: g.dim(),
                tgt_dim: rho.dim(),
                src_bracket: Some((g.clone(), one)),
                src_action: Some(rho.clone()),
                insertion: None,
                tgt_bracket: None,
                pattern: Pattern::ValuesOnly,
                phi: None,
                l0: AltMap::zero(g.dim(), rho.dim(), 2),
            },
            (K::Homomorphism, Catalog::Direct { g, h }) => Data {
                src_dim: g.dim(),
                tgt_dim: h.dim(),
                src_bracket: Some((g.clone(), one.clone())),
                src_action: None,
                insertion: None,
                tgt_bracket: Some((h.clone(), one)),
                pattern: Pattern::ValuesOnly,
                phi: None,
                l0: AltMap::zero(g.dim(), h.dim(), 2),
            },
            (K::RelativeRotaBaxter, Catalog::Action { g, h, rho, lambda }) => Data {
                src_dim: h.dim(),
                tgt_dim: g.dim(),
                src_bracket: Some((h.clone(), lambda.clone())),
                src_action: None,
                insertion: Some(Insertion::Action(rho.clone())),
                tgt_bracket: Some((g.clone(), one)),
                pattern: Pattern::Courant,
                phi: None,
                l0: AltMap::zero(h.dim(), g.dim(), 2),
            },
            (K::OOperator, Catalog::Semidirect { g, rho }) => Data {
                src_dim: rho.dim(),
                tgt_dim: g.dim(),
                src_bracket: None,
                src_action: None,
                insertion: Some(Insertion::Action(rho.clone())),
                tgt_bracket: Some((g.clone(), one)),
                pattern: Pattern::Courant,
                phi: None,
                l0: AltMap::zero(rho.dim(), g.dim(), 2),
            },
            (K::TwistedRotaBaxter, Catalog::Cocycle { g, rho, omega }) => Data {
                src_dim: rho.dim(),
                tgt_dim: g.dim(),
                src_bracket: None,
                src_action: None,
                insertion: Some(Insertion::Action(rho.clone())),
                tgt_bracket: Some((g.clone(), one)),
                pattern: Pattern::Plain,
                phi: Some(omega.clone()),
                l0: AltMap::zero(rho.dim(), g.dim(), 2),
            },
            (K::Reynolds, Catalog::Reynolds { g }) => Data {
                src_dim: g.dim(),
                tgt_dim: g.dim(),
                src_bracket: None,
                src_action: None,
                insertion: Some(Insertion::Action(g.adjoint())),
                tgt_bracket: Some((g.clone(), one)),
                pattern: Pattern::Plain,
                phi: Some(g.bracket().clone()),
                l0: AltMap::zero(g.dim(), g.dim(), 2),
            },
            (K::MatchedPair, Catalog::Matched(mp)) => Data {
                src_dim: mp.lie_h.dim(),
                tgt_dim: mp.lie_g.dim(),
                src_bracket: Some((mp.lie_h.clone(), one.clone())),
                src_action: Some(mp.eta.clone()),
                insertion: Some(Insertion::Action(mp.rho.clone())),
                tgt_bracket: Some((mp.lie_g.clone(), one)),
                pattern: Pattern::Courant,
                phi: None,
                l0: AltMap::zero(mp.lie_h.dim(), mp.lie_g.dim(), 2),
            },
            _ => return Err(kind_mismatch(kind, catalog)),
        };
        Ok(ClosedForm { kind, data })
    }

    pub fn kind(&self) -> ClosedFormKind {
        self.kind
    }

    /// `(source dim, target dim)` of the cochains.
    pub fn dims(&self) -> (usize, usize) {
        (self.data.src_dim, self.data.tgt_dim)
    }

    fn check(&self, f: &AltMap) {
        assert_eq!((f.src_dim(), f.tgt_dim()), self.dims(), "cochain shape for {}", self.kind);
    }

    pub fn l0(&self) -> AltMap {
        self.data.l0.clone()
    }

    /// The printed differential:
    /// `d f(x₁,…,x_{p+1}) = Σ_i (−1)^{p+i} x_i·f(…x̂_i…) + Σ_{i<j} (−1)^{p+i+j−1} f([x_i,x_j], …)`
    /// with 1-based `i, j`.
    pub fn differential(&self, f: &AltMap) -> AltMap {
        self.check(f);
        let d = &self.data;
        let p = f.arity();
        AltMap::from_fn(d.src_dim, d.tgt_dim, p + 1, |t| {
            let mut out = zero_vec(d.tgt_dim);
            if let Some(rep) = &d.src_action {
                for i in 0..=p {
                    let rest: Vec<usize> = t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x).collect();
                    let v = rep.act(&unit_vec(d.src_dim, t[i]), &f.eval_basis(&rest));
                    axpy(&mut out, &parity_sign(p + i + 1), &v);
                }
            }
            if let Some((lie, scale)) = &d.src_bracket {
                for i in 0..=p {
                    for j in i + 1..=p {
                        let rest: Vec<usize> =
                            t.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x).collect();
                        let v = f.eval_first(&lie.br_basis(t[i], t[j]), &rest);
                        axpy(&mut out, &(parity_sign(p + i + j + 1) * scale), &v);
                    }
                }
            }
            out
        })
    }

    /// The printed binary bracket.
    pub fn binary(&self, f: &AltMap, g: &AltMap) -> AltMap {
        self.check(f);
        self.check(g);
        let d = &self.data;
        let (p, q) = (f.arity(), g.arity());
        let [ca, cb, cc] = d.pattern.coefficients(p, q);
        AltMap::from_fn(d.src_dim, d.tgt_dim, p + q, |t| {
            let mut out = zero_vec(d.tgt_dim);
            if let Some(ins) = &d.insertion {
                axpy(&mut out, &ca, &insertion_sum(ins, d.src_dim, f, g, t));
                axpy(&mut out, &cb, &insertion_sum(ins, d.src_dim, g, f, t));
            }
            if let Some((lie, scale)) = &d.tgt_bracket {
                for (s, sign) in multi_shuffles(&[p, q]) {
                    let a = f.eval_basis(&pick(t, &s[..p]));
                    let b = g.eval_basis(&pick(t, &s[p..]));
                    axpy(&mut out, &(&cc * scale * rat(sign as i64)), &lie.br(&a, &b));
                }
            }
            out
        })
    }

    /// The printed ternary bracket; zero unless the construction carries `Φ`.
    pub fn ternary(&self, f1: &AltMap, f2: &AltMap, f3: &AltMap) -> AltMap {
        for f in [f1, f2, f3] {
            self.check(f);
        }
        let d = &self.data;
        let (p, q, r) = (f1.arity(), f2.arity(), f3.arity());
        let n = (p + q + r).saturating_sub(1);
        let Some(phi) = &d.phi else {
            return AltMap::zero(d.src_dim, d.tgt_dim, n);
        };
        if p + q + r == 0 {
            return AltMap::zero(d.src_dim, d.tgt_dim, 0);
        }
        let s = parity_sign;
        AltMap::from_fn(d.src_dim, d.tgt_dim, n, |t| {
            let mut out = zero_vec(d.tgt_dim);
            axpy(&mut out, &s(p + q + q * r), &phi_sum(phi, f1, f2, f3, t));
            axpy(&mut out, &-s(p * q + p * r), &phi_sum(phi, f2, f1, f3, t));
            axpy(&mut out, &s(p * q + p * r + q * r + q + r), &phi_sum(phi, f3, f1, f2, t));
            out
        })
    }

    /// Sign `c` with `l₁(f) = c · d f` on arity-`p` cochains. The printed
    /// differentials already carry the `(−1)^{p−1}` relative to the usual
    /// coboundary, so this is `1`.
    pub fn l1_sign(&self, _p: usize) -> Rational {
        rat(1)
    }

    /// Sign `c` with `l₂(f,g) = c · binary(f,g)` on arities `(p, q)`:
    /// `(−1)^{p−1}` for the Courant-type brackets, `1` otherwise.
    pub fn l2_sign(&self, p: usize, _q: usize) -> Rational {
        match self.data.pattern {
            Pattern::Plain => rat(1),
            Pattern::Courant | Pattern::ValuesOnly => parity_sign(p + 1),
        }
    }

    /// Sign `c` with `l₃ = c · ternary`.
    pub fn l3_sign(&self, _p: usize, _q: usize, _r: usize) -> Rational {
        rat(1)
    }

    pub fn l1(&self, f: &AltMap) -> AltMap {
        self.differential(f).scale(&self.l1_sign(f.arity()))
    }

    pub fn l2(&self, f: &AltMap, g: &AltMap) -> AltMap {
        self.binary(f, g).scale(&self.l2_sign(f.arity(), g.arity()))
    }

    pub fn l3(&self, f1: &AltMap, f2: &AltMap, f3: &AltMap) -> AltMap {
        self.ternary(f1, f2, f3).scale(&self.l3_sign(f1.arity(), f2.arity(), f3.arity()))
    }
}

fn pick(t: &[usize], positions: &[usize]) -> Vec<usize> {
    positions.iter().map(|&i| t[i]).collect()
}

/// `Σ_{σ ∈ S(q,1,p−1)} (−1)^σ outer(ins(inner(x_σ(1..q)), x_σ(q+1)), x_σ(q+2..))`.
fn insertion_sum(ins: &Insertion, src_dim: usize, outer: &AltMap, inner: &AltMap, t: &[usize]) -> Vec<Rational> {
    let (p, q) = (outer.arity(), inner.arity());
    let mut out = zero_vec(outer.tgt_dim());
    if p == 0 {
        return out;
    }
    for (s, sign) in multi_shuffles(&[q, 1, p - 1]) {
        let value = inner.eval_basis(&pick(t, &s[..q]));
        let arg = ins.apply(&value, t[s[q]], src_dim);
        let v = outer.eval_first(&arg, &pick(t, &s[q + 1..]));
        axpy(&mut out, &rat(sign as i64), &v);
    }
    out
}

/// `Σ_{σ ∈ S(q,r,p−1)} (−1)^σ outer(Φ(a(x_σ(1..q)), b(x_σ(q+1..q+r))), x_σ(q+r+1..))`.
fn phi_sum(phi: &AltMap, outer: &AltMap, a: &AltMap, b: &AltMap, t: &[usize]) -> Vec<Rational> {
    let (p, q, r) = (outer.arity(), a.arity(), b.arity());
    let mut out = zero_vec(outer.tgt_dim());
    if p == 0 {
        return out;
    }
    for (s, sign) in multi_shuffles(&[q, r, p - 1]) {
        let va = a.eval_basis(&pick(t, &s[..q]));
        let vb = b.eval_basis(&pick(t, &s[q..q + r]));
        let arg = phi.eval(&[&va, &vb]);
        let v = outer.eval_first(&arg, &pick(t, &s[q + r..]));
        axpy(&mut out, &rat(sign as i64), &v);
    }
    out
}

/// The twisted differential of a matched pair around `B: h → g`:
/// ```text
/// d^B f(u₁,…,u_{p+1}) = Σ_i (−1)^{p+i} η(u_i) f(…û_i…)
///   − Σ_{i<j} (−1)^{p+i+j} f([u_i,u_j] + ρ(Bu_i)u_j − ρ(Bu_j)u_i, …)
///   + Σ_i (−1)^{p+i} B(ρ(f(…û_i…))u_i)
///   + Σ_i (−1)^{p+i} [Bu_i, f(…û_i…)]
/// ```
pub fn matched_twisted_differential(mp: &crate::qtla::MatchedPair, b: &Matrix, f: &AltMap) -> AltMap {
    let (dg, dh) = (mp.lie_g.dim(), mp.lie_h.dim());
    assert_eq!((f.src_dim(), f.tgt_dim()), (dh, dg), "cochain shape");
    let p = f.arity();
    AltMap::from_fn(dh, dg, p + 1, |t| {
        let mut out = zero_vec(dg);
        for i in 0..=p {
            let rest: Vec<usize> = t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x).collect();
            let fv = f.eval_basis(&rest);
            let ui = unit_vec(dh, t[i]);
            let bu = b.column(t[i]);
            let sign = parity_sign(p + i + 1);
            axpy(&mut out, &sign, &mp.eta.act(&ui, &fv));
            axpy(&mut out, &sign, &b.apply(&mp.rho.act(&fv, &ui)));
            axpy(&mut out, &sign, &mp.lie_g.br(&bu, &fv));
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let rest: Vec<usize> =
                    t.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x).collect();
                let (ui, uj) = (unit_vec(dh, t[i]), unit_vec(dh, t[j]));
                let mut arg = mp.lie_h.br_basis(t[i], t[j]);
                axpy(&mut arg, &rat(1), &mp.rho.act(&b.column(t[i]), &uj));
                axpy(&mut arg, &rat(-1), &mp.rho.act(&b.column(t[j]), &ui));
                axpy(&mut out, &-parity_sign(p + i + j + 2), &f.eval_first(&arg, &rest));
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalg::{derived_bracket, VData};
    use crate::qtla::MatchedPair;
    use crate::sampling;

    fn lies() -> Vec<LieAlgebra> {
        vec![LieAlgebra::sl2(), LieAlgebra::aff1(), LieAlgebra::heis3(), LieAlgebra::abelian(2)]
    }

    #[test]
    fn closed_forms_match_derived_brackets() {
        let mut rng = sampling::rng(11);
        for lie in lies() {
            for kind in ClosedFormKind::ALL {
                let cat = Catalog::standard(kind.catalog_kind(), &lie, &rat(-2));
                let cf = ClosedForm::new(kind, &cat).unwrap();
                let v = VData::new(kind.side(), cat.build().unwrap().omega()).unwrap();
                let (s, t) = cf.dims();
                let mut draw = |p| sampling::alt_map(&mut rng, s, t, p);
                assert_eq!(derived_bracket(&v, &[]), cf.l0(), "{kind}");
                for p in 0..=2 {
                    let f = draw(p);
                    assert_eq!(derived_bracket(&v, std::slice::from_ref(&f)), cf.l1(&f), "{kind} l1 arity {p}");
                    for q in 0..=2 {
                        let g = draw(q);
                        assert_eq!(derived_bracket(&v, &[f.clone(), g.clone()]), cf.l2(&f, &g), "{kind} l2 ({p},{q}) dim {} f {f:?} g {g:?}", lie.dim());
                        let h = draw(1);
                        assert_eq!(
                            derived_bracket(&v, &[f.clone(), g.clone(), h.clone()]),
                            cf.l3(&f, &g, &h),
                            "{kind} l3 ({p},{q},1)"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kind_must_match_catalog() {
        let cat = Catalog::standard(CatalogKind::Direct, &LieAlgebra::sl2(), &rat(1));
        let err = ClosedForm::new(ClosedFormKind::Reynolds, &cat).unwrap_err();
        assert!(matches!(err, Error::KindMismatch { .. }));
        assert_eq!(ClosedFormKind::for_catalog(CatalogKind::Action).len(), 2);
    }

    #[test]
    fn twisted_matched_differential_is_twisted_l1() {
        let mut rng = sampling::rng(3);
        let mp = MatchedPair::universal(&LieAlgebra::sl2());
        let qt = mp.to_quasi_twilled();
        for b in sampling::ddmap_pool(&qt, &[], 3) {
            let tw = crate::mcalg::twist_type2(&qt, &b).unwrap();
            for p in 0..=2 {
                let f = sampling::alt_map(&mut rng, 3, 3, p);
                assert_eq!(tw.l1(&f), matched_twisted_differential(&mp, b.matrix(), &f));
            }
        }
    }
}
