//! Curved L∞-algebras controlling deformation maps, built as derived
//! brackets `l_k(f₁,…,f_k) = P[⋯[[Δ, f₁], f₂], …, f_k]`.
//!
//! Cochains are alternating maps `∧ⁿg → h` (type I) or `∧ⁿh → g` (type II),
//! embedded into `Hom(∧ⁿ(g⊕h), g⊕h)` by their lift. The brackets are the
//! unsuspended ones: `l_k` has degree `2 − k` in the NR grading.

pub mod closed_form;

use crate::defmaps::{ddmap_residual, dmap_residual, twist_by_b, twist_by_d, OperatorB, OperatorD};
use crate::error::{Error, Result};
use crate::exactlin::{ratio, Matrix, Rational};
use crate::multilinear::{AltMap, GradedMap, MixedMap, SplitSpace, Target};
use crate::nrbracket::nr_bracket;
use crate::qtla::QuasiTwilled;

/// Which abelian subalgebra `F` the brackets live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `F = ⊕ Hom(∧ⁿg, h)`.
    TypeI,
    /// `F = ⊕ Hom(∧ⁿh, g)`.
    TypeII,
}

impl Side {
    /// Factor the cochains eat.
    pub fn source(self) -> Target {
        match self {
            Side::TypeI => Target::IntoG,
            Side::TypeII => Target::IntoH,
        }
    }

    /// Factor the cochains land in.
    pub fn target(self) -> Target {
        self.source().other()
    }

    pub fn dims(self, space: SplitSpace) -> (usize, usize) {
        (space.dim(self.source()), space.dim(self.target()))
    }
}

/// The lift of a cochain.
pub fn embed(side: Side, space: SplitSpace, f: &AltMap) -> GradedMap {
    assert_eq!((f.src_dim(), f.tgt_dim()), side.dims(space), "cochain shape");
    let m = match side {
        Side::TypeI => MixedMap::from_g_alt(space, Target::IntoH, f),
        Side::TypeII => MixedMap::from_h_alt(space, Target::IntoG, f),
    };
    m.lift()
}

/// `P`: keeps the part of `m` lying in `F`.
pub fn project(side: Side, m: &GradedMap) -> AltMap {
    let k = match side {
        Side::TypeI => m.arity(),
        Side::TypeII => 0,
    };
    m.component(k, side.target()).to_alt()
}

/// The cochain `m`, which must lie entirely in `F`.
pub fn extract(side: Side, m: &GradedMap) -> Result<AltMap> {
    let f = project(side, m);
    if embed(side, m.space(), &f) != *m {
        return Err(Error::ShapeMismatch("element does not lie in the abelian subalgebra F".into()));
    }
    Ok(f)
}

/// `D` or `B` as a degree-0 cochain.
pub fn operator_cochain(m: &Matrix) -> AltMap {
    AltMap::from_fn(m.cols(), m.rows(), 1, |t| m.column(t[0]))
}

pub fn cochain_operator(f: &AltMap) -> Matrix {
    assert_eq!(f.arity(), 1);
    Matrix::from_columns(f.tgt_dim(), &(0..f.src_dim()).map(|i| f.eval_basis(&[i])).collect::<Vec<_>>())
}

/// `(L, F, P, Δ)` with `L` the NR algebra of `g ⊕ h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VData {
    side: Side,
    delta: GradedMap,
}

impl VData {
    /// Checks `[Δ,Δ] = 0`, and `P(Δ) = 0` for type II.
    pub fn new(side: Side, delta: GradedMap) -> Result<Self> {
        if delta.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: delta.arity() });
        }
        if !nr_bracket(&delta, &delta).is_zero() {
            return Err(Error::PremiseViolated("[Delta, Delta] is nonzero".into()));
        }
        if side == Side::TypeII && !project(side, &delta).is_zero() {
            return Err(Error::PremiseViolated("Delta has a component in F".into()));
        }
        Ok(VData { side, delta })
    }

    pub fn type1(qt: &QuasiTwilled) -> Result<Self> {
        VData::new(Side::TypeI, qt.omega())
    }

    pub fn type2(qt: &QuasiTwilled) -> Result<Self> {
        VData::new(Side::TypeII, qt.omega())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }
}

/// `P[⋯[[Δ, f₁], f₂], …, f_k]`; `k = 0` gives `P(Δ)`.
pub fn derived_bracket(v: &VData, inputs: &[AltMap]) -> AltMap {
    let sp = v.delta.space();
    let mut acc = v.delta.clone();
    for f in inputs {
        acc = if acc.is_zero() {
            // a negative total degree leaves nothing; report it in arity 0
            GradedMap::zero(sp, (acc.arity() + f.arity()).saturating_sub(1))
        } else {
            br(&acc, &embed(v.side, sp, f))
        };
    }
    project(v.side, &acc)
}

/// `[a, b]`, or zero when both are vectors and the degree would be negative.
fn br(a: &GradedMap, b: &GradedMap) -> GradedMap {
    if a.arity() + b.arity() == 0 {
        GradedMap::zero(a.space(), 0)
    } else {
        nr_bracket(a, b)
    }
}

fn literal(side: Side, m: &GradedMap) -> AltMap {
    extract(side, m).expect("bracket leaves F")
}

/// `l₀ = θ`, `l₁(f) = [π+ρ, f]`, `l₂(f,g) = [[μ+η, f], g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type1Brackets {
    space: SplitSpace,
    pi_rho: GradedMap,
    mu_eta: GradedMap,
    theta: AltMap,
}

/// `l₁(f) = [μ+η, f]`, `l₂(f,g) = [[π+ρ, f], g]`, `l₃(f,g,h) = [[[θ, f], g], h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Brackets {
    space: SplitSpace,
    mu_eta: GradedMap,
    pi_rho: GradedMap,
    theta: GradedMap,
}

pub fn type1_brackets(qt: &QuasiTwilled) -> Type1Brackets {
    Type1Brackets {
        space: qt.space(),
        pi_rho: qt.pi().lift().add(&qt.rho().lift()),
        mu_eta: qt.mu().lift().add(&qt.eta().lift()),
        theta: qt.theta().to_alt(),
    }
}

pub fn type2_brackets(qt: &QuasiTwilled) -> Type2Brackets {
    Type2Brackets {
        space: qt.space(),
        mu_eta: qt.mu().lift().add(&qt.eta().lift()),
        pi_rho: qt.pi().lift().add(&qt.rho().lift()),
        theta: qt.theta().lift(),
    }
}

impl Type1Brackets {
    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn l0(&self) -> AltMap {
        self.theta.clone()
    }

    pub fn l1(&self, f: &AltMap) -> AltMap {
        literal(Side::TypeI, &br(&self.pi_rho, &embed(Side::TypeI, self.space, f)))
    }

    pub fn l2(&self, f: &AltMap, g: &AltMap) -> AltMap {
        let sp = self.space;
        let inner = br(&self.mu_eta, &embed(Side::TypeI, sp, f));
        literal(Side::TypeI, &br(&inner, &embed(Side::TypeI, sp, g)))
    }

    /// `l₀ + l₁(D) + ½ l₂(D,D)`.
    pub fn mc_residual(&self, d: &AltMap) -> AltMap {
        let mut r = self.l0();
        r.add_scaled(&ratio(1, 1), &self.l1(d));
        r.add_scaled(&ratio(1, 2), &self.l2(d, d));
        r
    }
}

impl Type2Brackets {
    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn l1(&self, f: &AltMap) -> AltMap {
        literal(Side::TypeII, &br(&self.mu_eta, &embed(Side::TypeII, self.space, f)))
    }

    pub fn l2(&self, f: &AltMap, g: &AltMap) -> AltMap {
        let sp = self.space;
        let inner = br(&self.pi_rho, &embed(Side::TypeII, sp, f));
        literal(Side::TypeII, &br(&inner, &embed(Side::TypeII, sp, g)))
    }

    pub fn l3(&self, f: &AltMap, g: &AltMap, h: &AltMap) -> AltMap {
        let sp = self.space;
        let a = br(&self.theta, &embed(Side::TypeII, sp, f));
        let b = br(&a, &embed(Side::TypeII, sp, g));
        literal(Side::TypeII, &br(&b, &embed(Side::TypeII, sp, h)))
    }

    /// `l₁(B) + ½ l₂(B,B) + ⅙ l₃(B,B,B)`.
    pub fn mc_residual(&self, b: &AltMap) -> AltMap {
        let mut r = self.l1(b);
        r.add_scaled(&ratio(1, 2), &self.l2(b, b));
        r.add_scaled(&ratio(1, 6), &self.l3(b, b, b));
        r
    }
}

/// The type I Maurer–Cartan residual of `D` as a `(2,0) → h` map.
pub fn type1_mc_residual(qt: &QuasiTwilled, d: &OperatorD) -> MixedMap {
    let r = type1_brackets(qt).mc_residual(&operator_cochain(d.matrix()));
    MixedMap::from_g_alt(qt.space(), Target::IntoH, &r)
}

/// Overall sign relating the type II Maurer–Cartan residual to the
/// deformation-map residual: `l₁(B) + ½l₂(B,B) + ⅙l₃(B,B,B) = SIGN · S`.
pub const TYPE2_MC_SIGN: i64 = 1;

/// The type II Maurer–Cartan residual of `B` as a `(0,2) → g` map.
pub fn type2_mc_residual(qt: &QuasiTwilled, b: &OperatorB) -> MixedMap {
    let r = type2_brackets(qt).mc_residual(&operator_cochain(b.matrix()));
    MixedMap::from_h_alt(qt.space(), Target::IntoG, &r)
}

/// `l₁ᴰ(f) = l₁(f) + l₂(D,f)`, `l₂ᴰ = l₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedType1 {
    base: Type1Brackets,
    d: AltMap,
}

impl TwistedType1 {
    pub fn base(&self) -> &Type1Brackets {
        &self.base
    }

    pub fn l1(&self, f: &AltMap) -> AltMap {
        self.base.l1(f).add(&self.base.l2(&self.d, f))
    }

    pub fn l2(&self, f: &AltMap, g: &AltMap) -> AltMap {
        self.base.l2(f, g)
    }

    /// `l₁ᴰ(D′) + ½ l₂ᴰ(D′,D′)`.
    pub fn mc_residual(&self, d: &AltMap) -> AltMap {
        let mut r = self.l1(d);
        r.add_scaled(&ratio(1, 2), &self.l2(d, d));
        r
    }
}

/// Refuses `D` unless it is a D-map; otherwise the twisted structure is curved.
pub fn twist_type1(qt: &QuasiTwilled, d: &OperatorD) -> Result<TwistedType1> {
    if !dmap_residual(qt, d)?.is_zero() {
        return Err(Error::NotDMap("cannot twist the controlling algebra by a non-solution".into()));
    }
    Ok(TwistedType1 { base: type1_brackets(qt), d: operator_cochain(d.matrix()) })
}

/// `l₁ᴮ(f) = l₁(f) + l₂(B,f) + ½l₃(B,B,f)`, `l₂ᴮ(f,g) = l₂(f,g) + l₃(B,f,g)`, `l₃ᴮ = l₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedType2 {
    base: Type2Brackets,
    b: AltMap,
}

impl TwistedType2 {
    pub fn base(&self) -> &Type2Brackets {
        &self.base
    }

    pub fn l1(&self, f: &AltMap) -> AltMap {
        let mut r = self.base.l1(f);
        r.add_scaled(&ratio(1, 1), &self.base.l2(&self.b, f));
        r.add_scaled(&ratio(1, 2), &self.base.l3(&self.b, &self.b, f));
        r
    }

    pub fn l2(&self, f: &AltMap, g: &AltMap) -> AltMap {
        self.base.l2(f, g).add(&self.base.l3(&self.b, f, g))
    }

    pub fn l3(&self, f: &AltMap, g: &AltMap, h: &AltMap) -> AltMap {
        self.base.l3(f, g, h)
    }

    /// `Σ_{k=1..3} (1/k!) l_kᴮ(B′,…,B′)`.
    pub fn mc_residual(&self, b: &AltMap) -> AltMap {
        let mut r = self.l1(b);
        r.add_scaled(&ratio(1, 2), &self.l2(b, b));
        r.add_scaled(&ratio(1, 6), &self.l3(b, b, b));
        r
    }
}

pub fn twist_type2(qt: &QuasiTwilled, b: &OperatorB) -> Result<TwistedType2> {
    if !ddmap_residual(qt, b)?.is_zero() {
        return Err(Error::NotDdMap("cannot twist the controlling algebra by a non-solution".into()));
    }
    Ok(TwistedType2 { base: type2_brackets(qt), b: operator_cochain(b.matrix()) })
}

/// V-data on the twisted bracket `Ω^D`; its derived brackets are the
/// twisted L∞ brackets.
pub fn twisted_vdata_type1(qt: &QuasiTwilled, d: &OperatorD) -> Result<VData> {
    VData::new(Side::TypeI, twist_by_d(qt, d)?.omega())
}

/// V-data on `Ω^B`; fails unless `ξ^B = 0`.
pub fn twisted_vdata_type2(qt: &QuasiTwilled, b: &OperatorB) -> Result<VData> {
    VData::new(Side::TypeII, twist_by_b(qt, b)?.omega())
}

/// Scalar `(−1)^n`.
pub(crate) fn parity_sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        ratio(1, 1)
    } else {
        ratio(-1, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::qtla::{Catalog, LieAlgebra};

    fn modified_sl2() -> QuasiTwilled {
        Catalog::Modified { lie: LieAlgebra::sl2(), lambda: rat(1) }.build().unwrap()
    }

    fn r_matrix(qt: &QuasiTwilled) -> OperatorD {
        OperatorD::new(qt.space(), Matrix::diagonal(&[rat(1), rat(0), rat(-1)])).unwrap()
    }

    #[test]
    fn zeroth_brackets() {
        let qt = modified_sl2();
        assert_eq!(derived_bracket(&VData::type1(&qt).unwrap(), &[]), qt.theta().to_alt());
        assert!(derived_bracket(&VData::type2(&qt).unwrap(), &[]).is_zero());
    }

    #[test]
    fn mc_matches_residual_type1() {
        let qt = modified_sl2();
        let d = r_matrix(&qt);
        assert!(type1_mc_residual(&qt, &d).is_zero());
        let zero = OperatorD::zero(qt.space());
        assert_eq!(&type1_mc_residual(&qt, &zero), qt.theta());
        let d2 = d.scale(&rat(2));
        assert_eq!(type1_mc_residual(&qt, &d2), dmap_residual(&qt, &d2).unwrap());
    }

    #[test]
    fn l2_of_r_matrix() {
        // θ + ½ l₂(D,D) = 0 with l₁ = 0, so l₂(D,D) = −2λ[,]
        let qt = modified_sl2();
        let d = operator_cochain(r_matrix(&qt).matrix());
        let b = type1_brackets(&qt);
        assert!(b.l1(&d).is_zero());
        assert_eq!(b.l2(&d, &d), LieAlgebra::sl2().scaled(&rat(-2)));
    }

    #[test]
    fn mc_matches_residual_type2() {
        let qt = modified_sl2();
        let b = OperatorB::new(qt.space(), Matrix::from_i64(&[&[1, 2, 0], &[0, -1, 1], &[3, 0, 0]])).unwrap();
        let s = ddmap_residual(&qt, &b).unwrap();
        assert!(!s.is_zero());
        assert_eq!(type2_mc_residual(&qt, &b), s.scale(&rat(TYPE2_MC_SIGN)));
    }

    #[test]
    fn twisting_refuses_non_maps() {
        let qt = modified_sl2();
        let d2 = r_matrix(&qt).scale(&rat(2));
        assert!(matches!(twist_type1(&qt, &d2), Err(Error::NotDMap(_))));
        let tw = twist_type1(&qt, &r_matrix(&qt)).unwrap();
        // D′ = D gives residual(2D) − residual(D) = residual(2D)
        let dd = operator_cochain(r_matrix(&qt).matrix());
        assert_eq!(tw.mc_residual(&dd), dmap_residual(&qt, &d2).unwrap().to_alt());
        assert!(!tw.mc_residual(&dd).is_zero());
    }

    #[test]
    fn extract_rejects_outside_f() {
        let qt = modified_sl2();
        assert!(extract(Side::TypeI, &qt.omega()).is_err());
        let f = operator_cochain(&Matrix::identity(3));
        assert_eq!(extract(Side::TypeI, &embed(Side::TypeI, qt.space(), &f)).unwrap(), f);
    }
}
