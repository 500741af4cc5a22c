//! Deformation maps of type I (`D: g → h`) and type II (`B: h → g`), their
//! residuals, and the twisted brackets `Ω^D`, `Ω^B`.

use crate::error::{Error, Result};
use crate::exactlin::{axpy, rat, unit_vec, Matrix, Rational};
use crate::multilinear::{alternating_from_fn, GradedMap, MixedMap, SplitSpace, Target};
use crate::qtla::{MatchedPair, QuasiTwilled};

/// `D: g → h` as a `dim_h × dim_g` matrix; column `i` is `D(g_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorD(Matrix);

/// `B: h → g` as a `dim_g × dim_h` matrix; column `j` is `B(h_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorB(Matrix);

impl OperatorD {
    pub fn new(space: SplitSpace, m: Matrix) -> Result<Self> {
        if (m.rows(), m.cols()) != (space.dim_h, space.dim_g) {
            return Err(Error::ShapeMismatch(format!(
                "D must be {}x{}, got {}x{}",
                space.dim_h,
                space.dim_g,
                m.rows(),
                m.cols()
            )));
        }
        Ok(OperatorD(m))
    }

    pub fn zero(space: SplitSpace) -> Self {
        OperatorD(Matrix::zeros(space.dim_h, space.dim_g))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.0.apply(x)
    }

    pub fn add(&self, other: &OperatorD) -> OperatorD {
        OperatorD(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &Rational) -> OperatorD {
        OperatorD(self.0.scale(c))
    }

    pub fn neg(&self) -> OperatorD {
        self.scale(&rat(-1))
    }

    /// The `(1,0) → h` map.
    pub fn component(&self, space: SplitSpace) -> MixedMap {
        MixedMap::from_fn(space, 1, 0, Target::IntoH, |x, _| self.0.column(x[0]))
    }

    pub fn lift(&self, space: SplitSpace) -> GradedMap {
        self.component(space).lift()
    }

    /// `e^D = [[1, 0], [D, 1]]` on `g ⊕ h`.
    pub fn exp(&self, space: SplitSpace) -> Matrix {
        let mut m = Matrix::identity(space.total());
        for r in 0..space.dim_h {
            for c in 0..space.dim_g {
                m.set(space.dim_g + r, c, self.0.get(r, c).clone());
            }
        }
        m
    }
}

impl OperatorB {
    pub fn new(space: SplitSpace, m: Matrix) -> Result<Self> {
        if (m.rows(), m.cols()) != (space.dim_g, space.dim_h) {
            return Err(Error::ShapeMismatch(format!(
                "B must be {}x{}, got {}x{}",
                space.dim_g,
                space.dim_h,
                m.rows(),
                m.cols()
            )));
        }
        Ok(OperatorB(m))
    }

    pub fn zero(space: SplitSpace) -> Self {
        OperatorB(Matrix::zeros(space.dim_g, space.dim_h))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, u: &[Rational]) -> Vec<Rational> {
        self.0.apply(u)
    }

    pub fn add(&self, other: &OperatorB) -> OperatorB {
        OperatorB(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &Rational) -> OperatorB {
        OperatorB(self.0.scale(c))
    }

    pub fn neg(&self) -> OperatorB {
        self.scale(&rat(-1))
    }

    /// The `(0,1) → g` map.
    pub fn component(&self, space: SplitSpace) -> MixedMap {
        MixedMap::from_fn(space, 0, 1, Target::IntoG, |_, u| self.0.column(u[0]))
    }

    pub fn lift(&self, space: SplitSpace) -> GradedMap {
        self.component(space).lift()
    }

    /// `e^B = [[1, B], [0, 1]]` on `g ⊕ h`.
    pub fn exp(&self, space: SplitSpace) -> Matrix {
        let mut m = Matrix::identity(space.total());
        for r in 0..space.dim_g {
            for c in 0..space.dim_h {
                m.set(r, space.dim_g + c, self.0.get(r, c).clone());
            }
        }
        m
    }
}

/// Two-slot evaluation helpers on basis/arbitrary vectors.
fn ev(m: &MixedMap, gs: &[&[Rational]], hs: &[&[Rational]]) -> Vec<Rational> {
    m.eval(gs, hs)
}

fn check_d(qt: &QuasiTwilled, d: &OperatorD) -> Result<()> {
    let sp = qt.space();
    if (d.0.rows(), d.0.cols()) != (sp.dim_h, sp.dim_g) {
        return Err(Error::ShapeMismatch("D does not fit the quasi-twilled space".into()));
    }
    Ok(())
}

fn check_b(qt: &QuasiTwilled, b: &OperatorB) -> Result<()> {
    let sp = qt.space();
    if (b.0.rows(), b.0.cols()) != (sp.dim_g, sp.dim_h) {
        return Err(Error::ShapeMismatch("B does not fit the quasi-twilled space".into()));
    }
    Ok(())
}

/// `R(x,y) = μ(Dx,Dy) + ρ(x,Dy) − ρ(y,Dx) + θ(x,y) − D(η(x,Dy) − η(y,Dx) + π(x,y))`.
pub fn dmap_residual(qt: &QuasiTwilled, d: &OperatorD) -> Result<MixedMap> {
    check_d(qt, d)?;
    let sp = qt.space();
    Ok(MixedMap::from_fn(sp, 2, 0, Target::IntoH, |t, _| {
        let (x, y) = (unit_vec(sp.dim_g, t[0]), unit_vec(sp.dim_g, t[1]));
        let (dx, dy) = (d.apply(&x), d.apply(&y));
        let mut r = ev(qt.mu(), &[], &[&dx, &dy]);
        axpy(&mut r, &rat(1), &ev(qt.rho(), &[&x], &[&dy]));
        axpy(&mut r, &rat(-1), &ev(qt.rho(), &[&y], &[&dx]));
        axpy(&mut r, &rat(1), &ev(qt.theta(), &[&x, &y], &[]));
        let mut inner = ev(qt.eta(), &[&x], &[&dy]);
        axpy(&mut inner, &rat(-1), &ev(qt.eta(), &[&y], &[&dx]));
        axpy(&mut inner, &rat(1), &ev(qt.pi(), &[&x, &y], &[]));
        axpy(&mut r, &rat(-1), &d.apply(&inner));
        r
    }))
}

pub fn is_dmap(qt: &QuasiTwilled, d: &OperatorD) -> Result<bool> {
    Ok(dmap_residual(qt, d)?.is_zero())
}

/// Whether `Ω((x,Dx),(y,Dy)) ∈ Gr(D)` for all basis vectors `x, y`.
pub fn graph_subalgebra_check(qt: &QuasiTwilled, d: &OperatorD) -> Result<bool> {
    check_d(qt, d)?;
    let sp = qt.space();
    let omega = qt.omega();
    let graph = |i: usize| {
        let x = unit_vec(sp.dim_g, i);
        let dx = d.apply(&x);
        sp.join(&x, &dx)
    };
    for i in 0..sp.dim_g {
        for j in i + 1..sp.dim_g {
            let w = omega.eval(&[&graph(i), &graph(j)]);
            let (wg, wh) = sp.split(&w);
            if d.apply(wg) != wh {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S(u,v) = π(Bu,Bv) + η(Bu,v) − η(Bv,u) − B(μ(u,v) + ρ(Bu,v) − ρ(Bv,u) + θ(Bu,Bv))`.
pub fn ddmap_residual(qt: &QuasiTwilled, b: &OperatorB) -> Result<MixedMap> {
    check_b(qt, b)?;
    let sp = qt.space();
    Ok(MixedMap::from_fn(sp, 0, 2, Target::IntoG, |_, t| {
        let (u, v) = (unit_vec(sp.dim_h, t[0]), unit_vec(sp.dim_h, t[1]));
        let (bu, bv) = (b.apply(&u), b.apply(&v));
        let mut r = ev(qt.pi(), &[&bu, &bv], &[]);
        axpy(&mut r, &rat(1), &ev(qt.eta(), &[&bu], &[&v]));
        axpy(&mut r, &rat(-1), &ev(qt.eta(), &[&bv], &[&u]));
        let mut inner = ev(qt.mu(), &[], &[&u, &v]);
        axpy(&mut inner, &rat(1), &ev(qt.rho(), &[&bu], &[&v]));
        axpy(&mut inner, &rat(-1), &ev(qt.rho(), &[&bv], &[&u]));
        axpy(&mut inner, &rat(1), &ev(qt.theta(), &[&bu, &bv], &[]));
        axpy(&mut r, &rat(-1), &b.apply(&inner));
        r
    }))
}

pub fn is_ddmap(qt: &QuasiTwilled, b: &OperatorB) -> Result<bool> {
    Ok(ddmap_residual(qt, b)?.is_zero())
}

/// `Ω^D` by the closed formulas:
/// `π^D(x,y) = π(x,y) + η(x,Dy) − η(y,Dx)`,
/// `ρ^D(x,v) = ρ(x,v) + μ(Dx,v) − D(η(x,v))`,
/// `μ^D = μ`, `η^D = η`, and `θ^D` the type I residual.
pub fn twist_by_d(qt: &QuasiTwilled, d: &OperatorD) -> Result<QuasiTwilled> {
    check_d(qt, d)?;
    let sp = qt.space();
    let (m, n) = (sp.dim_g, sp.dim_h);
    let pi = MixedMap::from_fn(sp, 2, 0, Target::IntoG, |t, _| {
        let (x, y) = (unit_vec(m, t[0]), unit_vec(m, t[1]));
        let mut r = ev(qt.pi(), &[&x, &y], &[]);
        axpy(&mut r, &rat(1), &ev(qt.eta(), &[&x], &[&d.apply(&y)]));
        axpy(&mut r, &rat(-1), &ev(qt.eta(), &[&y], &[&d.apply(&x)]));
        r
    });
    let rho = MixedMap::from_fn(sp, 1, 1, Target::IntoH, |xs, us| {
        let (x, v) = (unit_vec(m, xs[0]), unit_vec(n, us[0]));
        let mut r = ev(qt.rho(), &[&x], &[&v]);
        axpy(&mut r, &rat(1), &ev(qt.mu(), &[], &[&d.apply(&x), &v]));
        axpy(&mut r, &rat(-1), &d.apply(&ev(qt.eta(), &[&x], &[&v])));
        r
    });
    QuasiTwilled::new(sp, pi, rho, qt.mu().clone(), qt.eta().clone(), dmap_residual(qt, d)?)
}

/// `φ⁻¹ ∘ Ω ∘ (φ ⊗ φ)`, split back into components.
pub fn conjugate(omega: &GradedMap, phi: &Matrix, phi_inv: &Matrix) -> Result<GradedMap> {
    let sp = omega.space();
    let n = sp.total();
    alternating_from_fn(sp, omega.arity(), |t| {
        let args: Vec<Vec<Rational>> = t.iter().map(|&i| phi.apply(&unit_vec(n, i))).collect();
        let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
        phi_inv.apply(&omega.eval(&refs))
    })
}

/// `Ω^D = e^{−D} ∘ Ω ∘ (e^D ⊗ e^D)` computed by conjugation.
pub fn twist_by_d_conjugation(qt: &QuasiTwilled, d: &OperatorD) -> Result<QuasiTwilled> {
    check_d(qt, d)?;
    let sp = qt.space();
    let omega = conjugate(&qt.omega(), &d.exp(sp), &d.neg().exp(sp))?;
    QuasiTwilled::from_omega(&omega)
}

/// The six components of `Ω^B`; `ξ^B: ∧²h → g` is absent from a
/// quasi-twilled structure unless it vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedB {
    pub pi: MixedMap,
    pub rho: MixedMap,
    pub mu: MixedMap,
    pub eta: MixedMap,
    pub theta: MixedMap,
    pub xi: MixedMap,
}

impl TwistedB {
    pub fn space(&self) -> SplitSpace {
        self.pi.space()
    }

    pub fn omega(&self) -> GradedMap {
        let comps = [&self.pi, &self.rho, &self.mu, &self.eta, &self.theta, &self.xi].map(Clone::clone);
        GradedMap::from_components(self.space(), 2, &comps).expect("component shapes")
    }

    pub fn from_omega(omega: &GradedMap) -> Self {
        TwistedB {
            pi: omega.component(2, Target::IntoG),
            rho: omega.component(1, Target::IntoH),
            mu: omega.component(0, Target::IntoH),
            eta: omega.component(1, Target::IntoG),
            theta: omega.component(2, Target::IntoH),
            xi: omega.component(0, Target::IntoG),
        }
    }

    /// The quasi-twilled structure `((g ⊕ h, Ω^B), g, h)`; needs `ξ^B = 0`.
    pub fn into_quasi_twilled(self) -> Result<QuasiTwilled> {
        if !self.xi.is_zero() {
            return Err(Error::NotDdMap("xi^B is nonzero, so h is not a subalgebra of the twisted bracket".into()));
        }
        let sp = self.space();
        QuasiTwilled::new(sp, self.pi, self.rho, self.mu, self.eta, self.theta)
    }
}

/// `Ω^B` by the closed formulas:
/// `π^B(x,y) = π(x,y) − B(θ(x,y))`,
/// `ρ^B(x,v) = ρ(x,v) − θ(Bv,x)`,
/// `μ^B(u,v) = μ(u,v) + ρ(Bu,v) − ρ(Bv,u) + θ(Bu,Bv)`,
/// `η^B(x,v) = η(x,v) − π(Bv,x) − B(ρ(x,v)) + B(θ(Bv,x))`,
/// `θ^B = θ`, and `ξ^B` the type II residual.
pub fn twist_by_b(qt: &QuasiTwilled, b: &OperatorB) -> Result<TwistedB> {
    check_b(qt, b)?;
    let sp = qt.space();
    let (m, n) = (sp.dim_g, sp.dim_h);
    let pi = MixedMap::from_fn(sp, 2, 0, Target::IntoG, |t, _| {
        let (x, y) = (unit_vec(m, t[0]), unit_vec(m, t[1]));
        let mut r = ev(qt.pi(), &[&x, &y], &[]);
        axpy(&mut r, &rat(-1), &b.apply(&ev(qt.theta(), &[&x, &y], &[])));
        r
    });
    let rho = MixedMap::from_fn(sp, 1, 1, Target::IntoH, |xs, us| {
        let (x, v) = (unit_vec(m, xs[0]), unit_vec(n, us[0]));
        let mut r = ev(qt.rho(), &[&x], &[&v]);
        axpy(&mut r, &rat(-1), &ev(qt.theta(), &[&b.apply(&v), &x], &[]));
        r
    });
    let mu = MixedMap::from_fn(sp, 0, 2, Target::IntoH, |_, t| {
        let (u, v) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
        let (bu, bv) = (b.apply(&u), b.apply(&v));
        let mut r = ev(qt.mu(), &[], &[&u, &v]);
        axpy(&mut r, &rat(1), &ev(qt.rho(), &[&bu], &[&v]));
        axpy(&mut r, &rat(-1), &ev(qt.rho(), &[&bv], &[&u]));
        axpy(&mut r, &rat(1), &ev(qt.theta(), &[&bu, &bv], &[]));
        r
    });
    let eta = MixedMap::from_fn(sp, 1, 1, Target::IntoG, |xs, us| {
        let (x, v) = (unit_vec(m, xs[0]), unit_vec(n, us[0]));
        let bv = b.apply(&v);
        let mut r = ev(qt.eta(), &[&x], &[&v]);
        axpy(&mut r, &rat(-1), &ev(qt.pi(), &[&bv, &x], &[]));
        axpy(&mut r, &rat(-1), &b.apply(&ev(qt.rho(), &[&x], &[&v])));
        axpy(&mut r, &rat(1), &b.apply(&ev(qt.theta(), &[&bv, &x], &[])));
        r
    });
    Ok(TwistedB { pi, rho, mu, eta, theta: qt.theta().clone(), xi: ddmap_residual(qt, b)? })
}

/// `Ω^B = e^{−B} ∘ Ω ∘ (e^B ⊗ e^B)` computed by conjugation.
pub fn twist_by_b_conjugation(qt: &QuasiTwilled, b: &OperatorB) -> Result<TwistedB> {
    check_b(qt, b)?;
    let sp = qt.space();
    let omega = conjugate(&qt.omega(), &b.exp(sp), &b.neg().exp(sp))?;
    Ok(TwistedB::from_omega(&omega))
}

/// `((g, π^D), (h, μ); ρ^D, η)` for a D-map `D`.
pub fn graph_matched_pair(qt: &QuasiTwilled, d: &OperatorD) -> Result<MatchedPair> {
    let tw = twist_by_d(qt, d)?;
    if !tw.theta().is_zero() {
        return Err(Error::NotDMap("the type I residual is nonzero".into()));
    }
    MatchedPair::from_quasi_twilled(&tw)
}

/// Nonzero entries of a residual as `(g tuple, h tuple, value)`.
pub fn witnesses(m: &MixedMap) -> Vec<(Vec<usize>, Vec<usize>, Vec<Rational>)> {
    m.entries().map(|((g, h), v)| (g.clone(), h.clone(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;
    use crate::qtla::{Catalog, LieAlgebra};

    fn modified_sl2() -> QuasiTwilled {
        Catalog::Modified { lie: LieAlgebra::sl2(), lambda: rat(1) }.build().unwrap()
    }

    fn diag(sp: SplitSpace, d: &[i64]) -> OperatorD {
        OperatorD::new(sp, Matrix::diagonal(&d.iter().map(|&c| rat(c)).collect::<Vec<_>>())).unwrap()
    }

    #[test]
    fn modified_r_matrix() {
        let qt = modified_sl2();
        let d = diag(qt.space(), &[1, 0, -1]);
        assert!(is_dmap(&qt, &d).unwrap());
        assert!(graph_subalgebra_check(&qt, &d).unwrap());
        let d2 = diag(qt.space(), &[2, 0, -2]);
        assert!(!is_dmap(&qt, &d2).unwrap());
        assert!(!graph_subalgebra_check(&qt, &d2).unwrap());
    }

    #[test]
    fn zero_d_residual_is_theta() {
        let qt = modified_sl2();
        assert_eq!(&dmap_residual(&qt, &OperatorD::zero(qt.space())).unwrap(), qt.theta());
    }

    #[test]
    fn aff1_derivations_are_dmaps() {
        let aff = LieAlgebra::aff1();
        let qt = Catalog::Semidirect { g: aff.clone(), rho: aff.adjoint() }.build().unwrap();
        for (b, d) in [(1, 0), (0, 1), (-3, 2), (5, 5)] {
            let m = Matrix::from_i64(&[&[0, 0], &[b, d]]);
            assert!(is_dmap(&qt, &OperatorD::new(qt.space(), m).unwrap()).unwrap());
        }
        let m = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(!is_dmap(&qt, &OperatorD::new(qt.space(), m).unwrap()).unwrap());
    }

    #[test]
    fn direct_homomorphisms() {
        let sl2 = LieAlgebra::sl2();
        let qt = Catalog::Direct { g: sl2.clone(), h: sl2 }.build().unwrap();
        assert!(is_dmap(&qt, &diag(qt.space(), &[1, 1, 1])).unwrap());
        assert!(!is_dmap(&qt, &diag(qt.space(), &[1, 1, 0])).unwrap());
        let b = OperatorB::new(qt.space(), Matrix::identity(3)).unwrap();
        assert!(is_ddmap(&qt, &b).unwrap());
    }

    #[test]
    fn twisting_routes_agree() {
        let qt = modified_sl2();
        let d = diag(qt.space(), &[1, 0, -1]);
        let closed = twist_by_d(&qt, &d).unwrap();
        assert_eq!(closed, twist_by_d_conjugation(&qt, &d).unwrap());
        assert!(closed.is_quasi_twilled());
        assert!(crate::nrbracket::is_lie_structure(closed.pi()).unwrap().holds);
        assert_eq!(twist_by_d(&qt, &OperatorD::zero(qt.space())).unwrap(), qt);
        let b = OperatorB::new(qt.space(), Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(twist_by_b(&qt, &b).unwrap(), twist_by_b_conjugation(&qt, &b).unwrap());
    }

    #[test]
    fn zero_b() {
        let qt = modified_sl2();
        let b = OperatorB::zero(qt.space());
        assert!(ddmap_residual(&qt, &b).unwrap().is_zero());
        let tw = twist_by_b(&qt, &b).unwrap();
        assert_eq!(tw.into_quasi_twilled().unwrap(), qt);
    }

    #[test]
    fn shape_mismatch() {
        let qt = modified_sl2();
        let bad = OperatorD(Matrix::zeros(2, 3));
        assert!(matches!(dmap_residual(&qt, &bad), Err(Error::ShapeMismatch(_))));
        assert!(OperatorB::new(qt.space(), Matrix::zeros(3, 2)).is_err());
    }
}
