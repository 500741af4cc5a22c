//! Finite-dimensional Lie algebras over ℚ, representations and 2-cocycles.

use num::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vec, rat, unit_vec, zero_vec, Matrix, Rational};
use crate::multilinear::{sorted_subsets, AltMap, MixedMap, SplitSpace, Target};
use crate::nrbracket::is_lie_structure;

/// A Lie algebra given by antisymmetric structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    bracket: AltMap,
}

impl LieAlgebra {
    /// Checks the Jacobi identity.
    pub fn new(bracket: AltMap) -> Result<Self> {
        let lie = LieAlgebra::unchecked(bracket)?;
        let res = lie.jacobiator();
        if let Some((t, _)) = res.entries().next() {
            return Err(Error::PremiseViolated(format!("Jacobi identity fails on basis triple {t:?}")));
        }
        Ok(lie)
    }

    /// Wraps a bracket without checking Jacobi.
    pub fn unchecked(bracket: AltMap) -> Result<Self> {
        if bracket.arity() != 2 || bracket.src_dim() != bracket.tgt_dim() {
            return Err(Error::ShapeMismatch("a Lie bracket is an arity-2 map of a space to itself".into()));
        }
        Ok(LieAlgebra { bracket })
    }

    /// From `[e_i, e_j] = v` for `i < j`.
    pub fn from_constants(dim: usize, constants: &[(usize, usize, Vec<i64>)]) -> Result<Self> {
        let mut b = AltMap::zero(dim, dim, 2);
        for (i, j, v) in constants {
            let (t, v) = if i < j {
                (vec![*i, *j], v.iter().map(|&c| rat(c)).collect())
            } else {
                (vec![*j, *i], v.iter().map(|&c| rat(-c)).collect())
            };
            b.set(&t, v)?;
        }
        LieAlgebra::new(b)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { bracket: AltMap::zero(dim, dim, 2) }
    }

    /// sl(2) on the basis (e, h, f): [e,h] = −2e, [e,f] = h, [h,f] = −2f.
    pub fn sl2() -> Self {
        LieAlgebra::from_constants(3, &[(0, 1, vec![-2, 0, 0]), (0, 2, vec![0, 1, 0]), (1, 2, vec![0, 0, -2])])
            .expect("sl(2)")
    }

    /// The 2-dimensional non-abelian algebra: [x, y] = y.
    pub fn aff1() -> Self {
        LieAlgebra::from_constants(2, &[(0, 1, vec![0, 1])]).expect("aff(1)")
    }

    /// Heisenberg algebra on (p, q, z): [p, q] = z.
    pub fn heis3() -> Self {
        LieAlgebra::from_constants(3, &[(0, 1, vec![0, 0, 1])]).expect("heis3")
    }

    /// Looks up a named preset: `sl2`, `aff1`, `heis3`, `abelianN`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "sl2" => Some(LieAlgebra::sl2()),
            "aff1" => Some(LieAlgebra::aff1()),
            "heis3" => Some(LieAlgebra::heis3()),
            _ => name.strip_prefix("abelian").and_then(|n| n.parse().ok()).map(LieAlgebra::abelian),
        }
    }

    pub fn preset_basis_names(name: &str) -> Option<Vec<String>> {
        let v: Vec<&str> = match name {
            "sl2" => vec!["e", "h", "f"],
            "aff1" => vec!["x", "y"],
            "heis3" => vec!["p", "q", "z"],
            _ => return None,
        };
        Some(v.into_iter().map(String::from).collect())
    }

    pub fn dim(&self) -> usize {
        self.bracket.src_dim()
    }

    pub fn bracket(&self) -> &AltMap {
        &self.bracket
    }

    pub fn br_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.bracket.eval_basis(&[i, j])
    }

    pub fn br(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket.eval(&[x, y])
    }

    /// `[π, π]` on sorted triples, i.e. twice the Jacobiator.
    pub fn jacobiator(&self) -> AltMap {
        let n = self.dim();
        let pi = MixedMap::from_g_alt(SplitSpace::new(n, 0), Target::IntoG, &self.bracket);
        let res = is_lie_structure(&pi).expect("bracket shape").residual;
        AltMap::from_fn(n, n, 3, |t| res.eval_basis(t))
    }

    /// `ad_{e_i}` as a matrix.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|j| self.br_basis(i, j)).collect::<Vec<_>>())
    }

    pub fn adjoint(&self) -> Representation {
        Representation { lie_dim: self.dim(), dim: self.dim(), mats: (0..self.dim()).map(|i| self.ad(i)).collect() }
    }

    /// `d[x,y] − [dx,y] − [x,dy]` on sorted basis pairs.
    pub fn derivation_residual(&self, d: &Matrix) -> AltMap {
        let n = self.dim();
        AltMap::from_fn(n, n, 2, |t| {
            let mut v = d.apply(&self.br_basis(t[0], t[1]));
            axpy(&mut v, &rat(-1), &self.br(&d.column(t[0]), &unit_vec(n, t[1])));
            axpy(&mut v, &rat(-1), &self.br(&unit_vec(n, t[0]), &d.column(t[1])));
            v
        })
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        self.derivation_residual(d).is_zero()
    }

    /// `φ[x,y] − [φx,φy]` for `φ: self → other`.
    pub fn homomorphism_residual(&self, other: &LieAlgebra, phi: &Matrix) -> AltMap {
        let n = self.dim();
        AltMap::from_fn(n, other.dim(), 2, |t| {
            let mut v = phi.apply(&self.br_basis(t[0], t[1]));
            axpy(&mut v, &rat(-1), &other.br(&phi.column(t[0]), &phi.column(t[1])));
            v
        })
    }

    pub fn scaled(&self, c: &Rational) -> AltMap {
        self.bracket.scale(c)
    }

    /// The bracket as a `(2,0) → g` component.
    pub fn as_g_bracket(&self, space: SplitSpace, c: &Rational) -> MixedMap {
        MixedMap::from_g_alt(space, Target::IntoG, &self.bracket.scale(c))
    }

    /// The bracket as a `(0,2) → h` component.
    pub fn as_h_bracket(&self, space: SplitSpace, c: &Rational) -> MixedMap {
        MixedMap::from_h_alt(space, Target::IntoH, &self.bracket.scale(c))
    }
}

/// `ρ: L → gl(V)`, one matrix per basis vector of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    lie_dim: usize,
    dim: usize,
    mats: Vec<Matrix>,
}

impl Representation {
    /// Checks `ρ([x,y]) = [ρ(x), ρ(y)]` on basis pairs.
    pub fn new(lie: &LieAlgebra, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        let rep = Representation::unchecked(lie.dim(), dim, mats)?;
        if let Some((i, j)) = rep.law_failures(lie).into_iter().next() {
            return Err(Error::PremiseViolated(format!(
                "representation law fails on basis pair ({i}, {j}): rho([x,y]) != [rho(x), rho(y)]"
            )));
        }
        Ok(rep)
    }

    pub fn unchecked(lie_dim: usize, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != lie_dim {
            return Err(Error::ShapeMismatch(format!("{} matrices for a {lie_dim}-dimensional algebra", mats.len())));
        }
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch("representation matrices must be square of one size".into()));
        }
        Ok(Representation { lie_dim, dim, mats })
    }

    pub fn trivial(lie_dim: usize, dim: usize) -> Self {
        Representation { lie_dim, dim, mats: vec![Matrix::zeros(dim, dim); lie_dim] }
    }

    /// The defining 2-dimensional representation of sl(2) on the basis (e, h, f).
    pub fn sl2_standard() -> Self {
        let e = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let f = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        Representation::new(&LieAlgebra::sl2(), 2, vec![e, h, f]).expect("sl(2) standard representation")
    }

    pub fn law_failures(&self, lie: &LieAlgebra) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in sorted_subsets(lie.dim(), 2) {
            let (i, j) = (t[0], t[1]);
            let lhs = self.of(&lie.br_basis(i, j));
            if lhs != self.mats[i].commutator(&self.mats[j]) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// `ρ(x)` for an arbitrary vector `x`.
    pub fn of(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.mats[i].scale(c));
            }
        }
        m
    }

    /// `ρ(x)v`.
    pub fn act(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.mats[i].apply(v));
            }
        }
        out
    }

    /// From the two-slot form of a `(1,1)` map into `h` (`ρ(x)v = ρ(x,v)`).
    pub fn from_rho_component(rho: &MixedMap) -> Self {
        let sp = rho.space();
        assert_eq!((rho.bidegree(), rho.target()), ((1, 1), Target::IntoH));
        let mats = (0..sp.dim_g)
            .map(|i| Matrix::from_columns(sp.dim_h, &(0..sp.dim_h).map(|j| rho.eval_basis(&[i], &[j])).collect::<Vec<_>>()))
            .collect();
        Representation { lie_dim: sp.dim_g, dim: sp.dim_h, mats }
    }

    /// `ρ(x,v) = ρ(x)v` for an action of `g` on `h`.
    pub fn to_rho_component(&self, space: SplitSpace) -> MixedMap {
        assert_eq!((self.lie_dim, self.dim), (space.dim_g, space.dim_h), "action shape");
        MixedMap::from_fn(space, 1, 1, Target::IntoH, |g, h| self.mats[g[0]].column(h[0]))
    }
}

/// The sign dictionary between an action `η: h → gl(g)` and the two-slot
/// `(1,1) → g` component: `η(u)y = −η(y,u)`.
pub mod conventions {
    use super::*;

    /// `η_qt(x, v) = −η(v)x`.
    pub fn eta_component(space: SplitSpace, eta: &Representation) -> MixedMap {
        assert_eq!((eta.lie_dim(), eta.dim()), (space.dim_h, space.dim_g), "action shape");
        MixedMap::from_fn(space, 1, 1, Target::IntoG, |g, h| {
            eta.matrix(h[0]).column(g[0]).iter().map(|c| -c).collect()
        })
    }

    /// `η(u)y = −η_qt(y, u)`.
    pub fn eta_action(eta: &MixedMap) -> Representation {
        let sp = eta.space();
        assert_eq!((eta.bidegree(), eta.target()), ((1, 1), Target::IntoG));
        let mats = (0..sp.dim_h)
            .map(|j| {
                Matrix::from_columns(
                    sp.dim_g,
                    &(0..sp.dim_g).map(|i| eta.eval_basis(&[i], &[j]).iter().map(|c| -c).collect()).collect::<Vec<_>>(),
                )
            })
            .collect();
        Representation::unchecked(sp.dim_h, sp.dim_g, mats).expect("square action matrices")
    }
}

/// CE coboundary of a 2-cochain `ω: ∧²L → V`:
/// `ρ(x)ω(y,z) − ρ(y)ω(x,z) + ρ(z)ω(x,y) − ω([x,y],z) + ω([x,z],y) − ω([y,z],x)`.
pub fn cocycle_residual(lie: &LieAlgebra, rep: &Representation, omega: &AltMap) -> AltMap {
    let n = lie.dim();
    AltMap::from_fn(n, rep.dim(), 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut v = zero_vec(rep.dim());
        let e = |i| unit_vec(n, i);
        axpy(&mut v, &rat(1), &rep.act(&e(x), &omega.eval_basis(&[y, z])));
        axpy(&mut v, &rat(-1), &rep.act(&e(y), &omega.eval_basis(&[x, z])));
        axpy(&mut v, &rat(1), &rep.act(&e(z), &omega.eval_basis(&[x, y])));
        axpy(&mut v, &rat(-1), &omega.eval_first(&lie.br_basis(x, y), &[z]));
        axpy(&mut v, &rat(1), &omega.eval_first(&lie.br_basis(x, z), &[y]));
        axpy(&mut v, &rat(-1), &omega.eval_first(&lie.br_basis(y, z), &[x]));
        v
    })
}

pub fn is_cocycle(lie: &LieAlgebra, rep: &Representation, omega: &AltMap) -> bool {
    cocycle_residual(lie, rep, omega).is_zero()
}

pub(crate) fn nonzero(v: &[Rational]) -> bool {
    !is_zero_vec(v)
}
