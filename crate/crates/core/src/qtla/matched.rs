//! Matched pairs `(g, h; ρ, η)` of Lie algebras.

use num::Zero;

use super::lie::{conventions, LieAlgebra, Representation};
use super::QuasiTwilled;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, rat, unit_vec, zero_vec, Matrix};
use crate::multilinear::{AltMap, MixedMap, SplitSpace, Target};

/// `ρ: g → gl(h)` and `η: h → gl(g)`, both in the action convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub lie_g: LieAlgebra,
    pub lie_h: LieAlgebra,
    pub rho: Representation,
    pub eta: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairReport {
    pub jacobi_g: AltMap,
    pub jacobi_h: AltMap,
    pub rho_law: Vec<(usize, usize)>,
    pub eta_law: Vec<(usize, usize)>,
    /// `ρ(x)[u,v] − [ρ(x)u,v] − [u,ρ(x)v] − ρ(η(v)x)u + ρ(η(u)x)v`.
    pub compat_rho: MixedMap,
    /// `η(u)[x,y] − [η(u)x,y] − [x,η(u)y] − η(ρ(y)u)x + η(ρ(x)u)y`.
    pub compat_eta: MixedMap,
}

impl MatchedPairReport {
    pub fn holds(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.jacobi_g.is_zero() {
            out.push("Jacobi identity of g".to_string());
        }
        if !self.jacobi_h.is_zero() {
            out.push("Jacobi identity of h".to_string());
        }
        if !self.rho_law.is_empty() {
            out.push("rho is a representation of g on h".to_string());
        }
        if !self.eta_law.is_empty() {
            out.push("eta is a representation of h on g".to_string());
        }
        if !self.compat_rho.is_zero() {
            out.push("compatibility of rho with [,]_h".to_string());
        }
        if !self.compat_eta.is_zero() {
            out.push("compatibility of eta with [,]_g".to_string());
        }
        out
    }
}

impl MatchedPair {
    pub fn new(lie_g: LieAlgebra, lie_h: LieAlgebra, rho: Representation, eta: Representation) -> Result<Self> {
        let mp = MatchedPair::unchecked(lie_g, lie_h, rho, eta)?;
        let report = mp.verify();
        if let Some(f) = report.failures().first() {
            return Err(Error::PremiseViolated(format!("matched pair axiom fails: {f}")));
        }
        Ok(mp)
    }

    pub fn unchecked(lie_g: LieAlgebra, lie_h: LieAlgebra, rho: Representation, eta: Representation) -> Result<Self> {
        let (m, n) = (lie_g.dim(), lie_h.dim());
        if (rho.lie_dim(), rho.dim()) != (m, n) || (eta.lie_dim(), eta.dim()) != (n, m) {
            return Err(Error::ShapeMismatch("matched pair actions do not fit the algebras".into()));
        }
        Ok(MatchedPair { lie_g, lie_h, rho, eta })
    }

    pub fn space(&self) -> SplitSpace {
        SplitSpace::new(self.lie_g.dim(), self.lie_h.dim())
    }

    /// `(g, g; 0, ad)`.
    pub fn universal(lie: &LieAlgebra) -> Self {
        let n = lie.dim();
        MatchedPair { lie_g: lie.clone(), lie_h: lie.clone(), rho: Representation::trivial(n, n), eta: lie.adjoint() }
    }

    /// The matched pair of a splitting `L = A ⊕ B` into two subalgebras
    /// spanned by complementary sets of basis vectors.
    pub fn from_splitting(lie: &LieAlgebra, a: &[usize], b: &[usize]) -> Result<Self> {
        let n = lie.dim();
        let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::ShapeMismatch("splitting must partition the basis".into()));
        }
        let restrict = |v: &[crate::exactlin::Rational], idx: &[usize]| -> Vec<_> { idx.iter().map(|&i| v[i].clone()).collect() };
        let sub = |idx: &[usize], other: &[usize]| -> Result<LieAlgebra> {
            let mut br = AltMap::zero(idx.len(), idx.len(), 2);
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    let v = lie.br_basis(idx[i], idx[j]);
                    if other.iter().any(|&o| !v[o].is_zero()) {
                        return Err(Error::PremiseViolated(format!("basis span {idx:?} is not a subalgebra")));
                    }
                    br.set(&[i, j], restrict(&v, idx))?;
                }
            }
            LieAlgebra::new(br)
        };
        let lie_a = sub(a, b)?;
        let lie_b = sub(b, a)?;
        // ρ(x)v = proj_B [x,v], η(u)y = proj_A [u,y]
        let rho = a
            .iter()
            .map(|&x| Matrix::from_columns(b.len(), &b.iter().map(|&v| restrict(&lie.br_basis(x, v), b)).collect::<Vec<_>>()))
            .collect();
        let eta = b
            .iter()
            .map(|&u| Matrix::from_columns(a.len(), &a.iter().map(|&y| restrict(&lie.br_basis(u, y), a)).collect::<Vec<_>>()))
            .collect();
        let rho = Representation::unchecked(a.len(), b.len(), rho)?;
        let eta = Representation::unchecked(b.len(), a.len(), eta)?;
        MatchedPair::new(lie_a, lie_b, rho, eta)
    }

    /// `(h, g; η, ρ)`.
    pub fn swapped(&self) -> Self {
        MatchedPair {
            lie_g: self.lie_h.clone(),
            lie_h: self.lie_g.clone(),
            rho: self.eta.clone(),
            eta: self.rho.clone(),
        }
    }

    pub fn verify(&self) -> MatchedPairReport {
        let sp = self.space();
        let (g, h) = (&self.lie_g, &self.lie_h);
        let (m, n) = (sp.dim_g, sp.dim_h);
        let compat_rho = MixedMap::from_fn(sp, 1, 2, Target::IntoH, |xs, us| {
            let (x, u, v) = (unit_vec(m, xs[0]), unit_vec(n, us[0]), unit_vec(n, us[1]));
            let rx = self.rho.of(&x);
            let mut r = rx.apply(&h.br(&u, &v));
            axpy(&mut r, &rat(-1), &h.br(&rx.apply(&u), &v));
            axpy(&mut r, &rat(-1), &h.br(&u, &rx.apply(&v)));
            axpy(&mut r, &rat(-1), &self.rho.act(&self.eta.act(&v, &x), &u));
            axpy(&mut r, &rat(1), &self.rho.act(&self.eta.act(&u, &x), &v));
            r
        });
        let compat_eta = MixedMap::from_fn(sp, 2, 1, Target::IntoG, |xs, us| {
            let (x, y, u) = (unit_vec(m, xs[0]), unit_vec(m, xs[1]), unit_vec(n, us[0]));
            let eu = self.eta.of(&u);
            let mut r = eu.apply(&g.br(&x, &y));
            axpy(&mut r, &rat(-1), &g.br(&eu.apply(&x), &y));
            axpy(&mut r, &rat(-1), &g.br(&x, &eu.apply(&y)));
            axpy(&mut r, &rat(-1), &self.eta.act(&self.rho.act(&y, &u), &x));
            axpy(&mut r, &rat(1), &self.eta.act(&self.rho.act(&x, &u), &y));
            r
        });
        MatchedPairReport {
            jacobi_g: g.jacobiator(),
            jacobi_h: h.jacobiator(),
            rho_law: self.rho.law_failures(g),
            eta_law: self.eta.law_failures(h),
            compat_rho,
            compat_eta,
        }
    }

    /// `(g ⋈ h, g, h)`: `π = [,]_g`, `μ = [,]_h`, `ρ(x,v) = ρ(x)v`,
    /// `η(x,v) = −η(v)x`, `θ = 0`.
    pub fn to_quasi_twilled(&self) -> QuasiTwilled {
        let sp = self.space();
        let one = rat(1);
        QuasiTwilled::new(
            sp,
            self.lie_g.as_g_bracket(sp, &one),
            self.rho.to_rho_component(sp),
            self.lie_h.as_h_bracket(sp, &one),
            conventions::eta_component(sp, &self.eta),
            MixedMap::zero(sp, 2, 0, Target::IntoH),
        )
        .expect("matched pair component shapes")
    }

    /// Reads a matched pair off a quasi-twilled algebra with `θ = 0`,
    /// without checking the axioms.
    pub fn from_quasi_twilled(qt: &QuasiTwilled) -> Result<Self> {
        if !qt.theta().is_zero() {
            return Err(Error::PremiseViolated("theta must vanish for a matched pair".into()));
        }
        MatchedPair::unchecked(
            LieAlgebra::unchecked(qt.pi().to_alt())?,
            LieAlgebra::unchecked(qt.mu().to_alt())?,
            Representation::from_rho_component(qt.rho()),
            conventions::eta_action(qt.eta()),
        )
    }
}

/// `Ω` of `g ⋈ h` on basis vectors, straight from the bicrossed bracket
/// `([x,y] + η(u)y − η(v)x, [u,v] + ρ(x)v − ρ(y)u)`.
pub fn bowtie_bracket(mp: &MatchedPair, a: &[crate::exactlin::Rational], b: &[crate::exactlin::Rational]) -> Vec<crate::exactlin::Rational> {
    let sp = mp.space();
    let (x, u) = sp.split(a);
    let (y, v) = sp.split(b);
    let mut gpart = mp.lie_g.br(x, y);
    axpy(&mut gpart, &rat(1), &mp.eta.act(u, y));
    axpy(&mut gpart, &rat(-1), &mp.eta.act(v, x));
    let mut hpart = if sp.dim_h == 0 { zero_vec(0) } else { mp.lie_h.br(u, v) };
    axpy(&mut hpart, &rat(1), &mp.rho.act(x, v));
    axpy(&mut hpart, &rat(-1), &mp.rho.act(y, u));
    sp.join(&gpart, &hpart)
}
