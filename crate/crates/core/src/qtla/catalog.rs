//! Standard quasi-twilled Lie algebras.

use std::fmt;
use std::str::FromStr;

use super::lie::{cocycle_residual, LieAlgebra, Representation};
use super::matched::MatchedPair;
use super::QuasiTwilled;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, rat, unit_vec, Rational};
use crate::multilinear::{AltMap, MixedMap, SplitSpace, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogKind {
    Modified,
    Action,
    Semidirect,
    Direct,
    Cocycle,
    Reynolds,
    Matched,
}

impl CatalogKind {
    pub const ALL: [CatalogKind; 7] = [
        CatalogKind::Modified,
        CatalogKind::Action,
        CatalogKind::Semidirect,
        CatalogKind::Direct,
        CatalogKind::Cocycle,
        CatalogKind::Reynolds,
        CatalogKind::Matched,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogKind::Modified => "modified",
            CatalogKind::Action => "action",
            CatalogKind::Semidirect => "semidirect",
            CatalogKind::Direct => "direct",
            CatalogKind::Cocycle => "cocycle",
            CatalogKind::Reynolds => "reynolds",
            CatalogKind::Matched => "matched",
        }
    }
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Document(format!("unknown catalog kind {s:?}")))
    }
}

/// Inputs of each construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Catalog {
    /// `g ⊕_M g`: `π = ρ = 0`, `η = μ = [,]`, `θ = λ[,]`.
    Modified { lie: LieAlgebra, lambda: Rational },
    /// `g ⋉_ρ h` for an action by derivations, with `λ[u,v]_h`.
    Action { g: LieAlgebra, h: LieAlgebra, rho: Representation, lambda: Rational },
    /// `g ⋉_ρ V`.
    Semidirect { g: LieAlgebra, rho: Representation },
    /// `g ⊕ h`.
    Direct { g: LieAlgebra, h: LieAlgebra },
    /// `g ⋉_{ρ,ω} V` for a 2-cocycle `ω`.
    Cocycle { g: LieAlgebra, rho: Representation, omega: AltMap },
    /// `g ⋉_{ad,ω} g` with `ω = [,]`.
    Reynolds { g: LieAlgebra },
    /// `g ⋈ h`.
    Matched(MatchedPair),
}

fn check_lie(name: &str, lie: &LieAlgebra) -> Result<()> {
    if let Some((t, _)) = lie.jacobiator().entries().next() {
        return Err(Error::PremiseViolated(format!("Jacobi identity of {name} fails on basis triple {t:?}")));
    }
    Ok(())
}

fn check_rep(lie: &LieAlgebra, rep: &Representation) -> Result<()> {
    if rep.lie_dim() != lie.dim() {
        return Err(Error::ShapeMismatch("representation does not fit the Lie algebra".into()));
    }
    if let Some((i, j)) = rep.law_failures(lie).first() {
        return Err(Error::PremiseViolated(format!(
            "representation law rho([x,y]) = [rho(x), rho(y)] fails on basis pair ({i}, {j})"
        )));
    }
    Ok(())
}

impl Catalog {
    pub fn kind(&self) -> CatalogKind {
        match self {
            Catalog::Modified { .. } => CatalogKind::Modified,
            Catalog::Action { .. } => CatalogKind::Action,
            Catalog::Semidirect { .. } => CatalogKind::Semidirect,
            Catalog::Direct { .. } => CatalogKind::Direct,
            Catalog::Cocycle { .. } => CatalogKind::Cocycle,
            Catalog::Reynolds { .. } => CatalogKind::Reynolds,
            Catalog::Matched(_) => CatalogKind::Matched,
        }
    }

    /// The standard instance of `kind` over one Lie algebra: `action` uses
    /// the adjoint action of `g` on itself, `semidirect` the adjoint
    /// representation, `direct` two copies of `g`, `cocycle` the adjoint
    /// representation with `ω = λ[,]`, `matched` the pair `(g, g; 0, ad)`.
    pub fn standard(kind: CatalogKind, lie: &LieAlgebra, lambda: &Rational) -> Catalog {
        match kind {
            CatalogKind::Modified => Catalog::Modified { lie: lie.clone(), lambda: lambda.clone() },
            CatalogKind::Action => {
                Catalog::Action { g: lie.clone(), h: lie.clone(), rho: lie.adjoint(), lambda: lambda.clone() }
            }
            CatalogKind::Semidirect => Catalog::Semidirect { g: lie.clone(), rho: lie.adjoint() },
            CatalogKind::Direct => Catalog::Direct { g: lie.clone(), h: lie.clone() },
            CatalogKind::Cocycle => Catalog::Cocycle { g: lie.clone(), rho: lie.adjoint(), omega: lie.scaled(lambda) },
            CatalogKind::Reynolds => Catalog::Reynolds { g: lie.clone() },
            CatalogKind::Matched => Catalog::Matched(MatchedPair::universal(lie)),
        }
    }

    /// Validates the premises and assembles the five components.
    pub fn build(&self) -> Result<QuasiTwilled> {
        let one = rat(1);
        match self {
            Catalog::Modified { lie, lambda } => {
                check_lie("g", lie)?;
                let n = lie.dim();
                let sp = SplitSpace::new(n, n);
                let eta = MixedMap::from_fn(sp, 1, 1, Target::IntoG, |x, v| lie.br_basis(x[0], v[0]));
                QuasiTwilled::new(
                    sp,
                    MixedMap::zero(sp, 2, 0, Target::IntoG),
                    MixedMap::zero(sp, 1, 1, Target::IntoH),
                    lie.as_h_bracket(sp, &one),
                    eta,
                    MixedMap::from_g_alt(sp, Target::IntoH, &lie.scaled(lambda)),
                )
            }
            Catalog::Action { g, h, rho, lambda } => {
                check_lie("g", g)?;
                check_lie("h", h)?;
                check_rep(g, rho)?;
                if rho.dim() != h.dim() {
                    return Err(Error::ShapeMismatch("action does not act on h".into()));
                }
                for x in 0..g.dim() {
                    for u in 0..h.dim() {
                        for v in u + 1..h.dim() {
                            let e = |i, n| unit_vec(n, i);
                            let rx = rho.matrix(x);
                            let mut r = rx.apply(&h.br_basis(u, v));
                            axpy(&mut r, &rat(-1), &h.br(&rx.column(u), &e(v, h.dim())));
                            axpy(&mut r, &rat(-1), &h.br(&e(u, h.dim()), &rx.column(v)));
                            if crate::qtla::lie::nonzero(&r) {
                                return Err(Error::PremiseViolated(format!(
                                    "rho(x) is not a derivation of h: fails for g_{x} on ({u}, {v})"
                                )));
                            }
                        }
                    }
                }
                let sp = SplitSpace::new(g.dim(), h.dim());
                QuasiTwilled::new(
                    sp,
                    g.as_g_bracket(sp, &one),
                    rho.to_rho_component(sp),
                    h.as_h_bracket(sp, lambda),
                    MixedMap::zero(sp, 1, 1, Target::IntoG),
                    MixedMap::zero(sp, 2, 0, Target::IntoH),
                )
            }
            Catalog::Semidirect { g, rho } => {
                check_lie("g", g)?;
                check_rep(g, rho)?;
                let sp = SplitSpace::new(g.dim(), rho.dim());
                QuasiTwilled::new(
                    sp,
                    g.as_g_bracket(sp, &one),
                    rho.to_rho_component(sp),
                    MixedMap::zero(sp, 0, 2, Target::IntoH),
                    MixedMap::zero(sp, 1, 1, Target::IntoG),
                    MixedMap::zero(sp, 2, 0, Target::IntoH),
                )
            }
            Catalog::Direct { g, h } => {
                check_lie("g", g)?;
                check_lie("h", h)?;
                let sp = SplitSpace::new(g.dim(), h.dim());
                QuasiTwilled::new(
                    sp,
                    g.as_g_bracket(sp, &one),
                    MixedMap::zero(sp, 1, 1, Target::IntoH),
                    h.as_h_bracket(sp, &one),
                    MixedMap::zero(sp, 1, 1, Target::IntoG),
                    MixedMap::zero(sp, 2, 0, Target::IntoH),
                )
            }
            Catalog::Cocycle { g, rho, omega } => {
                check_lie("g", g)?;
                check_rep(g, rho)?;
                if (omega.src_dim(), omega.tgt_dim(), omega.arity()) != (g.dim(), rho.dim(), 2) {
                    return Err(Error::ShapeMismatch("omega must be a map from wedge^2 g to V".into()));
                }
                if let Some((t, _)) = cocycle_residual(g, rho, omega).entries().next() {
                    return Err(Error::PremiseViolated(format!(
                        "omega is not a 2-cocycle: the coboundary is nonzero on basis triple {t:?}"
                    )));
                }
                let sp = SplitSpace::new(g.dim(), rho.dim());
                QuasiTwilled::new(
                    sp,
                    g.as_g_bracket(sp, &one),
                    rho.to_rho_component(sp),
                    MixedMap::zero(sp, 0, 2, Target::IntoH),
                    MixedMap::zero(sp, 1, 1, Target::IntoG),
                    MixedMap::from_g_alt(sp, Target::IntoH, omega),
                )
            }
            Catalog::Reynolds { g } => {
                Catalog::Cocycle { g: g.clone(), rho: g.adjoint(), omega: g.bracket().clone() }.build()
            }
            Catalog::Matched(mp) => {
                let report = mp.verify();
                if let Some(f) = report.failures().first() {
                    return Err(Error::PremiseViolated(format!("matched pair axiom fails: {f}")));
                }
                Ok(mp.to_quasi_twilled())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lies() -> Vec<LieAlgebra> {
        vec![LieAlgebra::sl2(), LieAlgebra::aff1(), LieAlgebra::heis3(), LieAlgebra::abelian(2)]
    }

    #[test]
    fn every_standard_instance_is_quasi_twilled() {
        for lie in lies() {
            for kind in CatalogKind::ALL {
                let qt = Catalog::standard(kind, &lie, &rat(1)).build().unwrap();
                let rep = qt.verify_structure_equations();
                assert!(rep.holds(), "{kind} on dim {}: {:?}", lie.dim(), rep.failing());
                assert!(rep.omega_square.is_zero());
                assert!(rep.consistent(), "{kind}");
            }
        }
    }

    #[test]
    fn direct_with_abelian_h() {
        let qt = Catalog::Direct { g: LieAlgebra::sl2(), h: LieAlgebra::abelian(2) }.build().unwrap();
        assert!(qt.theta().is_zero() && qt.eta().is_zero() && qt.rho().is_zero());
        assert!(qt.is_quasi_twilled());
    }

    #[test]
    fn theta_lift_on_sl2() {
        let lambda = crate::exactlin::ratio(3, 2);
        let qt = Catalog::Modified { lie: LieAlgebra::sl2(), lambda: lambda.clone() }.build().unwrap();
        // Ω((e,0),(h,0)) = (0, λ[e,h]) = (0, −2λe)
        let v = qt.omega().eval_basis(&[0, 1]);
        let mut want = crate::exactlin::zero_vec(6);
        want[3] = -rat(2) * lambda;
        assert_eq!(v, want);
    }

    #[test]
    fn non_cocycle_breaks_equation_five() {
        let sl2 = LieAlgebra::sl2();
        let mut omega = AltMap::zero(3, 3, 2);
        omega.set(&[0, 1], vec![rat(1), rat(0), rat(0)]).unwrap();
        let bad = Catalog::Cocycle { g: sl2.clone(), rho: sl2.adjoint(), omega: omega.clone() };
        assert!(matches!(bad.build(), Err(Error::PremiseViolated(_))));
        // assembled anyway, only equation 5 fails
        let good = Catalog::Semidirect { g: sl2.clone(), rho: sl2.adjoint() }.build().unwrap();
        let sp = good.space();
        let qt = QuasiTwilled::new(
            sp,
            good.pi().clone(),
            good.rho().clone(),
            good.mu().clone(),
            good.eta().clone(),
            MixedMap::from_g_alt(sp, Target::IntoH, &omega),
        )
        .unwrap();
        assert_eq!(qt.verify_structure_equations().failing(), vec![5]);
    }

    #[test]
    fn action_requires_derivations() {
        let g = LieAlgebra::abelian(1);
        let h = LieAlgebra::aff1();
        let rho = Representation::unchecked(1, 2, vec![crate::exactlin::Matrix::identity(2)]).unwrap();
        let r = Catalog::Action { g, h, rho, lambda: rat(1) }.build();
        assert!(matches!(r, Err(Error::PremiseViolated(_))));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in CatalogKind::ALL {
            assert_eq!(k.name().parse::<CatalogKind>().unwrap(), k);
        }
        assert!("bogus".parse::<CatalogKind>().is_err());
    }
}
