//! Quasi-twilled Lie algebras `(g ⊕ h, g, h)`: a Lie bracket `Ω` on `g ⊕ h`
//! for which `h` is a subalgebra, split into five components.

pub mod catalog;
pub mod lie;
pub mod matched;

use crate::error::{Error, Result};
use crate::exactlin::{ratio, Rational};
use crate::multilinear::{GradedMap, MixedMap, SplitSpace, Target};
use crate::nrbracket::{nr_bracket, nr_compose};

pub use catalog::Catalog;
pub use lie::{conventions, LieAlgebra, Representation};
pub use matched::MatchedPair;

pub const COMPONENT_NAMES: [&str; 5] = ["pi", "rho", "mu", "eta", "theta"];

/// `Ω = π + ρ + μ + η + θ` with
/// `π: ∧²g → g`, `ρ: g⊗h → h`, `μ: ∧²h → h`, `η: g⊗h → g`, `θ: ∧²g → h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiTwilled {
    space: SplitSpace,
    pi: MixedMap,
    rho: MixedMap,
    mu: MixedMap,
    eta: MixedMap,
    theta: MixedMap,
}

/// Expected `(g-arity, target)` of each component, in `COMPONENT_NAMES` order.
pub const COMPONENT_SHAPES: [((usize, usize), Target); 5] = [
    ((2, 0), Target::IntoG),
    ((1, 1), Target::IntoH),
    ((0, 2), Target::IntoH),
    ((1, 1), Target::IntoG),
    ((2, 0), Target::IntoH),
];

impl QuasiTwilled {
    /// Assembles the data; checks shapes only. Use
    /// [`QuasiTwilled::verify_structure_equations`] for the bracket.
    pub fn new(
        space: SplitSpace,
        pi: MixedMap,
        rho: MixedMap,
        mu: MixedMap,
        eta: MixedMap,
        theta: MixedMap,
    ) -> Result<Self> {
        for ((name, m), (bideg, target)) in COMPONENT_NAMES.iter().zip([&pi, &rho, &mu, &eta, &theta]).zip(COMPONENT_SHAPES) {
            if m.space() != space {
                return Err(Error::ShapeMismatch(format!("component {name} lives on {:?}, expected {space:?}", m.space())));
            }
            if m.bidegree() != bideg || m.target() != target {
                return Err(Error::ShapeMismatch(format!(
                    "component {name} has bidegree {:?} -> {:?}, expected {bideg:?} -> {target:?}",
                    m.bidegree(),
                    m.target()
                )));
            }
        }
        Ok(QuasiTwilled { space, pi, rho, mu, eta, theta })
    }

    pub fn zero(space: SplitSpace) -> Self {
        let [pi, rho, mu, eta, theta] =
            COMPONENT_SHAPES.map(|((k, l), t)| MixedMap::zero(space, k, l, t));
        QuasiTwilled { space, pi, rho, mu, eta, theta }
    }

    /// Splits an arity-2 bracket on `g ⊕ h`; fails if `h` is not closed.
    pub fn from_omega(omega: &GradedMap) -> Result<Self> {
        if omega.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: omega.arity() });
        }
        let xi = omega.component(0, Target::IntoG);
        if !xi.is_zero() {
            return Err(Error::PremiseViolated("h is not a subalgebra: the (0,2) -> g component is nonzero".into()));
        }
        let [pi, rho, mu, eta, theta] = COMPONENT_SHAPES.map(|((k, _), t)| omega.component(k, t));
        Ok(QuasiTwilled { space: omega.space(), pi, rho, mu, eta, theta })
    }

    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn pi(&self) -> &MixedMap {
        &self.pi
    }

    pub fn rho(&self) -> &MixedMap {
        &self.rho
    }

    pub fn mu(&self) -> &MixedMap {
        &self.mu
    }

    pub fn eta(&self) -> &MixedMap {
        &self.eta
    }

    pub fn theta(&self) -> &MixedMap {
        &self.theta
    }

    /// Components in `COMPONENT_NAMES` order.
    pub fn components(&self) -> [&MixedMap; 5] {
        [&self.pi, &self.rho, &self.mu, &self.eta, &self.theta]
    }

    pub fn component(&self, name: &str) -> Option<&MixedMap> {
        COMPONENT_NAMES.iter().position(|n| *n == name).map(|i| self.components()[i])
    }

    /// Sum of the five lifts.
    pub fn omega(&self) -> GradedMap {
        GradedMap::from_components(self.space, 2, &self.components().map(Clone::clone)).expect("component shapes")
    }

    /// `Ω((x,u),(y,v))`.
    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.omega().eval(&[a, b])
    }

    /// `(h, μ)` as a Lie algebra, without a Jacobi check.
    pub fn h_algebra(&self) -> LieAlgebra {
        LieAlgebra::unchecked(self.mu.to_alt()).expect("mu shape")
    }

    /// The seven component equations of `[Ω, Ω] = 0`.
    pub fn verify_structure_equations(&self) -> StructureReport {
        let [pi, rho, mu, eta, theta] = self.components().map(MixedMap::lift);
        let two = ratio(2, 1);
        let half = ratio(1, 2);
        let residuals = vec![
            nr_bracket(&mu, &mu),
            nr_bracket(&pi, &pi).add(&nr_compose(&eta, &theta).scale(&two)),
            nr_bracket(&mu, &eta).scale(&two).add(&nr_bracket(&eta, &eta)),
            nr_bracket(&rho, &mu).add(&nr_compose(&rho, &eta)),
            nr_bracket(&rho, &theta).add(&nr_bracket(&pi, &theta)),
            nr_bracket(&pi, &eta).add(&nr_compose(&eta, &rho)),
            nr_bracket(&mu, &theta)
                .add(&nr_bracket(&pi, &rho))
                .add(&nr_compose(&theta, &eta))
                .add(&nr_bracket(&rho, &rho).scale(&half)),
        ];
        let omega = self.omega();
        StructureReport { residuals, omega_square: nr_bracket(&omega, &omega) }
    }

    pub fn is_quasi_twilled(&self) -> bool {
        self.verify_structure_equations().holds()
    }

    /// `σ(v)x = −η(x,v)`, a representation of `(h, μ)` on `g`, with its
    /// representation law checked.
    pub fn induced_representation_sigma(&self) -> Result<Representation> {
        let sigma = conventions::eta_action(&self.eta);
        let h = self.h_algebra();
        let failures = sigma.law_failures(&h);
        if let Some((i, j)) = failures.first() {
            return Err(Error::Certificate(format!(
                "sigma(mu(u,v)) != [sigma(u), sigma(v)] on h basis pair ({i}, {j})"
            )));
        }
        Ok(sigma)
    }
}

/// Human-readable forms of the seven equations.
pub const STRUCTURE_EQUATIONS: [&str; 7] = [
    "[mu,mu] = 0",
    "[pi,pi] + 2 eta.theta = 0",
    "2[mu,eta] + [eta,eta] = 0",
    "[rho,mu] + rho.eta = 0",
    "[rho,theta] + [pi,theta] = 0",
    "[pi,eta] + eta.rho = 0",
    "[mu,theta] + [pi,rho] + theta.eta + 1/2[rho,rho] = 0",
];

/// The `(g-arity, target)` component of `[Ω,Ω]` carried by each equation, and
/// the factor relating them: `[Ω,Ω]|_c = factor · residual`.
pub const EQUATION_COMPONENTS: [(usize, Target, i64); 7] = [
    (0, Target::IntoH, 1),
    (3, Target::IntoG, 1),
    (1, Target::IntoG, 1),
    (1, Target::IntoH, 2),
    (3, Target::IntoH, 2),
    (2, Target::IntoG, 2),
    (2, Target::IntoH, 2),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// Arity-3 residuals, one per equation.
    pub residuals: Vec<GradedMap>,
    pub omega_square: GradedMap,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(GradedMap::is_zero)
    }

    /// 1-based numbers of the failing equations.
    pub fn failing(&self) -> Vec<usize> {
        (0..7).filter(|&i| !self.residuals[i].is_zero()).map(|i| i + 1).collect()
    }

    /// Each residual is, up to its factor, one bidegree component of
    /// `[Ω,Ω]`, and the remaining `(0,3) → g` component vanishes.
    pub fn consistent(&self) -> bool {
        let sq = &self.omega_square;
        let mut rebuilt = GradedMap::zero(sq.space(), 3);
        for (res, &(k, target, factor)) in self.residuals.iter().zip(&EQUATION_COMPONENTS) {
            let scaled = res.scale(&ratio(factor, 1));
            if sq.component(k, target).lift() != scaled {
                return false;
            }
            rebuilt = rebuilt.add(&scaled);
        }
        rebuilt == *sq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn garbage_mu() -> QuasiTwilled {
        let sp = SplitSpace::new(1, 3);
        let mut qt = QuasiTwilled::zero(sp);
        // [e,h]=e, [e,f]=f on h
        qt.mu.set(&[], &[0, 1], vec![rat(1), rat(0), rat(0)]).unwrap();
        qt.mu.set(&[], &[0, 2], vec![rat(0), rat(0), rat(1)]).unwrap();
        qt
    }

    #[test]
    fn zero_structure_holds() {
        let qt = QuasiTwilled::zero(SplitSpace::new(2, 2));
        assert!(qt.omega().is_zero());
        let rep = qt.verify_structure_equations();
        assert!(rep.holds() && rep.consistent());
    }

    #[test]
    fn garbage_mu_isolates_first_equation() {
        let rep = garbage_mu().verify_structure_equations();
        assert_eq!(rep.failing(), vec![1]);
        assert!(rep.consistent());
    }

    #[test]
    fn shape_errors() {
        let sp = SplitSpace::new(2, 2);
        let z = QuasiTwilled::zero(sp);
        let wrong = MixedMap::zero(sp, 2, 0, Target::IntoG);
        let r = QuasiTwilled::new(sp, z.pi.clone(), wrong, z.mu.clone(), z.eta.clone(), z.theta.clone());
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn trivial_sigma_for_zero_eta() {
        let qt = QuasiTwilled::zero(SplitSpace::new(2, 3));
        let sigma = qt.induced_representation_sigma().unwrap();
        assert_eq!(sigma, Representation::trivial(3, 2));
    }
}
