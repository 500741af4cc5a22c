//! Nijenhuis–Richardson composition and bracket on `Hom(∧(g ⊕ h), g ⊕ h)`.

use num::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rational};
use crate::multilinear::{GradedMap, MixedMap, Target};

/// `(f∘g)(x₁,…) = Σ_{σ∈S(n,m−1)} (−1)^σ f(g(x_σ(1),…,x_σ(n)), x_σ(n+1),…)`.
pub fn nr_compose(f: &GradedMap, g: &GradedMap) -> GradedMap {
    assert_eq!(f.space(), g.space(), "composition across different spaces");
    let (m, n) = (f.arity(), g.arity());
    assert!(m + n >= 1, "composition of two vectors");
    let mut out = GradedMap::zero(f.space(), m + n - 1);
    let mut rest = Vec::with_capacity(m);
    let mut tuple = Vec::with_capacity(m + n - 1);
    for (gt, gv) in g.entries() {
        for (ft, fv) in f.entries() {
            for (p, &i) in ft.iter().enumerate() {
                let c = &gv[i];
                if c.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(ft.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &x)| x));
                if rest.iter().any(|x| gt.contains(x)) {
                    continue;
                }
                // f(e_i, e_rest) = (−1)^p f(e_ft); the output tuple gt ∪ rest
                // is sorted by `accumulate`, which supplies the shuffle sign.
                let sign = if p % 2 == 0 { 1 } else { -1 };
                tuple.clear();
                tuple.extend_from_slice(gt);
                tuple.extend_from_slice(&rest);
                out.accumulate(&tuple, &(c * rat(sign)), fv);
            }
        }
    }
    out
}

/// `[f,g] = f∘g − (−1)^{(m−1)(n−1)} g∘f`.
pub fn nr_bracket(f: &GradedMap, g: &GradedMap) -> GradedMap {
    let fg = nr_compose(f, g);
    let gf = nr_compose(g, f);
    let (m, n) = (f.arity() as isize, g.arity() as isize);
    if ((m - 1) * (n - 1)).rem_euclid(2) == 0 {
        fg.sub(&gf)
    } else {
        fg.add(&gf)
    }
}

/// Outcome of a Lie structure test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub holds: bool,
    /// `[π,π]`, twice the Jacobiator.
    pub residual: GradedMap,
}

/// Tests `[π,π] = 0` for a bracket on one factor.
pub fn is_lie_structure(pi: &MixedMap) -> Result<LieCheck> {
    let pure = matches!((pi.bidegree(), pi.target()), ((2, 0), Target::IntoG) | ((0, 2), Target::IntoH));
    if !pure {
        return Err(Error::ShapeMismatch(format!(
            "bracket must be (2,0)->g or (0,2)->h, got {:?}->{:?}",
            pi.bidegree(),
            pi.target()
        )));
    }
    let lifted = pi.lift();
    let residual = nr_bracket(&lifted, &lifted);
    Ok(LieCheck { holds: residual.is_zero(), residual })
}

/// The identity of `g ⊕ h` as an arity-1 map.
pub fn identity_map(space: crate::multilinear::SplitSpace) -> GradedMap {
    let n = space.total();
    GradedMap::from_fn(space, 1, |t| crate::exactlin::unit_vec(n, t[0]))
}

/// `Σ_{k≥0} ad_D^k(x)/k!` for nilpotent `ad_D = [·, D]`; stops at the first zero term.
pub fn exp_ad(x: &GradedMap, d: &GradedMap) -> GradedMap {
    let mut total = x.clone();
    let mut term = x.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = nr_bracket(&term, d).scale(&Rational::new(1.into(), k.into()));
        total = total.add(&term);
        k += 1;
        assert!(k < 64, "ad is not nilpotent");
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;
    use crate::multilinear::SplitSpace;

    /// sl(2) bracket on g with basis (e, h, f) and h = 0-dimensional.
    fn sl2_pi() -> MixedMap {
        let sp = SplitSpace::new(3, 0);
        let mut pi = MixedMap::zero(sp, 2, 0, Target::IntoG);
        pi.set(&[0, 1], &[], vec![rat(-2), rat(0), rat(0)]).unwrap();
        pi.set(&[0, 2], &[], vec![rat(0), rat(1), rat(0)]).unwrap();
        pi.set(&[1, 2], &[], vec![rat(0), rat(0), rat(-2)]).unwrap();
        pi
    }

    #[test]
    fn identity_compositions() {
        let pi = sl2_pi().lift();
        let id = identity_map(pi.space());
        assert_eq!(nr_compose(&id, &pi), pi);
        assert_eq!(nr_compose(&pi, &id), pi.scale(&rat(2)));
        assert_eq!(nr_bracket(&pi, &id), pi);
        let zero = GradedMap::zero(pi.space(), 1);
        assert!(nr_compose(&zero, &pi).is_zero());
    }

    #[test]
    fn sl2_is_lie() {
        let check = is_lie_structure(&sl2_pi()).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn broken_bracket_has_residual() {
        let sp = SplitSpace::new(3, 0);
        let mut pi = MixedMap::zero(sp, 2, 0, Target::IntoG);
        pi.set(&[0, 1], &[], unit_vec(3, 0)).unwrap();
        pi.set(&[0, 2], &[], unit_vec(3, 2)).unwrap();
        let check = is_lie_structure(&pi).unwrap();
        assert!(!check.holds);
        // Jacobiator on (e,h,f): [[e,h],f] + [[h,f],e] + [[f,e],h] = [e,f] = f
        assert_eq!(check.residual.eval_basis(&[0, 1, 2]), vec![rat(0), rat(0), rat(2)]);
    }

    #[test]
    fn square_of_d_vanishes() {
        let sp = SplitSpace::new(2, 2);
        let mut d = MixedMap::zero(sp, 1, 0, Target::IntoH);
        d.set(&[0], &[], vec![rat(1), rat(2)]).unwrap();
        d.set(&[1], &[], vec![rat(-1), rat(3)]).unwrap();
        let d = d.lift();
        assert!(nr_bracket(&d, &d).is_zero());
    }
}
