//! Chevalley–Eilenberg cohomology of deformation maps.
//!
//! A D-map `D: g → h` yields the Lie algebra `(g, π^D)` acting on `h` by
//! `ρ^D`; a 𝒟-map `B: h → g` yields `(h, μ^B)` acting on `g` by
//! `σ(v)x = −η^B(x,v)`. The complex is `C⁰ = 0`, `C¹ = target`,
//! `Cⁿ = Hom(∧ⁿ⁻¹ source, target)`, with the coboundary
//! `d f(x₁,…,x_{k+1}) = Σ_i (−1)^{i+1} x_i·f(…x̂_i…) + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], …)`.
//! Cochain coordinates are ordered by (sorted source tuple, target index).

use crate::defmaps::{twist_by_b, twist_by_d, OperatorB, OperatorD};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vec, mat_rank, rat, unit_vec, zero_vec, Matrix, Rational};
use crate::mcalg::{parity_sign, twist_type1, twist_type2};
use crate::multilinear::{sorted_subsets, AltMap};
use crate::qtla::{conventions, LieAlgebra, QuasiTwilled, Representation};

/// A verified D-map or 𝒟-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeformationMap {
    TypeI(OperatorD),
    TypeII(OperatorB),
}

/// A Lie algebra and a representation of it; the source and target of the
/// cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPair {
    pub lie: LieAlgebra,
    pub rep: Representation,
}

impl InducedPair {
    /// Checks Jacobi and the representation law.
    pub fn new(lie: LieAlgebra, rep: Representation) -> Result<Self> {
        let lie = LieAlgebra::new(lie.bracket().clone())
            .map_err(|e| Error::Certificate(format!("induced bracket is not a Lie algebra: {e}")))?;
        if rep.lie_dim() != lie.dim() {
            return Err(Error::ShapeMismatch("representation does not fit the induced algebra".into()));
        }
        if let Some((i, j)) = rep.law_failures(&lie).first() {
            return Err(Error::Certificate(format!("induced representation law fails on basis pair ({i}, {j})")));
        }
        Ok(InducedPair { lie, rep })
    }

    pub fn source_dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn target_dim(&self) -> usize {
        self.rep.dim()
    }
}

/// `((g, π^D), (h, ρ^D))`.
pub fn induced_pair_type1(qt: &QuasiTwilled, d: &OperatorD) -> Result<InducedPair> {
    twist_type1(qt, d)?;
    let tw = twist_by_d(qt, d)?;
    let lie = LieAlgebra::unchecked(tw.pi().to_alt())?;
    InducedPair::new(lie, Representation::from_rho_component(tw.rho()))
}

/// `((h, μ^B), (g, σ))` with `σ(v)x = −η^B(x,v)`.
pub fn induced_pair_type2(qt: &QuasiTwilled, b: &OperatorB) -> Result<InducedPair> {
    twist_type2(qt, b)?;
    let tw = twist_by_b(qt, b)?;
    let lie = LieAlgebra::unchecked(tw.mu.to_alt())?;
    InducedPair::new(lie, conventions::eta_action(&tw.eta))
}

pub fn induced_pair(qt: &QuasiTwilled, map: &DeformationMap) -> Result<InducedPair> {
    match map {
        DeformationMap::TypeI(d) => induced_pair_type1(qt, d),
        DeformationMap::TypeII(b) => induced_pair_type2(qt, b),
    }
}

/// The coboundary of an arity-`k` cochain; `k = 0` is a vector of the target.
pub fn ce_coboundary(pair: &InducedPair, f: &AltMap) -> AltMap {
    let (s, t) = (pair.source_dim(), pair.target_dim());
    assert_eq!((f.src_dim(), f.tgt_dim()), (s, t), "cochain shape");
    let k = f.arity();
    AltMap::from_fn(s, t, k + 1, |x| {
        let mut out = zero_vec(t);
        for i in 0..=k {
            let rest: Vec<usize> = x.iter().enumerate().filter(|(m, _)| *m != i).map(|(_, &v)| v).collect();
            let v = pair.rep.act(&unit_vec(s, x[i]), &f.eval_basis(&rest));
            axpy(&mut out, &parity_sign(i), &v);
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<usize> =
                    x.iter().enumerate().filter(|(m, _)| *m != i && *m != j).map(|(_, &v)| v).collect();
                axpy(&mut out, &parity_sign(i + j), &f.eval_first(&pair.lie.br_basis(x[i], x[j]), &rest));
            }
        }
        out
    })
}

/// Matrix of `d: Hom(∧ᵏs, t) → Hom(∧ᵏ⁺¹s, t)` in coordinates.
pub fn ce_coboundary_matrix(pair: &InducedPair, k: usize) -> Matrix {
    let (s, t) = (pair.source_dim(), pair.target_dim());
    let n_in = AltMap::space_dim(s, t, k);
    let cols: Vec<Vec<Rational>> = (0..n_in)
        .map(|c| ce_coboundary(pair, &AltMap::from_coordinates(s, t, k, &unit_vec(n_in, c))).to_coordinates())
        .collect();
    Matrix::from_columns(AltMap::space_dim(s, t, k + 1), &cols)
}

/// `dims[n] = dim Cⁿ` and `maps[n] = dⁿ: Cⁿ → Cⁿ⁺¹` for `n = 0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl CochainComplex {
    /// Assembles degrees `0..=top` and checks `dⁿ⁺¹dⁿ = 0` throughout.
    pub fn new(pair: &InducedPair, top: usize) -> Result<Self> {
        let (s, t) = (pair.source_dim(), pair.target_dim());
        let dim = |n: usize| if n == 0 { 0 } else { AltMap::space_dim(s, t, n - 1) };
        let dims: Vec<usize> = (0..=top + 1).map(dim).collect();
        let mut maps = vec![Matrix::zeros(dims[1], 0)];
        for n in 1..=top {
            maps.push(ce_coboundary_matrix(pair, n - 1));
        }
        for n in 0..top {
            if !maps[n + 1].mul(&maps[n]).is_zero() {
                return Err(Error::NonzeroSquare(n));
            }
        }
        Ok(CochainComplex { dims, maps })
    }

    pub fn rank(&self, n: usize) -> usize {
        mat_rank(&self.maps[n])
    }

    /// `dim Hⁿ = dim ker dⁿ − rank dⁿ⁻¹`.
    pub fn cohomology_dim(&self, n: usize) -> usize {
        let prev = if n == 0 { 0 } else { self.rank(n - 1) };
        self.dims[n] - self.rank(n) - prev
    }
}

/// One degree of a cohomology computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub cochain_dim: usize,
    /// Rank of `dⁿ`.
    pub rank: usize,
    pub cohomology_dim: usize,
}

/// `Hⁿ` for `1 ≤ n ≤ max_degree`; fails rather than report if `d² ≠ 0`.
pub fn cohomology_report(qt: &QuasiTwilled, map: &DeformationMap, max_degree: usize) -> Result<Vec<DegreeReport>> {
    let pair = induced_pair(qt, map)?;
    let cx = CochainComplex::new(&pair, max_degree)?;
    Ok((1..=max_degree)
        .map(|n| DegreeReport { degree: n, cochain_dim: cx.dims[n], rank: cx.rank(n), cohomology_dim: cx.cohomology_dim(n) })
        .collect())
}

pub fn cohomology_dims(qt: &QuasiTwilled, map: &DeformationMap, max_degree: usize) -> Result<Vec<usize>> {
    Ok(cohomology_report(qt, map, max_degree)?.into_iter().map(|r| r.cohomology_dim).collect())
}

/// `l₁(f) = (−1)^{k−1} d f` for the algebra twisted by `map`.
pub fn check_l1_equals_d(qt: &QuasiTwilled, map: &DeformationMap, f: &AltMap) -> Result<bool> {
    let pair = induced_pair(qt, map)?;
    let l1 = match map {
        DeformationMap::TypeI(d) => twist_type1(qt, d)?.l1(f),
        DeformationMap::TypeII(b) => twist_type2(qt, b)?.l1(f),
    };
    let sign = parity_sign(f.arity() + 1);
    Ok(l1 == ce_coboundary(&pair, f).scale(&sign))
}

/// `u ∈ h` is closed iff `μ(Dx,u) + ρ(x,u) − D(η(x,u)) = 0` for all `x`.
pub fn closed_vector_type1(qt: &QuasiTwilled, d: &OperatorD, u: &[Rational]) -> bool {
    let n = qt.space().dim_g;
    (0..n).all(|i| {
        let x = unit_vec(n, i);
        let mut r = qt.mu().eval(&[], &[&d.apply(&x), u]);
        axpy(&mut r, &rat(1), &qt.rho().eval(&[&x], &[u]));
        axpy(&mut r, &rat(-1), &d.apply(&qt.eta().eval(&[&x], &[u])));
        is_zero_vec(&r)
    })
}

/// `f: g → h` is closed iff
/// `μ(Dx,fy) − μ(Dy,fx) + ρ(x,fy) − ρ(y,fx) + D(η(y,fx)) − D(η(x,fy)) = f(π(x,y)) + f(η(x,Dy) − η(y,Dx))`.
pub fn closed_map_type1(qt: &QuasiTwilled, d: &OperatorD, f: &Matrix) -> bool {
    let n = qt.space().dim_g;
    sorted_subsets(n, 2).iter().all(|t| {
        let (x, y) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
        let (fx, fy, dx, dy) = (f.apply(&x), f.apply(&y), d.apply(&x), d.apply(&y));
        let mut lhs = qt.mu().eval(&[], &[&dx, &fy]);
        axpy(&mut lhs, &rat(-1), &qt.mu().eval(&[], &[&dy, &fx]));
        axpy(&mut lhs, &rat(1), &qt.rho().eval(&[&x], &[&fy]));
        axpy(&mut lhs, &rat(-1), &qt.rho().eval(&[&y], &[&fx]));
        axpy(&mut lhs, &rat(1), &d.apply(&qt.eta().eval(&[&y], &[&fx])));
        axpy(&mut lhs, &rat(-1), &d.apply(&qt.eta().eval(&[&x], &[&fy])));
        let mut arg = qt.pi().eval(&[&x, &y], &[]);
        axpy(&mut arg, &rat(1), &qt.eta().eval(&[&x], &[&dy]));
        axpy(&mut arg, &rat(-1), &qt.eta().eval(&[&y], &[&dx]));
        lhs == f.apply(&arg)
    })
}

/// `x ∈ g` is closed iff `−η(x,u) + π(Bu,x) + B(ρ(x,u)) − B(θ(Bu,x)) = 0` for all `u`.
pub fn closed_vector_type2(qt: &QuasiTwilled, b: &OperatorB, x: &[Rational]) -> bool {
    let n = qt.space().dim_h;
    (0..n).all(|i| {
        let u = unit_vec(n, i);
        let bu = b.apply(&u);
        let mut r: Vec<Rational> = qt.eta().eval(&[x], &[&u]).iter().map(|c| -c).collect();
        axpy(&mut r, &rat(1), &qt.pi().eval(&[&bu, x], &[]));
        axpy(&mut r, &rat(1), &b.apply(&qt.rho().eval(&[x], &[&u])));
        axpy(&mut r, &rat(-1), &b.apply(&qt.theta().eval(&[&bu, x], &[])));
        is_zero_vec(&r)
    })
}

/// `f: h → g` is closed iff
/// `−η(fv,u) + η(fu,v) + π(Bu,fv) − π(Bv,fu) + B(ρ(fv,u)) − B(ρ(fu,v))
///  = B(θ(Bu,fv)) − B(θ(Bv,fu)) + f(μ(u,v) + θ(Bu,Bv)) + f(ρ(Bu,v) − ρ(Bv,u))`.
pub fn closed_map_type2(qt: &QuasiTwilled, b: &OperatorB, f: &Matrix) -> bool {
    let n = qt.space().dim_h;
    sorted_subsets(n, 2).iter().all(|t| {
        let (u, v) = (unit_vec(n, t[0]), unit_vec(n, t[1]));
        let (fu, fv, bu, bv) = (f.apply(&u), f.apply(&v), b.apply(&u), b.apply(&v));
        let mut lhs: Vec<Rational> = qt.eta().eval(&[&fv], &[&u]).iter().map(|c| -c).collect();
        axpy(&mut lhs, &rat(1), &qt.eta().eval(&[&fu], &[&v]));
        axpy(&mut lhs, &rat(1), &qt.pi().eval(&[&bu, &fv], &[]));
        axpy(&mut lhs, &rat(-1), &qt.pi().eval(&[&bv, &fu], &[]));
        axpy(&mut lhs, &rat(1), &b.apply(&qt.rho().eval(&[&fv], &[&u])));
        axpy(&mut lhs, &rat(-1), &b.apply(&qt.rho().eval(&[&fu], &[&v])));
        let mut rhs = b.apply(&qt.theta().eval(&[&bu, &fv], &[]));
        axpy(&mut rhs, &rat(-1), &b.apply(&qt.theta().eval(&[&bv, &fu], &[])));
        let mut arg = qt.mu().eval(&[], &[&u, &v]);
        axpy(&mut arg, &rat(1), &qt.theta().eval(&[&bu, &bv], &[]));
        axpy(&mut arg, &rat(1), &qt.rho().eval(&[&bu], &[&v]));
        axpy(&mut arg, &rat(-1), &qt.rho().eval(&[&bv], &[&u]));
        axpy(&mut rhs, &rat(1), &f.apply(&arg));
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalg::operator_cochain;
    use crate::qtla::catalog::CatalogKind;
    use crate::qtla::Catalog;
    use crate::sampling;

    fn adjoint_pair(lie: &LieAlgebra) -> InducedPair {
        InducedPair::new(lie.clone(), lie.adjoint()).unwrap()
    }

    #[test]
    fn abelian_trivial_is_zero() {
        let pair = InducedPair::new(LieAlgebra::abelian(3), Representation::trivial(3, 2)).unwrap();
        for k in 0..3 {
            assert!(ce_coboundary_matrix(&pair, k).is_zero());
        }
    }

    #[test]
    fn sl2_adjoint_degree_one_rank() {
        let m = ce_coboundary_matrix(&adjoint_pair(&LieAlgebra::sl2()), 1);
        assert_eq!((m.rows(), m.cols()), (9, 9));
        assert_eq!(mat_rank(&m), 6);
    }

    #[test]
    fn aff1_derivations() {
        // kernel of d on Hom(g, g) = derivations x ↦ b·y, y ↦ d·y
        let m = ce_coboundary_matrix(&adjoint_pair(&LieAlgebra::aff1()), 1);
        assert_eq!(m.cols() - mat_rank(&m), 2);
    }

    #[test]
    fn whitehead_sl2() {
        let cat = Catalog::standard(CatalogKind::Semidirect, &LieAlgebra::sl2(), &rat(1));
        let qt = cat.build().unwrap();
        let dims = cohomology_dims(&qt, &DeformationMap::TypeI(OperatorD::zero(qt.space())), 3).unwrap();
        assert_eq!(&dims[..2], &[0, 0]);
    }

    #[test]
    fn direct_sl2_abelian_line() {
        let g = LieAlgebra::sl2();
        let cat = Catalog::Direct { g, h: LieAlgebra::abelian(1) };
        let qt = cat.build().unwrap();
        let dims = cohomology_dims(&qt, &DeformationMap::TypeI(OperatorD::zero(qt.space())), 2).unwrap();
        // C¹ = h with the trivial action, and Hom(g, ℚ) has no cocycles
        assert_eq!(dims, vec![1, 0]);
    }

    #[test]
    fn induced_pairs_match_examples() {
        let lie = LieAlgebra::sl2();
        let qt = Catalog::standard(CatalogKind::Direct, &lie, &rat(1)).build().unwrap();
        let id = OperatorD::new(qt.space(), Matrix::identity(3)).unwrap();
        let pair = induced_pair_type1(&qt, &id).unwrap();
        // ρ^D(x)u = [D(x), u]_h
        assert_eq!(pair.rep, lie.adjoint());
        assert_eq!(&pair.lie, &lie);
        let bad = OperatorD::new(qt.space(), Matrix::diagonal(&[rat(1), rat(1), rat(0)])).unwrap();
        assert!(matches!(induced_pair_type1(&qt, &bad), Err(Error::NotDMap(_))));
    }

    #[test]
    fn l1_is_signed_coboundary() {
        let mut rng = sampling::rng(5);
        let qt = Catalog::Modified { lie: LieAlgebra::sl2(), lambda: rat(1) }.build().unwrap();
        let d = OperatorD::new(qt.space(), Matrix::diagonal(&[rat(1), rat(0), rat(-1)])).unwrap();
        let map = DeformationMap::TypeI(d.clone());
        for k in 0..=3 {
            let f = sampling::alt_map(&mut rng, 3, 3, k);
            assert!(check_l1_equals_d(&qt, &map, &f).unwrap(), "arity {k}");
        }
        assert!(check_l1_equals_d(&qt, &map, &AltMap::zero(3, 3, 2)).unwrap());
        let b = OperatorB::zero(qt.space());
        let f = sampling::alt_map(&mut rng, 3, 3, 2);
        assert!(check_l1_equals_d(&qt, &DeformationMap::TypeII(b), &f).unwrap());
    }

    #[test]
    fn closedness_displays_match_kernels() {
        let mut rng = sampling::rng(9);
        let qt = Catalog::Modified { lie: LieAlgebra::sl2(), lambda: rat(1) }.build().unwrap();
        let d = OperatorD::new(qt.space(), Matrix::diagonal(&[rat(1), rat(0), rat(-1)])).unwrap();
        let pair = induced_pair_type1(&qt, &d).unwrap();
        let m1 = ce_coboundary_matrix(&pair, 1);
        for _ in 0..20 {
            let f = sampling::matrix(&mut rng, 3, 3, 0.3);
            let by_matrix = is_zero_vec(&m1.apply(&operator_cochain(&f).to_coordinates()));
            assert_eq!(closed_map_type1(&qt, &d, &f), by_matrix);
        }
        // the closed maps include a kernel basis, not just zero
        for k in crate::exactlin::mat_kernel_basis(&m1) {
            let f = crate::mcalg::cochain_operator(&AltMap::from_coordinates(3, 3, 1, &k));
            assert!(closed_map_type1(&qt, &d, &f));
        }
        for i in 0..3 {
            let u = unit_vec(3, i);
            let by_matrix = ce_coboundary(&pair, &AltMap::from_coordinates(3, 3, 0, &u)).is_zero();
            assert_eq!(closed_vector_type1(&qt, &d, &u), by_matrix);
        }
        }

    #[test]
    fn closedness_displays_match_kernels_type2() {
        let mut rng = sampling::rng(10);
        let cat = Catalog::standard(CatalogKind::Action, &LieAlgebra::aff1(), &rat(1));
        let qt = cat.build().unwrap();
        let pool = sampling::ddmap_pool(&qt, &[], 4);
        assert!(pool.len() > 1);
        for b in pool {
            let pair = induced_pair_type2(&qt, &b).unwrap();
            let m1 = ce_coboundary_matrix(&pair, 1);
            for k in crate::exactlin::mat_kernel_basis(&m1) {
                let f = crate::mcalg::cochain_operator(&AltMap::from_coordinates(2, 2, 1, &k));
                assert!(closed_map_type2(&qt, &b, &f));
            }
            for _ in 0..10 {
                let f = sampling::matrix(&mut rng, 2, 2, 0.5);
                let by_matrix = is_zero_vec(&m1.apply(&operator_cochain(&f).to_coordinates()));
                assert_eq!(closed_map_type2(&qt, &b, &f), by_matrix);
            }
            for i in 0..2 {
                let x = unit_vec(2, i);
                let by_matrix = ce_coboundary(&pair, &AltMap::from_coordinates(2, 2, 0, &x)).is_zero();
                assert_eq!(closed_vector_type2(&qt, &b, &x), by_matrix);
            }
        }
    }
}
