//! Shared fixtures: the catalog grid, automorphism generators and pools of
//! verified maps.
#![allow(dead_code)]

use qtwilled::defmaps::{OperatorB, OperatorD};
use qtwilled::exactlin::{rat, ratio, Matrix};
use qtwilled::qtla::catalog::CatalogKind;
use qtwilled::qtla::{Catalog, LieAlgebra, QuasiTwilled};
use qtwilled::sampling::{self, Rng64};
use rand::Rng;

pub const LIES: [&str; 4] = ["sl2", "aff1", "heis3", "abelian2"];

pub struct Instance {
    pub label: String,
    pub lie: &'static str,
    pub catalog: Catalog,
    pub qt: QuasiTwilled,
}

pub fn instance(kind: CatalogKind, lie: &'static str, lambda: i64) -> Instance {
    let g = LieAlgebra::preset(lie).expect("preset");
    let catalog = Catalog::standard(kind, &g, &rat(lambda));
    let qt = catalog.build().expect("standard catalogs build");
    Instance { label: format!("{kind}/{lie}"), lie, catalog, qt }
}

/// Every catalog kind over every preset, `λ = 1`.
pub fn grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for lie in LIES {
        for kind in CatalogKind::ALL {
            out.push(instance(kind, lie, 1));
        }
    }
    out
}

/// Hand-picked automorphisms of each preset. Whether they really are
/// automorphisms is not assumed; callers filter with the homomorphism test.
pub fn automorphism_generators(lie: &str) -> Vec<Matrix> {
    let m = |rows: &[&[i64]]| Matrix::from_i64(rows);
    match lie {
        // basis (e, h, f); columns are images
        "sl2" => vec![
            Matrix::diagonal(&[rat(2), rat(1), ratio(1, 2)]),
            Matrix::diagonal(&[rat(-1), rat(1), rat(-1)]),
            // Weyl element: e ↦ f, h ↦ −h, f ↦ e
            m(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
            // exp(ad e): h ↦ h − 2e, f ↦ f + h − e
            m(&[&[1, -2, -1], &[0, 1, 1], &[0, 0, 1]]),
            // exp(ad f): e ↦ e − h − f, h ↦ h + 2f
            m(&[&[1, 0, 0], &[-1, 1, 0], &[-1, 2, 1]]),
        ],
        // [x, y] = y: x ↦ x + b y, y ↦ c y
        "aff1" => vec![m(&[&[1, 0], &[1, 1]]), m(&[&[1, 0], &[0, 2]]), m(&[&[1, 0], &[-2, -1]])],
        // [p, q] = z
        "heis3" => vec![
            m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
            m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]),
            m(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 2]]),
            m(&[&[1, 0, 0], &[0, 1, 0], &[1, -1, 1]]),
        ],
        _ => vec![m(&[&[1, 1], &[0, 1]]), m(&[&[0, 1], &[1, 0]]), m(&[&[2, 0], &[0, -1]])],
    }
}

/// A product of a few generators.
pub fn random_automorphism(rng: &mut Rng64, lie: &str) -> Matrix {
    let gens = automorphism_generators(lie);
    let n = gens[0].rows();
    let mut a = Matrix::identity(n);
    for _ in 0..rng.gen_range(1..=3) {
        a = a.mul(sampling::choose(rng, &gens));
    }
    a
}

/// Invertible matrices with small entries; usually not automorphisms.
pub fn random_invertible(rng: &mut Rng64, n: usize) -> Matrix {
    loop {
        let m = sampling::matrix(rng, n, n, 0.7);
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn extras(inst: &Instance, rows: usize, cols: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if rows == cols {
        out.push(Matrix::identity(rows));
        out.push(Matrix::identity(rows).scale(&rat(-1)));
        for a in automorphism_generators(inst.lie) {
            if a.rows() == rows {
                out.push(a.clone());
                out.push(a.scale(&rat(-1)));
            }
        }
    }
    out
}

/// Verified D-maps of an instance, seeded with automorphisms and `±id`.
pub fn dmaps(inst: &Instance, limit: usize) -> Vec<OperatorD> {
    let sp = inst.qt.space();
    sampling::dmap_pool(&inst.qt, &extras(inst, sp.dim_h, sp.dim_g), limit)
}

pub fn ddmaps(inst: &Instance, limit: usize) -> Vec<OperatorB> {
    let sp = inst.qt.space();
    sampling::ddmap_pool(&inst.qt, &extras(inst, sp.dim_g, sp.dim_h), limit)
}
