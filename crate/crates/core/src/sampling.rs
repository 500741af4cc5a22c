//! Seeded random data for property checks: small-integer cochains, operators
//! and twists, plus pools of verified deformation maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::defmaps::{is_ddmap, is_dmap, OperatorB, OperatorD};
use crate::exactlin::{rat, Matrix, Rational};
use crate::multilinear::{sorted_subsets, AltMap};
use crate::qtla::QuasiTwilled;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An integer in `−bound..=bound`.
pub fn small(rng: &mut Rng64, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// Each entry is zero with probability `1 − density`, else in `−2..=2`.
pub fn sparse_vec(rng: &mut Rng64, n: usize, density: f64) -> Vec<Rational> {
    (0..n).map(|_| if rng.gen_bool(density) { small(rng, 2) } else { rat(0) }).collect()
}

pub fn alt_map(rng: &mut Rng64, src: usize, tgt: usize, arity: usize) -> AltMap {
    let mut m = AltMap::zero(src, tgt, arity);
    for t in sorted_subsets(src, arity) {
        m.set(&t, sparse_vec(rng, tgt, 0.5)).expect("sorted tuple");
    }
    m
}

pub fn matrix(rng: &mut Rng64, rows: usize, cols: usize, density: f64) -> Matrix {
    let rows: Vec<Vec<Rational>> = (0..rows).map(|_| sparse_vec(rng, cols, density)).collect();
    Matrix::from_rows(rows).expect("rectangular")
}

pub fn operator_d(rng: &mut Rng64, qt: &QuasiTwilled) -> OperatorD {
    let sp = qt.space();
    OperatorD::new(sp, matrix(rng, sp.dim_h, sp.dim_g, 0.6)).expect("shape")
}

pub fn operator_b(rng: &mut Rng64, qt: &QuasiTwilled) -> OperatorB {
    let sp = qt.space();
    OperatorB::new(sp, matrix(rng, sp.dim_g, sp.dim_h, 0.6)).expect("shape")
}

/// Matrices with entries in `{−1, 0, 1}` and at most `max_nnz` nonzeros,
/// enumerated by support size; stops after `limit` candidates.
fn sparse_candidates(rows: usize, cols: usize, max_nnz: usize, limit: usize) -> Vec<Matrix> {
    let cells = rows * cols;
    let mut out = vec![Matrix::zeros(rows, cols)];
    for k in 1..=max_nnz.min(cells) {
        for support in sorted_subsets(cells, k) {
            for signs in 0..(1usize << k) {
                let mut m = Matrix::zeros(rows, cols);
                for (b, &c) in support.iter().enumerate() {
                    let v = if signs >> b & 1 == 0 { 1 } else { -1 };
                    m.set(c / cols, c % cols, rat(v));
                }
                out.push(m);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Verified D-maps found among sparse `±1` matrices, together with any
/// `extra` candidates that pass.
pub fn dmap_pool(qt: &QuasiTwilled, extra: &[Matrix], limit: usize) -> Vec<OperatorD> {
    let sp = qt.space();
    let mut out = Vec::new();
    for m in extra.iter().cloned().chain(sparse_candidates(sp.dim_h, sp.dim_g, 3, 4000)) {
        if out.len() >= limit {
            break;
        }
        let Ok(d) = OperatorD::new(sp, m) else { continue };
        if is_dmap(qt, &d).unwrap_or(false) && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

pub fn ddmap_pool(qt: &QuasiTwilled, extra: &[Matrix], limit: usize) -> Vec<OperatorB> {
    let sp = qt.space();
    let mut out = Vec::new();
    for m in extra.iter().cloned().chain(sparse_candidates(sp.dim_g, sp.dim_h, 3, 4000)) {
        if out.len() >= limit {
            break;
        }
        let Ok(b) = OperatorB::new(sp, m) else { continue };
        if is_ddmap(qt, &b).unwrap_or(false) && !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

pub fn choose<'a, T>(rng: &mut Rng64, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty pool")
}
