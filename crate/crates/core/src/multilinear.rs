//! Alternating multilinear maps on a split space `g ⊕ h`.
//!
//! Every map is stored on strictly increasing basis tuples only; evaluation
//! on any other tuple sorts the arguments and applies the permutation sign.
//! With the basis of `g ⊕ h` ordered as `g` first then `h`, a sorted tuple
//! already lists its `g`-vectors before its `h`-vectors, so the lift of a
//! bidegree `(k, l)` map agrees with the map itself on sorted tuples.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vec, rat, zero_vec, Rational};

/// The vector space `g ⊕ h`. Global basis index `i < dim_g` is `g_i`,
/// index `dim_g + j` is `h_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSpace {
    pub dim_g: usize,
    pub dim_h: usize,
}

impl SplitSpace {
    pub fn new(dim_g: usize, dim_h: usize) -> Self {
        SplitSpace { dim_g, dim_h }
    }

    pub fn total(&self) -> usize {
        self.dim_g + self.dim_h
    }

    pub fn h_index(&self, j: usize) -> usize {
        self.dim_g + j
    }

    pub fn is_g(&self, global: usize) -> bool {
        global < self.dim_g
    }

    pub fn dim(&self, target: Target) -> usize {
        match target {
            Target::IntoG => self.dim_g,
            Target::IntoH => self.dim_h,
        }
    }

    /// Offset of the target factor inside a global vector.
    pub fn offset(&self, target: Target) -> usize {
        match target {
            Target::IntoG => 0,
            Target::IntoH => self.dim_g,
        }
    }

    /// `(x, u)` as one global vector.
    pub fn join(&self, x: &[Rational], u: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim_g);
        assert_eq!(u.len(), self.dim_h);
        x.iter().chain(u).cloned().collect()
    }

    pub fn split<'a>(&self, v: &'a [Rational]) -> (&'a [Rational], &'a [Rational]) {
        v.split_at(self.dim_g)
    }

    /// Swaps the roles of the two factors.
    pub fn swapped(&self) -> SplitSpace {
        SplitSpace { dim_g: self.dim_h, dim_h: self.dim_g }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    IntoG,
    IntoH,
}

impl Target {
    pub fn other(self) -> Target {
        match self {
            Target::IntoG => Target::IntoH,
            Target::IntoH => Target::IntoG,
        }
    }
}

/// Sign of a permutation given as the list of images.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts a list of indices, returning the sorted list and the sign of the
/// sorting permutation, or `None` if an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort; arities are tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// All `k`-subsets of `0..n` as increasing lists, in lexicographic order.
pub fn sorted_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `(p, q)`-shuffles of `0..p+q` with their signs. A shuffle `σ` is the list
/// `[σ(0), …, σ(p+q−1)]`, increasing on the first `p` and on the last `q`
/// slots. Ordered lexicographically by the first block.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, i32)> {
    multi_shuffles(&[p, q])
}

/// Shuffles with any number of blocks, e.g. `S(q, 1, p−1)`.
pub fn multi_shuffles(blocks: &[usize]) -> Vec<(Vec<usize>, i32)> {
    fn rec(blocks: &[usize], remaining: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&first, rest)) = blocks.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for chosen in sorted_subsets(remaining.len(), first) {
            let picked: Vec<usize> = chosen.iter().map(|&i| remaining[i]).collect();
            let left: Vec<usize> =
                remaining.iter().enumerate().filter(|(i, _)| !chosen.contains(i)).map(|(_, &x)| x).collect();
            let mark = prefix.len();
            prefix.extend(picked);
            rec(rest, &left, prefix, out);
            prefix.truncate(mark);
        }
    }
    let n: usize = blocks.iter().sum();
    let all: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    rec(blocks, &all, &mut Vec::with_capacity(n), &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let s = permutation_sign(&p);
            (p, s)
        })
        .collect()
}

/// Sign for moving the sorted block `a` in front of the sorted block `b`
/// (both disjoint) to obtain their sorted union.
pub fn merge_sign(a: &[usize], b: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for x in a {
        inversions += b.iter().filter(|y| *y < x).count();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn sign_rat(s: i32) -> Rational {
    rat(s as i64)
}

/// Expands a multilinear evaluation over the supports of the arguments.
fn eval_expand(
    args: &[&[Rational]],
    out_dim: usize,
    lookup: &dyn Fn(&[usize]) -> Option<Vec<Rational>>,
) -> Vec<Rational> {
    fn rec(
        args: &[&[Rational]],
        pos: usize,
        idx: &mut Vec<usize>,
        coef: Rational,
        acc: &mut Vec<Rational>,
        lookup: &dyn Fn(&[usize]) -> Option<Vec<Rational>>,
    ) {
        if pos == args.len() {
            if let Some((sorted, s)) = sort_with_sign(idx) {
                if let Some(v) = lookup(&sorted) {
                    axpy(acc, &(coef * sign_rat(s)), &v);
                }
            }
            return;
        }
        for (i, c) in args[pos].iter().enumerate() {
            if c.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            rec(args, pos + 1, idx, &coef * c, acc, lookup);
            idx.pop();
        }
    }
    let mut acc = zero_vec(out_dim);
    rec(args, 0, &mut Vec::with_capacity(args.len()), Rational::one(), &mut acc, lookup);
    acc
}

/// Alternating map `∧ᵏ K^src → K^tgt`, stored on sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltMap {
    src_dim: usize,
    tgt_dim: usize,
    arity: usize,
    table: BTreeMap<Vec<usize>, Vec<Rational>>,
}

impl AltMap {
    pub fn zero(src_dim: usize, tgt_dim: usize, arity: usize) -> Self {
        AltMap { src_dim, tgt_dim, arity, table: BTreeMap::new() }
    }

    /// Builds the map from its values on sorted tuples.
    pub fn from_fn(
        src_dim: usize,
        tgt_dim: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut m = AltMap::zero(src_dim, tgt_dim, arity);
        for t in sorted_subsets(src_dim, arity) {
            let v = f(&t);
            debug_assert_eq!(v.len(), tgt_dim);
            if !is_zero_vec(&v) {
                m.table.insert(t, v);
            }
        }
        m
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn set(&mut self, tuple: &[usize], value: Vec<Rational>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: tuple.len() });
        }
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedTuple(tuple.to_vec()));
        }
        if tuple.iter().any(|&i| i >= self.src_dim) || value.len() != self.tgt_dim {
            return Err(Error::IndexOutOfRange(format!("{tuple:?}")));
        }
        if is_zero_vec(&value) {
            self.table.remove(tuple);
        } else {
            self.table.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    pub fn get(&self, sorted: &[usize]) -> Option<&Vec<Rational>> {
        self.table.get(sorted)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rational>)> {
        self.table.iter()
    }

    pub fn nnz(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on basis vectors given in any order.
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Rational> {
        assert_eq!(idx.len(), self.arity, "arity");
        match sort_with_sign(idx) {
            Some((sorted, s)) => match self.table.get(&sorted) {
                Some(v) if s == 1 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
                None => zero_vec(self.tgt_dim),
            },
            None => zero_vec(self.tgt_dim),
        }
    }

    /// Value on arbitrary vectors.
    pub fn eval(&self, args: &[&[Rational]]) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "arity");
        eval_expand(args, self.tgt_dim, &|t| self.table.get(t).cloned())
    }

    /// `f(v, e_{rest[0]}, e_{rest[1]}, …)`.
    pub fn eval_first(&self, v: &[Rational], rest: &[usize]) -> Vec<Rational> {
        let mut acc = zero_vec(self.tgt_dim);
        let mut idx = Vec::with_capacity(self.arity);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() || rest.contains(&i) {
                continue;
            }
            idx.clear();
            idx.push(i);
            idx.extend_from_slice(rest);
            axpy(&mut acc, c, &self.eval_basis(&idx));
        }
        acc
    }

    fn check_same_shape(&self, other: &AltMap) {
        assert_eq!(
            (self.src_dim, self.tgt_dim, self.arity),
            (other.src_dim, other.tgt_dim, other.arity),
            "alternating map shape"
        );
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &AltMap) {
        self.check_same_shape(other);
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.table {
            let e = self.table.entry(t.clone()).or_insert_with(|| zero_vec(v.len()));
            axpy(e, c, v);
            if is_zero_vec(e) {
                self.table.remove(t);
            }
        }
    }

    pub fn add(&self, other: &AltMap) -> AltMap {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &AltMap) -> AltMap {
        let mut out = self.clone();
        out.add_scaled(&rat(-1), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> AltMap {
        let mut out = AltMap::zero(self.src_dim, self.tgt_dim, self.arity);
        out.add_scaled(c, self);
        out
    }

    /// Accumulates `c · value` at an arbitrary-order basis tuple.
    pub fn accumulate(&mut self, idx: &[usize], c: &Rational, value: &[Rational]) {
        let Some((sorted, s)) = sort_with_sign(idx) else {
            return;
        };
        let coef = c * sign_rat(s);
        let e = self.table.entry(sorted.clone()).or_insert_with(|| zero_vec(value.len()));
        axpy(e, &coef, value);
        if is_zero_vec(e) {
            self.table.remove(&sorted);
        }
    }

    /// Flattens to a coordinate vector in the basis (sorted tuple, target index),
    /// tuples in lexicographic order.
    pub fn to_coordinates(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for t in sorted_subsets(self.src_dim, self.arity) {
            match self.table.get(&t) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(zero_vec(self.tgt_dim)),
            }
        }
        out
    }

    pub fn from_coordinates(src_dim: usize, tgt_dim: usize, arity: usize, coords: &[Rational]) -> AltMap {
        let tuples = sorted_subsets(src_dim, arity);
        assert_eq!(coords.len(), tuples.len() * tgt_dim, "coordinate length");
        let mut m = AltMap::zero(src_dim, tgt_dim, arity);
        for (n, t) in tuples.into_iter().enumerate() {
            let v = coords[n * tgt_dim..(n + 1) * tgt_dim].to_vec();
            if !is_zero_vec(&v) {
                m.table.insert(t, v);
            }
        }
        m
    }

    /// Dimension of `Hom(∧ᵏ K^src, K^tgt)`.
    pub fn space_dim(src_dim: usize, tgt_dim: usize, arity: usize) -> usize {
        sorted_subsets(src_dim, arity).len() * tgt_dim
    }
}

/// Bidegree `(k, l)` map `∧ᵏg ⊗ ∧ˡh → g` or `→ h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedMap {
    space: SplitSpace,
    k: usize,
    l: usize,
    target: Target,
    table: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Rational>>,
}

impl MixedMap {
    pub fn zero(space: SplitSpace, k: usize, l: usize, target: Target) -> Self {
        MixedMap { space, k, l, target, table: BTreeMap::new() }
    }

    /// Builds from values on sorted `(g-tuple, h-tuple)` pairs.
    pub fn from_fn(
        space: SplitSpace,
        k: usize,
        l: usize,
        target: Target,
        mut f: impl FnMut(&[usize], &[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut m = MixedMap::zero(space, k, l, target);
        for gt in sorted_subsets(space.dim_g, k) {
            for ht in sorted_subsets(space.dim_h, l) {
                let v = f(&gt, &ht);
                debug_assert_eq!(v.len(), space.dim(target));
                if !is_zero_vec(&v) {
                    m.table.insert((gt.clone(), ht), v);
                }
            }
        }
        m
    }

    /// `(k, 0)` map from an alternating map on `g`.
    pub fn from_g_alt(space: SplitSpace, target: Target, alt: &AltMap) -> Self {
        assert_eq!(alt.src_dim(), space.dim_g);
        assert_eq!(alt.tgt_dim(), space.dim(target));
        let mut m = MixedMap::zero(space, alt.arity(), 0, target);
        for (t, v) in alt.entries() {
            m.table.insert((t.clone(), Vec::new()), v.clone());
        }
        m
    }

    /// `(0, l)` map from an alternating map on `h`.
    pub fn from_h_alt(space: SplitSpace, target: Target, alt: &AltMap) -> Self {
        assert_eq!(alt.src_dim(), space.dim_h);
        assert_eq!(alt.tgt_dim(), space.dim(target));
        let mut m = MixedMap::zero(space, 0, alt.arity(), target);
        for (t, v) in alt.entries() {
            m.table.insert((Vec::new(), t.clone()), v.clone());
        }
        m
    }

    /// The underlying alternating map of a pure `(k, 0)` or `(0, l)` map.
    pub fn to_alt(&self) -> AltMap {
        assert!(self.k == 0 || self.l == 0, "to_alt needs a pure bidegree");
        let (src, arity) = if self.l == 0 { (self.space.dim_g, self.k) } else { (self.space.dim_h, self.l) };
        let mut a = AltMap::zero(src, self.space.dim(self.target), arity);
        for ((gt, ht), v) in &self.table {
            let t = if self.l == 0 { gt } else { ht };
            a.table.insert(t.clone(), v.clone());
        }
        a
    }

    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn arity(&self) -> usize {
        self.k + self.l
    }

    pub fn tgt_dim(&self) -> usize {
        self.space.dim(self.target)
    }

    pub fn set(&mut self, g_tuple: &[usize], h_tuple: &[usize], value: Vec<Rational>) -> Result<()> {
        if g_tuple.len() != self.k || h_tuple.len() != self.l {
            return Err(Error::ArityMismatch { expected: self.k + self.l, got: g_tuple.len() + h_tuple.len() });
        }
        for t in [g_tuple, h_tuple] {
            if t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::UnsortedTuple(t.to_vec()));
            }
        }
        if g_tuple.iter().any(|&i| i >= self.space.dim_g)
            || h_tuple.iter().any(|&j| j >= self.space.dim_h)
            || value.len() != self.tgt_dim()
        {
            return Err(Error::IndexOutOfRange(format!("{g_tuple:?} {h_tuple:?}")));
        }
        let key = (g_tuple.to_vec(), h_tuple.to_vec());
        if is_zero_vec(&value) {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, g_tuple: &[usize], h_tuple: &[usize]) -> Option<&Vec<Rational>> {
        self.table.get(&(g_tuple.to_vec(), h_tuple.to_vec()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &Vec<Rational>)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on basis vectors of `g` and of `h`, each block in any order.
    pub fn eval_basis(&self, g_idx: &[usize], h_idx: &[usize]) -> Vec<Rational> {
        assert_eq!((g_idx.len(), h_idx.len()), (self.k, self.l), "bidegree");
        let (Some((gs, s1)), Some((hs, s2))) = (sort_with_sign(g_idx), sort_with_sign(h_idx)) else {
            return zero_vec(self.tgt_dim());
        };
        match self.table.get(&(gs, hs)) {
            Some(v) if s1 * s2 == 1 => v.clone(),
            Some(v) => v.iter().map(|x| -x).collect(),
            None => zero_vec(self.tgt_dim()),
        }
    }

    /// Value on vectors `x₁…x_k ∈ g`, `u₁…u_l ∈ h`.
    pub fn eval(&self, gs: &[&[Rational]], hs: &[&[Rational]]) -> Vec<Rational> {
        assert_eq!((gs.len(), hs.len()), (self.k, self.l), "bidegree");
        // Embed into g ⊕ h and reuse the single-space expansion.
        let embedded: Vec<Vec<Rational>> = gs
            .iter()
            .map(|x| self.space.join(x, &zero_vec(self.space.dim_h)))
            .chain(hs.iter().map(|u| self.space.join(&zero_vec(self.space.dim_g), u)))
            .collect();
        let refs: Vec<&[Rational]> = embedded.iter().map(Vec::as_slice).collect();
        let dim_g = self.space.dim_g;
        let k = self.k;
        eval_expand(&refs, self.tgt_dim(), &|t: &[usize]| {
            let ng = t.iter().filter(|&&i| i < dim_g).count();
            if ng != k {
                return None;
            }
            let gt = t[..k].to_vec();
            let ht = t[k..].iter().map(|&i| i - dim_g).collect();
            self.table.get(&(gt, ht)).cloned()
        })
    }

    /// The lift to an alternating map on `g ⊕ h`.
    pub fn lift(&self) -> GradedMap {
        let mut out = GradedMap::zero(self.space, self.arity());
        out.add_component(self);
        out
    }

    fn check_same_shape(&self, other: &MixedMap) {
        assert_eq!(
            (self.space, self.k, self.l, self.target),
            (other.space, other.k, other.l, other.target),
            "mixed map shape"
        );
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &MixedMap) {
        self.check_same_shape(other);
        for (key, v) in &other.table {
            let e = self.table.entry(key.clone()).or_insert_with(|| zero_vec(v.len()));
            axpy(e, c, v);
            if is_zero_vec(e) {
                self.table.remove(key);
            }
        }
    }

    pub fn add(&self, other: &MixedMap) -> MixedMap {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &MixedMap) -> MixedMap {
        let mut out = self.clone();
        out.add_scaled(&rat(-1), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> MixedMap {
        let mut out = MixedMap::zero(self.space, self.k, self.l, self.target);
        if !c.is_zero() {
            out.add_scaled(c, self);
        }
        out
    }
}

/// Alternating map `∧ⁿ(g ⊕ h) → g ⊕ h`; the sum of the lifts of its
/// bidegree components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    space: SplitSpace,
    map: AltMap,
}

impl GradedMap {
    pub fn zero(space: SplitSpace, arity: usize) -> Self {
        GradedMap { space, map: AltMap::zero(space.total(), space.total(), arity) }
    }

    pub fn from_alt(space: SplitSpace, map: AltMap) -> Self {
        assert_eq!(map.src_dim(), space.total());
        assert_eq!(map.tgt_dim(), space.total());
        GradedMap { space, map }
    }

    /// Sum of the lifts of the given components.
    pub fn from_components(space: SplitSpace, arity: usize, components: &[MixedMap]) -> Result<Self> {
        let mut out = GradedMap::zero(space, arity);
        for c in components {
            if c.space != space {
                return Err(Error::ShapeMismatch(format!("component on {:?}, expected {:?}", c.space, space)));
            }
            if c.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: c.arity() });
            }
            out.add_component(c);
        }
        Ok(out)
    }

    fn add_component(&mut self, c: &MixedMap) {
        let offset = self.space.offset(c.target);
        let n = self.space.total();
        for ((gt, ht), v) in &c.table {
            let mut t = gt.clone();
            t.extend(ht.iter().map(|&j| self.space.h_index(j)));
            let mut full = zero_vec(n);
            for (i, x) in v.iter().enumerate() {
                full[offset + i] = x.clone();
            }
            self.map.accumulate(&t, &Rational::one(), &full);
        }
    }

    /// Builds the map from values on sorted global tuples.
    pub fn from_fn(space: SplitSpace, arity: usize, f: impl FnMut(&[usize]) -> Vec<Rational>) -> Self {
        GradedMap { space, map: AltMap::from_fn(space.total(), space.total(), arity, f) }
    }

    pub fn space(&self) -> SplitSpace {
        self.space
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    /// Degree in the graded Lie algebra: arity − 1.
    pub fn degree(&self) -> isize {
        self.arity() as isize - 1
    }

    pub fn alt(&self) -> &AltMap {
        &self.map
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rational>)> {
        self.map.entries()
    }

    pub fn get(&self, sorted: &[usize]) -> Option<&Vec<Rational>> {
        self.map.get(sorted)
    }

    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Rational> {
        self.map.eval_basis(idx)
    }

    pub fn eval(&self, args: &[&[Rational]]) -> Vec<Rational> {
        self.map.eval(args)
    }

    /// The bidegree `(k, arity − k)` component with output in `target`.
    pub fn component(&self, k: usize, target: Target) -> MixedMap {
        let arity = self.arity();
        assert!(k <= arity);
        let sp = self.space;
        let mut m = MixedMap::zero(sp, k, arity - k, target);
        let off = sp.offset(target);
        let dim = sp.dim(target);
        for (t, v) in self.map.entries() {
            let ng = t.iter().filter(|&&i| sp.is_g(i)).count();
            if ng != k {
                continue;
            }
            let part = v[off..off + dim].to_vec();
            if is_zero_vec(&part) {
                continue;
            }
            let gt = t[..k].to_vec();
            let ht = t[k..].iter().map(|&i| i - sp.dim_g).collect();
            m.table.insert((gt, ht), part);
        }
        m
    }

    /// All nonzero bidegree components, ordered by `(k, target)`.
    pub fn components(&self) -> Vec<MixedMap> {
        let mut out = Vec::new();
        for k in 0..=self.arity() {
            for target in [Target::IntoG, Target::IntoH] {
                let c = self.component(k, target);
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Keeps only components whose inputs all lie in `g` (resp. `h`) and whose
    /// output lies in the other factor.
    pub fn project_pure(&self, inputs: Target) -> GradedMap {
        let k = match inputs {
            Target::IntoG => self.arity(),
            Target::IntoH => 0,
        };
        self.component(k, inputs.other()).lift()
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &GradedMap) {
        assert_eq!(self.space, other.space, "graded map space");
        self.map.add_scaled(c, &other.map);
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        let mut out = self.clone();
        out.add_scaled(&rat(-1), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> GradedMap {
        GradedMap { space: self.space, map: self.map.scale(c) }
    }

    pub(crate) fn accumulate(&mut self, idx: &[usize], c: &Rational, value: &[Rational]) {
        self.map.accumulate(idx, c, value);
    }
}

/// Evaluates the lift of `m` on arbitrary vectors of `g ⊕ h`.
pub fn lift_eval(m: &GradedMap, args: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    if args.len() != m.arity() {
        return Err(Error::ArityMismatch { expected: m.arity(), got: args.len() });
    }
    let n = m.space().total();
    if let Some(bad) = args.iter().find(|a| a.len() != n) {
        return Err(Error::ShapeMismatch(format!("argument of length {}, expected {n}", bad.len())));
    }
    let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
    Ok(m.eval(&refs))
}

/// Reads an alternating map off its values on every ordered basis tuple and
/// checks that it really is alternating.
pub fn alternating_from_fn(
    space: SplitSpace,
    arity: usize,
    mut f: impl FnMut(&[usize]) -> Vec<Rational>,
) -> Result<GradedMap> {
    let n = space.total();
    let mut values: BTreeMap<Vec<usize>, Vec<Rational>> = BTreeMap::new();
    let mut idx = vec![0usize; arity];
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    for code in 0..total.max(if arity == 0 { 1 } else { 0 }) {
        let mut c = code;
        for slot in idx.iter_mut().rev() {
            *slot = c % n.max(1);
            c /= n.max(1);
        }
        let v = f(&idx);
        if v.len() != n {
            return Err(Error::ShapeMismatch(format!("value of length {}, expected {n}", v.len())));
        }
        values.insert(idx.clone(), v);
    }
    let mut out = GradedMap::zero(space, arity);
    for (t, v) in &values {
        match sort_with_sign(t) {
            None => {
                if !is_zero_vec(v) {
                    return Err(Error::NotAlternating(format!("nonzero on repeated tuple {t:?}")));
                }
            }
            Some((sorted, s)) => {
                let base = &values[&sorted];
                let expected: Vec<Rational> = base.iter().map(|x| x * sign_rat(s)).collect();
                if &expected != v {
                    return Err(Error::NotAlternating(format!("tuple {t:?} disagrees with sorted {sorted:?}")));
                }
                if s == 1 && &sorted == t && !is_zero_vec(v) {
                    out.map.table.insert(sorted, v.clone());
                }
            }
        }
    }
    Ok(out)
}

/// The unique bidegree components whose lifts sum to the alternating map
/// given by `f` on ordered basis tuples.
pub fn decompose(
    space: SplitSpace,
    arity: usize,
    f: impl FnMut(&[usize]) -> Vec<Rational>,
) -> Result<Vec<MixedMap>> {
    Ok(alternating_from_fn(space, arity, f)?.components())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffles(1, 1), vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        assert_eq!(shuffles(2, 0), vec![(vec![0, 1], 1)]);
        let s: Vec<i32> = shuffles(2, 1).into_iter().map(|(_, s)| s).collect();
        assert_eq!(s, vec![1, -1, 1]);
        assert_eq!(shuffles(0, 0).len(), 1);
    }

    #[test]
    fn three_block_shuffles() {
        // S(2,1,1) has 4!/(2!1!1!) = 12 elements, all distinct permutations
        let s = multi_shuffles(&[2, 1, 1]);
        assert_eq!(s.len(), 12);
        let mut perms: Vec<_> = s.iter().map(|(p, _)| p.clone()).collect();
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 12);
        for (p, _) in &s {
            assert!(p[0] < p[1]);
        }
    }

    #[test]
    fn sort_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(merge_sign(&[1, 3], &[0, 2]), -1);
        assert_eq!(merge_sign(&[1], &[0]), -1);
    }

    fn mixed_eta() -> MixedMap {
        let sp = SplitSpace::new(2, 2);
        let mut eta = MixedMap::zero(sp, 1, 1, Target::IntoG);
        eta.set(&[0], &[1], vec![rat(3), rat(-1)]).unwrap();
        eta.set(&[1], &[0], vec![rat(0), rat(2)]).unwrap();
        eta
    }

    #[test]
    fn lift_is_antisymmetric_on_mixed_arguments() {
        let eta = mixed_eta();
        let sp = eta.space();
        let lifted = eta.lift();
        let x = sp.join(&[rat(1), rat(0)], &[rat(0), rat(0)]);
        let v = sp.join(&[rat(0), rat(0)], &[rat(0), rat(1)]);
        let xv = lift_eval(&lifted, &[x.clone(), v.clone()]).unwrap();
        let vx = lift_eval(&lifted, &[v, x]).unwrap();
        assert_eq!(xv, vec![rat(3), rat(-1), rat(0), rat(0)]);
        assert_eq!(vx, vec![rat(-3), rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn lift_vanishes_off_bidegree() {
        let sp = SplitSpace::new(2, 1);
        let mut mu = MixedMap::zero(sp, 0, 2, Target::IntoH);
        // dim_h = 1 so no nonzero wedge; use dim_h = 2 instead
        assert!(mu.set(&[], &[0, 1], vec![rat(1)]).is_err());
        let sp = SplitSpace::new(2, 2);
        mu = MixedMap::zero(sp, 0, 2, Target::IntoH);
        mu.set(&[], &[0, 1], vec![rat(1), rat(0)]).unwrap();
        let x = sp.join(&[rat(1), rat(0)], &[rat(0), rat(0)]);
        let y = sp.join(&[rat(0), rat(1)], &[rat(0), rat(0)]);
        assert!(is_zero_vec(&lift_eval(&mu.lift(), &[x, y]).unwrap()));
    }

    #[test]
    fn decompose_round_trip_and_errors() {
        let eta = mixed_eta();
        let g = eta.lift();
        let comps = decompose(g.space(), 2, |t| g.eval_basis(t)).unwrap();
        assert_eq!(comps, vec![eta.clone()]);
        assert!(decompose(g.space(), 2, |_| zero_vec(4)).unwrap().is_empty());
        // symmetric input is rejected
        let bad = decompose(g.space(), 2, |t| if t[0] != t[1] { vec![rat(1), rat(0), rat(0), rat(0)] } else { zero_vec(4) });
        assert!(matches!(bad, Err(Error::NotAlternating(_))));
        assert!(matches!(lift_eval(&g, &[zero_vec(4)]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn alt_eval_matches_basis_expansion() {
        let mut f = AltMap::zero(3, 1, 2);
        f.set(&[0, 1], vec![rat(1)]).unwrap();
        f.set(&[1, 2], vec![rat(2)]).unwrap();
        let a = vec![rat(1), rat(1), rat(0)];
        let b = vec![rat(0), rat(1), rat(1)];
        // f(a,b) = det[[1,1],[0,1]]·1 + det[[1,0],[1,1]]·2 + det[[1,0],[0,1]]·0 (0,2)
        assert_eq!(f.eval(&[&a, &b]), vec![rat(3)]);
        assert_eq!(f.eval_first(&a, &[2]), vec![rat(2)]);
        assert_eq!(AltMap::from_coordinates(3, 1, 2, &f.to_coordinates()), f);
    }
}
