//! Exact sparse linear algebra over a field: sparse matrices, nullspaces and
//! ranks. No floating point anywhere.
//!
//! The nullspace solver runs in two phases. Rows with at most two live
//! unknowns are folded into a weighted union-find (`x_u = c * x_v`, or
//! `x_u = 0`), which collapses the long substitution chains typical of
//! commutation equations. The rows that survive are reduced to reduced
//! row echelon form by sparse elimination over the remaining class
//! representatives.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{FastRational, LaurentPoly, Rational, RationalFunction};

/// Exact commutative ring arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for FastRational {
    fn zero() -> Self {
        FastRational::ZERO
    }
    fn one() -> Self {
        FastRational::ONE
    }
    fn is_zero(&self) -> bool {
        FastRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FastRational::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FastRational::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FastRational::mul(self, o)
    }
    fn neg(&self) -> Self {
        FastRational::neg(self)
    }
}

impl Field for FastRational {
    fn inv(&self) -> Self {
        FastRational::inv(self)
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Self {
        RationalFunction::inv(self)
    }
}

/// Sparse vector: `(index, value)` pairs, strictly increasing index, no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

fn merge_scaled<F: Ring>(a: &[(usize, F)], b: &[(usize, F)], s: &F) -> SparseVec<F> {
    // a + s * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = s.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts and merges arbitrary `(index, value)` pairs into a canonical sparse
/// vector.
pub fn canonical<F: Ring>(mut terms: Vec<(usize, F)>) -> SparseVec<F> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec<F> = Vec::with_capacity(terms.len());
    for (k, v) in terms {
        match out.last_mut() {
            Some((lk, lv)) if *lk == k => *lv = lv.add(&v),
            _ => out.push((k, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Column-major sparse matrix; `columns[c]` lists `(row, value)` sorted by
/// row with no stored zeros, so `==` is exact equality.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Ring> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    /// Columns may be given in any order with repeated rows; they are
    /// canonicalized.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, F)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let c = canonical(c);
                assert!(c.iter().all(|(r, _)| *r < rows), "row index out of range");
                c
            })
            .collect();
        Self { rows, cols, columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    /// Reads a row-major flattened vector (`index = row * cols + col`).
    pub fn from_flat(rows: usize, cols: usize, v: &[(usize, F)]) -> Self {
        Self::from_triplets(rows, cols, v.iter().map(|(k, x)| (k / cols, k % cols, x.clone())))
    }

    /// Row-major flattening, the inverse of [`SparseMatrix::from_flat`].
    pub fn flatten(&self) -> SparseVec<F> {
        let mut out: Vec<(usize, F)> = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out.push((r * self.cols + c, v.clone()));
            }
        }
        out.sort_by_key(|t| t.0);
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, F)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c]
            .binary_search_by_key(&r, |t| t.0)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|ocol| {
                let mut acc: SparseVec<F> = Vec::new();
                for (k, v) in ocol {
                    acc = merge_scaled(&acc, &self.columns[*k], v);
                }
                acc
            })
            .collect();
        Self {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &F::one().neg())
    }

    /// `self + s * other`.
    pub fn combine(&self, other: &Self, s: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| merge_scaled(a, b, s))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::zero(self.rows, self.cols).combine(self, s)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map<G: Ring>(&self, mut f: impl FnMut(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix::from_columns(
            self.rows,
            self.columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, f(v))).collect())
                .collect(),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                d[*r][c] = v.clone();
            }
        }
        d
    }
}

/// Incremental reduced-echelon basis of a space of sparse vectors.
///
/// Every stored row has leading coefficient 1 at its pivot, and all its other
/// entries lie in columns larger than the pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pivots: HashMap<usize, usize>,
    rows: Vec<(usize, SparseVec<F>)>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self {
            pivots: HashMap::new(),
            rows: Vec::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows in ascending column order.
    pub fn reduce(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut work: BTreeMap<usize, F> = v.into_iter().collect();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coef)) = next else { break };
            let (_, prow) = &self.rows[self.pivots[&c]];
            let s = coef.neg();
            for (k, pv) in prow {
                let e = work.entry(*k).or_insert_with(F::zero);
                *e = e.add(&s.mul(pv));
                if e.is_zero() {
                    work.remove(k);
                }
            }
            cursor = c + 1;
        }
        work.into_iter().collect()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((pc, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv();
        let row: SparseVec<F> = r.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
        self.pivots.insert(pc, self.rows.len());
        self.rows.push((pc, row));
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitutes so that no row mentions another row's pivot.
    fn fully_reduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].0));
        for i in order {
            let (pc, row) = &self.rows[i];
            if row[1..].iter().all(|(k, _)| !self.pivots.contains_key(k)) {
                continue;
            }
            let pc = *pc;
            let mut acc: SparseVec<F> = vec![(pc, F::one())];
            let mut subs: Vec<(usize, F)> = Vec::new();
            for (k, v) in &row[1..] {
                if let Some(&j) = self.pivots.get(k) {
                    subs.push((j, v.clone()));
                } else {
                    acc.push((*k, v.clone()));
                }
            }
            for (j, v) in subs {
                // rows[j] is already free of other pivots; drop its pivot term
                let other = &self.rows[j].1;
                acc = merge_scaled(&acc, &other[1..], &v.neg());
            }
            self.rows[i].1 = acc;
        }
    }
}

/// Weighted union-find: `x_v = weight[v] * x_{parent[v]}`.
struct Classes<F> {
    parent: Vec<usize>,
    weight: Vec<F>,
    size: Vec<u32>,
    zero: Vec<bool>,
    path: Vec<usize>,
}

impl<F: Field> Classes<F> {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            weight: vec![F::one(); n],
            size: vec![1; n],
            zero: vec![false; n],
            path: Vec::new(),
        }
    }

    /// Returns `(root, f)` with `x_v = f * x_root`, compressing the path.
    fn find(&mut self, v: usize) -> (usize, F) {
        let mut path = std::mem::take(&mut self.path);
        path.clear();
        let mut cur = v;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // nodes nearest the root first
        for &u in path.iter().rev() {
            let p = self.parent[u];
            if p != root {
                self.weight[u] = self.weight[u].mul(&self.weight[p]);
                self.parent[u] = root;
            }
        }
        self.path = path;
        if v == root {
            (root, F::one())
        } else {
            (root, self.weight[v].clone())
        }
    }

    /// Rewrites a row over live roots.
    fn normalize(&mut self, row: &[(usize, F)]) -> SparseVec<F> {
        let mut terms = Vec::with_capacity(row.len());
        for (v, a) in row {
            let (r, f) = self.find(*v);
            if !self.zero[r] {
                terms.push((r, a.mul(&f)));
            }
        }
        canonical(terms)
    }

    /// Records `a x_u + b x_v = 0` for distinct roots `u`, `v`; returns
    /// `(absorbed, survivor)`.
    fn union(&mut self, u: usize, a: &F, v: usize, b: &F) -> (usize, usize) {
        if self.size[u] <= self.size[v] {
            self.parent[u] = v;
            self.weight[u] = b.div(a).neg();
            self.size[v] += self.size[u];
            (u, v)
        } else {
            self.parent[v] = u;
            self.weight[v] = a.div(b).neg();
            self.size[u] += self.size[v];
            (v, u)
        }
    }
}

/// A basis of `{x : R x = 0}`.
#[derive(Clone, Debug)]
pub struct Nullspace<F> {
    pub num_vars: usize,
    pub basis: Vec<SparseVec<F>>,
    /// `basis[k]` takes the value 1 at `coordinate_vars[k]` and every other
    /// basis vector vanishes there, so reading a solution at these positions
    /// gives its coordinates.
    pub coordinate_vars: Vec<usize>,
}

impl<F: Ring> Nullspace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector assumed to lie in the nullspace.
    pub fn coordinates(&self, v: &[(usize, F)]) -> Vec<F> {
        let lookup: HashMap<usize, &F> = v.iter().map(|(k, x)| (*k, x)).collect();
        self.coordinate_vars
            .iter()
            .map(|k| lookup.get(k).map(|x| (*x).clone()).unwrap_or_else(F::zero))
            .collect()
    }

    pub fn combine(&self, coords: &[F]) -> SparseVec<F> {
        let mut acc: SparseVec<F> = Vec::new();
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc = merge_scaled(&acc, b, c);
            }
        }
        acc
    }
}

/// Solves `R x = 0` for sparse rows over `num_vars` unknowns.
pub fn nullspace<F: Field>(num_vars: usize, rows: Vec<SparseVec<F>>) -> Nullspace<F> {
    let mut classes = Classes::new(num_vars);
    let mut rows = rows;
    // occ[root]: rows that may mention the class of `root`
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); num_vars];
    for (id, row) in rows.iter().enumerate() {
        for (v, _) in row {
            occ[*v].push(id);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut queue: VecDeque<usize> = (0..rows.len()).collect();
    let mut queued = vec![true; rows.len()];
    while let Some(id) = queue.pop_front() {
        queued[id] = false;
        if !alive[id] {
            continue;
        }
        let r = classes.normalize(&rows[id]);
        let touched = match r.len() {
            0 => None,
            1 => {
                let root = r[0].0;
                classes.zero[root] = true;
                Some(std::mem::take(&mut occ[root]))
            }
            2 => {
                let (gone, kept) = classes.union(r[0].0, &r[0].1, r[1].0, &r[1].1);
                let moved = std::mem::take(&mut occ[gone]);
                occ[kept].extend_from_slice(&moved);
                Some(moved)
            }
            _ => {
                rows[id] = r;
                continue;
            }
        };
        alive[id] = false;
        for other in touched.into_iter().flatten() {
            if alive[other] && !queued[other] {
                queued[other] = true;
                queue.push_back(other);
            }
        }
    }
    let pending: Vec<SparseVec<F>> = rows
        .into_iter()
        .zip(alive)
        .filter_map(|(r, a)| a.then_some(r))
        .collect();

    // compact indices for the live roots
    let mut compact = vec![usize::MAX; num_vars];
    let mut roots = Vec::new();
    for v in 0..num_vars {
        let (r, _) = classes.find(v);
        if r == v && !classes.zero[v] {
            compact[v] = roots.len();
            roots.push(v);
        }
    }

    let mut rows: Vec<SparseVec<F>> = pending
        .iter()
        .map(|r| {
            classes
                .normalize(r)
                .into_iter()
                .map(|(k, x)| (compact[k], x))
                .collect::<Vec<_>>()
        })
        .map(canonical)
        .collect();
    rows.sort_by_key(Vec::len);
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.fully_reduce();

    let mut basis_compact: BTreeMap<usize, SparseVec<F>> = (0..roots.len())
        .filter(|c| !ech.pivots.contains_key(c))
        .map(|c| (c, vec![(c, F::one())]))
        .collect();
    for (pc, row) in &ech.rows {
        for (k, v) in &row[1..] {
            basis_compact
                .get_mut(k)
                .expect("fully reduced rows only mention free columns")
                .push((*pc, v.neg()));
        }
    }

    let mut members: Vec<Vec<(usize, F)>> = vec![Vec::new(); roots.len()];
    for v in 0..num_vars {
        let (r, f) = classes.find(v);
        if !classes.zero[r] {
            members[compact[r]].push((v, f));
        }
    }

    let mut basis = Vec::with_capacity(basis_compact.len());
    let mut coordinate_vars = Vec::with_capacity(basis_compact.len());
    for (free, bv) in basis_compact {
        let mut out = Vec::new();
        for (cc, val) in &bv {
            for (v, f) in &members[*cc] {
                out.push((*v, val.mul(f)));
            }
        }
        basis.push(canonical(out));
        coordinate_vars.push(roots[free]);
    }
    Nullspace {
        num_vars,
        basis,
        coordinate_vars,
    }
}

pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rows of the linear system `A X - X A = 0` in the unknown `dim x dim`
/// matrix `X`, flattened row-major (`X[a][b]` is unknown `a * dim + b`).
pub fn commutation_equations<F: Ring>(a: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let dim = a.rows();
    assert_eq!(dim, a.cols(), "commutation equations need a square matrix");
    let at = a.transpose(); // at.column(r) = row r of a
    let diag_only = |v: &[(usize, F)], i: usize| -> Option<F> {
        match v {
            [] => Some(F::zero()),
            [(k, x)] if *k == i => Some(x.clone()),
            _ => None,
        }
    };
    let row_scalar: Vec<Option<F>> = (0..dim).map(|i| diag_only(at.column(i), i)).collect();
    let col_scalar: Vec<Option<F>> = (0..dim).map(|i| diag_only(a.column(i), i)).collect();

    let equation = |r: usize, c: usize| -> SparseVec<F> {
        let mut terms = Vec::with_capacity(at.column(r).len() + a.column(c).len());
        for (k, v) in at.column(r) {
            terms.push((k * dim + c, v.clone()));
        }
        for (k, v) in a.column(c) {
            terms.push((r * dim + k, v.neg()));
        }
        canonical(terms)
    };

    let mut rows = Vec::new();
    for r in 0..dim {
        if row_scalar[r].is_none() {
            rows.extend((0..dim).map(|c| equation(r, c)).filter(|e| !e.is_empty()));
        }
    }
    for c in 0..dim {
        if col_scalar[c].is_none() {
            rows.extend(
                (0..dim)
                    .filter(|&r| row_scalar[r].is_some())
                    .map(|r| equation(r, c))
                    .filter(|e| !e.is_empty()),
            );
        }
    }
    // both sides scalar: (d_r - d_c) X[r][c] = 0
    let group = |s: &[Option<F>]| -> Vec<(F, Vec<usize>)> {
        let mut groups: Vec<(F, Vec<usize>)> = Vec::new();
        for (i, d) in s.iter().enumerate() {
            if let Some(d) = d {
                match groups.iter_mut().find(|(g, _)| g == d) {
                    Some((_, v)) => v.push(i),
                    None => groups.push((d.clone(), vec![i])),
                }
            }
        }
        groups
    };
    let rg = group(&row_scalar);
    let cg = group(&col_scalar);
    for (dr, rs) in &rg {
        for (dc, cs) in &cg {
            if dr == dc {
                continue;
            }
            let coef = dr.sub(dc);
            for &r in rs {
                for &c in cs {
                    rows.push(vec![(r * dim + c, coef.clone())]);
                }
            }
        }
    }
    rows
}

/// The commutant `{X : X A = A X for every A in mats}` as sparse matrices,
/// together with the coordinate data of the underlying nullspace.
pub fn commutant<F: Field>(dim: usize, mats: &[SparseMatrix<F>]) -> Nullspace<F> {
    let rows: Vec<SparseVec<F>> = mats.iter().flat_map(commutation_equations).collect();
    nullspace(dim * dim, rows)
}
