//! Tensor space `V^{⊗r}`, `dim V = n`, with basis `e_j` indexed by
//! multi-indices, and the action of `H_q(S_n)` by q-deformed letter
//! permutations.
//!
//! `T_i e_j` depends only on where the letters `i` and `i+1` first occur in
//! `j`: with `y = e_{s_i j}`,
//!
//! * both absent: `q e_j`;
//! * `first(i) < first(i+1)`: `y`;
//! * otherwise: `q y + (q-1) e_j`.
//!
//! Basis tensors are ordered lexicographically by multi-index, which is the
//! base-`n` order of [`MultiIndex::rank`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{LaurentPoly, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::hecke::{inverse_t_w, HeckeElement};
use crate::linalg::SparseMatrix;
use crate::qperm::{qperm_act_gen, QPermBasisVector};
use crate::symcomb::{d_of_tableau, reduced_word, Composition, Permutation, RowStandardTableau};

/// `j = (j_1, ..., j_r)` with letters in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&e| e == 0 || e > n) {
            return Err(Error::InvalidMultiIndex(format!("{entries:?} is not in I({n}, {})", entries.len())));
        }
        Ok(Self { entries })
    }

    /// Parses `"1,2,1"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::InvalidMultiIndex(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    /// Position in the lexicographic order of `I(n, r)`.
    pub fn rank(&self, n: usize) -> usize {
        self.entries.iter().fold(0, |acc, &e| acc * n + (e - 1))
    }

    pub fn from_rank(n: usize, r: usize, mut idx: usize) -> Self {
        let mut entries = vec![0; r];
        for slot in entries.iter_mut().rev() {
            *slot = idx % n + 1;
            idx /= n;
        }
        Self { entries }
    }

    /// Letter action `w j = (w(j_1), ..., w(j_r))`.
    pub fn permute_letters(&self, w: &Permutation) -> Self {
        Self {
            entries: self.entries.iter().map(|&e| w.apply(e)).collect(),
        }
    }

    fn swap_letters(&self, i: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|&e| match e {
                    e if e == i => i + 1,
                    e if e == i + 1 => i,
                    e => e,
                })
                .collect(),
        }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "e_{{{}}}", s.join(","))
    }
}

/// The smallest 1-based position holding letter `i`, or 0 if absent.
pub fn first(j: &MultiIndex, i: usize) -> usize {
    j.entries.iter().position(|&e| e == i).map_or(0, |p| p + 1)
}

/// A set partition of `{1..r}` as a restricted growth string: `rgs[p]` is the
/// block of position `p+1`, blocks numbered by their smallest element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut max = None::<usize>;
        for &b in &rgs {
            let ok = match max {
                None => b == 0,
                Some(m) => b <= m + 1,
            };
            if !ok {
                return Err(Error::InvalidPartition(format!("{rgs:?} is not a restricted growth string")));
            }
            max = Some(max.map_or(b, |m| m.max(b)));
        }
        Ok(Self { rgs })
    }

    /// Builds from blocks of 1-based positions covering `{1..r}`.
    pub fn from_blocks(r: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; r];
        let mut sorted: Vec<&Vec<usize>> = blocks.iter().collect();
        sorted.sort_by_key(|b| b.iter().min().copied());
        for (k, b) in sorted.iter().enumerate() {
            for &p in b.iter() {
                if p == 0 || p > r || label[p - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("{blocks:?} is not a partition of 1..{r}")));
                }
                label[p - 1] = k;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(format!("{blocks:?} does not cover 1..{r}")));
        }
        Self::from_rgs(label)
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn r(&self) -> usize {
        self.rgs.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (p, &b) in self.rgs.iter().enumerate() {
            out[b].push(p + 1);
        }
        out
    }
}

/// All set partitions of `{1..r}` in lexicographic order of their restricted
/// growth strings.
pub fn set_partitions(r: usize) -> Vec<SetPartition> {
    fn rec(rgs: &mut Vec<usize>, max: usize, r: usize, out: &mut Vec<SetPartition>) {
        if rgs.len() == r {
            out.push(SetPartition { rgs: rgs.clone() });
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            rec(rgs, max.max(b), r, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return vec![SetPartition { rgs: vec![] }];
    }
    let mut rgs = vec![0];
    rec(&mut rgs, 0, r, &mut out);
    out
}

/// Blocks ordered by smallest element, with pairwise distinct colors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ColoredSetPartition {
    pub blocks: Vec<Vec<usize>>,
    pub colors: Vec<usize>,
}

impl ColoredSetPartition {
    pub fn partition(&self) -> SetPartition {
        let r = self.blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(r, &self.blocks).expect("blocks of a colored partition cover 1..r")
    }

    /// Paints every block with its color.
    pub fn to_multi_index(&self) -> MultiIndex {
        let r = self.blocks.iter().map(Vec::len).sum();
        let mut entries = vec![0; r];
        for (b, &c) in self.blocks.iter().zip(&self.colors) {
            for &p in b {
                entries[p - 1] = c;
            }
        }
        MultiIndex { entries }
    }
}

pub fn colored_partition(j: &MultiIndex) -> ColoredSetPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut colors: Vec<usize> = Vec::new();
    for (p, &e) in j.entries.iter().enumerate() {
        match colors.iter().position(|&c| c == e) {
            Some(b) => blocks[b].push(p + 1),
            None => {
                colors.push(e);
                blocks.push(vec![p + 1]);
            }
        }
    }
    ColoredSetPartition { blocks, colors }
}

/// Hook tableau of shape `(n-k, 1^k)`: the unused letters in the first row,
/// then the block colors one per row.
pub fn tableau_of(j: &MultiIndex, n: usize) -> Result<RowStandardTableau> {
    if j.entries.iter().any(|&e| e == 0 || e > n) {
        return Err(Error::InvalidMultiIndex(format!("{j:?} has letters outside 1..{n}")));
    }
    let cp = colored_partition(j);
    let used: BTreeSet<usize> = cp.colors.iter().copied().collect();
    let mut rows = vec![(1..=n).filter(|c| !used.contains(c)).collect::<Vec<_>>()];
    rows.extend(cp.colors.iter().map(|&c| vec![c]));
    RowStandardTableau::new(rows)
}

/// `n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).map(|i| n.saturating_sub(i) as u128).product()
}

/// Orbits of `S_n` on the basis of `V^{⊗r}`, one per set partition with at
/// most `n` blocks, with orbit sizes.
pub fn orbits(n: usize, r: usize) -> Vec<(SetPartition, u128)> {
    set_partitions(r)
        .into_iter()
        .filter(|p| p.num_blocks() <= n)
        .map(|p| {
            let size = falling_factorial(n, p.num_blocks());
            (p, size)
        })
        .collect()
}

/// The basis tensors of an orbit, in lexicographic order.
pub fn orbit_members(n: usize, p: &SetPartition) -> Vec<MultiIndex> {
    fn colorings(n: usize, k: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for c in 1..=n {
            if !used[c] {
                used[c] = true;
                acc.push(c);
                colorings(n, k, used, acc, out);
                acc.pop();
                used[c] = false;
            }
        }
    }
    let mut cs = Vec::new();
    colorings(n, p.num_blocks(), &mut vec![false; n + 1], &mut Vec::new(), &mut cs);
    let mut out: Vec<MultiIndex> = cs
        .into_iter()
        .map(|colors| MultiIndex {
            entries: p.rgs.iter().map(|&b| colors[b]).collect(),
        })
        .collect();
    out.sort();
    out
}

/// `n^r`, refusing sizes beyond `limit`.
pub fn tensor_dim(n: usize, r: usize, limit: u128) -> Result<usize> {
    let size = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > limit || size > usize::MAX as u128 {
        return Err(Error::DimensionLimitExceeded { size, limit });
    }
    Ok(size as usize)
}

/// A vector of `V^{⊗r}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorVector {
    n: usize,
    r: usize,
    support: BTreeMap<MultiIndex, LaurentPoly>,
}

impl TensorVector {
    pub fn zero(n: usize, r: usize) -> Self {
        Self {
            n,
            r,
            support: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, j: MultiIndex) -> Result<Self> {
        let j = MultiIndex::new(n, j.entries)?;
        let mut v = Self::zero(n, j.r());
        v.support.insert(j, LaurentPoly::one());
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &LaurentPoly)> + '_ {
        self.support.iter()
    }

    pub fn coeff(&self, j: &MultiIndex) -> LaurentPoly {
        self.support.get(j).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, j: MultiIndex, c: &LaurentPoly) -> Result<()> {
        if j.r() != self.r || j.entries.iter().any(|&e| e > self.n) {
            return Err(Error::InvalidMultiIndex(format!("{j:?} is not in I({}, {})", self.n, self.r)));
        }
        let e = self.support.entry(j.clone()).or_insert_with(LaurentPoly::zero);
        *e += c;
        if e.is_zero() {
            self.support.remove(&j);
        }
        Ok(())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n, self.r);
        for (j, a) in &self.support {
            let v = a * c;
            if !v.is_zero() {
                out.support.insert(j.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.n, self.r) != (other.n, other.r) {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (j, c) in &other.support {
            out.add_term(j.clone(), c)?;
        }
        Ok(out)
    }

    pub fn eval(&self, q0: &Rational) -> Result<BTreeMap<MultiIndex, Rational>> {
        let mut out = BTreeMap::new();
        for (j, c) in &self.support {
            let v = c.eval(q0)?;
            if v != num_traits::Zero::zero() {
                out.insert(j.clone(), v);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(j, c)| {
                if c.is_one() {
                    j.to_string()
                } else if c.num_terms() == 1 {
                    format!("{c}·{j}")
                } else {
                    format!("({c})·{j}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    index: &'a MultiIndex,
    coeff: &'a LaurentPoly,
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.support.iter().map(|(index, coeff)| TermJson { index, coeff }))
    }
}

fn gen_on_basis(n: usize, i: usize, j: &MultiIndex) -> Vec<(MultiIndex, LaurentPoly)> {
    debug_assert!(i >= 1 && i < n);
    let (fi, fj) = (first(j, i), first(j, i + 1));
    let q = LaurentPoly::q();
    if fi == 0 && fj == 0 {
        vec![(j.clone(), q)]
    } else if fi < fj {
        vec![(j.swap_letters(i), LaurentPoly::one())]
    } else {
        vec![(j.swap_letters(i), q.clone()), (j.clone(), &q - &LaurentPoly::one())]
    }
}

/// `T_i v`.
pub fn act_gen(i: usize, v: &TensorVector) -> Result<TensorVector> {
    if i == 0 || i >= v.n {
        return Err(Error::GeneratorOutOfRange { index: i, n: v.n });
    }
    let mut out = TensorVector::zero(v.n, v.r);
    for (j, c) in &v.support {
        for (k, a) in gen_on_basis(v.n, i, j) {
            out.add_term(k, &(c * &a))?;
        }
    }
    Ok(out)
}

/// `h v`, each `T_w` unrolled along a reduced word.
pub fn act(h: &HeckeElement, v: &TensorVector) -> Result<TensorVector> {
    if h.rank() != v.n {
        return Err(Error::RankMismatch {
            left: h.rank(),
            right: v.n,
        });
    }
    let mut out = TensorVector::zero(v.n, v.r);
    for (w, c) in h.terms() {
        let mut acc = v.clone();
        for &i in reduced_word(w).iter().rev() {
            acc = act_gen(i, &acc)?;
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// Generator matrices on `V^{⊗r}` in the lexicographic basis, built once
/// and then shared read-only.
#[derive(Clone, Debug)]
pub struct TensorAction {
    n: usize,
    r: usize,
    gens: Vec<SparseMatrix<LaurentPoly>>,
}

impl TensorAction {
    pub fn new(n: usize, r: usize, limit: u128) -> Result<Self> {
        let dim = tensor_dim(n, r, limit)?;
        let gens = (1..n)
            .map(|i| {
                let cols = (0..dim)
                    .map(|c| {
                        let j = MultiIndex::from_rank(n, r, c);
                        gen_on_basis(n, i, &j)
                            .into_iter()
                            .map(|(k, a)| (k.rank(n), a))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        Ok(Self { n, r, gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.gens.first().map_or_else(|| self.n.pow(self.r as u32), |g| g.rows())
    }

    /// Matrix of `T_i`, `1 <= i < n`.
    pub fn generator(&self, i: usize) -> Result<&SparseMatrix<LaurentPoly>> {
        if i == 0 || i >= self.n {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        Ok(&self.gens[i - 1])
    }

    pub fn generators(&self) -> &[SparseMatrix<LaurentPoly>] {
        &self.gens
    }

    /// Matrix of `T_w` as a product along a reduced word.
    pub fn t_w_matrix(&self, w: &Permutation) -> SparseMatrix<LaurentPoly> {
        let mut acc = SparseMatrix::identity(self.dim());
        for &i in reduced_word(w).iter() {
            acc = acc.mul(&self.gens[i - 1]);
        }
        acc
    }

    pub fn hecke_matrix(&self, h: &HeckeElement) -> Result<SparseMatrix<LaurentPoly>> {
        if h.rank() != self.n {
            return Err(Error::RankMismatch {
                left: h.rank(),
                right: self.n,
            });
        }
        let mut acc = SparseMatrix::zero(self.dim(), self.dim());
        for (w, c) in h.terms() {
            acc = acc.combine(&self.t_w_matrix(w), c);
        }
        Ok(acc)
    }

    /// Generator matrices at `q = q0`.
    pub fn specialize(&self, q0: &Rational) -> Result<Vec<SparseMatrix<Rational>>> {
        if num_traits::Zero::is_zero(q0) {
            return Err(Error::ZeroSpecialization);
        }
        // entries take only a handful of distinct values
        let mut seen: Vec<(LaurentPoly, Rational)> = Vec::new();
        let mut value = |c: &LaurentPoly| -> Rational {
            if let Some((_, v)) = seen.iter().find(|(p, _)| p == c) {
                return v.clone();
            }
            let v = c.eval(q0).expect("q0 is nonzero");
            seen.push((c.clone(), v.clone()));
            v
        };
        Ok(self.gens.iter().map(|g| g.map(&mut value)).collect())
    }

    /// Generator matrices over the field of rational functions in `q`.
    pub fn symbolic(&self) -> Vec<SparseMatrix<RationalFunction>> {
        self.gens
            .iter()
            .map(|g| g.map(|c| RationalFunction::from_laurent(c.clone())))
            .collect()
    }

    pub fn matrix_json(&self, i: usize) -> Result<serde_json::Value> {
        let g = self.generator(i)?;
        let columns: Vec<serde_json::Value> = (0..g.cols())
            .map(|c| {
                let terms: Vec<serde_json::Value> = g
                    .column(c)
                    .iter()
                    .map(|(k, a)| serde_json::json!({"index": MultiIndex::from_rank(self.n, self.r, *k), "coeff": a}))
                    .collect();
                serde_json::json!({"index": MultiIndex::from_rank(self.n, self.r, c), "terms": terms})
            })
            .collect();
        Ok(serde_json::json!({"n": self.n, "r": self.r, "generator": i, "columns": columns}))
    }
}

/// The 0/1 matrix of the letter permutation `e_j -> e_{w j}`.
pub fn letter_permutation_matrix(n: usize, r: usize, w: &Permutation) -> SparseMatrix<Rational> {
    let dim = n.pow(r as u32);
    SparseMatrix::from_columns(
        dim,
        (0..dim)
            .map(|c| vec![(MultiIndex::from_rank(n, r, c).permute_letters(w).rank(n), crate::coeff::int(1))])
            .collect(),
    )
}

/// Outcome of checking the defining relations on every basis tensor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub r: usize,
    pub relations_checked: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

fn first_failure(name: &str, n: usize, r: usize, residual: &SparseMatrix<LaurentPoly>) -> Option<String> {
    (0..residual.cols()).find(|&c| !residual.column(c).is_empty()).map(|c| {
        let j = MultiIndex::from_rank(n, r, c);
        let terms: Vec<String> = residual
            .column(c)
            .iter()
            .map(|(k, a)| format!("({a})·{}", MultiIndex::from_rank(n, r, *k)))
            .collect();
        format!("{name} fails on {j}: residual {}", terms.join(" + "))
    })
}

/// Checks `T_i^2 = (q-1) T_i + q`, the braid relations and far
/// commutation as operator identities on `V^{⊗r}`.
pub fn verify_relations(action: &TensorAction) -> RelationReport {
    let (n, r) = (action.n, action.r);
    let g = &action.gens;
    let dim = action.dim();
    let id = SparseMatrix::<LaurentPoly>::identity(dim);
    let q = LaurentPoly::q();
    let qm1 = &q - &LaurentPoly::one();
    let mut checked = 0;
    let mut counterexample = None;
    for a in 0..g.len() {
        let mut check = |name: String, residual: SparseMatrix<LaurentPoly>| {
            checked += 1;
            if counterexample.is_none() {
                counterexample = first_failure(&name, n, r, &residual);
            }
        };
        let quad = g[a].mul(&g[a]).sub(&g[a].scale(&qm1)).sub(&id.scale(&q));
        check(format!("T_{0}^2 = (q-1) T_{0} + q", a + 1), quad);
        if a + 1 < g.len() {
            let braid = g[a].mul(&g[a + 1]).mul(&g[a]).sub(&g[a + 1].mul(&g[a]).mul(&g[a + 1]));
            check(format!("T_{0} T_{1} T_{0} = T_{1} T_{0} T_{1}", a + 1, a + 2), braid);
        }
        for b in a + 2..g.len() {
            check(format!("T_{0} T_{1} = T_{1} T_{0}", a + 1, b + 1), g[a].commutator(&g[b]));
        }
    }
    RelationReport {
        n,
        r,
        relations_checked: checked,
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Every generator matrix at `q = 1` is the letter permutation `s_i`.
pub fn check_classical_limit(action: &TensorAction) -> bool {
    let one = crate::coeff::int(1);
    let at_one = action.specialize(&one).expect("1 is nonzero");
    at_one.iter().enumerate().all(|(a, m)| {
        let s = Permutation::simple(action.n, a + 1).expect("generator in range");
        *m == letter_permutation_matrix(action.n, action.r, &s)
    })
}

/// `T_i` times the matrix of `T_i^{-1}` is the identity for every `i`.
pub fn check_invertibility(action: &TensorAction) -> bool {
    let id = SparseMatrix::<LaurentPoly>::identity(action.dim());
    (1..action.n).all(|i| {
        let s = Permutation::simple(action.n, i).expect("generator in range");
        let inv = action.hecke_matrix(&inverse_t_w(&s)).expect("same rank");
        action.gens[i - 1].mul(&inv) == id && inv.mul(&action.gens[i - 1]) == id
    })
}

/// The basis correspondence `e_j <-> T_d x_λ` on one orbit, where `λ` is
/// the hook `(n-k, 1^k)` and `d t^λ` is the tableau of `j`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitIso {
    pub partition: SetPartition,
    pub lambda: Composition,
    pub correspondence: Vec<(MultiIndex, Permutation)>,
    /// The correspondence is a bijection onto `D_λ` and intertwines every
    /// generator.
    pub equivariant: bool,
}

pub fn orbit_iso(n: usize, r: usize, p: &SetPartition) -> Result<OrbitIso> {
    let k = p.num_blocks();
    if p.r() != r || k > n {
        return Err(Error::InvalidPartition(format!(
            "{:?} has {k} blocks; needs a partition of 1..{r} with at most {n} blocks",
            p.rgs
        )));
    }
    let lambda = Composition::hook(n, k)?;
    let correspondence: Vec<(MultiIndex, Permutation)> = orbit_members(n, p)
        .into_iter()
        .map(|j| {
            let d = d_of_tableau(&tableau_of(&j, n).expect("letters in range"));
            (j, d)
        })
        .collect();
    let to_d: BTreeMap<&MultiIndex, &Permutation> = correspondence.iter().map(|(j, d)| (j, d)).collect();
    let distinct: BTreeSet<&Permutation> = to_d.values().copied().collect();
    let reps = crate::symcomb::coset_reps(&lambda);
    let mut equivariant = distinct.len() == correspondence.len() && distinct.len() == reps.len();
    'outer: for (j, d) in &correspondence {
        let b = QPermBasisVector::new(lambda.clone(), d.clone())?;
        for i in 1..n {
            let via_tensor: Option<BTreeMap<Permutation, LaurentPoly>> = gen_on_basis(n, i, j)
                .into_iter()
                .map(|(k, a)| to_d.get(&k).map(|d| ((*d).clone(), a)))
                .collect();
            let via_module: BTreeMap<Permutation, LaurentPoly> =
                qperm_act_gen(i, &b)?.into_iter().map(|(v, a)| (v.d, a)).collect();
            if via_tensor.as_ref() != Some(&via_module) {
                equivariant = false;
                break 'outer;
            }
        }
    }
    Ok(OrbitIso {
        partition: p.clone(),
        lambda,
        correspondence,
        equivariant,
    })
}
