//! Symmetric group combinatorics: permutations in one-line notation, Young
//! subgroups, row standard tableaux and distinguished coset representatives.
//!
//! Letters and positions are 1-based throughout. Permutations act on the
//! left and compose right-to-left: `(v * w)(i) = v(w(i))`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation, `w(i) = images[i-1]`.
///
/// Ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i = [i, i+1]`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        let mut w = Self::identity(n);
        w.images.swap(i - 1, i);
        Ok(w)
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::GeneratorOutOfRange { index: i, n });
            }
            w = w.right_mul_simple(i);
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Self {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    /// `s_i * self`: swaps the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        Self {
            images: self
                .images
                .iter()
                .map(|&v| {
                    if v == i {
                        i + 1
                    } else if v == i + 1 {
                        i
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// `self * s_i`: swaps the positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Self { images }
    }

    /// `l(s_i w) < l(w)`, i.e. `i+1` appears before `i` in one-line notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.images.iter().position(|&x| x == v).unwrap();
        pos(i + 1) < pos(i)
    }

    pub fn length(&self) -> usize {
        length(self)
    }

    pub fn reduced_word(&self) -> Vec<usize> {
        reduced_word(self)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Inversion count.
pub fn length(w: &Permutation) -> usize {
    let im = w.images();
    let mut inv = 0;
    for a in 0..im.len() {
        for b in a + 1..im.len() {
            if im[a] > im[b] {
                inv += 1;
            }
        }
    }
    inv
}

/// A reduced expression `w = s_{i_1} ... s_{i_k}`, found by peeling off left
/// descents. The result is lexicographically smallest among reduced words
/// read from the left.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let n = w.degree();
    let mut word = Vec::with_capacity(length(w));
    let mut cur = w.clone();
    'outer: while !cur.is_identity() {
        for i in 1..n {
            if cur.has_left_descent(i) {
                word.push(i);
                cur = cur.left_mul_simple(i);
                continue 'outer;
            }
        }
        unreachable!("non-identity permutation without a left descent");
    }
    word
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A composition of `n`: a finite sequence of nonnegative parts. Zero parts
/// are kept verbatim.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    /// The hook `(n-k, 1^k)`, for `0 <= k <= n`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidComposition(format!("hook (n-k,1^k) needs k <= n, got n={n}, k={k}")));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat(1).take(k));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The blocks `{1..λ_1}, {λ_1+1..λ_1+λ_2}, ...` as half-open 1-based
    /// ranges; zero parts give empty ranges.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 1;
        self.parts
            .iter()
            .map(|&p| {
                let r = start..start + p;
                start += p;
                r
            })
            .collect()
    }

    /// Index of the block (row) containing position `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &p) in self.parts.iter().enumerate() {
            acc += p;
            if i <= acc {
                return b;
            }
        }
        panic!("position {i} outside composition of {}", self.n());
    }

    /// Drops zero parts.
    pub fn nonzero(&self) -> Self {
        Self::new(self.parts.iter().copied().filter(|&p| p > 0).collect())
    }

    /// `|Y_λ| = ∏ λ_i!`.
    pub fn young_order(&self) -> u128 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// Elements of the standard Young subgroup, lexicographically sorted.
    pub fn young_subgroup(&self) -> Vec<Permutation> {
        let n = self.n();
        let mut out = vec![Permutation::identity(n)];
        for block in self.blocks() {
            let len = block.len();
            if len < 2 {
                continue;
            }
            let local = all_permutations(len);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for w in &out {
                for p in &local {
                    let mut images = w.images.clone();
                    for (k, &v) in p.images.iter().enumerate() {
                        images[block.start - 1 + k] = block.start - 1 + v;
                    }
                    next.push(Permutation { images });
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        (1..=w.degree()).all(|i| self.block_of(i) == self.block_of(w.apply(i)))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// A tableau whose rows are strictly increasing and whose entries are
/// exactly `{1..n}`. Empty rows stand for zero parts of the shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct RowStandardTableau {
    rows: Vec<Vec<usize>>,
}

impl RowStandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for row in &rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidTableau(format!("row {row:?} not increasing")));
            }
            for &v in row {
                if v == 0 || v > n || seen[v - 1] {
                    return Err(Error::InvalidTableau(format!("{rows:?} is not a filling of 1..{n}")));
                }
                seen[v - 1] = true;
            }
        }
        Ok(Self { rows })
    }

    /// `t^λ`: 1..n filled left to right along successive rows.
    pub fn initial(shape: &Composition) -> Self {
        Self {
            rows: shape.blocks().into_iter().map(|b| b.collect()).collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Composition {
        Composition::new(self.rows.iter().map(Vec::len).collect())
    }

    /// Row index (0-based) holding the entry `v`.
    pub fn row_of(&self, v: usize) -> usize {
        self.rows.iter().position(|r| r.contains(&v)).expect("entry not in tableau")
    }
}

/// The unique `d` with `d t^λ = s`: reading the rows of `s` in order gives
/// the one-line notation of `d`.
pub fn d_of_tableau(s: &RowStandardTableau) -> Permutation {
    Permutation {
        images: s.rows.iter().flatten().copied().collect(),
    }
}

/// Letter action `w s`, followed by no re-sorting.
pub fn act_on_tableau(w: &Permutation, s: &RowStandardTableau) -> Vec<Vec<usize>> {
    s.rows.iter().map(|r| r.iter().map(|&v| w.apply(v)).collect()).collect()
}

/// Is `d` increasing on every block of `λ`, i.e. minimal in `d Y_λ`?
pub fn is_distinguished(d: &Permutation, lambda: &Composition) -> bool {
    lambda
        .blocks()
        .into_iter()
        .all(|b| b.clone().zip(b.skip(1)).all(|(i, j)| d.apply(i) < d.apply(j)))
}

/// The distinguished representative of the left coset `w Y_λ`: sort the
/// values of `w` inside every block.
pub fn coset_rep_of(w: &Permutation, lambda: &Composition) -> Permutation {
    let mut images = w.images.clone();
    for b in lambda.blocks() {
        if !b.is_empty() {
            images[b.start - 1..b.end - 1].sort_unstable();
        }
    }
    Permutation { images }
}

/// `D_λ`, the distinguished left coset representatives of `Y_λ` in `S_n`,
/// sorted lexicographically.
pub fn coset_reps(lambda: &Composition) -> Vec<Permutation> {
    let n = lambda.n();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill_blocks(lambda.parts(), 0, &mut used, &mut images, &mut out);
    out.sort();
    out
}

fn fill_blocks(
    parts: &[usize],
    block: usize,
    used: &mut Vec<bool>,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if block == parts.len() {
        out.push(Permutation { images: images.clone() });
        return;
    }
    choose_increasing(parts, block, parts[block], 0, used, images, out);
}

fn choose_increasing(
    parts: &[usize],
    block: usize,
    remaining: usize,
    min_val: usize,
    used: &mut Vec<bool>,
    images: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if remaining == 0 {
        fill_blocks(parts, block + 1, used, images, out);
        return;
    }
    let n = used.len() - 1;
    for v in min_val + 1..=n {
        if used[v] {
            continue;
        }
        used[v] = true;
        images.push(v);
        choose_increasing(parts, block, remaining - 1, v, used, images, out);
        images.pop();
        used[v] = false;
    }
}

/// `D_{μ,λ} = D_μ^{-1} ∩ D_λ`: minimal `Y_μ`-`Y_λ` double coset
/// representatives, sorted lexicographically.
pub fn double_coset_reps(mu: &Composition, lambda: &Composition) -> Result<Vec<Permutation>> {
    if mu.n() != lambda.n() {
        return Err(Error::InvalidComposition(format!(
            "{mu} and {lambda} are compositions of different integers"
        )));
    }
    Ok(coset_reps(lambda)
        .into_iter()
        .filter(|d| is_distinguished(&d.inverse(), mu))
        .collect())
}

/// `|D_{μ,λ}|` without enumeration: double cosets `Y_μ \ S_n / Y_λ`
/// correspond to nonnegative integer matrices with row sums `μ` and column
/// sums `λ`.
pub fn double_coset_count(mu: &Composition, lambda: &Composition) -> Result<u128> {
    if mu.n() != lambda.n() {
        return Err(Error::InvalidComposition(format!(
            "{mu} and {lambda} are compositions of different integers"
        )));
    }
    let rows: Vec<usize> = mu.parts().iter().copied().filter(|&p| p > 0).collect();
    let mut cols: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    cols.sort_unstable();
    let mut memo = HashMap::new();
    Ok(count_tables(&rows, cols, &mut memo))
}

// the count is symmetric in the column order, so states keep `cols` sorted
fn count_tables(rows: &[usize], cols: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u128>) -> u128 {
    let Some((&first, rest)) = rows.split_first() else {
        return u128::from(cols.iter().all(|&c| c == 0));
    };
    let key = (rows.len(), cols);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let cols = key.1.clone();
    let mut total = 0;
    let mut cur = cols.clone();
    fill_row(first, 0, &cols, &mut cur, &mut |next| {
        let mut sorted = next.to_vec();
        sorted.sort_unstable();
        total += count_tables(rest, sorted, memo);
    });
    memo.insert(key, total);
    total
}

// every way to subtract a row summing to `left` from `cols[at..]`
fn fill_row(left: usize, at: usize, cols: &[usize], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if at == cols.len() {
        if left == 0 {
            visit(cur);
        }
        return;
    }
    let cap: usize = cols[at + 1..].iter().sum();
    let lo = left.saturating_sub(cap);
    for take in lo..=left.min(cols[at]) {
        cur[at] = cols[at] - take;
        fill_row(left - take, at + 1, cols, cur, visit);
    }
    cur[at] = cols[at];
}

pub fn is_double_distinguished(mu: &Composition, d: &Permutation, lambda: &Composition) -> bool {
    d.degree() == lambda.n()
        && mu.n() == lambda.n()
        && is_distinguished(d, lambda)
        && is_distinguished(&d.inverse(), mu)
}

/// `τ = μd ∩ λ` with `Y_τ = d^{-1} Y_μ d ∩ Y_λ`, zero parts removed.
///
/// Within each λ-block the positions sent by `d` into the successive μ-blocks
/// form consecutive runs, so τ lists those run lengths block by block.
pub fn intersect_composition(
    mu: &Composition,
    d: &Permutation,
    lambda: &Composition,
) -> Result<Composition> {
    if !is_double_distinguished(mu, d, lambda) {
        return Err(Error::NotDistinguished(format!("{d} for ({mu}, {lambda})")));
    }
    let mut parts = Vec::new();
    for lb in lambda.blocks() {
        let mut counts = vec![0usize; mu.parts().len()];
        for i in lb {
            counts[mu.block_of(d.apply(i))] += 1;
        }
        parts.extend(counts.into_iter().filter(|&c| c > 0));
    }
    Ok(Composition::new(parts))
}

/// Stirling numbers of the second kind via
/// `s(r,k) = k s(r-1,k) + s(r-1,k-1)`, `s(0,0) = 1`.
pub fn stirling2(r: usize, k: usize) -> u128 {
    if k > r {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=r {
        for j in (1..=k.min(m)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

pub fn bell(m: usize) -> u128 {
    (0..=m).map(|k| stirling2(m, k)).sum()
}
