//! Brute-force commutants of the Hecke action on `V^{⊗r}` by exact linear
//! algebra, used as an oracle for the combinatorial dimension formulas, and
//! the double-centralizer check.

use std::collections::{HashMap, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{format_rational, rat, FastRational, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::linalg::{commutant, Echelon, Field, Nullspace, Ring, SparseMatrix};
use crate::tensor::{tensor_dim, TensorAction};
use crate::symcomb::Permutation;

/// Largest `n^r` accepted in symbolic mode.
pub const SYMBOLIC_LIMIT: u128 = 64;

/// `{2, 1/2, -2}`: generic (no `[k]_q` vanishes) and of small height, which
/// keeps the exact weights `q^k` of the commutant cheap.
pub fn default_q_values() -> Vec<Rational> {
    vec![rat(2, 1), rat(1, 2), rat(-2, 1)]
}

/// A commutant `{X : X A_i = A_i X}` of `dim x dim` matrices.
#[derive(Clone, Debug)]
pub struct Commutant<F> {
    pub dim: usize,
    pub space: Nullspace<F>,
}

impl<F: Field> Commutant<F> {
    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    pub fn element(&self, k: usize) -> SparseMatrix<F> {
        SparseMatrix::from_flat(self.dim, self.dim, &self.space.basis[k])
    }

    pub fn basis_matrices(&self) -> Vec<SparseMatrix<F>> {
        (0..self.rank()).map(|k| self.element(k)).collect()
    }
}

fn generators_for<T: Clone>(gens: Vec<T>, half: bool) -> Vec<T> {
    // H_{(n-1,1)} is generated by T_1..T_{n-2}
    let keep = if half { gens.len().saturating_sub(1) } else { gens.len() };
    gens.into_iter().take(keep).collect()
}

fn commutant_of<F: Field>(dim: usize, gens: &[SparseMatrix<F>]) -> Commutant<F> {
    Commutant {
        dim,
        space: commutant(dim, gens),
    }
}

/// `commutant` with word-sized arithmetic while the numbers stay small.
fn fast_commutant(dim: usize, gens: &[SparseMatrix<Rational>]) -> Nullspace<Rational> {
    let fast: Vec<SparseMatrix<FastRational>> = gens.iter().map(|g| g.map(|x| FastRational::from(x))).collect();
    let ns = commutant(dim, &fast);
    Nullspace {
        num_vars: ns.num_vars,
        basis: ns
            .basis
            .iter()
            .map(|v| v.iter().map(|(k, x)| (*k, x.to_rational())).collect())
            .collect(),
        coordinate_vars: ns.coordinate_vars,
    }
}

/// Commutants at several specializations `q = q0`.
#[derive(Clone, Debug)]
pub struct SpecializedCommutants {
    pub n: usize,
    pub r: usize,
    pub half: bool,
    pub per_q: Vec<(Rational, Commutant<Rational>)>,
}

impl SpecializedCommutants {
    pub fn dims(&self) -> Vec<usize> {
        self.per_q.iter().map(|(_, c)| c.rank()).collect()
    }

    /// The common dimension, if every specialization agrees.
    pub fn dim(&self) -> Option<usize> {
        let d = self.dims();
        match d.first() {
            Some(&x) if d.iter().all(|&y| y == x) => Some(x),
            _ => None,
        }
    }

    pub fn agree(&self) -> bool {
        self.dim().is_some()
    }
}

fn specialized(n: usize, r: usize, q_values: &[Rational], limit: u128, half: bool) -> Result<SpecializedCommutants> {
    if q_values.iter().any(|q| num_traits::Zero::is_zero(q)) {
        return Err(Error::ZeroSpecialization);
    }
    let action = TensorAction::new(n, r, limit)?;
    let dim = action.dim();
    let per_q = q_values
        .par_iter()
        .map(|q0| {
            let gens = generators_for(action.specialize(q0)?, half);
            let space = fast_commutant(dim, &gens);
            Ok((q0.clone(), Commutant { dim, space }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecializedCommutants { n, r, half, per_q })
}

/// `End_H(V^{⊗r})` at each `q0`.
pub fn commutant_basis(n: usize, r: usize, q_values: &[Rational], limit: u128) -> Result<SpecializedCommutants> {
    specialized(n, r, q_values, limit, false)
}

/// `End_{H_{(n-1,1)}}(V^{⊗r})` at each `q0`: only `T_1..T_{n-2}` act.
pub fn half_commutant_basis(n: usize, r: usize, q_values: &[Rational], limit: u128) -> Result<SpecializedCommutants> {
    specialized(n, r, q_values, limit, true)
}

/// The commutant over the rational function field `Q(q)`; refuses
/// `n^r > min(limit, SYMBOLIC_LIMIT)`.
pub fn symbolic_commutant_basis(n: usize, r: usize, half: bool, limit: u128) -> Result<Commutant<RationalFunction>> {
    let action = TensorAction::new(n, r, limit.min(SYMBOLIC_LIMIT))?;
    let gens = generators_for(action.symbolic(), half);
    Ok(commutant_of(action.dim(), &gens))
}

/// Matrices of `T_w` for all `w ∈ S_n`, by breadth-first search:
/// `T_{w s_i} = T_w T_i` whenever `w(i) < w(i+1)`.
pub fn t_w_matrices<F: Ring>(n: usize, dim: usize, gens: &[SparseMatrix<F>]) -> Vec<(Permutation, SparseMatrix<F>)> {
    let id = Permutation::identity(n);
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(id.clone(), 0)]);
    let mut out = vec![(id.clone(), SparseMatrix::identity(dim))];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let w = out[k].0.clone();
        for i in 1..n {
            if w.apply(i) < w.apply(i + 1) {
                let ws = w.right_mul_simple(i);
                if !seen.contains_key(&ws) {
                    let m = out[k].1.mul(&gens[i - 1]);
                    seen.insert(ws.clone(), out.len());
                    queue.push_back(out.len());
                    out.push((ws, m));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCentralizerReport {
    pub n: usize,
    pub r: usize,
    pub q0: String,
    pub image_dim: usize,
    pub commutant_dim: usize,
    pub bicommutant_dim: usize,
    pub image_in_bicommutant: bool,
    pub pass: bool,
}

/// Compares the span of the `T_w` matrices with the commutant of the
/// commutant at `q = q0`.
pub fn double_centralizer_check(n: usize, r: usize, q0: &Rational, limit: u128) -> Result<DoubleCentralizerReport> {
    let action = TensorAction::new(n, r, limit)?;
    let dim = action.dim();
    let gens = action.specialize(q0)?;
    let tw = t_w_matrices(n, dim, &gens);
    let mut span = Echelon::new();
    for (_, m) in &tw {
        span.insert(m.flatten());
    }
    let image_dim = span.rank();
    let c = commutant_of(dim, &gens);
    let cmats = c.basis_matrices();
    let bic = commutant_of(dim, &cmats);
    let image_in_bicommutant = tw
        .par_iter()
        .all(|(_, m)| cmats.iter().all(|x| m.commutator(x).is_zero()));
    Ok(DoubleCentralizerReport {
        n,
        r,
        q0: format_rational(q0),
        image_dim,
        commutant_dim: c.rank(),
        bicommutant_dim: bic.rank(),
        image_in_bicommutant,
        pass: image_in_bicommutant && image_dim == bic.rank(),
    })
}

/// Multiplication table `X_a X_b = Σ_k c[a][b][k] X_k` of a computed
/// commutant basis.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub constants: Vec<Vec<Vec<Rational>>>,
    pub identity: Vec<Rational>,
    /// Every product re-expands exactly in the basis.
    pub closed: bool,
    /// Multiplying by the expanded identity is the identity on the table.
    pub unital: bool,
    /// Associativity held on every checked triple.
    pub associative: bool,
    pub triples_checked: usize,
}

fn dot_table(c: &[Vec<Vec<Rational>>], x: &[Rational], b: usize, m: usize) -> Rational {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !Ring::is_zero(*v))
        .map(|(k, v)| v * &c[k][b][m])
        .sum()
}

/// Structure constants of the commutant at `q = q0`. Associativity is checked
/// on all triples when the dimension is at most `full_check`, otherwise on
/// `samples` triples drawn from `seed`.
pub fn structure_constants(
    n: usize,
    r: usize,
    q0: &Rational,
    limit: u128,
    full_check: usize,
    samples: usize,
    seed: u64,
) -> Result<StructureConstants> {
    tensor_dim(n, r, limit)?;
    let sc = commutant_basis(n, r, std::slice::from_ref(q0), limit)?;
    let c = &sc.per_q[0].1;
    let mats = c.basis_matrices();
    let d = mats.len();
    let products: Vec<Vec<(Vec<Rational>, bool)>> = mats
        .par_iter()
        .map(|xa| {
            mats.iter()
                .map(|xb| {
                    let p = xa.mul(xb).flatten();
                    let coords = c.space.coordinates(&p);
                    let ok = c.space.combine(&coords) == p;
                    (coords, ok)
                })
                .collect()
        })
        .collect();
    let closed = products.iter().flatten().all(|(_, ok)| *ok);
    let constants: Vec<Vec<Vec<Rational>>> = products
        .into_iter()
        .map(|row| row.into_iter().map(|(coords, _)| coords).collect())
        .collect();

    let id = SparseMatrix::<Rational>::identity(c.dim).flatten();
    let identity = c.space.coordinates(&id);
    let unital = c.space.combine(&identity) == id
        && (0..d).all(|b| {
            (0..d).all(|m| {
                let want = if b == m { rat(1, 1) } else { rat(0, 1) };
                dot_table(&constants, &identity, b, m) == want
            })
        });

    let triple = |a: usize, b: usize, e: usize| -> bool {
        // (X_a X_b) X_e = X_a (X_b X_e)
        let left = &constants[a][b];
        let right = &constants[b][e];
        (0..d).all(|p| {
            let l: Rational = (0..d).filter(|&m| !Ring::is_zero(&left[m])).map(|m| &left[m] * &constants[m][e][p]).sum();
            let rr: Rational = (0..d).filter(|&m| !Ring::is_zero(&right[m])).map(|m| &right[m] * &constants[a][m][p]).sum();
            l == rr
        })
    };
    let triples: Vec<(usize, usize, usize)> = if d <= full_check {
        (0..d)
            .flat_map(|a| (0..d).flat_map(move |b| (0..d).map(move |e| (a, b, e))))
            .collect()
    } else if d == 0 {
        Vec::new()
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        (0..samples)
            .map(|_| (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(0..d)))
            .collect()
    };
    let associative = triples.par_iter().all(|&(a, b, e)| triple(a, b, e));
    Ok(StructureConstants {
        constants,
        identity,
        closed,
        unital,
        associative,
        triples_checked: triples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::qperm::{half_qpartition_dim, qpartition_dim};

    #[test]
    fn small_commutant_dimensions() {
        let c = commutant_basis(2, 2, &[int(1)], 4096).unwrap();
        assert_eq!(c.dim(), Some(8));
        let c = commutant_basis(4, 2, &[rat(7, 5), int(3)], 4096).unwrap();
        assert_eq!(c.dim(), Some(15));
        for n in 2..=5 {
            let c = commutant_basis(n, 1, &default_q_values(), 4096).unwrap();
            assert_eq!(c.dim(), Some(2));
        }
    }

    /// At `q = 1` the commutant of `S_n` on `V^{⊗r}` has dimension
    /// `Σ_orbits-pairs |orbits of S_n on pairs|`, i.e. the number of orbits
    /// on `I(n,r) x I(n,r)`.
    #[test]
    fn classical_commutant_counts_orbits_on_pairs() {
        for (n, r) in [(2, 2), (3, 2), (2, 3)] {
            let c = commutant_basis(n, r, &[int(1)], 4096).unwrap();
            let pairs = crate::tensor::set_partitions(2 * r)
                .into_iter()
                .filter(|p| p.num_blocks() <= n)
                .count();
            assert_eq!(c.dim(), Some(pairs));
        }
    }

    #[test]
    fn basis_elements_commute_with_generators() {
        let action = TensorAction::new(3, 2, 4096).unwrap();
        let gens = action.specialize(&rat(7, 5)).unwrap();
        let c = commutant_basis(3, 2, &[rat(7, 5)], 4096).unwrap();
        for x in c.per_q[0].1.basis_matrices() {
            for g in &gens {
                assert!(x.commutator(g).is_zero());
            }
        }
        assert_eq!(c.dim(), Some(qpartition_dim(3, 2) as usize));
    }

    #[test]
    fn fast_route_matches_plain_solve() {
        for (n, r) in [(3, 2), (2, 3), (4, 1), (4, 2)] {
            let action = TensorAction::new(n, r, 4096).unwrap();
            for q0 in [int(2), rat(-1, 3), rat(7, 5)] {
                let gens = action.specialize(&q0).unwrap();
                let fast = &commutant_basis(n, r, &[q0.clone()], 4096).unwrap().per_q[0].1;
                let plain = commutant(action.dim(), &gens);
                assert_eq!(fast.space.coordinate_vars, plain.coordinate_vars);
                assert_eq!(fast.space.basis, plain.basis);
            }
        }
    }

    #[test]
    fn half_commutants() {
        let c = half_commutant_basis(3, 1, &default_q_values(), 4096).unwrap();
        assert_eq!(c.dim(), Some(5));
        let c = half_commutant_basis(2, 1, &default_q_values(), 4096).unwrap();
        assert_eq!(c.dim(), Some(half_qpartition_dim(2, 1) as usize));
        for (n, r) in [(2, 2), (3, 2), (4, 1)] {
            let c = half_commutant_basis(n, r, &[int(2)], 4096).unwrap();
            assert_eq!(c.dim(), Some(half_qpartition_dim(n, r) as usize), "n={n} r={r}");
        }
    }

    #[test]
    fn symbolic_mode() {
        let c = symbolic_commutant_basis(2, 2, false, 4096).unwrap();
        assert_eq!(c.rank(), 8);
        let gens = TensorAction::new(2, 2, 4096).unwrap().symbolic();
        for x in c.basis_matrices() {
            assert!(x.commutator(&gens[0]).is_zero());
        }
        assert_eq!(symbolic_commutant_basis(3, 2, false, 4096).unwrap().rank(), 14);
        assert!(matches!(
            symbolic_commutant_basis(3, 4, false, 4096),
            Err(Error::DimensionLimitExceeded { .. })
        ));
    }

    #[test]
    fn errors() {
        assert!(matches!(commutant_basis(2, 2, &[int(0)], 4096), Err(Error::ZeroSpecialization)));
        assert!(matches!(commutant_basis(5, 6, &[int(2)], 4096), Err(Error::DimensionLimitExceeded { .. })));
    }

    #[test]
    fn t_w_matrices_cover_the_group() {
        let action = TensorAction::new(3, 1, 4096).unwrap();
        let gens = action.specialize(&int(1)).unwrap();
        let tw = t_w_matrices(3, 3, &gens);
        assert_eq!(tw.len(), 6);
        for (w, m) in tw {
            assert_eq!(m, crate::tensor::letter_permutation_matrix(3, 1, &w));
        }
    }

    #[test]
    fn schur_weyl_small() {
        let rep = double_centralizer_check(2, 2, &int(1), 4096).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.image_dim, 2);
        assert_eq!(rep.commutant_dim, 8);
        let rep = double_centralizer_check(3, 2, &int(5), 4096).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn structure_constants_of_small_commutant() {
        let s = structure_constants(2, 2, &int(2), 4096, 8, 0, 1).unwrap();
        assert_eq!(s.constants.len(), 8);
        assert!(s.closed && s.unital && s.associative);
        assert_eq!(s.triples_checked, 512);
        let s = structure_constants(3, 2, &rat(7, 5), 4096, 4, 200, 7).unwrap();
        assert!(s.closed && s.unital && s.associative);
        assert_eq!(s.triples_checked, 200);
    }
}
