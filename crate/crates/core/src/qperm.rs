//! q-permutation modules `M^λ = T x_λ` with basis `{T_d x_λ : d ∈ D_λ}`,
//! the homomorphisms `φ_d` between them, and the multiplicity calculus for
//! hook-shaped summands.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::linalg::SparseMatrix;
use crate::symcomb::{
    coset_rep_of, coset_reps, double_coset_count, is_distinguished, is_double_distinguished, reduced_word,
    stirling2, Composition, Permutation,
};

/// The basis vector `T_d x_λ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct QPermBasisVector {
    pub lambda: Composition,
    pub d: Permutation,
}

impl QPermBasisVector {
    pub fn new(lambda: Composition, d: Permutation) -> Result<Self> {
        if d.degree() != lambda.n() || !is_distinguished(&d, &lambda) {
            return Err(Error::NotDistinguished(format!("{d} for {lambda}")));
        }
        Ok(Self { lambda, d })
    }
}

/// `T_i T_d x_λ`, reading rows in `s = d t^λ`:
/// `i`, `i+1` in one row gives `q T_d x_λ`; row of `i` above row of `i+1`
/// gives `T_{s_i d} x_λ`; otherwise `q T_{s_i d} x_λ + (q-1) T_d x_λ`.
pub fn qperm_act_gen(i: usize, b: &QPermBasisVector) -> Result<Vec<(QPermBasisVector, LaurentPoly)>> {
    let n = b.lambda.n();
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, n });
    }
    let inv = b.d.inverse();
    let row_i = b.lambda.block_of(inv.apply(i));
    let row_j = b.lambda.block_of(inv.apply(i + 1));
    let q = LaurentPoly::q();
    let moved = || QPermBasisVector {
        lambda: b.lambda.clone(),
        d: b.d.left_mul_simple(i),
    };
    Ok(if row_i == row_j {
        vec![(b.clone(), q)]
    } else if row_i < row_j {
        vec![(moved(), LaurentPoly::one())]
    } else {
        vec![(moved(), q.clone()), (b.clone(), &q - &LaurentPoly::one())]
    })
}

/// `M^λ` with its distinguished basis in lexicographic order of `d`.
#[derive(Clone, Debug)]
pub struct QPermModule {
    lambda: Composition,
    basis: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl QPermModule {
    pub fn new(lambda: Composition) -> Self {
        let basis = coset_reps(&lambda);
        let index = basis.iter().cloned().enumerate().map(|(k, d)| (d, k)).collect();
        Self { lambda, basis, index }
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn index_of(&self, d: &Permutation) -> Option<usize> {
        self.index.get(d).copied()
    }

    fn act_gen_index(&self, i: usize, k: usize) -> Result<Vec<(usize, LaurentPoly)>> {
        let b = QPermBasisVector {
            lambda: self.lambda.clone(),
            d: self.basis[k].clone(),
        };
        Ok(qperm_act_gen(i, &b)?
            .into_iter()
            .map(|(v, c)| (self.index[&v.d], c))
            .collect())
    }

    /// `T_i` on a coordinate vector.
    pub fn act_gen(&self, i: usize, v: &BTreeMap<usize, LaurentPoly>) -> Result<BTreeMap<usize, LaurentPoly>> {
        let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (k, c) in v {
            for (t, a) in self.act_gen_index(i, *k)? {
                *out.entry(t).or_insert_with(LaurentPoly::zero) += &(c * &a);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `T_w` on a coordinate vector, generator by generator along a reduced
    /// word of `w`.
    pub fn act_t_w(&self, w: &Permutation, v: &BTreeMap<usize, LaurentPoly>) -> Result<BTreeMap<usize, LaurentPoly>> {
        let mut acc = v.clone();
        for &i in reduced_word(w).iter().rev() {
            acc = self.act_gen(i, &acc)?;
        }
        Ok(acc)
    }

    pub fn act(&self, h: &HeckeElement, v: &BTreeMap<usize, LaurentPoly>) -> Result<BTreeMap<usize, LaurentPoly>> {
        if h.rank() != self.n() {
            return Err(Error::RankMismatch {
                left: h.rank(),
                right: self.n(),
            });
        }
        let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (w, c) in h.terms() {
            for (k, a) in self.act_t_w(w, v)? {
                *out.entry(k).or_insert_with(LaurentPoly::zero) += &(c * &a);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Matrix of `T_i`; column `k` is the image of the `k`-th basis vector.
    pub fn generator_matrix(&self, i: usize) -> Result<SparseMatrix<LaurentPoly>> {
        let cols = (0..self.dim())
            .map(|k| self.act_gen_index(i, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }
}

/// An `H`-homomorphism `M^μ -> M^λ` in distinguished bases. The map is stored
/// column-wise: column `c` is the image of `T_c x_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomMatrix {
    pub source: Composition,
    pub target: Composition,
    pub source_basis: Vec<Permutation>,
    pub target_basis: Vec<Permutation>,
    pub map: SparseMatrix<LaurentPoly>,
}

impl HomMatrix {
    /// `T_i Φ = Φ T_i` on every basis vector.
    pub fn is_equivariant(&self) -> bool {
        let src = QPermModule::new(self.source.clone());
        let tgt = QPermModule::new(self.target.clone());
        (1..src.n()).all(|i| {
            let gs = src.generator_matrix(i).expect("generator in range");
            let gt = tgt.generator_matrix(i).expect("generator in range");
            self.map.mul(&gs) == gt.mul(&self.map)
        })
    }
}

impl Serialize for HomMatrix {
    /// Dense row-major: row `c` lists the coefficients of the image of the
    /// `c`-th source basis vector.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<LaurentPoly>> = self.map.transpose().to_dense();
        let mut st = s.serialize_struct("HomMatrix", 5)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("source_basis", &self.source_basis)?;
        st.serialize_field("target_basis", &self.target_basis)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// `φ_d : x_μ ↦ Σ_{w ∈ Y_μ d Y_λ} T_w = Σ_{e ∈ D_λ ∩ Y_μ d Y_λ} T_e x_λ`,
/// extended `H`-linearly.
pub fn phi_d(mu: &Composition, lambda: &Composition, d: &Permutation) -> Result<HomMatrix> {
    if !is_double_distinguished(mu, d, lambda) {
        return Err(Error::NotDistinguished(format!("{d} for ({mu}, {lambda})")));
    }
    let src = QPermModule::new(mu.clone());
    let tgt = QPermModule::new(lambda.clone());
    let reps: BTreeSet<Permutation> = mu
        .young_subgroup()
        .iter()
        .map(|u| coset_rep_of(&u.compose(d), lambda))
        .collect();
    let image: BTreeMap<usize, LaurentPoly> = reps
        .iter()
        .map(|e| (tgt.index[e], LaurentPoly::one()))
        .collect();
    let cols = src
        .basis
        .iter()
        .map(|c| Ok(tgt.act_t_w(c, &image)?.into_iter().collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomMatrix {
        source: mu.clone(),
        target: lambda.clone(),
        source_basis: src.basis.clone(),
        target_basis: tgt.basis.clone(),
        map: SparseMatrix::from_columns(tgt.dim(), cols),
    })
}

/// `dim Hom(M^μ, M^λ) = |D_{μ,λ}|`; zero when `μ`, `λ` are compositions of
/// different integers.
pub fn hom_dim(mu: &Composition, lambda: &Composition) -> usize {
    double_coset_count(mu, lambda).map(|c| c as usize).unwrap_or(0)
}

/// `Σ_{k,l ≤ min(n,r)} s(r,k) s(r,l) |D_{(n-k,1^k),(n-l,1^l)}|`.
pub fn qpartition_dim(n: usize, r: usize) -> u128 {
    let top = n.min(r);
    let hook = |k| Composition::hook(n, k).expect("k <= n");
    let mut total = 0u128;
    for k in 1..=top {
        for l in 1..=top {
            total += stirling2(r, k) * stirling2(r, l) * hom_dim(&hook(k), &hook(l)) as u128;
        }
    }
    total
}

/// The composition `(n-k, 1^{k-1})` of `n-1`, the `k`-th hook summand after
/// restriction to `S_{n-1}`.
pub fn restricted_hook(n: usize, k: usize) -> Result<Composition> {
    if k == 0 || k > n {
        return Err(Error::InvalidComposition(format!(
            "restricted hook needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut parts = vec![n - k];
    parts.extend(std::iter::repeat(1).take(k - 1));
    Ok(Composition::new(parts))
}

/// `Σ_{k,l ≤ min(n,r+1)} s(r+1,k) s(r+1,l) dim Hom_{S_{n-1}}` between the
/// restricted hook summands.
pub fn half_qpartition_dim(n: usize, r: usize) -> u128 {
    let top = n.min(r + 1);
    let mut total = 0u128;
    for k in 1..=top {
        for l in 1..=top {
            let a = restricted_hook(n, k).expect("k in range");
            let b = restricted_hook(n, l).expect("l in range");
            total += stirling2(r + 1, k) * stirling2(r + 1, l) * hom_dim(&a, &b) as u128;
        }
    }
    total
}

/// Multiplicities of hook summands keyed by `k`; key `0` is the trivial
/// module. Zero multiplicities are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MultiplicityVector {
    pub entries: BTreeMap<usize, u128>,
}

impl MultiplicityVector {
    pub fn trivial() -> Self {
        Self {
            entries: BTreeMap::from([(0, 1)]),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u128)>) -> Self {
        let mut m = Self::default();
        for (k, v) in pairs {
            m.add(k, v);
        }
        m
    }

    pub fn get(&self, k: usize) -> u128 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    fn add(&mut self, k: usize, v: u128) {
        if v > 0 {
            *self.entries.entry(k).or_insert(0) += v;
        }
    }

    /// `Σ_k m_k |D_{(n-k,1^k)}|`.
    pub fn total_dim(&self, n: usize) -> u128 {
        self.entries
            .iter()
            .map(|(&k, &m)| m * crate::symcomb::factorial(n) / crate::symcomb::factorial(n - k))
            .sum()
    }
}

/// `k M^{(n-k,1^k)} ⊕ M^{(n-k-1,1^{k+1})}` per summand, the second term
/// absent when `k = n`.
fn transfer(m: &MultiplicityVector, n: usize) -> MultiplicityVector {
    let mut out = MultiplicityVector::default();
    for (&k, &mult) in &m.entries {
        out.add(k, k as u128 * mult);
        if k < n {
            out.add(k + 1, mult);
        }
    }
    out
}

/// One application of induction after restriction `S_{n-1} ⊂ S_n`.
pub fn indres_step(m: &MultiplicityVector, n: usize) -> MultiplicityVector {
    transfer(m, n)
}

/// Restriction to `S_{n-1}`: key `k` of the result counts copies of
/// `M^{(n-k,1^{k-1})}` over `S_{n-1}` (see [`restricted_hook`]).
pub fn restrict_multiplicities(m: &MultiplicityVector, n: usize) -> MultiplicityVector {
    transfer(m, n)
}

/// `{k: s(r,k)}` for `1 <= k <= min(n,r)`; the trivial module when `r = 0`.
pub fn tensor_multiplicities(n: usize, r: usize) -> MultiplicityVector {
    if r == 0 {
        return MultiplicityVector::trivial();
    }
    MultiplicityVector::from_pairs((1..=n.min(r)).map(|k| (k, stirling2(r, k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcomb::double_coset_reps;
    use crate::hecke::x_lambda;
    use crate::linalg::rank;

    fn hook(n: usize, k: usize) -> Composition {
        Composition::hook(n, k).unwrap()
    }

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    #[test]
    fn trivial_module_scales_by_q() {
        let b = QPermBasisVector::new(Composition::new(vec![3]), Permutation::identity(3)).unwrap();
        for i in 1..3 {
            assert_eq!(qperm_act_gen(i, &b).unwrap(), vec![(b.clone(), q())]);
        }
    }

    #[test]
    fn natural_module_rules() {
        let n = 4;
        let lam = hook(n, 1);
        let x = QPermBasisVector::new(lam.clone(), Permutation::identity(n)).unwrap();
        let s = Permutation::simple(n, n - 1).unwrap();
        let y = QPermBasisVector::new(lam.clone(), s.clone()).unwrap();
        assert_eq!(qperm_act_gen(n - 1, &x).unwrap(), vec![(y.clone(), LaurentPoly::one())]);
        assert_eq!(
            qperm_act_gen(n - 1, &y).unwrap(),
            vec![(x, q()), (y, &q() - &LaurentPoly::one())]
        );
    }

    #[test]
    fn rejects_bad_input() {
        let lam = hook(3, 1);
        assert!(QPermBasisVector::new(lam.clone(), Permutation::new(vec![2, 1, 3]).unwrap()).is_err());
        let b = QPermBasisVector::new(lam, Permutation::identity(3)).unwrap();
        assert!(matches!(qperm_act_gen(3, &b), Err(Error::GeneratorOutOfRange { .. })));
        let mu = hook(3, 1);
        assert!(matches!(
            phi_d(&mu, &mu, &Permutation::new(vec![2, 1, 3]).unwrap()),
            Err(Error::NotDistinguished(_))
        ));
    }

    /// Direct model of `M^λ` inside `H`: `T_d x_λ` computed by multiplication.
    fn embed(module: &QPermModule, v: &BTreeMap<usize, LaurentPoly>) -> HeckeElement {
        let x = x_lambda(module.lambda());
        let mut acc = HeckeElement::zero(module.n());
        for (k, c) in v {
            let t = HeckeElement::t_w(&module.basis()[*k]).mul(&x).unwrap();
            acc = acc.add(&t.scale(c)).unwrap();
        }
        acc
    }

    #[test]
    fn action_matches_multiplication_in_the_algebra() {
        for n in 1..=4 {
            for k in 0..n {
                let m = QPermModule::new(hook(n, k));
                for b in 0..m.dim() {
                    let v = BTreeMap::from([(b, LaurentPoly::one())]);
                    for i in 1..n {
                        let lhs = embed(&m, &m.act_gen(i, &v).unwrap());
                        let rhs = embed(&m, &v).mul_gen_left(i).unwrap();
                        assert_eq!(lhs, rhs, "n={n} k={k} b={b} i={i}");
                    }
                }
            }
        }
        let m = QPermModule::new(Composition::new(vec![1, 0, 2]));
        for b in 0..m.dim() {
            let v = BTreeMap::from([(b, LaurentPoly::one())]);
            for i in 1..3 {
                assert_eq!(embed(&m, &m.act_gen(i, &v).unwrap()), embed(&m, &v).mul_gen_left(i).unwrap());
            }
        }
    }

    #[test]
    fn hecke_relations_on_hooks() {
        let one = LaurentPoly::one();
        for n in 2..=5 {
            for k in 0..=n {
                let m = QPermModule::new(hook(n, k));
                let g: Vec<_> = (1..n).map(|i| m.generator_matrix(i).unwrap()).collect();
                let id = SparseMatrix::<LaurentPoly>::identity(m.dim());
                for a in 0..g.len() {
                    let quad = g[a].scale(&(&q() - &one)).add(&id.scale(&q()));
                    assert_eq!(g[a].mul(&g[a]), quad);
                    if a + 1 < g.len() {
                        assert_eq!(g[a].mul(&g[a + 1]).mul(&g[a]), g[a + 1].mul(&g[a]).mul(&g[a + 1]));
                    }
                    for b in a + 2..g.len() {
                        assert_eq!(g[a].mul(&g[b]), g[b].mul(&g[a]));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_identity_is_identity() {
        for n in 1..=4 {
            for k in 0..=n {
                let lam = hook(n, k);
                let phi = phi_d(&lam, &lam, &Permutation::identity(n)).unwrap();
                assert_eq!(phi.map, SparseMatrix::identity(phi.map.rows()));
            }
        }
    }

    #[test]
    fn phi_from_trivial_is_the_full_sum() {
        let n = 3;
        let mu = Composition::new(vec![n]);
        for k in 0..=n {
            let lam = hook(n, k);
            let phi = phi_d(&mu, &lam, &Permutation::identity(n)).unwrap();
            let col = phi.map.column(0);
            assert_eq!(col.len(), phi.target_basis.len());
            assert!(col.iter().all(|(_, c)| c.is_one()));
        }
    }

    /// The image of `x_μ` under `φ_d`, embedded in `H`, equals the double coset
    /// sum computed from the group directly.
    #[test]
    fn phi_image_is_the_double_coset_sum() {
        for n in 2..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    let (mu, lam) = (hook(n, k), hook(n, l));
                    let tgt = QPermModule::new(lam.clone());
                    for d in double_coset_reps(&mu, &lam).unwrap() {
                        let phi = phi_d(&mu, &lam, &d).unwrap();
                        let image: BTreeMap<usize, LaurentPoly> = phi.map.column(0).iter().cloned().collect();
                        let ymu = mu.young_subgroup();
                        let ylam = lam.young_subgroup();
                        let coset: BTreeSet<Permutation> = ymu
                            .iter()
                            .flat_map(|u| ylam.iter().map(|v| u.compose(&d).compose(v)))
                            .collect();
                        let expected =
                            HeckeElement::from_terms(n, coset.into_iter().map(|w| (w, LaurentPoly::one()))).unwrap();
                        assert_eq!(embed(&tgt, &image), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_equivariant_and_independent_for_hooks() {
        for n in 1..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    let (mu, lam) = (hook(n, k), hook(n, l));
                    let ds = double_coset_reps(&mu, &lam).unwrap();
                    let phis: Vec<HomMatrix> = ds.iter().map(|d| phi_d(&mu, &lam, d).unwrap()).collect();
                    assert!(phis.iter().all(HomMatrix::is_equivariant));
                    // distinct double cosets have disjoint supports in column 0
                    let r = rank(phis.iter().map(|p| {
                        p.map
                            .flatten()
                            .into_iter()
                            .map(|(i, c)| (i, crate::coeff::RationalFunction::from_laurent(c)))
                            .collect::<Vec<_>>()
                    }));
                    assert_eq!(r, ds.len());
                    assert_eq!(hom_dim(&mu, &lam), ds.len());
                }
            }
        }
    }

    #[test]
    fn hom_dims() {
        assert_eq!(hom_dim(&Composition::new(vec![4]), &Composition::new(vec![4])), 1);
        for n in 2..=6 {
            for k in 0..n {
                assert_eq!(hom_dim(&hook(n, k), &hook(n, 1)), k + 1);
            }
        }
        let c = Composition::new(vec![2, 1, 1]);
        assert_eq!(hom_dim(&c, &c), 7);
        assert_eq!(hom_dim(&hook(3, 1), &hook(4, 1)), 0);
    }

    #[test]
    fn qpartition_dims() {
        assert_eq!(qpartition_dim(4, 2), 15);
        assert_eq!(qpartition_dim(2, 2), 8);
        for n in 2..=6 {
            assert_eq!(qpartition_dim(n, 1), 2);
        }
        for r in 1..=4 {
            assert_eq!(qpartition_dim(2 * r, r), crate::symcomb::bell(2 * r));
            assert_eq!(qpartition_dim(2 * r + 1, r), crate::symcomb::bell(2 * r));
        }
    }

    #[test]
    fn half_qpartition_dims() {
        assert_eq!(half_qpartition_dim(5, 2), 52);
        assert_eq!(half_qpartition_dim(3, 1), 5);
        assert_eq!(half_qpartition_dim(2, 1), 4);
        assert_eq!(half_qpartition_dim(2, 2), 16);
        assert_eq!(half_qpartition_dim(1, 3), 1);
        for r in 1..=3 {
            assert_eq!(half_qpartition_dim(2 * r + 1, r), crate::symcomb::bell(2 * r + 1));
        }
    }

    #[test]
    fn multiplicity_transfer() {
        let m1 = indres_step(&MultiplicityVector::trivial(), 5);
        assert_eq!(m1, MultiplicityVector::from_pairs([(1, 1)]));
        assert_eq!(indres_step(&m1, 5), MultiplicityVector::from_pairs([(1, 1), (2, 1)]));
        for r in 1..=12 {
            let mut m = MultiplicityVector::trivial();
            for _ in 0..r {
                m = indres_step(&m, r);
            }
            assert_eq!(m, tensor_multiplicities(r, r));
            let res = restrict_multiplicities(&m, r + 1);
            assert_eq!(res, MultiplicityVector::from_pairs((1..=r + 1).map(|k| (k, stirling2(r + 1, k)))));
        }
        // truncation at k = n
        let m = tensor_multiplicities(2, 2);
        assert_eq!(restrict_multiplicities(&m, 2), MultiplicityVector::from_pairs([(1, 1), (2, 3)]));
    }

    #[test]
    fn truncated_multiplicities_count_tensor_dimension() {
        for n in 1..=6 {
            let mut m = MultiplicityVector::trivial();
            for r in 1..=6 {
                m = indres_step(&m, n);
                assert_eq!(m, tensor_multiplicities(n, r));
                assert_eq!(m.total_dim(n), (n as u128).pow(r as u32));
            }
        }
    }

    #[test]
    fn hom_matrix_json_is_dense_row_major() {
        let lam = hook(2, 1);
        let phi = phi_d(&lam, &lam, &Permutation::identity(2)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&phi).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert_eq!(v["source_basis"], serde_json::json!([[1, 2], [2, 1]]));
    }
}
