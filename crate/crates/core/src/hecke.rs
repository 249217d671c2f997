//! The Iwahori-Hecke algebra `H_q(S_n)` in its standard basis `{T_w}`,
//! with the quadratic relation `T_i^2 = q + (q-1) T_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::symcomb::{length, reduced_word, Composition, Permutation};

/// A finitely supported combination `Σ c_w T_w` over `S_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::t_w(&Permutation::identity(n))
    }

    /// The basis element `T_w`.
    pub fn t_w(w: &Permutation) -> Self {
        Self::zero(w.degree()).with_term(w.clone(), LaurentPoly::one())
    }

    /// The generator `T_i = T_{s_i}`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::t_w(&Permutation::simple(n, i)?))
    }

    /// `T_{t_1} T_{t_2} ... T_{t_k}` for an arbitrary (not necessarily
    /// reduced) word.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut h = Self::one(n);
        for &i in word.iter().rev() {
            h = h.mul_gen_left(i)?;
        }
        Ok(h)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn with_term(mut self, w: Permutation, c: LaurentPoly) -> Self {
        self.add_term(w, &c);
        self
    }

    fn add_term(&mut self, w: Permutation, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Builds `Σ c_w T_w`; all permutations must have degree `n`.
    pub fn from_terms<I: IntoIterator<Item = (Permutation, LaurentPoly)>>(n: usize, it: I) -> Result<Self> {
        let mut h = Self::zero(n);
        for (w, c) in it {
            if w.degree() != n {
                return Err(Error::RankMismatch { left: n, right: w.degree() });
            }
            h.add_term(w, &c);
        }
        Ok(h)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// `T_i h`, term by term:
    /// `T_s T_w = T_{sw}` if `l(sw) = l(w) + 1`, else `q T_{sw} + (q-1) T_w`.
    pub fn mul_gen_left(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let sw = w.left_mul_simple(i);
            if w.has_left_descent(i) {
                out.add_term(sw, &(c * &q));
                out.add_term(w.clone(), &(c * &q_minus_one));
            } else {
                out.add_term(sw, c);
            }
        }
        Ok(out)
    }

    /// `h T_i`, the mirror rule on right descents.
    pub fn mul_gen_right(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.right_mul_simple(i);
            if w.apply(i) > w.apply(i + 1) {
                out.add_term(ws, &(c * &q));
                out.add_term(w.clone(), &(c * &q_minus_one));
            } else {
                out.add_term(ws, c);
            }
        }
        Ok(out)
    }

    /// Product `self * other`: each `T_w` of the left factor is unrolled
    /// along a reduced word and applied generator by generator.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let mut acc = other.clone();
            for &i in reduced_word(w).iter().rev() {
                acc = acc.mul_gen_left(i)?;
            }
            for (v, d) in &acc.terms {
                out.add_term(v.clone(), &(c * d));
            }
        }
        Ok(out)
    }

    /// Specialization of every coefficient.
    pub fn eval(&self, q0: &crate::coeff::Rational) -> Result<BTreeMap<Permutation, crate::coeff::Rational>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.eval(q0)?;
            if v != num_traits::Zero::zero() {
                out.insert(w.clone(), v);
            }
        }
        Ok(out)
    }
}

/// `T_w^{-1} = T_{t_k}^{-1} ... T_{t_1}^{-1}` with
/// `T_s^{-1} = (q^{-1} - 1) + q^{-1} T_s`.
pub fn inverse_t_w(w: &Permutation) -> HeckeElement {
    let n = w.degree();
    let qinv = LaurentPoly::q_pow(-1);
    let constant = &qinv - &LaurentPoly::one();
    let mut acc = HeckeElement::one(n);
    // acc = T_{t_k}^{-1} ... T_{t_1}^{-1}: build from the right, i.e. multiply
    // successive inverses on the left starting with T_{t_1}^{-1}.
    for &i in &reduced_word(w) {
        let t_acc = acc.mul_gen_left(i).expect("generator from a reduced word");
        acc = acc.scale(&constant).add(&t_acc.scale(&qinv)).expect("same rank");
    }
    acc
}

/// `x_λ = Σ_{w ∈ Y_λ} T_w`.
pub fn x_lambda(lambda: &Composition) -> HeckeElement {
    let n = lambda.n();
    HeckeElement::from_terms(
        n,
        lambda.young_subgroup().into_iter().map(|w| (w, LaurentPoly::one())),
    )
    .expect("Young subgroup elements have degree n")
}

/// `y_λ = Σ_{w ∈ Y_λ} (-q)^{-l(w)} T_w`.
pub fn y_lambda(lambda: &Composition) -> HeckeElement {
    let n = lambda.n();
    HeckeElement::from_terms(
        n,
        lambda.young_subgroup().into_iter().map(|w| {
            let l = length(&w) as i32;
            let sign = if l % 2 == 0 { 1 } else { -1 };
            (w, LaurentPoly::q_pow(-l).scale(&crate::coeff::int(sign)))
        }),
    )
    .expect("Young subgroup elements have degree n")
}

/// Poincaré polynomial `Σ_{w ∈ Y_λ} q^{l(w)}`.
pub fn poincare_polynomial(lambda: &Composition) -> LaurentPoly {
    LaurentPoly::from_terms(
        lambda
            .young_subgroup()
            .iter()
            .map(|w| (length(w) as i32, crate::coeff::int(1))),
    )
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·T{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    perm: Permutation,
    coeff: LaurentPoly,
}

impl Serialize for HeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(w, c)| TermJson { perm: w.clone(), coeff: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

impl HeckeElement {
    /// Reads the JSON array form; `n` is needed for the empty (zero) element.
    pub fn from_json(n: usize, s: &str) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_terms(n, terms.into_iter().map(|t| (t.perm, t.coeff)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::symcomb::all_permutations;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }
    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::from_int(v)
    }
    fn t(n: usize, i: usize) -> HeckeElement {
        HeckeElement::generator(n, i).unwrap()
    }
    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn basis_elements() {
        assert_eq!(HeckeElement::t_w(&Permutation::identity(3)), HeckeElement::one(3));
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(HeckeElement::t_w(&s2), t(3, 2));
        let w = Permutation::from_word(3, &[1, 2]).unwrap();
        assert_eq!(t(3, 1).mul(&t(3, 2)).unwrap(), HeckeElement::t_w(&w));
    }

    #[test]
    fn quadratic_relation() {
        let lhs = t(2, 1).mul_gen_left(1).unwrap();
        let rhs = HeckeElement::one(2).scale(&q()).add(&t(2, 1).scale(&(&q() - &c(1)))).unwrap();
        assert_eq!(lhs, rhs);
        assert!(t(2, 1).mul_gen_left(2).is_err());
    }

    #[test]
    fn defining_relations_up_to_rank_five() {
        for n in 2..=5 {
            for i in 1..n {
                let ti = t(n, i);
                let sq = ti.mul(&ti).unwrap();
                let expect = HeckeElement::one(n).scale(&q()).add(&ti.scale(&(&q() - &c(1)))).unwrap();
                assert_eq!(sq, expect);
                for j in 1..n {
                    if i.abs_diff(j) >= 2 {
                        assert_eq!(ti.mul(&t(n, j)).unwrap(), t(n, j).mul(&ti).unwrap());
                    }
                }
                if i + 1 < n {
                    let a = HeckeElement::from_word(n, &[i, i + 1, i]).unwrap();
                    let b = HeckeElement::from_word(n, &[i + 1, i, i + 1]).unwrap();
                    assert_eq!(a, b);
                    let w = Permutation::from_word(n, &[i, i + 1, i]).unwrap();
                    assert_eq!(a, HeckeElement::t_w(&w));
                }
            }
        }
    }

    #[test]
    fn braid_instance_in_rank_three() {
        let aba = t(3, 1).mul(&t(3, 2)).unwrap().mul(&t(3, 1)).unwrap();
        let bab = t(3, 2).mul(&t(3, 1)).unwrap().mul(&t(3, 2)).unwrap();
        assert_eq!(aba, bab);
        // multiplied by a generator the two sides stay equal
        assert_eq!(t(3, 1).mul(&aba).unwrap(), t(3, 1).mul(&bab).unwrap());
    }

    #[test]
    fn right_multiplication_agrees_with_general_product() {
        for w in all_permutations(4) {
            for i in 1..4 {
                let tw = HeckeElement::t_w(&w);
                assert_eq!(tw.mul_gen_right(i).unwrap(), tw.mul(&t(4, i)).unwrap());
            }
        }
    }

    #[test]
    fn generator_inverse() {
        let inv = inverse_t_w(&Permutation::simple(2, 1).unwrap());
        let expect = HeckeElement::one(2)
            .scale(&(&LaurentPoly::q_pow(-1) - &c(1)))
            .add(&t(2, 1).scale(&LaurentPoly::q_pow(-1)))
            .unwrap();
        assert_eq!(inv, expect);
        assert_eq!(inverse_t_w(&Permutation::identity(3)), HeckeElement::one(3));
    }

    #[test]
    fn inverses_in_s4() {
        for w in all_permutations(4) {
            let tw = HeckeElement::t_w(&w);
            let inv = inverse_t_w(&w);
            assert_eq!(tw.mul(&inv).unwrap(), HeckeElement::one(4), "{w}");
            assert_eq!(inv.mul(&tw).unwrap(), HeckeElement::one(4), "{w}");
        }
    }

    #[test]
    fn t_w_independent_of_reduced_word() {
        // every reduced word of the longest element of S_4
        let w0 = Permutation::new(vec![4, 3, 2, 1]).unwrap();
        let mut words = vec![vec![]];
        for _ in 0..6 {
            words = words
                .into_iter()
                .flat_map(|wd: Vec<usize>| {
                    (1..4).map(move |i| {
                        let mut v = wd.clone();
                        v.push(i);
                        v
                    })
                })
                .filter(|wd| length(&Permutation::from_word(4, wd).unwrap()) == wd.len())
                .collect();
        }
        let reduced: Vec<_> = words
            .into_iter()
            .filter(|wd| Permutation::from_word(4, wd).unwrap() == w0)
            .collect();
        assert_eq!(reduced.len(), 16);
        for wd in &reduced {
            assert_eq!(HeckeElement::from_word(4, wd).unwrap(), HeckeElement::t_w(&w0));
        }
    }

    #[test]
    fn x_lambda_examples() {
        assert_eq!(x_lambda(&comp(&[1, 1, 1])), HeckeElement::one(3));
        assert_eq!(x_lambda(&comp(&[2])), HeckeElement::one(2).add(&t(2, 1)).unwrap());
        assert_eq!(x_lambda(&comp(&[2, 1])), HeckeElement::one(3).add(&t(3, 1)).unwrap());
    }

    #[test]
    fn x_lambda_squares_to_poincare_multiple() {
        for n in 1..=4 {
            let lam = comp(&[n]);
            let x = x_lambda(&lam);
            assert_eq!(x.mul(&x).unwrap(), x.scale(&poincare_polynomial(&lam)));
        }
        // P_3(q) = 1 + 2q + 2q^2 + q^3
        assert_eq!(
            poincare_polynomial(&comp(&[3])),
            LaurentPoly::from_terms([(0, int(1)), (1, int(2)), (2, int(2)), (3, int(1))])
        );
    }

    #[test]
    fn x_and_y_are_eigenvectors() {
        for lam in [comp(&[3]), comp(&[2, 2]), comp(&[1, 3]), comp(&[2, 0, 1]), comp(&[4])] {
            let x = x_lambda(&lam);
            let y = y_lambda(&lam);
            for w in lam.young_subgroup() {
                let tw = HeckeElement::t_w(&w);
                let ql = LaurentPoly::q_pow(length(&w) as i32);
                assert_eq!(tw.mul(&x).unwrap(), x.scale(&ql));
                assert_eq!(x.mul(&tw).unwrap(), x.scale(&ql));
                let sign = c(if length(&w) % 2 == 0 { 1 } else { -1 });
                assert_eq!(tw.mul(&y).unwrap(), y.scale(&sign));
                assert_eq!(y.mul(&tw).unwrap(), y.scale(&sign));
            }
        }
    }

    #[test]
    fn y_lambda_examples() {
        assert_eq!(y_lambda(&comp(&[1, 1])), HeckeElement::one(2));
        let y = y_lambda(&comp(&[2]));
        let expect = HeckeElement::one(2).sub(&t(2, 1).scale(&LaurentPoly::q_pow(-1))).unwrap();
        assert_eq!(y, expect);
        assert_eq!(t(2, 1).mul(&y).unwrap(), y.scale(&c(-1)));
    }

    #[test]
    fn rank_mismatch() {
        assert_eq!(
            HeckeElement::one(2).mul(&HeckeElement::one(3)),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn json_shape() {
        let h = t(2, 1).scale(&q());
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"[{"perm":[2,1],"coeff":[[1,"1","1"]]}]"#);
        assert_eq!(HeckeElement::from_json(2, &s).unwrap(), h);
        assert_eq!(HeckeElement::from_json(2, "[]").unwrap(), HeckeElement::zero(2));
    }

    fn arb_element(n: usize) -> impl Strategy<Value = HeckeElement> {
        let perms = all_permutations(n);
        prop::collection::vec((0..perms.len(), -2i32..3, -3i64..4), 0..=4).prop_map(move |ts| {
            HeckeElement::from_terms(
                n,
                ts.into_iter()
                    .map(|(k, e, v)| (perms[k].clone(), LaurentPoly::monomial(e, int(v)))),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn multiplication_is_associative(a in arb_element(4), b in arb_element(4), c in arb_element(4)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn multiplication_distributes(a in arb_element(3), b in arb_element(3), c in arb_element(3)) {
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        }
    }
}
