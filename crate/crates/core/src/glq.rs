//! Dimension polynomials on the general linear group side: Gaussian
//! binomials and the indices `[G : P_λ]` of parabolic subgroups.

use crate::coeff::LaurentPoly;
use crate::symcomb::{stirling2, Composition};

/// `[m]_q = 1 + q + ... + q^{m-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QInteger(pub LaurentPoly);

impl QInteger {
    pub fn new(m: usize) -> Self {
        Self(LaurentPoly::from_terms((0..m as i32).map(|e| (e, crate::coeff::int(1)))))
    }
}

/// `[m]_q!`.
pub fn q_factorial(m: usize) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, k| &acc * &QInteger::new(k).0)
}

/// `[m choose k]_q` by `[m,k] = [m-1,k-1] + q^k [m-1,k]`.
pub fn q_binomial(m: usize, k: usize) -> LaurentPoly {
    if k > m {
        return LaurentPoly::zero();
    }
    let mut row = vec![LaurentPoly::one()];
    for i in 1..=m {
        let mut next = vec![LaurentPoly::zero(); i + 1];
        for j in 0..=i {
            let mut v = LaurentPoly::zero();
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < i {
                v += &row[j].shift(j as i32);
            }
            next[j] = v;
        }
        row = next;
    }
    row.swap_remove(k)
}

/// `[n]_q! / ∏ [λ_i]_q!` as a product of Gaussian binomials.
pub fn gaussian_multinomial(lambda: &Composition) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut total = 0;
    for &p in lambda.parts() {
        total += p;
        acc = &acc * &q_binomial(total, p);
    }
    acc
}

/// `Σ_{k ≤ min(n,r)} s(r,k) [G : P_{(n-k,1^k)}]`.
pub fn tq_dimension(n: usize, r: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for k in 1..=n.min(r) {
        let hook = Composition::hook(n, k).expect("k <= n");
        let s = crate::coeff::Rational::from_integer(stirling2(r, k).into());
        acc += &gaussian_multinomial(&hook).scale(&s);
    }
    acc
}
