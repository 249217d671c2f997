//! Exact coefficients: rationals, Laurent polynomials in `q` over the
//! rationals, and their field of fractions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"-2"` or `"7/5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A finitely supported map from integer exponents of `q` to rationals.
///
/// Stored canonically: the map never holds a zero coefficient, so structural
/// equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(exp, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn monomial(exp: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents and pruning zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at `q = q0`; `q0` must be a unit.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_signed(q0, *e);
        }
        Ok(acc)
    }

    /// True when every exponent is nonnegative and every coefficient is a
    /// nonnegative integer.
    pub fn has_natural_coefficients(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| *e >= 0 && c.is_integer() && !c.is_negative())
    }
}

fn pow_signed(x: &Rational, e: i32) -> Rational {
    let mut acc = Rational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `q^2 - 1`, `2q - 1`, `(3/2)q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else if abs.is_integer() {
                write!(f, "{}{mono}", abs.numer())?;
            } else {
                write!(f, "({}){mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

// JSON: [[exponent, "numerator", "denominator"], ...] sorted by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(i32, String, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer().to_string(), c.denom().to_string()))
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(i32, String, String)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, n, den) in triples {
            let n: BigInt = n.parse().map_err(D::Error::custom)?;
            let den: BigInt = den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(e, Rational::new(n, den));
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q (ascending coefficients). Only used to
// reduce rational functions; exponents here are always >= 0.

type Dense = Vec<Rational>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn dense_divrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &c * bc;
        }
        quo[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quo, rem)
}

fn dense_gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in &mut x {
            *c /= &l;
        }
    }
    x
}

/// Splits `p = q^shift * dense(q)` with `dense(0) != 0`.
fn to_dense(p: &LaurentPoly) -> (i32, Dense) {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(0);
    let mut d = vec![Rational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        d[(e - lo) as usize] = c.clone();
    }
    (lo, d)
}

fn from_dense(shift: i32, d: &Dense) -> LaurentPoly {
    LaurentPoly::from_terms(d.iter().enumerate().map(|(i, c)| (i as i32 + shift, c.clone())))
}

/// An element of the fraction field Q(q).
///
/// Canonical form: the denominator is a monic polynomial with nonzero
/// constant term, coprime to the numerator; every power of the unit `q`
/// lives in the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (ns, nd) = to_dense(&num);
        let (ds, dd) = to_dense(&den);
        let g = dense_gcd(&nd, &dd);
        let (mut nq, _) = dense_divrem(&nd, &g);
        let (mut dq, _) = dense_divrem(&dd, &g);
        let lead = dq.last().unwrap().clone();
        for c in nq.iter_mut().chain(dq.iter_mut()) {
            *c /= &lead;
        }
        Self {
            num: from_dense(ns - ds, &nq),
            den: from_dense(0, &dq),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(&self.num * &o.num);
        }
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(Error::Parse(format!(
                "pole of {self} at q = {}",
                format_rational(q0)
            )));
        }
        Ok(self.num.eval(q0)? / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// An exact rational that stays a reduced `i64` fraction while it fits and
/// spills to `BigRational` otherwise. The small form is used whenever the
/// value fits, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FastRational {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small(i64, i64),
    Big(Box<Rational>),
}

impl FastRational {
    pub const ZERO: Self = Self::Small(0, 1);
    pub const ONE: Self = Self::Small(1, 1);

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num_integer::Integer::gcd(&num, &den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            (n, d) = (-n, -d);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Self::Small(n, d),
            _ => Self::Big(Box::new(Rational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: Rational) -> Self {
        use num_traits::ToPrimitive;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Self::Small(n, d),
            _ => Self::Big(Box::new(r)),
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            Self::Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Self::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Small(0, _))
    }

    fn as_big(&self) -> std::borrow::Cow<'_, Rational> {
        match self {
            Self::Small(..) => std::borrow::Cow::Owned(self.to_rational()),
            Self::Big(r) => std::borrow::Cow::Borrowed(r),
        }
    }

    fn binary(
        &self,
        o: &Self,
        small: impl Fn(i128, i128, i128, i128) -> (i128, i128),
        int: impl Fn(&BigInt, &BigInt) -> BigInt,
        big: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Self {
        match (self, o) {
            // |n d'| < 2^126, so sums of two such products fit in i128
            (Self::Small(a, b), Self::Small(c, d)) => {
                let (n, d) = small(*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(n, d)
            }
            _ => {
                let (x, y) = (self.as_big(), o.as_big());
                // integers need no gcd
                if x.is_integer() && y.is_integer() {
                    Self::from_big(Rational::from_integer(int(x.numer(), y.numer())))
                } else {
                    Self::from_big(big(&x, &y))
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.binary(o, |a, b, c, d| (a * d + c * b, b * d), |x, y| x + y, |x, y| x + y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.binary(o, |a, b, c, d| (a * d - c * b, b * d), |x, y| x - y, |x, y| x - y)
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Self::Small(1, 1), x) | (x, Self::Small(1, 1)) => x.clone(),
            (Self::Small(-1, 1), x) | (x, Self::Small(-1, 1)) => x.neg(),
            (Self::Small(0, _), _) | (_, Self::Small(0, _)) => Self::ZERO,
            _ => self.binary(o, |a, b, c, d| (a * c, b * d), |x, y| x * y, |x, y| x * y),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Small(n, d) => Self::from_i128(-(*n as i128), *d as i128),
            Self::Big(r) => Self::from_big(-(**r).clone()),
        }
    }

    /// Callers never pass zero.
    pub fn inv(&self) -> Self {
        match self {
            Self::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Self::Big(r) => Self::from_big(r.recip()),
        }
    }
}

impl From<&Rational> for FastRational {
    fn from(r: &Rational) -> Self {
        Self::from_big(r.clone())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn fast_rationals_agree_with_big_ones() {
        let big = |x: i64| int(x) * int(x) * int(x) * int(1 << 40);
        let samples = [rat(3, 7), rat(-5, 2), int(0), int(i64::MAX), int(i64::MIN), rat(1, i64::MAX), big(977), -big(3)];
        for a in &samples {
            let fa = FastRational::from(a);
            assert_eq!(fa.to_rational(), *a);
            assert_eq!(fa.neg().to_rational(), -a);
            if !a.is_zero() {
                assert_eq!(fa.inv().to_rational(), a.recip());
            }
            for b in &samples {
                let fb = FastRational::from(b);
                assert_eq!(fa.add(&fb).to_rational(), a + b);
                assert_eq!(fa.sub(&fb).to_rational(), a - b);
                assert_eq!(fa.mul(&fb).to_rational(), a * b);
                // canonical form: equal values compare equal
                assert_eq!(fa.add(&fb), FastRational::from(&(a + b)));
            }
        }
    }
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }
    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::from_int(v)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&q() + &(&q() - &c(1)), &q().scale(&int(2)) - &c(1));
        let p = &q().pow(3) - &c(5);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        let qinv = LaurentPoly::q_pow(-1);
        assert_eq!(&(&qinv - &c(1)) + &c(1), qinv);
    }

    #[test]
    fn multiplication_examples() {
        assert!((&q() * &LaurentPoly::q_pow(-1)).is_one());
        assert_eq!(&(&q() - &c(1)) * &(&q() + &c(1)), &q().pow(2) - &c(1));
        // T_s ((q^-1 - 1) + q^-1 T_s) with T_s^2 = q + (q-1) T_s:
        // constant part q^-1 * q, T_s part (q^-1 - 1) + q^-1 (q - 1).
        let a = &LaurentPoly::q_pow(-1) - &c(1);
        let b = LaurentPoly::q_pow(-1);
        assert!((&b * &q()).is_one());
        assert!((&a + &(&b * &(&q() - &c(1)))).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!((&q().pow(2) - &c(1)).eval(&int(1)).unwrap(), int(0));
        assert_eq!((&q() + &(&q() - &c(1))).eval(&int(1)).unwrap(), int(1));
        assert_eq!(LaurentPoly::q_pow(-1).eval(&int(2)).unwrap(), rat(1, 2));
        assert_eq!(q().eval(&int(0)), Err(Error::ZeroSpecialization));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!((&q().pow(2) - &c(1)).to_string(), "q^2 - 1");
        assert_eq!((&q().scale(&int(2)) - &c(1)).to_string(), "2q - 1");
        assert_eq!(LaurentPoly::q_pow(-1).to_string(), "q^-1");
        assert_eq!(LaurentPoly::monomial(1, rat(-3, 2)).to_string(), "-(3/2)q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_encoding() {
        let p = &LaurentPoly::monomial(-1, rat(3, 2)) + &c(-2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"3","2"],[0,"-2","1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        // non-canonical input is normalized
        let messy: LaurentPoly =
            serde_json::from_str(r#"[[2,"2","4"],[0,"0","7"],[2,"1","2"]]"#).unwrap();
        assert_eq!(messy, q().pow(2));
        assert!(serde_json::from_str::<LaurentPoly>(r#"[[0,"1","0"]]"#).is_err());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("7/5").unwrap(), rat(7, 5));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_function_normal_form() {
        // (q^2 - 1) / (q - 1) = q + 1
        let f = RationalFunction::new(&q().pow(2) - &c(1), &q() - &c(1));
        assert_eq!(f, RationalFunction::from_laurent(&q() + &c(1)));
        // q / (2q^2) = (1/2) q^-1
        let g = RationalFunction::new(q(), q().pow(2).scale(&int(2)));
        assert_eq!(g, RationalFunction::from_laurent(LaurentPoly::monomial(-1, rat(1, 2))));
        let h = RationalFunction::new(c(1), &q() + &c(1));
        assert_eq!(h.mul(&h.inv()), RationalFunction::one());
        assert_eq!(h.sub(&h), RationalFunction::zero());
        assert_eq!(h.eval(&int(1)).unwrap(), rat(1, 2));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i32..4, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), n in -4i64..5, d in 1i64..4) {
            prop_assume!(n != 0);
            let q0 = rat(n, d);
            prop_assert_eq!((&a * &b).eval(&q0).unwrap(), a.eval(&q0).unwrap() * b.eval(&q0).unwrap());
            prop_assert_eq!((&a + &b).eval(&q0).unwrap(), a.eval(&q0).unwrap() + b.eval(&q0).unwrap());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), a);
        }

        #[test]
        fn rational_function_field_ops(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RationalFunction::new(a.clone(), b.clone());
            let y = RationalFunction::new(b.clone(), c.clone());
            // (a/b)(b/c) = a/c
            prop_assert_eq!(x.mul(&y), RationalFunction::new(a, c));
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }
    }
}
