//! Sparse bivariate polynomials over the rationals, weighted gradings and
//! the exact linear algebra used by every graded solve in the crate.

mod linalg;
mod parse;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linalg::{rank, solve_linear_exact, LinearSolution, Matrix};
pub use parse::{parse_poly, parse_rational};
pub use sparse::{Echelon, SparseVec};

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer literal as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The monomial `x^a y^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn weighted_degree(&self, w: WeightSystem) -> i64 {
        w.w1 as i64 * self.a as i64 + w.w2 as i64 * self.b as i64
    }

}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("x".to_string()),
            a => parts.push(format!("x^{a}")),
        }
        match self.b {
            0 => {}
            1 => parts.push("y".to_string()),
            b => parts.push(format!("y^{b}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Positive weights of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    pub w1: u32,
    pub w2: u32,
}

impl WeightSystem {
    pub fn new(w1: i64, w2: i64) -> Result<Self> {
        if w1 <= 0 || w2 <= 0 || w1 > u32::MAX as i64 || w2 > u32::MAX as i64 {
            return Err(Error::InvalidWeights(w1, w2));
        }
        Ok(WeightSystem { w1: w1 as u32, w2: w2 as u32 })
    }

    pub fn max(&self) -> i64 {
        self.w1.max(self.w2) as i64
    }

    pub fn sum(&self) -> i64 {
        self.w1 as i64 + self.w2 as i64
    }
}

/// Outcome of asking for the weighted degree of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(i64),
    NotHomogeneous,
}

impl Homogeneity {
    /// True when compatible with degree `d` (zero is compatible with all).
    pub fn admits(&self, d: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Degree(e) => *e == d,
            Homogeneity::NotHomogeneous => false,
        }
    }
}

/// Sparse polynomial: a map from monomials to nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(a: u32, b: u32) -> Self {
        Poly::term(Monomial::new(a, b), Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (*k * m, v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_x(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.a > 0)
                .map(|(m, c)| (Monomial::new(m.a - 1, m.b), c * rat(m.a as i64))),
        )
    }

    pub fn partial_y(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.b > 0)
                .map(|(m, c)| (Monomial::new(m.a, m.b - 1), c * rat(m.b as i64))),
        )
    }

    pub fn weighted_degree(&self, w: WeightSystem) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::NotHomogeneous,
        }
    }

    /// Splits into weight-homogeneous pieces keyed by degree; zero pieces are omitted.
    pub fn homogeneous_components(&self, w: WeightSystem) -> BTreeMap<i64, Poly> {
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(w)).or_default().terms.insert(*m, c.clone());
        }
        out
    }

    /// The degree-`d` component.
    pub fn component(&self, w: WeightSystem, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of weighted degree above `max`.
    pub fn truncate(&self, w: WeightSystem, max: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) <= max)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self, w: WeightSystem) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn min_degree(&self, w: WeightSystem) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).min()
    }

    /// Rendering in the input grammar, terms in descending `(a, b)` order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = *m != Monomial::ONE;
            if !abs.is_one() || !mono {
                out.push_str(&abs.to_string());
                if mono {
                    out.push('*');
                }
            }
            if mono {
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, e) in &rhs.terms {
                out.add_term(*m * *n, c * e);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// All monomials of one weighted degree, in ascending `(a, b)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: i64,
    pub monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.binary_search(&m).ok()
    }

    /// Coordinates of `p`; fails if `p` has a term outside this degree.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            let i = self.index_of(*m).ok_or_else(|| {
                Error::Invariant(format!("term {m} is not of weighted degree {}", self.degree))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_from(&self, coords: &[Rational]) -> Poly {
        Poly::from_terms(self.monomials.iter().copied().zip(coords.iter().cloned()))
    }
}

/// Exhaustive list of monomials `x^a y^b` with `w1 a + w2 b = d`.
pub fn monomials_of_degree(w: WeightSystem, d: i64) -> GradedBasis {
    let mut monomials = Vec::new();
    if d >= 0 {
        let (w1, w2) = (w.w1 as i64, w.w2 as i64);
        for a in 0..=d / w1 {
            let rest = d - a * w1;
            if rest % w2 == 0 {
                monomials.push(Monomial::new(a as u32, (rest / w2) as u32));
            }
        }
    }
    GradedBasis { degree: d, monomials }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn partials_match_hand_derivatives() {
        assert_eq!(p("x^3+y^4").partial_x(), p("3*x^2"));
        assert_eq!(p("x^2*y+y^3").partial_y(), p("x^2+3*y^2"));
        assert_eq!(p("x^2*y-y^3").partial_y(), p("x^2-3*y^2"));
        assert!(p("7/3").partial_x().is_zero());
    }

    #[test]
    fn weighted_degree_is_tri_state() {
        let e8 = WeightSystem::new(5, 3).unwrap();
        assert_eq!(p("x^3+y^5").weighted_degree(e8), Homogeneity::Degree(15));
        let flat = WeightSystem::new(1, 1).unwrap();
        assert_eq!(p("x^2*y+y^3").weighted_degree(flat), Homogeneity::Degree(3));
        assert_eq!(p("x+y^2").weighted_degree(flat), Homogeneity::NotHomogeneous);
        assert_eq!(Poly::zero().weighted_degree(flat), Homogeneity::Zero);
    }

    #[test]
    fn e7_product_splits_into_two_components() {
        let w = WeightSystem::new(3, 2).unwrap();
        let f = p("x^3+x*y^3");
        let pi = &f * &(Poly::one() + p("y^2"));
        let comps = pi.homogeneous_components(w);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&9], f);
        assert_eq!(comps[&13], p("x^3*y^2+x*y^5"));
        assert!(Poly::zero().homogeneous_components(w).is_empty());
    }

    #[test]
    fn graded_pieces() {
        let e6 = WeightSystem::new(4, 3).unwrap();
        assert!(monomials_of_degree(e6, 5).is_empty());
        let flat = WeightSystem::new(1, 1).unwrap();
        let one = monomials_of_degree(flat, 1);
        assert_eq!(one.monomials, vec![Monomial::new(0, 1), Monomial::new(1, 0)]);
        assert_eq!(monomials_of_degree(flat, 2).len(), 3);
        assert!(monomials_of_degree(flat, -1).is_empty());
    }

    #[test]
    fn coordinates_reject_foreign_terms() {
        let flat = WeightSystem::new(1, 1).unwrap();
        let b = monomials_of_degree(flat, 2);
        let v = b.coordinates(&p("x*y - 2*y^2")).unwrap();
        assert_eq!(b.poly_from(&v), p("x*y - 2*y^2"));
        assert!(b.coordinates(&p("x")).is_err());
    }

    #[test]
    fn render_is_readable() {
        assert_eq!(p("y^5 + x^2").render(), "x^2 + y^5");
        assert_eq!(p("-3/2*x*y^3 + 1 - y").render(), "-3/2*x*y^3 - y + 1");
        assert_eq!(Poly::zero().render(), "0");
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(WeightSystem::new(0, 1).is_err());
        assert!(WeightSystem::new(2, -1).is_err());
    }
}
