//! The Poisson structure `f(1+h) dx^dy`, its canonical cohomology bases and
//! the reduction of cocycles to coordinates in those bases.

mod jet;
mod normal_form;

use serde_json::{json, Value};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::milnor::{
    homogeneous_degree, milnor_basis, milnor_basis_override, p_space, MilnorBasis, PSpaceBasis,
};
use crate::polyring::{GradedBasis, Homogeneity, Monomial, Poly, Rational, WeightSystem};
use crate::polyvector::{euler, hamiltonian, Bivector, VectorField};

pub use jet::{is_coboundary_hp2, normalize_hp1, JetSolver};
pub use normal_form::{
    lemma31, normalize_hp2_pi, normalize_hp2_pi0, normalize_hp2_traced, ComponentTrace,
    Lemma31Variant, NormalizationTrace, Rule,
};

/// `Pi = f (1 + h) dx^dy` with its Milnor basis and the space `P_{d-w1-w2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pub f: Poly,
    pub h: Poly,
    pub w: WeightSystem,
    pub d: i64,
    pub milnor: MilnorBasis,
    pub pspace: PSpaceBasis,
}

/// Validates `(f, h, w)` and computes the greedy Milnor basis.
pub fn make_structure(f: Poly, h: Poly, w: WeightSystem) -> Result<PoissonStructure> {
    make_structure_with_basis(f, h, w, None)
}

/// As [`make_structure`], honouring an explicit Milnor basis when given.
pub fn make_structure_with_basis(
    f: Poly,
    h: Poly,
    w: WeightSystem,
    basis: Option<Vec<Monomial>>,
) -> Result<PoissonStructure> {
    let d = homogeneous_degree(&f, w, "f")?;
    if d <= 0 {
        return Err(Error::NonPositiveDegree(d));
    }
    let s = d - w.sum();
    match h.weighted_degree(w) {
        Homogeneity::Zero => {}
        Homogeneity::NotHomogeneous => {
            return Err(Error::NotHomogeneous { what: "h".into(), w1: w.w1, w2: w.w2 })
        }
        Homogeneity::Degree(e) => {
            if s <= 0 {
                return Err(Error::HNotAllowed(s));
            }
            if e != s {
                return Err(Error::WrongHDegree { expected: s, found: e });
            }
        }
    }
    let milnor = match basis {
        Some(list) => milnor_basis_override(&f, w, list)?,
        None => milnor_basis(&f, w)?,
    };
    let pspace = p_space(d, w);
    Ok(PoissonStructure { f, h, w, d, milnor, pspace })
}

impl PoissonStructure {
    /// The degree shift `d - w1 - w2` of the differential.
    pub fn s(&self) -> i64 {
        self.d - self.w.sum()
    }

    pub fn c(&self) -> usize {
        self.milnor.c()
    }

    pub fn r(&self) -> usize {
        self.pspace.r()
    }

    pub fn one_plus_h(&self) -> Poly {
        &Poly::one() + &self.h
    }

    /// The coefficient `f (1 + h)` of `Pi`.
    pub fn pi(&self) -> Poly {
        &self.f * &self.one_plus_h()
    }

    pub fn pi_bivector(&self) -> Bivector {
        Bivector::new(self.pi())
    }

    /// `u = (1 + h) H_f`.
    pub fn u_rep(&self) -> VectorField {
        hamiltonian(&self.f).times(&self.one_plus_h())
    }

    /// `v_j = e_j (1 + h) W`.
    pub fn v_rep(&self, j: usize) -> VectorField {
        euler(self.w).times(&(&self.pspace.poly(j) * &self.one_plus_h()))
    }

    /// `w_i = u_i dx^dy`.
    pub fn w_rep(&self, i: usize) -> Bivector {
        Bivector::new(self.milnor.poly(i))
    }

    /// `t_j = e_j f dx^dy`.
    pub fn t_rep(&self, j: usize) -> Bivector {
        Bivector::new(&self.pspace.poly(j) * &self.f)
    }

    /// Graded piece `P_{d-w1-w2}` with the `e_j` as its basis.
    pub fn pspace_graded(&self) -> GradedBasis {
        GradedBasis { degree: self.s(), monomials: self.pspace.monomials.clone() }
    }

    pub fn jet_order_default(&self) -> i64 {
        4 * self.d
    }
}

/// `(dim HP0, dim HP1, dim HP2, dim HP3) = (1, 1 + r, c + r, 0)`.
pub fn hp_dimensions(p: &PoissonStructure) -> [usize; 4] {
    [1, 1 + p.r(), p.c() + p.r(), 0]
}

/// Coordinates on `u` and the `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HP1Class {
    pub alpha: Rational,
    pub beta: Vec<Rational>,
}

/// Coordinates on the `w_i` (lambda) and the `t_j` (q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HP2Class {
    pub lambda: Vec<Rational>,
    pub q: Vec<Rational>,
}

fn coeff_list(key: &str, labels: &[Monomial], values: &[Rational]) -> Value {
    Value::Array(
        labels
            .iter()
            .zip(values)
            .map(|(m, c)| json!({ key: m.to_string(), "coeff": c.to_string() }))
            .collect(),
    )
}

impl HP1Class {
    pub fn zero(r: usize) -> Self {
        HP1Class { alpha: Rational::zero(), beta: vec![Rational::zero(); r] }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.iter().all(Zero::is_zero)
    }

    pub fn representative(&self, p: &PoissonStructure) -> VectorField {
        let mut acc = p.u_rep().scale(&self.alpha);
        for (j, b) in self.beta.iter().enumerate() {
            acc = &acc + &p.v_rep(j).scale(b);
        }
        acc
    }

    pub fn to_json(&self, p: &PoissonStructure) -> Value {
        json!({
            "alpha": self.alpha.to_string(),
            "beta": coeff_list("e", &p.pspace.monomials, &self.beta),
        })
    }
}

impl HP2Class {
    pub fn zero(c: usize, r: usize) -> Self {
        HP2Class { lambda: vec![Rational::zero(); c], q: vec![Rational::zero(); r] }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().chain(&self.q).all(Zero::is_zero)
    }

    pub fn add(&self, other: &HP2Class) -> HP2Class {
        let sum = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        HP2Class { lambda: sum(&self.lambda, &other.lambda), q: sum(&self.q, &other.q) }
    }

    pub fn scale(&self, c: &Rational) -> HP2Class {
        HP2Class {
            lambda: self.lambda.iter().map(|x| x * c).collect(),
            q: self.q.iter().map(|x| x * c).collect(),
        }
    }

    pub fn representative(&self, p: &PoissonStructure) -> Bivector {
        let mut coef = Poly::zero();
        for (i, l) in self.lambda.iter().enumerate() {
            coef += &p.milnor.poly(i).scale(l);
        }
        for (j, q) in self.q.iter().enumerate() {
            coef += &p.t_rep(j).coef.scale(q);
        }
        Bivector::new(coef)
    }

    pub fn to_json(&self, p: &PoissonStructure) -> Value {
        json!({
            "lambda": coeff_list("monomial", &p.milnor.monomials, &self.lambda),
            "q": coeff_list("e", &p.pspace.monomials, &self.q),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, rat};
    use crate::polyvector::delta1;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> WeightSystem {
        WeightSystem::new(a, b).unwrap()
    }

    #[test]
    fn e7_structure() {
        let st = make_structure(p("x^3+x*y^3"), p("y^2"), w(3, 2)).unwrap();
        assert_eq!((st.d, st.c(), st.r()), (9, 7, 1));
        assert_eq!(hp_dimensions(&st), [1, 2, 8, 0]);
    }

    #[test]
    fn a2_structure() {
        let st = make_structure(p("x^2+y^3"), Poly::zero(), w(3, 2)).unwrap();
        assert_eq!((st.d, st.c(), st.r()), (6, 2, 0));
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            make_structure(p("x^2"), Poly::zero(), w(1, 1)),
            Err(Error::InfiniteCodimension { .. })
        ));
        assert!(matches!(
            make_structure(p("x^2+y^4"), p("y^2"), w(2, 1)),
            Err(Error::WrongHDegree { expected: 1, found: 2 })
        ));
        assert!(matches!(
            make_structure(p("x^2+y^2"), p("1"), w(1, 1)),
            Err(Error::HNotAllowed(0))
        ));
        assert!(matches!(
            make_structure(p("x^2+y^3"), Poly::zero(), w(1, 1)),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn dimensions_of_catalog_examples() {
        let e6 = make_structure(p("x^3+y^4"), Poly::zero(), w(4, 3)).unwrap();
        assert_eq!(hp_dimensions(&e6), [1, 1, 6, 0]);
        let d4 = make_structure(p("x^2*y+y^3"), Poly::zero(), w(1, 1)).unwrap();
        assert_eq!(hp_dimensions(&d4), [1, 3, 6, 0]);
        let a3 = make_structure(p("x^2+y^4"), p("y"), w(2, 1)).unwrap();
        assert_eq!(hp_dimensions(&a3), [1, 2, 4, 0]);
    }

    #[test]
    fn hp1_representatives_are_cocycles() {
        let st = make_structure(p("x^2*y-y^3"), p("2*x - 1/2*y"), w(1, 1)).unwrap();
        let pi = st.pi();
        assert!(delta1(&pi, &st.u_rep()).is_zero());
        for j in 0..st.r() {
            assert!(delta1(&pi, &st.v_rep(j)).is_zero());
        }
    }

    #[test]
    fn class_json_lists_every_coordinate() {
        let st = make_structure(p("x^3+x*y^3"), p("y^2"), w(3, 2)).unwrap();
        let mut cls = HP2Class::zero(st.c(), st.r());
        cls.q[0] = rat(3);
        let js = cls.to_json(&st);
        assert_eq!(js["lambda"].as_array().unwrap().len(), 7);
        assert_eq!(js["q"][0]["e"], "y^2");
        assert_eq!(js["q"][0]["coeff"], "3");
    }
}
