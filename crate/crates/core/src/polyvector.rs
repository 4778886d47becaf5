//! Functions, vector fields and bivector fields in the plane, with the wedge
//! product, the Schouten–Nijenhuis bracket and the Poisson differential.
//!
//! Weighted degrees of vector fields follow the derivation convention
//! `[W, X] = r X`: a coefficient of degree `D` on `dx` contributes `D - w1`,
//! on `dy` it contributes `D - w2`, and a bivector `b dx^dy` has degree
//! `deg b - w1 - w2`.

use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{parse_poly, rat, Homogeneity, Poly, Rational, WeightSystem};

/// `p dx + q dy`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub p: Poly,
    pub q: Poly,
}

/// `coef dx^dy`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bivector {
    pub coef: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Polyvector {
    Fn(Poly),
    Vec(VectorField),
    Biv(Bivector),
}

impl VectorField {
    pub fn new(p: Poly, q: Poly) -> Self {
        VectorField { p, q }
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField::new(self.p.scale(c), self.q.scale(c))
    }

    /// Multiplies both coefficients by a function.
    pub fn times(&self, g: &Poly) -> Self {
        VectorField::new(g * &self.p, g * &self.q)
    }

    /// Degree in the `[W, X] = r X` sense.
    pub fn weighted_degree(&self, w: WeightSystem) -> Homogeneity {
        let shift = |h: Homogeneity, s: i64| match h {
            Homogeneity::Degree(d) => Homogeneity::Degree(d - s),
            other => other,
        };
        let a = shift(self.p.weighted_degree(w), w.w1 as i64);
        let b = shift(self.q.weighted_degree(w), w.w2 as i64);
        match (a, b) {
            (Homogeneity::Zero, other) | (other, Homogeneity::Zero) => other,
            (Homogeneity::Degree(x), Homogeneity::Degree(y)) if x == y => a,
            _ => Homogeneity::NotHomogeneous,
        }
    }

    /// Keeps only the terms of `[W, .]`-degree at most `max`.
    pub fn truncate(&self, w: WeightSystem, max: i64) -> Self {
        VectorField::new(
            self.p.truncate(w, max + w.w1 as i64),
            self.q.truncate(w, max + w.w2 as i64),
        )
    }

    pub fn component(&self, w: WeightSystem, d: i64) -> Self {
        VectorField::new(self.p.component(w, d + w.w1 as i64), self.q.component(w, d + w.w2 as i64))
    }
}

impl Bivector {
    pub fn new(coef: Poly) -> Self {
        Bivector { coef }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn weighted_degree(&self, w: WeightSystem) -> Homogeneity {
        match self.coef.weighted_degree(w) {
            Homogeneity::Degree(d) => Homogeneity::Degree(d - w.sum()),
            other => other,
        }
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(-&self.p, -&self.q)
    }
}

impl Polyvector {
    /// Polyvector degree: 0, 1 or 2.
    pub fn degree(&self) -> u8 {
        match self {
            Polyvector::Fn(_) => 0,
            Polyvector::Vec(_) => 1,
            Polyvector::Biv(_) => 2,
        }
    }

    pub fn zero(degree: u8) -> Self {
        match degree {
            0 => Polyvector::Fn(Poly::zero()),
            1 => Polyvector::Vec(VectorField::zero()),
            2 => Polyvector::Biv(Bivector::default()),
            _ => panic!("no polyvectors of degree {degree} in two variables"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Polyvector::Fn(g) => g.is_zero(),
            Polyvector::Vec(x) => x.is_zero(),
            Polyvector::Biv(b) => b.is_zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            Polyvector::Fn(g) => Polyvector::Fn(g.scale(c)),
            Polyvector::Vec(x) => Polyvector::Vec(x.scale(c)),
            Polyvector::Biv(b) => Polyvector::Biv(Bivector::new(b.coef.scale(c))),
        }
    }

    /// Sum of two polyvectors of equal degree.
    pub fn add(&self, other: &Polyvector) -> Result<Polyvector> {
        Ok(match (self, other) {
            (Polyvector::Fn(a), Polyvector::Fn(b)) => Polyvector::Fn(a + b),
            (Polyvector::Vec(a), Polyvector::Vec(b)) => Polyvector::Vec(a + b),
            (Polyvector::Biv(a), Polyvector::Biv(b)) => {
                Polyvector::Biv(Bivector::new(&a.coef + &b.coef))
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "cannot add polyvectors of degrees {} and {}",
                    self.degree(),
                    other.degree()
                )))
            }
        })
    }

    pub fn sub(&self, other: &Polyvector) -> Result<Polyvector> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn weighted_degree(&self, w: WeightSystem) -> Homogeneity {
        match self {
            Polyvector::Fn(g) => g.weighted_degree(w),
            Polyvector::Vec(x) => x.weighted_degree(w),
            Polyvector::Biv(b) => b.weighted_degree(w),
        }
    }

    /// JSON rendering: a string for functions, `{"dx","dy"}` for vector
    /// fields and `{"dxdy"}` for bivectors.
    pub fn to_json(&self) -> Value {
        match self {
            Polyvector::Fn(g) => Value::String(g.render()),
            Polyvector::Vec(x) => json!({"dx": x.p.render(), "dy": x.q.render()}),
            Polyvector::Biv(b) => json!({"dxdy": b.coef.render()}),
        }
    }

    /// Inverse of [`Polyvector::to_json`]. A missing `dx` or `dy` key reads as zero.
    pub fn from_json(v: &Value) -> Result<Polyvector> {
        let field = |obj: &serde_json::Map<String, Value>, key: &str| -> Result<Poly> {
            match obj.get(key) {
                None => Ok(Poly::zero()),
                Some(Value::String(s)) => parse_poly(s),
                Some(other) => Err(Error::Syntax {
                    pos: 0,
                    msg: format!("expected a polynomial string for '{key}', got {other}"),
                }),
            }
        };
        match v {
            Value::String(s) => Ok(Polyvector::Fn(parse_poly(s)?)),
            Value::Object(obj) if obj.contains_key("dxdy") => {
                if obj.len() != 1 {
                    return Err(Error::Syntax { pos: 0, msg: "bivector takes only 'dxdy'".into() });
                }
                Ok(Polyvector::Biv(Bivector::new(field(obj, "dxdy")?)))
            }
            Value::Object(obj) if obj.keys().all(|k| k == "dx" || k == "dy") && !obj.is_empty() => {
                Ok(Polyvector::Vec(VectorField::new(field(obj, "dx")?, field(obj, "dy")?)))
            }
            other => Err(Error::Syntax { pos: 0, msg: format!("not a polyvector: {other}") }),
        }
    }
}

pub fn divergence(x: &VectorField) -> Poly {
    &x.p.partial_x() + &x.q.partial_y()
}

/// `H_g = g_y dx - g_x dy`.
pub fn hamiltonian(g: &Poly) -> VectorField {
    VectorField::new(g.partial_y(), -&g.partial_x())
}

/// The Euler field `w1 x dx + w2 y dy`.
pub fn euler(w: WeightSystem) -> VectorField {
    VectorField::new(
        Poly::x().scale(&rat(w.w1 as i64)),
        Poly::y().scale(&rat(w.w2 as i64)),
    )
}

/// `X(g)`.
pub fn apply(x: &VectorField, g: &Poly) -> Poly {
    &(&x.p * &g.partial_x()) + &(&x.q * &g.partial_y())
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField::new(
        &apply(x, &y.p) - &apply(y, &x.p),
        &apply(x, &y.q) - &apply(y, &x.q),
    )
}

/// Coefficient of `[X, b dx^dy]`.
fn vec_biv(x: &VectorField, b: &Poly) -> Poly {
    &apply(x, b) - &(b * &divergence(x))
}

/// Schouten–Nijenhuis bracket. `None` stands for the zero element of the
/// unrepresentable degrees -1 (two functions) and 3 (two bivectors).
pub fn sn_bracket(lhs: &Polyvector, rhs: &Polyvector) -> Option<Polyvector> {
    use Polyvector::{Biv, Fn, Vec};
    Some(match (lhs, rhs) {
        (Fn(_), Fn(_)) | (Biv(_), Biv(_)) => return None,
        (Vec(x), Fn(g)) => Fn(apply(x, g)),
        (Fn(g), Vec(x)) => Fn(-&apply(x, g)),
        (Vec(x), Vec(y)) => Vec(lie_bracket(x, y)),
        (Vec(x), Biv(b)) => Biv(Bivector::new(vec_biv(x, &b.coef))),
        (Biv(b), Vec(x)) => Biv(Bivector::new(-&vec_biv(x, &b.coef))),
        (Fn(g), Biv(b)) | (Biv(b), Fn(g)) => Vec(hamiltonian(g).times(&-&b.coef)),
    })
}

/// Wedge product; total degree above two is rejected.
pub fn wedge(lhs: &Polyvector, rhs: &Polyvector) -> Result<Polyvector> {
    use Polyvector::{Fn, Vec};
    let (p, q) = (lhs.degree(), rhs.degree());
    if p + q > 2 {
        return Err(Error::DegreeOverflow(p, q));
    }
    Ok(match (lhs, rhs) {
        (Fn(g), other) | (other, Fn(g)) => match other {
            Fn(k) => Fn(g * k),
            Vec(x) => Vec(x.times(g)),
            Polyvector::Biv(b) => Polyvector::Biv(Bivector::new(g * &b.coef)),
        },
        (Vec(x), Vec(y)) => {
            Polyvector::Biv(Bivector::new(&(&x.p * &y.q) - &(&x.q * &y.p)))
        }
        _ => unreachable!("degree check above"),
    })
}

/// `delta(P) = [P, pi]`; `None` on bivectors (degree-3 target).
pub fn poisson_differential(pi: &Bivector, cochain: &Polyvector) -> Option<Polyvector> {
    sn_bracket(cochain, &Polyvector::Biv(pi.clone()))
}

/// `delta` on a function: `-pi H_g`.
pub fn delta0(pi: &Poly, g: &Poly) -> VectorField {
    hamiltonian(g).times(&-pi)
}

/// `delta` on a vector field: the coefficient `X(pi) - div(X) pi`.
pub fn delta1(pi: &Poly, x: &VectorField) -> Poly {
    vec_biv(x, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> WeightSystem {
        WeightSystem::new(a, b).unwrap()
    }

    #[test]
    fn hamiltonians_of_e6_and_e8() {
        assert_eq!(hamiltonian(&p("x^3+y^4")), VectorField::new(p("4*y^3"), p("-3*x^2")));
        assert_eq!(hamiltonian(&p("x^3+y^5")), VectorField::new(p("5*y^4"), p("-3*x^2")));
        assert!(hamiltonian(&Poly::one()).is_zero());
    }

    #[test]
    fn divergences() {
        assert_eq!(divergence(&euler(w(4, 3))), p("7"));
        assert!(divergence(&hamiltonian(&p("x^5*y - 3*x*y^2 + y^7"))).is_zero());
        assert_eq!(divergence(&VectorField::new(Poly::x(), Poly::zero())), Poly::one());
    }

    #[test]
    fn euler_relation() {
        let e = euler(w(5, 2));
        assert_eq!(e, VectorField::new(p("5*x"), p("2*y")));
        assert_eq!(apply(&e, &p("x^2*y^3")), p("16*x^2*y^3"));
        assert_eq!(apply(&euler(w(3, 2)), &p("x^3+x*y^3")), p("9*x^3+9*x*y^3"));
    }

    #[test]
    fn apply_examples() {
        let f = p("x^2+y^4");
        assert!(apply(&hamiltonian(&f), &f).is_zero());
        assert_eq!(apply(&VectorField::new(Poly::zero(), Poly::one()), &f), p("4*y^3"));
        assert_eq!(
            apply(&VectorField::new(Poly::zero(), Poly::one()), &p("x^2-y^4")),
            p("-4*y^3")
        );
    }

    #[test]
    fn hamiltonian_bracket_with_euler_multiple() {
        // [H_f, e W] = -d f H_e for e of degree d - w1 - w2.
        let wt = w(3, 2);
        let f = p("x^3+x*y^3");
        let e = p("y^2");
        let ew = euler(wt).times(&e);
        let got = sn_bracket(&Polyvector::Vec(hamiltonian(&f)), &Polyvector::Vec(ew)).unwrap();
        let want = hamiltonian(&e).times(&f.scale(&rat(-9)));
        assert_eq!(got, Polyvector::Vec(want));
    }

    #[test]
    fn euler_multiple_against_bivector() {
        // [e W, u dx^dy] = (deg u - d) e u dx^dy.
        let wt = w(3, 2);
        let e = p("y^2");
        let u = p("x*y");
        let got = sn_bracket(
            &Polyvector::Vec(euler(wt).times(&e)),
            &Polyvector::Biv(Bivector::new(u.clone())),
        )
        .unwrap();
        assert_eq!(got, Polyvector::Biv(Bivector::new((&e * &u).scale(&rat(5 - 9)))));
    }

    #[test]
    fn unrepresentable_brackets_are_none() {
        assert!(sn_bracket(&Polyvector::Fn(p("x")), &Polyvector::Fn(p("y"))).is_none());
        let b = Polyvector::Biv(Bivector::new(p("x")));
        assert!(sn_bracket(&b, &b).is_none());
    }

    #[test]
    fn wedge_rules() {
        let f = p("x^3+x*y^3");
        let g = p("y^2");
        let got = wedge(
            &Polyvector::Vec(hamiltonian(&f)),
            &Polyvector::Vec(euler(w(3, 2)).times(&g)),
        )
        .unwrap();
        assert_eq!(got, Polyvector::Biv(Bivector::new((&g * &f).scale(&rat(9)))));
        let x = Polyvector::Vec(VectorField::new(p("x*y"), p("y^3-1")));
        assert!(wedge(&x, &x).unwrap().is_zero());
        assert_eq!(wedge(&Polyvector::Fn(Poly::one()), &x).unwrap(), x);
        let b = Polyvector::Biv(Bivector::new(p("x")));
        assert_eq!(wedge(&x, &b), Err(Error::DegreeOverflow(1, 2)));
    }

    #[test]
    fn differential_examples() {
        let wt = w(3, 2);
        let f = p("x^3+x*y^3");
        let pi = Bivector::new(f.clone());
        assert!(poisson_differential(&pi, &Polyvector::Fn(Poly::one())).unwrap().is_zero());
        let hf = Polyvector::Vec(hamiltonian(&f));
        assert!(poisson_differential(&pi, &hf).unwrap().is_zero());
        // delta(g W) = (d - deg g - w1 - w2) g f.
        let g = p("x*y");
        let got = poisson_differential(&pi, &Polyvector::Vec(euler(wt).times(&g))).unwrap();
        assert_eq!(got, Polyvector::Biv(Bivector::new((&g * &f).scale(&rat(9 - 5 - 5)))));
        assert!(poisson_differential(&pi, &Polyvector::Biv(pi.clone())).is_none());
    }

    #[test]
    fn vector_field_degrees() {
        let wt = w(3, 2);
        assert_eq!(euler(wt).weighted_degree(wt), Homogeneity::Degree(0));
        let dy = VectorField::new(Poly::zero(), Poly::one());
        assert_eq!(dy.weighted_degree(wt), Homogeneity::Degree(-2));
        assert_eq!(hamiltonian(&p("x^3+x*y^3")).weighted_degree(wt), Homogeneity::Degree(4));
        let mixed = VectorField::new(Poly::one(), Poly::one());
        assert_eq!(mixed.weighted_degree(wt), Homogeneity::NotHomogeneous);
    }

    #[test]
    fn json_round_trip() {
        let cases = [
            Polyvector::Fn(p("x - 1/2")),
            Polyvector::Vec(VectorField::new(p("y^3"), p("-3*x^2"))),
            Polyvector::Biv(Bivector::new(p("-2*y^3"))),
        ];
        for c in cases {
            assert_eq!(Polyvector::from_json(&c.to_json()).unwrap(), c);
        }
        assert!(Polyvector::from_json(&json!({"dz": "x"})).is_err());
    }
}
