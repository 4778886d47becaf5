//! Strategies and cochain identities shared by the property tests and the
//! acceptance suite.
#![allow(dead_code)]

use proptest::prelude::*;

use planar_poisson::arnold::{instantiate, parse_selector, SingularityType};
use planar_poisson::cohomology::{lemma31, Lemma31Variant, PoissonStructure};
use planar_poisson::polyring::{frac, monomials_of_degree, Homogeneity, Monomial, Poly, Rational};
use planar_poisson::polyvector::{
    apply, delta0, delta1, divergence, sn_bracket, wedge, Bivector, Polyvector, VectorField,
};

/// Numerators in -3..=3 over denominators 1..=4.
pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

/// Up to five terms of total degree at most 12.
pub fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=12), (0u32..=12), coefficient()), 0..=5).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .filter(|(a, b, _)| a + b <= 12)
                .map(|(a, b, c)| (Monomial::new(a, b), c)),
        )
    })
}

/// Sparser polynomials for the triple-bracket identities.
pub fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=6), (0u32..=6), coefficient()), 0..=3)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(a, b, c)| (Monomial::new(a, b), c))))
}

pub fn polyvector() -> impl Strategy<Value = Polyvector> {
    prop_oneof![
        small_poly().prop_map(Polyvector::Fn),
        (small_poly(), small_poly()).prop_map(|(p, q)| Polyvector::Vec(VectorField::new(p, q))),
        small_poly().prop_map(|b| Polyvector::Biv(Bivector::new(b))),
    ]
}

/// Polyvectors of degree 3 or more vanish on the plane, so `None` reads as zero.
fn br(a: &Polyvector, b: &Polyvector) -> Option<Polyvector> {
    sn_bracket(a, b).filter(|x| !x.is_zero())
}

fn wd(a: &Polyvector, b: &Polyvector) -> Option<Polyvector> {
    wedge(a, b).ok().filter(|x| !x.is_zero())
}

fn br_opt(a: Option<&Polyvector>, b: Option<&Polyvector>) -> Option<Polyvector> {
    br(a?, b?)
}

fn wd_opt(a: Option<&Polyvector>, b: Option<&Polyvector>) -> Option<Polyvector> {
    wd(a?, b?)
}

fn vanishes(terms: Vec<(i64, Option<Polyvector>)>) -> bool {
    let mut acc: Option<Polyvector> = None;
    for (sign, t) in terms {
        let Some(t) = t else { continue };
        let t = t.scale(&frac(sign, 1));
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t).expect("same degree"),
        });
    }
    acc.is_none_or(|a| a.is_zero())
}

fn sgn(e: u8) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn delta_squared_vanishes(pi: &Poly, g: &Poly) -> bool {
    delta1(pi, &delta0(pi, g)).is_zero()
}

/// `[P, Q] = -(-1)^((p-1)(q-1)) [Q, P]`
pub fn antisymmetry_holds(a: &Polyvector, b: &Polyvector) -> bool {
    let s = -sgn((a.degree() + 1) * (b.degree() + 1));
    vanishes(vec![(1, br(a, b)), (-s, br(b, a))])
}

/// `[P, [Q, R]] = [[P, Q], R] + (-1)^((p-1)(q-1)) [Q, [P, R]]`
pub fn jacobi_holds(a: &Polyvector, b: &Polyvector, c: &Polyvector) -> bool {
    let (p, q) = (a.degree(), b.degree());
    let lhs = br_opt(Some(a), br(b, c).as_ref());
    let first = br_opt(br(a, b).as_ref(), Some(c));
    let second = br_opt(Some(b), br(a, c).as_ref());
    vanishes(vec![(1, lhs), (-1, first), (-sgn((p + 1) * (q + 1)), second)])
}

/// `[F^G, H] = [F, H]^G + (-1)^((r-1)p) F^[G, H]`; `None` when `F^G` is
/// not representable.
pub fn leibniz_holds(f: &Polyvector, g: &Polyvector, h: &Polyvector) -> Option<bool> {
    if f.degree() + g.degree() > 2 {
        return None;
    }
    let (p, r) = (f.degree(), h.degree());
    let lhs = br_opt(wd(f, g).as_ref(), Some(h));
    let first = wd_opt(br(f, h).as_ref(), Some(g));
    let second = wd_opt(Some(f), br(g, h).as_ref());
    Some(vanishes(vec![(1, lhs), (-1, first), (-sgn((r + 1) * p), second)]))
}

pub fn structure(name: &str, lambda: Option<Rational>, mu: Option<Rational>) -> PoissonStructure {
    let family = parse_selector(name, 4).unwrap()[0];
    instantiate(&SingularityType::new(family, lambda, mu).unwrap()).unwrap()
}

/// Catalog entries with `h != 0`.
pub fn deformed() -> Vec<PoissonStructure> {
    vec![
        structure("A3+", Some(frac(1, 2)), None),
        structure("A5-", Some(frac(-1, 1)), None),
        structure("D4-", Some(frac(1, 1)), Some(frac(1, 2))),
        structure("D6+", Some(frac(1, 1)), Some(frac(-1, 1))),
        structure("D5", Some(frac(1, 1)), None),
        structure("E7", Some(frac(1, 2)), None),
    ]
}

/// Homogeneous polynomial of weighted degree `degree`, coefficients cycled
/// over the monomials of that degree.
pub fn homogeneous_poly(p: &PoissonStructure, degree: i64, coeffs: &[Rational]) -> Poly {
    let basis = monomials_of_degree(p.w, degree);
    Poly::from_terms(basis.monomials.iter().zip(coeffs.iter().cycle()).map(|(m, c)| (*m, c.clone())))
}

/// A vector field of weighted degree `degree`: components of degree
/// `degree + w1` and `degree + w2`.
pub fn homogeneous_field(p: &PoissonStructure, degree: i64, a: &[Rational], b: &[Rational]) -> VectorField {
    VectorField::new(
        homogeneous_poly(p, degree + p.w.w1 as i64, a),
        homogeneous_poly(p, degree + p.w.w2 as i64, b),
    )
}

/// Index into [`deformed`], a field degree and two coefficient lists.
pub fn field_sample() -> impl Strategy<Value = (usize, i64, Vec<Rational>, Vec<Rational>)> {
    (
        0usize..6,
        -3i64..10,
        prop::collection::vec(coefficient(), 1..6),
        prop::collection::vec(coefficient(), 1..6),
    )
}

fn lie_derivative_fh(p: &PoissonStructure, x: &VectorField) -> Poly {
    let fh = &p.f * &p.h;
    &apply(x, &fh) - &(&divergence(x) * &fh)
}

fn coboundary_coef(p: &PoissonStructure, y: &VectorField) -> Poly {
    &apply(y, &p.f) - &(&divergence(y) * &p.f)
}

/// Variant (a): `X(fh) - div(X) fh = Z(f)`.
pub fn lemma_a_holds(p: &PoissonStructure, x: &VectorField) -> bool {
    let z = lemma31(x, p, Lemma31Variant::A).unwrap();
    lie_derivative_fh(p, x) == apply(&z, &p.f)
}

/// Variant (b): `X(f) = Y(f) - div(Y) f`; `None` when `deg X = s`.
pub fn lemma_b_holds(p: &PoissonStructure, x: &VectorField, degree: i64) -> Option<bool> {
    if degree == p.s() {
        return None;
    }
    let y = lemma31(x, p, Lemma31Variant::B).unwrap();
    Some(apply(x, &p.f) == coboundary_coef(p, &y))
}

/// Variant (c): the identity and `deg Y = deg X + s`; `None` when
/// `deg X = 0` or `X = 0`.
pub fn lemma_c_holds(p: &PoissonStructure, x: &VectorField, degree: i64) -> Option<bool> {
    if degree == 0 || x.is_zero() {
        return None;
    }
    let y = lemma31(x, p, Lemma31Variant::C).unwrap();
    let degree_ok = y.is_zero() || y.weighted_degree(p.w) == Homogeneity::Degree(degree + p.s());
    Some(degree_ok && lie_derivative_fh(p, x) == coboundary_coef(p, &y))
}
