//! The Jacobian ideal of `f`: finite-codimension check, a monomial basis of
//! the Milnor algebra and the splitting `g = sum lambda_i u_i + X(f)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{
    monomials_of_degree, solve_linear_exact, Echelon, GradedBasis, Homogeneity, Matrix,
    Monomial, Poly, Rational, SparseVec, WeightSystem,
};
use crate::polyvector::{apply, VectorField};

/// Monomials `u_1..u_c` whose classes form a basis of `F / I_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorBasis {
    pub monomials: Vec<Monomial>,
    pub degrees: Vec<i64>,
    weights: WeightSystem,
    f_degree: i64,
}

impl MilnorBasis {
    pub fn c(&self) -> usize {
        self.monomials.len()
    }

    pub fn weights(&self) -> WeightSystem {
        self.weights
    }

    pub fn f_degree(&self) -> i64 {
        self.f_degree
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.iter().position(|&k| k == m)
    }

    pub fn poly(&self, i: usize) -> Poly {
        Poly::term(self.monomials[i], Rational::one())
    }
}

/// `lambda` indexed like the basis, and a cofactor `X` with `X(f)` the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianDecomposition {
    pub lambda: Vec<Rational>,
    pub cofactor: VectorField,
}

/// The monomials `e_1..e_r` of degree `d - w1 - w2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSpaceBasis {
    pub monomials: Vec<Monomial>,
}

impl PSpaceBasis {
    pub fn r(&self) -> usize {
        self.monomials.len()
    }

    pub fn poly(&self, j: usize) -> Poly {
        Poly::term(self.monomials[j], Rational::one())
    }
}

pub fn p_space(d: i64, w: WeightSystem) -> PSpaceBasis {
    PSpaceBasis { monomials: monomials_of_degree(w, d - w.sum()).monomials }
}

/// Weighted degree of `f`, which must be a nonzero weight-homogeneous polynomial.
pub fn homogeneous_degree(f: &Poly, w: WeightSystem, what: &str) -> Result<i64> {
    match f.weighted_degree(w) {
        Homogeneity::Degree(d) => Ok(d),
        _ => Err(Error::NotHomogeneous { what: what.to_string(), w1: w.w1, w2: w.w2 }),
    }
}

fn sparse(coords: Vec<Rational>) -> SparseVec {
    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Image of `(A, B) -> A f_x + B f_y` in degree `d_target`, as sparse
/// coordinate vectors over the monomials of that degree.
fn jacobian_image(f: &Poly, d: i64, w: WeightSystem, target: &GradedBasis) -> Vec<SparseVec> {
    let (fx, fy) = (f.partial_x(), f.partial_y());
    let mut out = Vec::new();
    for (partial, shift) in [(&fx, d - w.w1 as i64), (&fy, d - w.w2 as i64)] {
        for m in monomials_of_degree(w, target.degree - shift).monomials {
            let image = partial.mul_monomial(m);
            out.push(sparse(target.coordinates(&image).expect("graded product")));
        }
    }
    out
}

fn unit(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

/// Greedy lex-order complement of the Jacobian ideal, degree by degree up to
/// `2(d - w1 - w2)`, followed by a surjectivity check on the next
/// `max(w1, w2)` degrees.
pub fn milnor_basis(f: &Poly, w: WeightSystem) -> Result<MilnorBasis> {
    let d = homogeneous_degree(f, w, "f")?;
    let top = 2 * (d - w.sum());
    let mut monomials = Vec::new();
    let mut degrees = Vec::new();
    for deg in 0..=top.max(0) {
        let graded = monomials_of_degree(w, deg);
        let mut ech = Echelon::new();
        for v in jacobian_image(f, d, w, &graded) {
            ech.insert(&v);
        }
        for (i, m) in graded.monomials.iter().enumerate() {
            if ech.insert(&unit(i)) {
                monomials.push(*m);
                degrees.push(deg);
            }
        }
    }
    check_surjective_above(f, d, w, top.max(0))?;
    Ok(MilnorBasis { monomials, degrees, weights: w, f_degree: d })
}

fn check_surjective_above(f: &Poly, d: i64, w: WeightSystem, top: i64) -> Result<()> {
    for deg in top + 1..=top + w.max() {
        let graded = monomials_of_degree(w, deg);
        let mut ech = Echelon::new();
        for v in jacobian_image(f, d, w, &graded) {
            ech.insert(&v);
        }
        if ech.rank() < graded.len() {
            return Err(Error::InfiniteCodimension { degree: deg });
        }
    }
    Ok(())
}

/// Validates a caller-supplied basis: per degree the listed monomials must
/// complement the Jacobian image exactly.
pub fn milnor_basis_override(
    f: &Poly,
    w: WeightSystem,
    monomials: Vec<Monomial>,
) -> Result<MilnorBasis> {
    let d = homogeneous_degree(f, w, "f")?;
    let top = 2 * (d - w.sum());
    check_surjective_above(f, d, w, top.max(0))?;
    let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
    for m in &monomials {
        let deg = m.weighted_degree(w);
        if deg > top.max(0) {
            return Err(Error::BasisOverride(format!("{m} has degree {deg} above {top}")));
        }
        let slot = by_degree.entry(deg).or_default();
        if slot.contains(m) {
            return Err(Error::BasisOverride(format!("{m} listed twice")));
        }
        slot.push(*m);
    }
    for deg in 0..=top.max(0) {
        let graded = monomials_of_degree(w, deg);
        let mut ech = Echelon::new();
        for v in jacobian_image(f, d, w, &graded) {
            ech.insert(&v);
        }
        let chosen = by_degree.remove(&deg).unwrap_or_default();
        for m in &chosen {
            let i = graded.index_of(*m).expect("degree matches");
            if !ech.insert(&unit(i)) {
                return Err(Error::BasisOverride(format!("{m} is dependent modulo the ideal")));
            }
        }
        if ech.rank() != graded.len() {
            return Err(Error::BasisOverride(format!("degree {deg} is not spanned")));
        }
    }
    let degrees = monomials.iter().map(|m| m.weighted_degree(w)).collect();
    Ok(MilnorBasis { monomials, degrees, weights: w, f_degree: d })
}

/// Solves `g = sum lambda_i u_i + A f_x + B f_y` for weight-homogeneous `g`.
/// The cofactor is `X = A dx + B dy`, of `[W, .]`-degree `deg g - d`.
pub fn jacobian_decompose(g: &Poly, f: &Poly, basis: &MilnorBasis) -> Result<JacobianDecomposition> {
    let w = basis.weights;
    let d = basis.f_degree;
    let deg = match g.weighted_degree(w) {
        Homogeneity::Zero => {
            return Ok(JacobianDecomposition {
                lambda: vec![Rational::zero(); basis.c()],
                cofactor: VectorField::zero(),
            })
        }
        Homogeneity::Degree(e) => e,
        Homogeneity::NotHomogeneous => {
            return Err(Error::Precondition("jacobian_decompose needs a homogeneous g".into()))
        }
    };
    let target = monomials_of_degree(w, deg);
    let lambda_idx: Vec<usize> = (0..basis.c()).filter(|&i| basis.degrees[i] == deg).collect();
    let a_mons = monomials_of_degree(w, deg - (d - w.w1 as i64));
    let b_mons = monomials_of_degree(w, deg - (d - w.w2 as i64));
    let (fx, fy) = (f.partial_x(), f.partial_y());
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for &i in &lambda_idx {
        columns.push(target.coordinates(&basis.poly(i))?);
    }
    for m in &a_mons.monomials {
        columns.push(target.coordinates(&fx.mul_monomial(*m))?);
    }
    for m in &b_mons.monomials {
        columns.push(target.coordinates(&fy.mul_monomial(*m))?);
    }
    let rhs = target.coordinates(g)?;
    let matrix = Matrix::from_columns(target.len(), &columns);
    let sol = solve_linear_exact(&matrix, Some(&rhs)).map_err(|_| {
        Error::Invariant(format!("degree {deg} is not spanned by the Milnor basis and I_f"))
    })?;
    let mut lambda = vec![Rational::zero(); basis.c()];
    for (k, &i) in lambda_idx.iter().enumerate() {
        lambda[i] = sol.particular[k].clone();
    }
    let off = lambda_idx.len();
    let a = a_mons.poly_from(&sol.particular[off..off + a_mons.len()]);
    let b = b_mons.poly_from(&sol.particular[off + a_mons.len()..]);
    let cofactor = VectorField::new(a, b);
    let mut check = apply(&cofactor, f);
    for (i, l) in lambda.iter().enumerate() {
        check += &basis.poly(i).scale(l);
    }
    if &check != g {
        return Err(Error::Invariant("Jacobian decomposition does not reconstruct g".into()));
    }
    Ok(JacobianDecomposition { lambda, cofactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{frac, parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> WeightSystem {
        WeightSystem::new(a, b).unwrap()
    }

    fn mons(list: &[(u32, u32)]) -> Vec<Monomial> {
        list.iter().map(|&(a, b)| Monomial::new(a, b)).collect()
    }

    #[test]
    fn e6_basis() {
        let b = milnor_basis(&p("x^3+y^4"), w(4, 3)).unwrap();
        assert_eq!(b.monomials, mons(&[(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (1, 2)]));
        assert_eq!(b.degrees, vec![0, 3, 4, 6, 7, 10]);
    }

    #[test]
    fn d5_basis_and_node() {
        let b = milnor_basis(&p("x^2*y+y^4"), w(3, 2)).unwrap();
        assert_eq!(b.c(), 5);
        let mut sorted = b.monomials.clone();
        sorted.sort();
        assert_eq!(sorted, mons(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]));
        assert_eq!(milnor_basis(&p("x*y"), w(1, 1)).unwrap().monomials, mons(&[(0, 0)]));
    }

    #[test]
    fn infinite_codimension_and_inhomogeneous_inputs() {
        assert!(matches!(
            milnor_basis(&p("x^2"), w(1, 1)),
            Err(Error::InfiniteCodimension { .. })
        ));
        assert!(matches!(milnor_basis(&p("x^2+y"), w(1, 1)), Err(Error::NotHomogeneous { .. })));
    }

    #[test]
    fn d4_decomposition_of_x_squared() {
        let f = p("x^2*y+y^3");
        let b = milnor_basis(&f, w(1, 1)).unwrap();
        let dec = jacobian_decompose(&p("x^2"), &f, &b).unwrap();
        let i = b.index_of(Monomial::new(0, 2)).unwrap();
        assert_eq!(dec.lambda[i], rat(-3));
        assert_eq!(dec.lambda.iter().filter(|l| !l.is_zero()).count(), 1);
        assert_eq!(dec.cofactor, VectorField::new(Poly::zero(), Poly::one()));
    }

    #[test]
    fn a3_decomposition_of_y_cubed() {
        for (sign, expect) in [("+", frac(1, 4)), ("-", frac(-1, 4))] {
            let f = p(&format!("x^2{sign}y^4"));
            let b = milnor_basis(&f, w(2, 1)).unwrap();
            let dec = jacobian_decompose(&p("y^3"), &f, &b).unwrap();
            assert!(dec.lambda.iter().all(Zero::is_zero));
            assert_eq!(dec.cofactor, VectorField::new(Poly::zero(), Poly::constant(expect)));
        }
    }

    #[test]
    fn basis_elements_decompose_to_themselves() {
        let f = p("x^3+x*y^3");
        let b = milnor_basis(&f, w(3, 2)).unwrap();
        for i in 0..b.c() {
            let dec = jacobian_decompose(&b.poly(i), &f, &b).unwrap();
            assert!(dec.cofactor.is_zero());
            for (k, l) in dec.lambda.iter().enumerate() {
                assert_eq!(*l, if k == i { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn p_space_examples() {
        assert_eq!(p_space(9, w(3, 2)).monomials, mons(&[(0, 2)]));
        assert_eq!(p_space(15, w(5, 3)).r(), 0);
        for q in 1..5 {
            assert_eq!(p_space(4 * q + 2, w(2 * q + 1, 2)).r(), 0);
        }
        assert_eq!(p_space(2, w(1, 1)).monomials, mons(&[(0, 0)]));
    }

    #[test]
    fn override_is_validated() {
        let f = p("x^2*y+y^4");
        let wt = w(3, 2);
        let good = mons(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]);
        assert_eq!(milnor_basis_override(&f, wt, good.clone()).unwrap().monomials, good);
        // x^2 is congruent to -4 y^3, so swapping them is also valid.
        assert!(milnor_basis_override(&f, wt, mons(&[(0, 0), (0, 1), (0, 2), (2, 0), (1, 0)])).is_ok());
        assert!(milnor_basis_override(&f, wt, mons(&[(0, 0), (0, 1), (0, 2), (1, 0)])).is_err());
        assert!(milnor_basis_override(&f, wt, mons(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 1)])).is_err());
    }
}
