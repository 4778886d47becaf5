//! Finite pieces of the Poisson cochain complex: cochains whose weighted
//! degree lies in a window, with the differential as sparse columns.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Monomial, Poly, Rational, SparseVec, WeightSystem};
use crate::polyvector::{delta0, delta1, Bivector, Polyvector, VectorField};

/// One monomial cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Fn(Monomial),
    Dx(Monomial),
    Dy(Monomial),
    Dxdy(Monomial),
}

/// Monomial cochains of one polyvector degree with weighted degree in `[lo, hi]`,
/// ordered by weighted degree first.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: u8,
    pub lo: i64,
    pub hi: i64,
    w: WeightSystem,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl CochainSpace {
    pub fn new(w: WeightSystem, degree: u8, lo: i64, hi: i64) -> Self {
        let (w1, w2) = (w.w1 as i64, w.w2 as i64);
        let mut cells = Vec::new();
        for deg in lo..=hi {
            match degree {
                0 => cells.extend(monomials_of_degree(w, deg).monomials.into_iter().map(Cell::Fn)),
                1 => {
                    cells.extend(monomials_of_degree(w, deg + w1).monomials.into_iter().map(Cell::Dx));
                    cells.extend(monomials_of_degree(w, deg + w2).monomials.into_iter().map(Cell::Dy));
                }
                2 => cells.extend(
                    monomials_of_degree(w, deg + w1 + w2).monomials.into_iter().map(Cell::Dxdy),
                ),
                _ => panic!("cochain degree {degree} does not exist in two variables"),
            }
        }
        let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        CochainSpace { degree, lo, hi, w, cells, index }
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, i: usize) -> Polyvector {
        let one = || Rational::one();
        match self.cells[i] {
            Cell::Fn(m) => Polyvector::Fn(Poly::term(m, one())),
            Cell::Dx(m) => Polyvector::Vec(VectorField::new(Poly::term(m, one()), Poly::zero())),
            Cell::Dy(m) => Polyvector::Vec(VectorField::new(Poly::zero(), Poly::term(m, one()))),
            Cell::Dxdy(m) => Polyvector::Biv(Bivector::new(Poly::term(m, one()))),
        }
    }

    /// Coordinates of `pv`, silently dropping terms above `hi`. Terms below
    /// `lo` are an error.
    pub fn encode(&self, pv: &Polyvector) -> Result<SparseVec> {
        if pv.degree() != self.degree {
            return Err(Error::Precondition(format!(
                "expected a degree-{} cochain, got degree {}",
                self.degree,
                pv.degree()
            )));
        }
        let (w1, w2) = (self.w.w1 as i64, self.w.w2 as i64);
        let mut out = Vec::new();
        let mut push = |poly: &Poly, shift: i64, make: fn(Monomial) -> Cell| -> Result<()> {
            for (m, c) in poly.terms() {
                let deg = m.weighted_degree(self.w) - shift;
                if deg > self.hi {
                    continue;
                }
                let i = self.index.get(&make(*m)).ok_or_else(|| {
                    Error::Invariant(format!("cochain term of degree {deg} below window {}", self.lo))
                })?;
                out.push((*i, c.clone()));
            }
            Ok(())
        };
        match pv {
            Polyvector::Fn(g) => push(g, 0, Cell::Fn)?,
            Polyvector::Vec(x) => {
                push(&x.p, w1, Cell::Dx)?;
                push(&x.q, w2, Cell::Dy)?;
            }
            Polyvector::Biv(b) => push(&b.coef, w1 + w2, Cell::Dxdy)?,
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn decode(&self, v: &[(usize, Rational)]) -> Polyvector {
        let mut acc = Polyvector::zero(self.degree);
        for (i, c) in v {
            if !c.is_zero() {
                acc = acc.add(&self.cell(*i).scale(c)).expect("same degree");
            }
        }
        acc
    }
}

/// `C0 -> C1 -> C2` restricted to weighted-degree windows.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub pi: Poly,
    pub c0: CochainSpace,
    pub c1: CochainSpace,
    pub c2: CochainSpace,
}

impl TruncatedComplex {
    pub fn new(w: WeightSystem, pi: Poly, windows: [(i64, i64); 3]) -> Self {
        TruncatedComplex {
            pi,
            c0: CochainSpace::new(w, 0, windows[0].0, windows[0].1),
            c1: CochainSpace::new(w, 1, windows[1].0, windows[1].1),
            c2: CochainSpace::new(w, 2, windows[2].0, windows[2].1),
        }
    }

    pub fn d0_column(&self, i: usize) -> SparseVec {
        let Polyvector::Fn(g) = self.c0.cell(i) else { unreachable!() };
        self.c1.encode(&Polyvector::Vec(delta0(&self.pi, &g))).expect("delta raises degree")
    }

    pub fn d1_column(&self, j: usize) -> SparseVec {
        let Polyvector::Vec(x) = self.c1.cell(j) else { unreachable!() };
        self.c2
            .encode(&Polyvector::Biv(Bivector::new(delta1(&self.pi, &x))))
            .expect("delta raises degree")
    }

    pub fn d0_columns(&self) -> Vec<SparseVec> {
        (0..self.c0.dim()).map(|i| self.d0_column(i)).collect()
    }

    pub fn d1_columns(&self) -> Vec<SparseVec> {
        (0..self.c1.dim()).map(|j| self.d1_column(j)).collect()
    }
}

/// Lowest weighted degree a nonzero cochain of polyvector degree `k` can have.
pub fn lowest_degree(w: WeightSystem, k: u8) -> i64 {
    match k {
        0 => 0,
        1 => -w.max(),
        _ => -w.sum(),
    }
}

/// The jet complex of order `n`: functions up to degree `n`, vector fields up
/// to `n + s`, bivectors up to `n + 2s`, where `s` is the degree shift of `delta`.
/// Cochains above those windows form a subcomplex, so this is a quotient complex.
pub fn jet_complex(w: WeightSystem, pi: Poly, s: i64, n: i64) -> TruncatedComplex {
    TruncatedComplex::new(
        w,
        pi,
        [
            (0, n),
            (lowest_degree(w, 1), n + s),
            (lowest_degree(w, 2), n + 2 * s),
        ],
    )
}
