//! Linear solves in the jet complex: `HP1` coordinates and coboundary tests.
//!
//! Every question is answered at two consecutive orders `N` and `N + s`;
//! disagreement is reported as jet instability.

use std::cell::OnceCell;

use num_traits::Zero;

use super::{HP1Class, PoissonStructure};
use crate::complex::{jet_complex, TruncatedComplex};
use crate::error::{Error, Result};
use crate::polyring::{solve_linear_exact, Echelon, Matrix, Poly, Rational, SparseVec};
use crate::polyvector::{delta1, Bivector, Polyvector, VectorField};

struct Level {
    n: i64,
    cx: TruncatedComplex,
    im_d0: OnceCell<Echelon>,
    im_d1: OnceCell<Echelon>,
}

impl Level {
    fn new(p: &PoissonStructure, n: i64) -> Self {
        Level {
            n,
            cx: jet_complex(p.w, p.pi(), p.s(), n),
            im_d0: OnceCell::new(),
            im_d1: OnceCell::new(),
        }
    }

    fn im_d0(&self) -> &Echelon {
        self.im_d0.get_or_init(|| {
            let mut e = Echelon::with_tracking();
            for col in self.cx.d0_columns() {
                e.insert(&col);
            }
            e
        })
    }

    fn im_d1(&self) -> &Echelon {
        self.im_d1.get_or_init(|| {
            let mut e = Echelon::with_tracking();
            for col in self.cx.d1_columns() {
                e.insert(&col);
            }
            e
        })
    }

    /// Coordinates of `x` on `u, v_1..v_r` modulo coboundaries, or `None`
    /// when `x` is not in their span at this order.
    fn hp1(&self, p: &PoissonStructure, x: &VectorField) -> Result<Option<HP1Class>> {
        let ech = self.im_d0();
        let enc = |v: &VectorField| self.cx.c1.encode(&Polyvector::Vec(v.clone()));
        let target = ech.reduce(&enc(x)?);
        let mut gens: Vec<SparseVec> = vec![ech.reduce(&enc(&p.u_rep())?)];
        for j in 0..p.r() {
            gens.push(ech.reduce(&enc(&p.v_rep(j))?));
        }
        let mut support: Vec<usize> =
            gens.iter().chain([&target]).flat_map(|v| v.iter().map(|(i, _)| *i)).collect();
        support.sort_unstable();
        support.dedup();
        let dense = |v: &SparseVec| {
            let mut out = vec![Rational::zero(); support.len()];
            for (i, c) in v {
                out[support.binary_search(i).expect("in support")] = c.clone();
            }
            out
        };
        let columns: Vec<Vec<Rational>> = gens.iter().map(dense).collect();
        let matrix = Matrix::from_columns(support.len(), &columns);
        match solve_linear_exact(&matrix, Some(&dense(&target))) {
            Ok(sol) => {
                if sol.rank < gens.len() {
                    return Err(Error::Invariant(format!(
                        "HP1 representatives are dependent at jet order {}",
                        self.n
                    )));
                }
                Ok(Some(HP1Class { alpha: sol.particular[0].clone(), beta: sol.particular[1..].to_vec() }))
            }
            Err(Error::Inconsistent) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn coboundary2(&self, b: &Bivector) -> Result<Option<VectorField>> {
        let v = self.cx.c2.encode(&Polyvector::Biv(b.clone()))?;
        Ok(self.im_d1().solve(&v).map(|combo| {
            let mut y = VectorField::zero();
            for (k, c) in combo {
                let Polyvector::Vec(cell) = self.cx.c1.cell(k) else { unreachable!() };
                y = &y + &cell.scale(&c);
            }
            y
        }))
    }

    fn coboundary1(&self, x: &VectorField) -> Result<Option<Poly>> {
        let v = self.cx.c1.encode(&Polyvector::Vec(x.clone()))?;
        Ok(self.im_d0().solve(&v).map(|combo| {
            let mut g = Poly::zero();
            for (k, c) in combo {
                let Polyvector::Fn(cell) = self.cx.c0.cell(k) else { unreachable!() };
                g += &cell.scale(&c);
            }
            g
        }))
    }
}

/// Jet complexes of orders `N` and `N + s` with lazily built image echelons,
/// reusable across many queries on the same structure.
pub struct JetSolver {
    structure: PoissonStructure,
    levels: [Level; 2],
}

impl JetSolver {
    /// `order` defaults to `4d`.
    pub fn new(p: &PoissonStructure, order: Option<i64>) -> Result<Self> {
        let n = order.unwrap_or_else(|| p.jet_order_default());
        if n < 0 {
            return Err(Error::Precondition(format!("jet order {n} is negative")));
        }
        let step = p.s().max(1);
        Ok(JetSolver { structure: p.clone(), levels: [Level::new(p, n), Level::new(p, n + step)] })
    }

    pub fn orders(&self) -> (i64, i64) {
        (self.levels[0].n, self.levels[1].n)
    }

    pub fn structure(&self) -> &PoissonStructure {
        &self.structure
    }

    fn unstable(&self) -> Error {
        let (a, b) = self.orders();
        Error::JetUnstable(a, b)
    }

    /// Coordinates of a 1-cocycle on `u, v_1..v_r`.
    pub fn normalize_hp1(&self, x: &VectorField) -> Result<HP1Class> {
        let p = &self.structure;
        if !delta1(&p.pi(), x).is_zero() {
            return Err(Error::NotACocycle);
        }
        let first = self.levels[0].hp1(p, x)?;
        let second = self.levels[1].hp1(p, x)?;
        match (first, second) {
            (Some(a), Some(b)) if a == b => Ok(a),
            _ => Err(self.unstable()),
        }
    }

    /// A witness `Y` with `delta(Y) = B` modulo the jet, or `None`.
    pub fn is_coboundary_hp2(&self, b: &Bivector) -> Result<Option<VectorField>> {
        let first = self.levels[0].coboundary2(b)?;
        let second = self.levels[1].coboundary2(b)?;
        match (first, second) {
            (Some(y), Some(_)) => Ok(Some(y)),
            (None, None) => Ok(None),
            _ => Err(self.unstable()),
        }
    }

    /// A witness `G` with `delta(G) = X` modulo the jet, or `None`.
    pub fn is_coboundary_hp1(&self, x: &VectorField) -> Result<Option<Poly>> {
        let first = self.levels[0].coboundary1(x)?;
        let second = self.levels[1].coboundary1(x)?;
        match (first, second) {
            (Some(g), Some(_)) => Ok(Some(g)),
            (None, None) => Ok(None),
            _ => Err(self.unstable()),
        }
    }
}

pub fn normalize_hp1(x: &VectorField, p: &PoissonStructure, jet_order: Option<i64>) -> Result<HP1Class> {
    JetSolver::new(p, jet_order)?.normalize_hp1(x)
}

pub fn is_coboundary_hp2(
    b: &Bivector,
    p: &PoissonStructure,
    jet_order: Option<i64>,
) -> Result<Option<VectorField>> {
    JetSolver::new(p, jet_order)?.is_coboundary_hp2(b)
}
