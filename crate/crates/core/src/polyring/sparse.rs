use std::collections::BTreeMap;

use num_traits::Zero;

use super::Rational;

/// Sparse vector as `(index, value)` pairs, sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
struct Row {
    /// Leading entry is the pivot and equals one.
    entries: SparseVec,
    /// Expresses this row in terms of the inserted vectors.
    combo: SparseVec,
}

/// Incremental row echelon form of a growing set of sparse vectors.
///
/// Pivots are the lowest nonzero index of each reduced vector. When built
/// with tracking, every row remembers how it was produced from the inserted
/// vectors, so membership tests can return an explicit preimage.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    tracking: bool,
    inserted: usize,
}

fn axpy(target: &mut BTreeMap<usize, Rational>, factor: &Rational, v: &[(usize, Rational)]) {
    for (i, c) in v {
        let e = target.entry(*i).or_insert_with(Rational::zero);
        *e += factor * c;
        if e.is_zero() {
            target.remove(i);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn with_tracking() -> Self {
        Echelon { tracking: true, ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered via `insert` so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Subtracts pivot rows from `v`. Returns the residual and the combination
    /// of inserted vectors that was subtracted (empty unless tracking).
    fn reduce_full(&self, v: &[(usize, Rational)]) -> (SparseVec, BTreeMap<usize, Rational>) {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut residual = Vec::new();
        let mut combo = BTreeMap::new();
        while let Some((idx, c)) = work.pop_first() {
            match self.rows.get(&idx) {
                Some(row) => {
                    let neg = -c.clone();
                    axpy(&mut work, &neg, &row.entries[1..]);
                    if self.tracking {
                        axpy(&mut combo, &c, &row.combo);
                    }
                }
                None => residual.push((idx, c)),
            }
        }
        (residual, combo)
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.reduce_full(v).0
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether it raised the rank.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce_full(v);
        let Some((lead, lead_c)) = residual.first().cloned() else {
            return false;
        };
        let inv = lead_c.recip();
        let entries: SparseVec = residual.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        let combo = if self.tracking {
            let mut own: BTreeMap<usize, Rational> = BTreeMap::new();
            own.insert(id, Rational::from_integer(1.into()));
            let minus_one = Rational::from_integer((-1).into());
            axpy(&mut own, &minus_one, &combo.into_iter().collect::<Vec<_>>());
            own.into_iter().map(|(i, c)| (i, c * &inv)).collect()
        } else {
            Vec::new()
        };
        self.rows.insert(lead, Row { entries, combo });
        true
    }

    /// When `v` lies in the span, coefficients `c_k` with `v = sum c_k * input_k`
    /// (requires tracking).
    pub fn solve(&self, v: &[(usize, Rational)]) -> Option<SparseVec> {
        assert!(self.tracking, "solve needs an echelon built with tracking");
        let (residual, combo) = self.reduce_full(v);
        residual.is_empty().then(|| combo.into_iter().collect())
    }
}
