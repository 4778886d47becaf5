//! Structure constants of the wedge product and the Schouten–Nijenhuis
//! bracket on the canonical basis `{1; u, v_j; w_i, t_j}`, the Leibniz
//! closure test and the generators-and-relations presentation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{normalize_hp2_pi, JetSolver, PoissonStructure};
use crate::error::{Error, Result};
use crate::polyring::{rat, Poly, Rational};
use crate::polyvector::{delta0, sn_bracket, wedge, Bivector, Polyvector};

/// A canonical basis element; indices are zero-based, labels one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    One,
    U,
    V(usize),
    W(usize),
    T(usize),
}

impl BasisElement {
    pub fn degree(&self) -> u8 {
        match self {
            BasisElement::One => 0,
            BasisElement::U | BasisElement::V(_) => 1,
            BasisElement::W(_) | BasisElement::T(_) => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BasisElement::One => "1".into(),
            BasisElement::U => "u".into(),
            BasisElement::V(j) => format!("v{}", j + 1),
            BasisElement::W(i) => format!("w{}", i + 1),
            BasisElement::T(j) => format!("t{}", j + 1),
        }
    }

    pub fn parse(label: &str) -> Option<BasisElement> {
        match label {
            "1" => return Some(BasisElement::One),
            "u" => return Some(BasisElement::U),
            _ => {}
        }
        let (head, tail) = label.split_at(1);
        let k: usize = tail.parse().ok().filter(|&k| k >= 1)?;
        match head {
            "v" => Some(BasisElement::V(k - 1)),
            "w" => Some(BasisElement::W(k - 1)),
            "t" => Some(BasisElement::T(k - 1)),
            _ => None,
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All basis elements of a structure, grouped by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub one: BasisElement,
    pub u: BasisElement,
    pub v: Vec<BasisElement>,
    pub w: Vec<BasisElement>,
    pub t: Vec<BasisElement>,
}

impl CanonicalBasis {
    pub fn new(p: &PoissonStructure) -> Self {
        CanonicalBasis {
            one: BasisElement::One,
            u: BasisElement::U,
            v: (0..p.r()).map(BasisElement::V).collect(),
            w: (0..p.c()).map(BasisElement::W).collect(),
            t: (0..p.r()).map(BasisElement::T).collect(),
        }
    }

    pub fn all(&self) -> Vec<BasisElement> {
        let mut out = vec![self.one, self.u];
        out.extend(&self.v);
        out.extend(&self.w);
        out.extend(&self.t);
        out
    }
}

/// Cochain representative of a basis element.
pub fn representative(p: &PoissonStructure, e: BasisElement) -> Polyvector {
    match e {
        BasisElement::One => Polyvector::Fn(Poly::one()),
        BasisElement::U => Polyvector::Vec(p.u_rep()),
        BasisElement::V(j) => Polyvector::Vec(p.v_rep(j)),
        BasisElement::W(i) => Polyvector::Biv(p.w_rep(i)),
        BasisElement::T(j) => Polyvector::Biv(p.t_rep(j)),
    }
}

/// An element of `HP*` as a sparse combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HpElement {
    coeffs: BTreeMap<BasisElement, Rational>,
}

impl HpElement {
    pub fn zero() -> Self {
        HpElement::default()
    }

    pub fn basis(e: BasisElement) -> Self {
        HpElement::zero().plus(e, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisElement, Rational)>>(terms: I) -> Self {
        terms.into_iter().fold(HpElement::zero(), |acc, (e, c)| acc.plus(e, c))
    }

    /// Adds `c * e`.
    pub fn plus(mut self, e: BasisElement, c: Rational) -> Self {
        if c.is_zero() {
            return self;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
        self
    }

    pub fn add(&self, other: &HpElement) -> HpElement {
        other.coeffs.iter().fold(self.clone(), |acc, (e, c)| acc.plus(*e, c.clone()))
    }

    pub fn sub(&self, other: &HpElement) -> HpElement {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> HpElement {
        HpElement::from_terms(self.coeffs.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: BasisElement) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &Rational)> {
        self.coeffs.iter()
    }

    /// Common degree of the terms, `None` for zero.
    pub fn degree(&self) -> Option<u8> {
        self.coeffs.keys().next().map(BasisElement::degree)
    }

    pub fn representative(&self, p: &PoissonStructure) -> Option<Polyvector> {
        let deg = self.degree()?;
        let mut acc = Polyvector::zero(deg);
        for (e, c) in &self.coeffs {
            acc = acc.add(&representative(p, *e).scale(c)).ok()?;
        }
        Some(acc)
    }

    /// JSON keyed by kind; `v` and `t` entries are labelled by `e_j`, `w`
    /// entries by `u_i`.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        let mut lists: BTreeMap<&str, Vec<Value>> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let c = c.to_string();
            match e {
                BasisElement::One => {
                    obj.insert("one".into(), Value::String(c));
                }
                BasisElement::U => {
                    obj.insert("u".into(), Value::String(c));
                }
                BasisElement::V(j) => lists.entry("v").or_default().push(json!([format!("e{}", j + 1), c])),
                BasisElement::W(i) => lists.entry("w").or_default().push(json!([format!("u{}", i + 1), c])),
                BasisElement::T(j) => lists.entry("t").or_default().push(json!([format!("e{}", j + 1), c])),
            }
        }
        for (k, v) in lists {
            obj.insert(k.into(), Value::Array(v));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for HpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{abs}*{e}")?;
            }
        }
        Ok(())
    }
}

/// Class of a cocycle in the canonical basis.
pub fn classify(solver: &JetSolver, cochain: &Polyvector) -> Result<HpElement> {
    let p = solver.structure();
    if cochain.is_zero() {
        return Ok(HpElement::zero());
    }
    Ok(match cochain {
        Polyvector::Fn(g) => {
            if !delta0(&p.pi(), g).is_zero() {
                return Err(Error::NotACocycle);
            }
            let constant = g.coeff(crate::polyring::Monomial::ONE);
            if g != &Poly::constant(constant.clone()) {
                return Err(Error::Invariant("non-constant Casimir".into()));
            }
            HpElement::basis(BasisElement::One).scale(&constant)
        }
        Polyvector::Vec(x) => {
            let cls = solver.normalize_hp1(x)?;
            let mut out = HpElement::zero().plus(BasisElement::U, cls.alpha);
            for (j, b) in cls.beta.into_iter().enumerate() {
                out = out.plus(BasisElement::V(j), b);
            }
            out
        }
        Polyvector::Biv(b) => {
            let cls = normalize_hp2_pi(b, p)?;
            let mut out = HpElement::zero();
            for (i, l) in cls.lambda.into_iter().enumerate() {
                out = out.plus(BasisElement::W(i), l);
            }
            for (j, q) in cls.q.into_iter().enumerate() {
                out = out.plus(BasisElement::T(j), q);
            }
            out
        }
    })
}

type Pair = (BasisElement, BasisElement);

/// Wedge and bracket of every ordered pair of basis elements whose result
/// lies in degrees 0..=2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GerstenhaberTable {
    pub wedge: BTreeMap<Pair, HpElement>,
    pub bracket: BTreeMap<Pair, HpElement>,
}

pub fn wedge_table(solver: &JetSolver) -> Result<BTreeMap<Pair, HpElement>> {
    let p = solver.structure();
    let all = CanonicalBasis::new(p).all();
    let mut out = BTreeMap::new();
    for &a in &all {
        for &b in &all {
            if a.degree() + b.degree() > 2 {
                continue;
            }
            let cochain = wedge(&representative(p, a), &representative(p, b))?;
            out.insert((a, b), classify(solver, &cochain)?);
        }
    }
    Ok(out)
}

pub fn bracket_table(solver: &JetSolver) -> Result<BTreeMap<Pair, HpElement>> {
    let p = solver.structure();
    let all = CanonicalBasis::new(p).all();
    let mut out = BTreeMap::new();
    for &a in &all {
        for &b in &all {
            let Some(cochain) = sn_bracket(&representative(p, a), &representative(p, b)) else {
                continue;
            };
            out.insert((a, b), classify(solver, &cochain)?);
        }
    }
    Ok(out)
}

pub fn gerstenhaber_table(solver: &JetSolver) -> Result<GerstenhaberTable> {
    Ok(GerstenhaberTable { wedge: wedge_table(solver)?, bracket: bracket_table(solver)? })
}

fn bilinear(table: &BTreeMap<Pair, HpElement>, a: &HpElement, b: &HpElement) -> Option<HpElement> {
    let mut acc = HpElement::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            acc = acc.add(&table.get(&(*ea, *eb))?.scale(&(ca * cb)));
        }
    }
    Some(acc)
}

impl GerstenhaberTable {
    /// Wedge of two classes by table lookup; `None` if a degree overflows.
    pub fn wedge_of(&self, a: &HpElement, b: &HpElement) -> Option<HpElement> {
        bilinear(&self.wedge, a, b)
    }

    pub fn bracket_of(&self, a: &HpElement, b: &HpElement) -> Option<HpElement> {
        bilinear(&self.bracket, a, b)
    }

    pub fn to_json(&self) -> Value {
        let dump = |m: &BTreeMap<Pair, HpElement>| {
            Value::Array(
                m.iter()
                    .map(|((a, b), r)| json!({"left": a.label(), "right": b.label(), "result": r.to_json()}))
                    .collect(),
            )
        };
        json!({"wedge": dump(&self.wedge), "bracket": dump(&self.bracket)})
    }

    /// Entries outside the `[v_i, w_j]` block (and its mirror) that are
    /// nonzero, plus, when `h = 0`, nonzero `t` coordinates inside the block.
    pub fn vanishing_violations(&self, h_is_zero: bool) -> Vec<String> {
        let mut out = Vec::new();
        for ((a, b), r) in &self.bracket {
            let in_block = matches!(
                (a, b),
                (BasisElement::V(_), BasisElement::W(_)) | (BasisElement::W(_), BasisElement::V(_))
            );
            if !in_block && !r.is_zero() {
                out.push(format!("[{a}, {b}] = {r}"));
            }
            if in_block && h_is_zero && r.terms().any(|(e, _)| matches!(e, BasisElement::T(_))) {
                out.push(format!("[{a}, {b}] = {r} has t-coordinates with h = 0"));
            }
        }
        out
    }
}

/// Outcome of the graded Leibniz closure test.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeibnizReport {
    pub triples_checked: usize,
    pub failures: Vec<String>,
}

/// Checks `[F^G, H] = [F, H]^G + (-1)^{(r-1)p} F^[G, H]` on basis triples,
/// using table lookups only. Brackets of two functions are zero.
pub fn leibniz_check(table: &GerstenhaberTable, basis: &CanonicalBasis) -> LeibnizReport {
    let mut report = LeibnizReport::default();
    let all = basis.all();
    let bracket = |a: &HpElement, b: &HpElement, da: u8, db: u8| -> Option<HpElement> {
        if da == 0 && db == 0 {
            Some(HpElement::zero())
        } else {
            table.bracket_of(a, b)
        }
    };
    for &f in &all {
        for &g in &all {
            for &h in &all {
                let (p, q, r) = (f.degree(), g.degree(), h.degree());
                if p + q > 2 || p + q + r > 3 || (p + q == 0 && r == 0) {
                    continue;
                }
                let (ef, eg, eh) = (HpElement::basis(f), HpElement::basis(g), HpElement::basis(h));
                let fg = table.wedge_of(&ef, &eg).expect("p + q <= 2");
                let lhs = bracket(&fg, &eh, p + q, r);
                let t1 = bracket(&ef, &eh, p, r).and_then(|x| {
                    if x.is_zero() {
                        Some(HpElement::zero())
                    } else {
                        table.wedge_of(&x, &eg)
                    }
                });
                let t2 = bracket(&eg, &eh, q, r).and_then(|x| {
                    if x.is_zero() {
                        Some(HpElement::zero())
                    } else {
                        table.wedge_of(&ef, &x)
                    }
                });
                let (Some(lhs), Some(t1), Some(t2)) = (lhs, t1, t2) else {
                    continue;
                };
                let sign = if ((r as i64 - 1) * p as i64).rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
                let rhs = t1.add(&t2.scale(&sign));
                report.triples_checked += 1;
                if lhs != rhs {
                    report.failures.push(format!("[{f}^{g}, {h}]: {lhs} != {rhs}"));
                }
            }
        }
    }
    report
}

/// Generators-and-relations description of `HP*` as a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub degree1: Vec<String>,
    pub degree2: Vec<String>,
    pub relations: Vec<String>,
    pub identifications: Vec<String>,
    pub brackets: Vec<String>,
    pub canonical: String,
}

impl Presentation {
    pub fn to_json(&self) -> Value {
        json!({
            "canonical": self.canonical,
            "generators": {"1": self.degree1, "2": self.degree2},
            "relations": self.relations,
            "identifications": self.identifications,
            "brackets": self.brackets,
        })
    }
}

/// `K<u, v..>/(..) x_K K[w1]/(w1^2) x_K ..` for the given generator names,
/// with `degree1[0]` playing the role of `u`.
pub fn canonical_string(degree1: &[String], degree2: &[String]) -> String {
    let mut out = if degree1.len() <= 1 {
        let u = degree1.first().map(String::as_str).unwrap_or("u");
        format!("K[{u}]/({u}^2)")
    } else {
        let u = &degree1[0];
        let mut rel: Vec<String> = degree1.iter().map(|g| format!("{g}^2")).collect();
        for v in &degree1[1..] {
            rel.push(format!("{u}*{v} + {v}*{u}"));
        }
        for (a, va) in degree1.iter().enumerate().skip(1) {
            for vb in degree1.iter().skip(a + 1) {
                rel.push(format!("{va}*{vb}"));
            }
        }
        format!("K<{}>/({})", degree1.join(", "), rel.join(", "))
    };
    for w in degree2 {
        out.push_str(&format!(" x_K K[{w}]/({w}^2)"));
    }
    out
}

/// Fiber-product presentation; nonzero bracket entries are listed alongside.
pub fn presentation(p: &PoissonStructure, table: Option<&GerstenhaberTable>) -> Presentation {
    let basis = CanonicalBasis::new(p);
    let mut degree1 = vec!["u".to_string()];
    degree1.extend(basis.v.iter().map(|e| e.label()));
    let degree2: Vec<String> = basis.w.iter().map(|e| e.label()).collect();
    let mut relations: Vec<String> = degree1.iter().map(|g| format!("{g}^2")).collect();
    for v in basis.v.iter() {
        relations.push(format!("u*{v} + {v}*u"));
    }
    for (a, va) in basis.v.iter().enumerate() {
        for vb in basis.v.iter().skip(a + 1) {
            relations.push(format!("{va}*{vb}"));
        }
    }
    let identifications = basis
        .t
        .iter()
        .zip(&basis.v)
        .map(|(t, v)| format!("{t} = 1/{} u*{v}", p.d))
        .collect();
    let canonical = canonical_string(&degree1, &degree2);
    let brackets = table
        .map(|t| {
            t.bracket
                .iter()
                .filter(|((a, b), r)| !r.is_zero() && a < b)
                .map(|((a, b), r)| format!("[{a}, {b}] = {r}"))
                .collect()
        })
        .unwrap_or_default();
    for w in &degree2 {
        relations.push(format!("{w}^2"));
    }
    Presentation { degree1, degree2, relations, identifications, brackets, canonical }
}

/// Bivector `u ^ v_j = d t_j` in HP coordinates.
pub fn u_wedge_v(p: &PoissonStructure, j: usize) -> HpElement {
    HpElement::basis(BasisElement::T(j)).scale(&rat(p.d))
}

/// Coefficient-level form of `[v_i, w_j]` before normalization.
pub fn raw_vw_bracket(p: &PoissonStructure, i: usize, j: usize) -> Bivector {
    let deg_u = p.milnor.degrees[j];
    let e = p.pspace.poly(i);
    let eu = &e * &p.milnor.poly(j);
    let first = eu.scale(&rat(deg_u - p.d));
    let second = (&p.h * &eu).scale(&rat(deg_u - 2 * p.d + p.w.sum()));
    Bivector::new(&first + &second)
}
