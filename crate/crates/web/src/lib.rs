//! Browser bindings. Every export takes plain strings and returns a JSON
//! string, either the result or `{"error": "..."}`, so the same functions
//! run natively in tests.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use planar_poisson::arnold::{instantiate, parse_selector, SingularityType};
use planar_poisson::cohomology::{hp_dimensions, make_structure, normalize_hp2_traced, JetSolver, PoissonStructure};
use planar_poisson::gerstenhaber::{gerstenhaber_table, presentation, BasisElement};
use planar_poisson::polyring::{parse_poly, parse_rational, Poly, WeightSystem};
use planar_poisson::polyvector::{Bivector, Polyvector};

type Outcome = Result<Value, String>;

fn finish(out: Outcome) -> String {
    out.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn optional_rational(text: &str) -> Result<Option<planar_poisson::polyring::Rational>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(None);
    }
    parse_rational(text).map(Some).map_err(|e| e.to_string())
}

fn catalog(name: &str, lambda: &str, mu: &str) -> Result<PoissonStructure, String> {
    let families = parse_selector(name.trim(), 2).map_err(|e| e.to_string())?;
    let [family] = families.as_slice() else {
        return Err(format!("'{name}' names a whole family; pick one member"));
    };
    let t = SingularityType::new(*family, optional_rational(lambda)?, optional_rational(mu)?)
        .map_err(|e| e.to_string())?;
    instantiate(&t).map_err(|e| e.to_string())
}

fn custom(f: &str, h: &str, weights: &str) -> Result<PoissonStructure, String> {
    let f = parse_poly(f).map_err(|e| format!("f: {e}"))?;
    let h = if h.trim().is_empty() { Poly::zero() } else { parse_poly(h).map_err(|e| format!("h: {e}"))? };
    let nums: Vec<i64> = weights
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| format!("weights: '{s}' is not an integer")))
        .collect::<Result<_, _>>()?;
    let [w1, w2] = nums.as_slice() else {
        return Err("weights: expected w1,w2".into());
    };
    let w = WeightSystem::new(*w1, *w2).map_err(|e| e.to_string())?;
    make_structure(f, h, w).map_err(|e| e.to_string())
}

fn cohomology_json(p: &PoissonStructure) -> Value {
    json!({
        "d": p.d,
        "s": p.s(),
        "dims": hp_dimensions(p),
        "milnor_basis": p.milnor.monomials.iter().zip(&p.milnor.degrees)
            .map(|(m, d)| json!({"monomial": m.to_string(), "degree": d}))
            .collect::<Vec<_>>(),
        "p_space": p.pspace.monomials.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "u": Polyvector::Vec(p.u_rep()).to_json(),
        "v": (0..p.r()).map(|j| Polyvector::Vec(p.v_rep(j)).to_json()).collect::<Vec<_>>(),
    })
}

/// Dimensions and canonical bases for `f (1 + h) dx^dy`.
#[wasm_bindgen]
pub fn cohomology(f: &str, h: &str, weights: &str) -> String {
    finish(custom(f, h, weights).map(|p| cohomology_json(&p)))
}

/// The `[v_i, w_j]` block of the bracket table and the presentation for a
/// catalog entry such as `D4-` with the given `lambda` and `mu` (blank for
/// zero).
#[wasm_bindgen]
pub fn bracket_table(name: &str, lambda: &str, mu: &str) -> String {
    finish((|| {
        let p = catalog(name, lambda, mu)?;
        let solver = JetSolver::new(&p, None).map_err(|e| e.to_string())?;
        let table = gerstenhaber_table(&solver).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = (0..p.r())
            .map(|i| {
                let cells: Vec<String> = (0..p.c())
                    .map(|j| table.bracket[&(BasisElement::V(i), BasisElement::W(j))].to_string())
                    .collect();
                json!({ "v": format!("v{}", i + 1), "brackets": cells })
            })
            .collect();
        let pres = presentation(&p, Some(&table));
        Ok(json!({
            "f": p.f.render(),
            "h": p.h.render(),
            "w": p.milnor.monomials.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "rows": rows,
            "wedge_u_v": format!("u^v_j = {} t_j", p.d),
            "presentation": pres.canonical,
        }))
    })())
}

/// Normal form of the bivector `coef dx^dy` for a catalog entry, with the
/// reduction trace.
#[wasm_bindgen]
pub fn normalize(name: &str, lambda: &str, mu: &str, coef: &str) -> String {
    finish((|| {
        let p = catalog(name, lambda, mu)?;
        let b = Bivector::new(parse_poly(coef).map_err(|e| format!("bivector: {e}"))?);
        let (class, trace) = normalize_hp2_traced(&b, &p).map_err(|e| e.to_string())?;
        Ok(json!({ "class": class.to_json(&p), "trace": trace.to_json() }))
    })())
}
