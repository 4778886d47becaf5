use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use planar_poisson::arnold::{
    catalog_sweep, instantiate, parse_selector, verify, SingularityType, VerifyOptions,
};
use planar_poisson::cohomology::{
    hp_dimensions, make_structure_with_basis, normalize_hp2_traced, JetSolver, PoissonStructure,
};
use planar_poisson::gerstenhaber::{gerstenhaber_table, presentation, GerstenhaberTable};
use planar_poisson::oracle::{graded_dims, jet_dims, DimensionReport};
use planar_poisson::polyring::{parse_poly, parse_rational, rat, Monomial, Poly, Rational, WeightSystem};
use planar_poisson::polyvector::{delta0, Bivector, Polyvector};
use planar_poisson::Error;

#[derive(Parser)]
#[command(name = "poisson-hp", version, about = "Poisson cohomology of f(1+h) dx^dy in the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and canonical bases of HP0, HP1, HP2.
    Cohomology(Common),
    /// Reduce a cocycle to coordinates in the canonical basis.
    Normalize {
        #[command(flatten)]
        common: Common,
        /// `{"dxdy": "..."}`, `{"dx": "...", "dy": "..."}`, a JSON string for
        /// a function, or a bare expression read as a bivector coefficient.
        #[arg(allow_hyphen_values = true)]
        cocycle: String,
    },
    /// Schouten-Nijenhuis bracket table on the canonical basis.
    Brackets(Common),
    /// Wedge table on the canonical basis.
    Wedge(Common),
    /// Compare against the catalog fixtures.
    Verify(VerifyArgs),
    /// Brute-force dimensions from the cochain complex.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Last slice degree in graded mode (default 2d).
        #[arg(long)]
        max_degree: Option<i64>,
    },
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    jet_order: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Input {
    #[arg(long, conflicts_with = "type_name", required_unless_present = "type_name")]
    f: Option<String>,
    #[arg(long, requires = "f")]
    h: Option<String>,
    /// `w1,w2`
    #[arg(long, requires = "f", required_unless_present = "type_name")]
    weights: Option<String>,
    /// Catalog selector such as A3+, D4-, D5, E7.
    #[arg(long = "type", id = "type_name")]
    type_name: Option<String>,
    #[arg(long, requires = "type_name", allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, requires = "type_name", allow_hyphen_values = true)]
    mu: Option<String>,
    /// File listing the Milnor basis monomials (JSON array or comma/whitespace separated).
    #[arg(long, requires = "f")]
    basis_override: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Selector; family names such as A2p or D2p+1 expand over p <= --p-max.
    #[arg(long = "type", required_unless_present = "sweep", conflicts_with = "sweep")]
    type_name: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Every catalog entry on the parameter grid {0, 1, -1, 1/2}.
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 4)]
    p_max: u32,
    #[arg(long)]
    jet_order: Option<i64>,
    /// Skip the cochain-level confirmation of every table entry.
    #[arg(long)]
    skip_oracle_brackets: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Graded,
    Jet,
}

/// A failed run and its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotACocycle => 3,
            Error::JetUnstable(..) => 5,
            Error::Invariant(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<Output, Failure>;

/// Text and JSON forms of one result, plus the exit code to report.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Cohomology(c) | Command::Brackets(c) | Command::Wedge(c) => c.json,
        Command::Normalize { common, .. } | Command::Oracle { common, .. } => common.json,
        Command::Verify(v) => v.json,
    };
    match run(cli.command) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(fail) => {
            if json {
                println!("{}", json!({"error": fail.message, "exit_code": fail.code}));
            }
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Cohomology(c) => {
            let p = load(&c.input)?;
            jet_order(&p, c.jet_order)?;
            cohomology(&p)
        }
        Command::Normalize { common, cocycle } => {
            let p = load(&common.input)?;
            let order = jet_order(&p, common.jet_order)?;
            normalize(&p, &cocycle, order)
        }
        Command::Brackets(c) => {
            let p = load(&c.input)?;
            let table = table(&p, c.jet_order)?;
            Ok(table_output(&p, &table, true))
        }
        Command::Wedge(c) => {
            let p = load(&c.input)?;
            let table = table(&p, c.jet_order)?;
            Ok(table_output(&p, &table, false))
        }
        Command::Verify(v) => run_verify(&v),
        Command::Oracle { common, mode, max_degree } => {
            let p = load(&common.input)?;
            let order = jet_order(&p, common.jet_order)?;
            oracle(&p, mode, max_degree, order)
        }
    }
}

fn rational(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::invalid(format!("--{what}: {e}")))
}

fn weights(text: &str) -> Result<WeightSystem, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::invalid(format!("--weights expects w1,w2, got '{text}'")));
    };
    let num = |s: &str| s.parse::<i64>().map_err(|_| Failure::invalid(format!("--weights: '{s}' is not an integer")));
    Ok(WeightSystem::new(num(a)?, num(b)?)?)
}

fn read_basis(path: &Path) -> Result<Vec<Monomial>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("--basis-override {}: {e}", path.display())))?;
    let items: Vec<String> = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("--basis-override: {e}")))?
    } else {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    };
    items
        .iter()
        .map(|s| {
            let p = parse_poly(s)?;
            let single = p.terms().next().filter(|(_, c)| p.len() == 1 && **c == rat(1)).map(|(m, _)| *m);
            single.ok_or_else(|| Failure::from(Error::BasisOverride(format!("'{s}' is not a monomial"))))
        })
        .collect()
}

fn selector(name: &str, lambda: Option<&str>, mu: Option<&str>) -> Result<SingularityType, Failure> {
    let families = parse_selector(name, 2)?;
    let [family] = families.as_slice() else {
        return Err(Failure::invalid(format!("'{name}' names a whole family; pick one member")));
    };
    let lambda = lambda.map(|s| rational(s, "lambda")).transpose()?;
    let mu = mu.map(|s| rational(s, "mu")).transpose()?;
    Ok(SingularityType::new(*family, lambda, mu)?)
}

fn load(input: &Input) -> Result<PoissonStructure, Failure> {
    if let Some(name) = &input.type_name {
        let t = selector(name, input.lambda.as_deref(), input.mu.as_deref())?;
        return Ok(instantiate(&t)?);
    }
    let f = parse_poly(input.f.as_deref().expect("clap enforces one input source"))?;
    let h = match &input.h {
        Some(h) => parse_poly(h)?,
        None => Poly::zero(),
    };
    let w = weights(input.weights.as_deref().expect("clap requires --weights with --f"))?;
    let basis = input.basis_override.as_deref().map(read_basis).transpose()?;
    Ok(make_structure_with_basis(f, h, w, basis)?)
}

fn jet_order(p: &PoissonStructure, order: Option<i64>) -> Result<Option<i64>, Failure> {
    match order {
        Some(n) if n < 2 * p.d => Err(Failure::invalid(format!("--jet-order must be at least 2d = {}", 2 * p.d))),
        other => Ok(other),
    }
}

fn table(p: &PoissonStructure, order: Option<i64>) -> Result<GerstenhaberTable, Failure> {
    let order = jet_order(p, order)?;
    let solver = JetSolver::new(p, order)?;
    Ok(gerstenhaber_table(&solver)?)
}

fn header(p: &PoissonStructure) -> (String, Value) {
    let text = format!(
        "f = {}\nh = {}\nweights = ({}, {}), d = {}, s = {}\n",
        p.f.render(),
        p.h.render(),
        p.w.w1,
        p.w.w2,
        p.d,
        p.s()
    );
    let json = json!({
        "f": p.f.render(),
        "h": p.h.render(),
        "weights": [p.w.w1, p.w.w2],
        "d": p.d,
        "s": p.s(),
    });
    (text, json)
}

fn cohomology(p: &PoissonStructure) -> Outcome {
    let (mut text, mut out) = header(p);
    let dims = hp_dimensions(p);
    writeln!(text, "dims (HP0, HP1, HP2, HP3) = ({}, {}, {}, {})", dims[0], dims[1], dims[2], dims[3]).unwrap();
    writeln!(text, "c = {}, r = {}", p.c(), p.r()).unwrap();
    writeln!(text, "Milnor basis u_i [degree]:").unwrap();
    for (i, (m, deg)) in p.milnor.monomials.iter().zip(&p.milnor.degrees).enumerate() {
        writeln!(text, "  w{} = {m} dx^dy  [{deg}]", i + 1).unwrap();
    }
    writeln!(text, "P_s basis e_j (s = {}):", p.s()).unwrap();
    for (j, m) in p.pspace.monomials.iter().enumerate() {
        writeln!(text, "  e{} = {m}", j + 1).unwrap();
    }
    let u = Polyvector::Vec(p.u_rep()).to_json();
    writeln!(text, "u = {u}").unwrap();
    let mut vs = Vec::new();
    for j in 0..p.r() {
        let v = Polyvector::Vec(p.v_rep(j)).to_json();
        writeln!(text, "v{} = {v}", j + 1).unwrap();
        vs.push(v);
    }
    out["dims"] = json!(dims);
    out["c"] = json!(p.c());
    out["r"] = json!(p.r());
    out["milnor_basis"] = p
        .milnor
        .monomials
        .iter()
        .zip(&p.milnor.degrees)
        .map(|(m, deg)| json!({"monomial": m.to_string(), "degree": deg}))
        .collect();
    out["p_space"] = p.pspace.monomials.iter().map(|m| json!(m.to_string())).collect();
    out["u"] = u;
    out["v"] = Value::Array(vs);
    Ok(Output::ok(text, out))
}

fn parse_cocycle(text: &str) -> Result<Polyvector, Failure> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => Ok(Polyvector::from_json(&v)?),
        Err(_) => Ok(Polyvector::Biv(Bivector::new(parse_poly(text)?))),
    }
}

fn normalize(p: &PoissonStructure, cocycle: &str, order: Option<i64>) -> Outcome {
    let (mut text, mut out) = header(p);
    let input = parse_cocycle(cocycle)?;
    writeln!(text, "input = {}", input.to_json()).unwrap();
    out["input"] = input.to_json();
    match &input {
        Polyvector::Fn(g) => {
            if !delta0(&p.pi(), g).is_zero() {
                return Err(Error::NotACocycle.into());
            }
            let c = g.coeff(Monomial::new(0, 0));
            writeln!(text, "degree 0 class = {c} * 1").unwrap();
            out["degree"] = json!(0);
            out["class"] = json!({"one": c.to_string()});
        }
        Polyvector::Vec(x) => {
            let class = JetSolver::new(p, order)?.normalize_hp1(x)?;
            writeln!(text, "degree 1 class: {} * u", class.alpha).unwrap();
            for (j, b) in class.beta.iter().enumerate() {
                writeln!(text, "  + {b} * v{}", j + 1).unwrap();
            }
            out["degree"] = json!(1);
            out["class"] = class.to_json(p);
        }
        Polyvector::Biv(b) => {
            let (class, trace) = normalize_hp2_traced(b, p)?;
            writeln!(text, "degree 2 class:").unwrap();
            for (i, l) in class.lambda.iter().enumerate() {
                writeln!(text, "  w{} ({}): {l}", i + 1, p.milnor.monomials[i]).unwrap();
            }
            for (j, q) in class.q.iter().enumerate() {
                writeln!(text, "  t{} ({} f): {q}", j + 1, p.pspace.monomials[j]).unwrap();
            }
            let trace_json = trace.to_json();
            writeln!(text, "trace:").unwrap();
            for comp in trace_json.as_array().into_iter().flatten() {
                writeln!(text, "  degree {}: {} (rule {}, k = {})", comp["degree"], comp["component"], comp["rule"], comp["k"])
                    .unwrap();
                writeln!(text, "    cofactor {}", comp["cofactor"]).unwrap();
                for (i, x) in comp["chain"].as_array().into_iter().flatten().enumerate() {
                    writeln!(text, "    X{i} = {x}").unwrap();
                }
                writeln!(text, "    lambda {}  q {}", comp["lambda"], comp["q"]).unwrap();
            }
            out["degree"] = json!(2);
            out["class"] = class.to_json(p);
            out["trace"] = trace_json;
        }
    }
    Ok(Output::ok(text, out))
}

fn table_output(p: &PoissonStructure, table: &GerstenhaberTable, brackets: bool) -> Output {
    let (mut text, mut out) = header(p);
    let entries = if brackets { &table.bracket } else { &table.wedge };
    let (open, sep, close) = if brackets { ("[", ", ", "]") } else { ("", " ^ ", "") };
    for ((a, b), r) in entries {
        writeln!(text, "{open}{a}{sep}{b}{close} = {r}").unwrap();
    }
    let key = if brackets { "bracket" } else { "wedge" };
    out[key] = table.to_json()[key].clone();
    if brackets {
        let pres = presentation(p, Some(table));
        writeln!(text, "presentation: {}", pres.canonical).unwrap();
        out["presentation"] = serde_json::to_value(&pres).expect("plain data");
    }
    Output::ok(text, out)
}

fn run_verify(v: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions { jet_order: v.jet_order, oracle_brackets: !v.skip_oracle_brackets };
    if v.sweep {
        let summary = catalog_sweep(v.p_max, &opts)?;
        let code = if summary.passed() { 0 } else { 4 };
        let json = serde_json::to_value(&summary).expect("plain data");
        return Ok(Output { text: summary.render(), json, code });
    }
    let name = v.type_name.as_deref().expect("clap requires --type without --sweep");
    let lambda = v.lambda.as_deref().map(|s| rational(s, "lambda")).transpose()?;
    let mu = v.mu.as_deref().map(|s| rational(s, "mu")).transpose()?;
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut passed = true;
    for family in parse_selector(name, v.p_max)? {
        let t = SingularityType::new(family, lambda.clone(), mu.clone())?;
        if let Some(n) = v.jet_order {
            jet_order(&instantiate(&t)?, Some(n))?;
        }
        let rep = verify(&t, &opts)?;
        passed &= rep.passed();
        text.push_str(&rep.render());
        reports.push(rep.to_json());
    }
    let json = if reports.len() == 1 { reports.remove(0) } else { Value::Array(reports) };
    Ok(Output { text, json, code: if passed { 0 } else { 4 } })
}

fn dims_text(rep: &DimensionReport) -> String {
    let mut text = format!("mode = {}, bound = {}\n", rep.mode, rep.bound);
    if !rep.rows.is_empty() {
        writeln!(text, "{:>6}  {:>14}  {:>5} {:>5}  {:>10}", "degree", "cochain dims", "rk0", "rk1", "HP").unwrap();
        for row in &rep.rows {
            writeln!(
                text,
                "{:>6}  {:>14}  {:>5} {:>5}  {:>10}",
                row.degree,
                format!("{:?}", row.dims),
                row.rank0,
                row.rank1,
                format!("{:?}", row.hp)
            )
            .unwrap();
        }
    }
    if let Some(j) = &rep.jet {
        writeln!(
            text,
            "orders {} and {}: {:?} and {:?} ({})",
            j.orders.0,
            j.orders.1,
            rep.totals,
            j.totals_at_second,
            if j.stabilized { "stable" } else { "unstable" }
        )
        .unwrap();
    }
    let [a, b, c] = rep.totals;
    let [x, y, z] = rep.expected;
    writeln!(text, "oracle (HP0, HP1, HP2) = ({a}, {b}, {c}); formula ({x}, {y}, {z})").unwrap();
    if !rep.hp2_degrees.is_empty() {
        writeln!(text, "HP2 coefficient degrees: {:?}", rep.hp2_degrees).unwrap();
    }
    writeln!(text, "agrees: {}", rep.agrees()).unwrap();
    text
}

fn oracle(p: &PoissonStructure, mode: Option<Mode>, max_degree: Option<i64>, order: Option<i64>) -> Outcome {
    let mode = mode.unwrap_or(if p.h.is_zero() { Mode::Graded } else { Mode::Jet });
    let rep = match mode {
        Mode::Graded => graded_dims(p, max_degree.unwrap_or(2 * p.d))?,
        Mode::Jet => jet_dims(p, order.unwrap_or_else(|| p.jet_order_default())),
    };
    let (mut text, mut out) = header(p);
    text.push_str(&dims_text(&rep));
    out["oracle"] = rep.to_json();
    let code = if !rep.stabilized() {
        5
    } else if rep.agrees() {
        0
    } else {
        4
    };
    Ok(Output { text, json: out, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::NotACocycle).code, 3);
        assert_eq!(Failure::from(Error::JetUnstable(8, 9)).code, 5);
        assert_eq!(Failure::from(Error::InfiniteCodimension { degree: 1 }).code, 2);
        assert_eq!(Failure::from(Error::Catalog("A3".into())).code, 2);
        assert_eq!(Failure::from(Error::Invariant("x".into())).code, 1);
    }

    #[test]
    fn weight_and_cocycle_parsing() {
        assert_eq!(weights(" 3, 2").unwrap(), WeightSystem::new(3, 2).unwrap());
        assert!(weights("3").is_err());
        assert!(weights("0,1").is_err());
        assert!(matches!(parse_cocycle("x*y").unwrap(), Polyvector::Biv(_)));
        assert!(matches!(parse_cocycle(r#"{"dx": "y"}"#).unwrap(), Polyvector::Vec(_)));
        assert!(matches!(parse_cocycle(r#""x""#).unwrap(), Polyvector::Fn(_)));
        assert!(parse_cocycle(r#"{"dz": "y"}"#).is_err());
    }
}
