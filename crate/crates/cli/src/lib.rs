//! Command-line front end. [`run`] takes the argument list and standard input
//! and returns the exit code with everything that would be printed, so the
//! binary and the tests share one code path.

use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use structurable::algebra::AlgebraWithInvolution;
use structurable::analysis::{
    derivation_algebra, enumerate_subalgebras, functional_identity_space, is_algebra_automorphism, subspace_checks,
    verify_automorphism_family, verify_isomorphism, WORDS,
};
use structurable::classify::{classify_12, classify_21, Params12, Params21};
use structurable::construct::{ak_construct, allison_hein};
use structurable::fixtures;
use structurable::lie::{LieAlgebra, LieJson};
use structurable::linalg::{Matrix, Subspace};
use structurable::registry::{canonical_algebra, Label};
use structurable::reproduce::{self, format_element, Check};
use structurable::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "21")]
    T21,
    #[value(name = "12")]
    T12,
}

#[derive(Parser, Debug)]
#[command(name = "structurable", version, about = "Exact computations with small structurable algebras")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Algebra inputs are `registry://<label>`, a JSON file path, or `-` for standard input.
#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the structurable identity on all basis quadruples
    Verify {
        input: String,
        /// Also report derivations, identities, subalgebras and the graded Lie algebra
        #[arg(long)]
        report: bool,
    },
    /// Normal form of a three-dimensional parametric algebra
    Classify {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        /// JSON object such as {"beta1": "1", "beta3": "4", "alpha3": "-4"}; `-` reads standard input
        #[arg(long)]
        params: String,
    },
    /// Derivation algebra as an RREF basis of matrices
    Derivations {
        input: String,
        /// Only derivations commuting with the involution
        #[arg(long)]
        bar: bool,
    },
    /// Test a matrix, or the bundled families of a registry algebra
    Automorphisms {
        input: String,
        /// Matrix rows as JSON; columns are images of basis vectors
        #[arg(long)]
        matrix: Option<String>,
        /// Also require commuting with the involution
        #[arg(long)]
        bar: bool,
    },
    /// Degree-two functional identities
    Identities { input: String },
    /// Subalgebras whose echelon entries lie in a grid of small values
    Subalgebras {
        input: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Conservative algebra x*y = T_x(y)
    AllisonHein { input: String },
    /// Five-graded Lie algebra in the interchange format
    AkBuild {
        input: String,
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
    /// Jacobi, perfectness, radical and Levi factor of a Lie algebra
    AnalyzeLie { input: String },
    /// Recompute every bundled table and compare with the transcriptions
    ReproducePaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        draws: usize,
        #[arg(long, default_value_t = reproduce::GRID_BOUND)]
        bound: i64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotStructurable(_) | Error::FieldExtensionRequired(_) | Error::SingularSample(_) => {
                Fail::Mismatch(e.to_string())
            }
            _ => Fail::Usage(e.to_string()),
        }
    }
}

/// A result document plus whether it records a failed verification.
struct Report {
    value: Value,
    ok: bool,
    text: Option<String>,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, ok: true, text: None }
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.cmd, stdin) {
        Ok(rep) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&rep.value).expect("serializable")),
                Format::Text => rep.text.unwrap_or_else(|| to_text(&rep.value, "")),
            };
            Outcome { code: if rep.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Fail::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Fail::Mismatch(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn read_source(src: &str, stdin: &mut dyn Read) -> Result<String, Fail> {
    if src == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Fail::Usage(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| Fail::Usage(format!("{src}: {e}")))
    }
}

fn registry_label(src: &str) -> Option<&str> {
    src.strip_prefix("registry://")
}

fn load_algebra(src: &str, stdin: &mut dyn Read) -> Result<AlgebraWithInvolution, Fail> {
    if let Some(name) = registry_label(src) {
        let label: Label = name.parse()?;
        let dim = match label {
            Label::Universal(k, m) => k + m,
            _ => 3,
        };
        return Ok(canonical_algebra(label, dim)?);
    }
    Ok(AlgebraWithInvolution::from_json(&read_source(src, stdin)?)?)
}

fn load_lie(src: &str, stdin: &mut dyn Read) -> Result<LieAlgebra, Fail> {
    let text = read_source(src, stdin)?;
    let j: LieJson = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("Lie algebra JSON: {e}")))?;
    Ok(j.to_lie()?)
}

fn label_of(a: &AlgebraWithInvolution) -> Value {
    a.label.clone().map_or(Value::Null, Value::String)
}

fn rows(m: &Matrix) -> Value {
    serde_json::to_value(m.to_rows()).expect("serializable")
}

fn matrices(s: &Subspace, n: usize) -> Value {
    Value::Array(s.basis.iter().map(|v| rows(&Matrix::from_flat(n, n, v.clone()))).collect())
}

fn vectors(s: &Subspace) -> Value {
    serde_json::to_value(&s.basis).expect("serializable")
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, Fail> {
    serde_json::from_str(text).map_err(|e| Fail::Usage(format!("{what}: {e}")))
}

fn dispatch(cmd: &Cmd, stdin: &mut dyn Read) -> Result<Report, Fail> {
    match cmd {
        Cmd::Verify { input, report } => verify(&load_algebra(input, stdin)?, *report),
        Cmd::Classify { kind, params } => {
            let text = if params == "-" { read_source("-", stdin)? } else { params.clone() };
            let res = match kind {
                Kind::T21 => classify_21(&parse_json::<Params21>("parameters", &text)?)?,
                Kind::T12 => classify_12(&parse_json::<Params12>("parameters", &text)?)?,
            };
            Ok(Report::ok(json!({"label": res.label, "basis_change": rows(&res.basis_change)})))
        }
        Cmd::Derivations { input, bar } => {
            let a = load_algebra(input, stdin)?;
            let d = derivation_algebra(&a, *bar);
            Ok(Report::ok(json!({"label": label_of(&a), "bar": bar, "dim": d.dim(), "basis": matrices(&d, a.dim())})))
        }
        Cmd::Automorphisms { input, matrix, bar } => automorphisms(input, matrix.as_deref(), *bar, stdin),
        Cmd::Identities { input } => {
            let a = load_algebra(input, stdin)?;
            let s = functional_identity_space(&a);
            Ok(Report::ok(json!({"label": label_of(&a), "words": WORDS, "dim": s.dim(), "basis": vectors(&s)})))
        }
        Cmd::Subalgebras { input, dim, bound } => {
            let a = load_algebra(input, stdin)?;
            if *dim > a.dim() || *bound < 1 {
                return Err(Fail::Usage(format!("need 0 <= dim <= {} and bound >= 1", a.dim())));
            }
            let mut list = Vec::new();
            for s in enumerate_subalgebras(&a, *dim, *bound) {
                let c = subspace_checks(&a, &s)?;
                list.push(json!({"basis": vectors(&s), "ideal": c.is_ideal, "bar_closed": c.is_bar_closed}));
            }
            Ok(Report::ok(json!({"label": label_of(&a), "dim": dim, "bound": bound, "count": list.len(), "subspaces": list})))
        }
        Cmd::AllisonHein { input } => {
            let a = load_algebra(input, stdin)?;
            let c = allison_hein(&a);
            let table = serde_json::to_value(c.table.constants()).expect("serializable");
            Ok(Report::ok(json!({"label": label_of(&a), "dim": a.dim(), "table": table})))
        }
        Cmd::AkBuild { input, output } => {
            let a = load_algebra(input, stdin)?;
            if !a.is_structurable() {
                return Err(Fail::Mismatch("input is not structurable".into()));
            }
            let f = ak_construct(&a)?;
            let value = serde_json::to_value(f.to_json()).expect("serializable");
            match output {
                Some(path) => {
                    let text = format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"));
                    fs::write(path, text).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
                    Ok(Report::ok(json!({"dim": f.lie.dim(), "written": path})))
                }
                None => Ok(Report::ok(value)),
            }
        }
        Cmd::AnalyzeLie { input } => analyze_lie(&load_lie(input, stdin)?),
        Cmd::ReproducePaper { seed, draws, bound } => Ok(reproduce_report(*seed, *draws, *bound)),
    }
}

fn verify(a: &AlgebraWithInvolution, report: bool) -> Result<Report, Fail> {
    let structurable = a.is_structurable();
    let violation = a.first_violation().map(|((i, j, k, l), d)| {
        json!({"basis": [i + 1, j + 1, k + 1, l + 1], "defect": format_element(&d)})
    });
    let mut out = Map::new();
    out.insert("label".into(), label_of(a));
    out.insert("structurable".into(), json!(structurable));
    out.insert("defects".into(), json!(a.defects()));
    out.insert("violation".into(), violation.unwrap_or(Value::Null));
    if let Ok(split) = a.hs_split() {
        out.insert("type".into(), json!(split.kind()));
    }
    if report {
        out.insert("der_dim".into(), json!(derivation_algebra(a, false).dim()));
        out.insert("bar_der_dim".into(), json!(derivation_algebra(a, true).dim()));
        out.insert("identity_space_dim".into(), json!(functional_identity_space(a).dim()));
        let mut subs = Map::new();
        for k in 1..a.dim() {
            let found = enumerate_subalgebras(a, k, 1);
            let mut ideals = 0;
            let mut bar = 0;
            for s in &found {
                let c = subspace_checks(a, s)?;
                ideals += usize::from(c.is_ideal);
                bar += usize::from(c.is_bar_closed);
            }
            subs.insert(
                format!("dim{k}"),
                json!({"subalgebras": found.len(), "ideals": ideals, "bar_closed": bar, "grid_bound": 1}),
            );
        }
        out.insert("subalgebras".into(), Value::Object(subs));
        if structurable {
            let f = ak_construct(a)?;
            out.insert("ak".into(), lie_summary(&f.lie)?);
        }
    }
    Ok(Report { value: Value::Object(out), ok: structurable, text: None })
}

fn lie_summary(l: &LieAlgebra) -> Result<Value, Fail> {
    let jac = l.check_jacobi();
    let mut out = Map::new();
    out.insert("dim".into(), json!(l.dim()));
    out.insert("jacobi".into(), json!(if jac.is_empty() { "pass" } else { "fail" }));
    if !jac.is_empty() {
        out.insert("jacobi_failures".into(), json!(jac.len()));
        let (i, j, k) = jac[0].triple;
        out.insert("first_failure".into(), json!([i, j, k]));
        return Ok(Value::Object(out));
    }
    let rad = l.radical();
    out.insert("perfect".into(), json!(l.is_perfect()));
    out.insert("radical_dim".into(), json!(rad.dim()));
    out.insert("radical_abelian".into(), json!(l.is_abelian_on(&rad)));
    let nil = if rad.dim() == 0 { None } else { l.nilindex_of(&rad) };
    out.insert("radical_nilindex".into(), json!(nil));
    let levi = if rad.dim() == l.dim() { String::new() } else { l.levi_profile()?.summary() };
    out.insert("levi".into(), json!(levi));
    Ok(Value::Object(out))
}

fn analyze_lie(l: &LieAlgebra) -> Result<Report, Fail> {
    let value = lie_summary(l)?;
    let ok = value["jacobi"] == "pass";
    Ok(Report { value, ok, text: None })
}

fn automorphisms(input: &str, matrix: Option<&str>, bar: bool, stdin: &mut dyn Read) -> Result<Report, Fail> {
    let a = load_algebra(input, stdin)?;
    if let Some(text) = matrix {
        let m = Matrix::from_rows(parse_json("matrix", text)?)?;
        let ok = if bar { verify_isomorphism(&a, &a, &m)? } else { is_algebra_automorphism(&a, &a, &m) };
        return Ok(Report { value: json!({"label": label_of(&a), "bar": bar, "automorphism": ok}), ok, text: None });
    }
    let label: Label = registry_label(input)
        .ok_or_else(|| Fail::Usage("families are bundled for registry:// inputs only; pass --matrix".into()))?
        .parse()?;
    let fx = fixtures::automorphisms()?;
    let mut fams = Vec::new();
    let mut ok = true;
    for f in fx.families.iter().filter(|f| f.algebra == label && (!bar || f.bar)) {
        let pass = verify_automorphism_family(&a, &f.template(), &f.samples, f.bar)?;
        ok &= pass;
        let matrix: Vec<Vec<String>> = f.matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        fams.push(json!({"bar": f.bar, "params": f.params, "matrix": matrix, "samples": f.samples.len(), "passed": pass}));
    }
    if fams.is_empty() {
        return Err(Fail::Usage(format!("no bundled automorphism families for {label}")));
    }
    Ok(Report { value: json!({"label": label, "families": fams}), ok, text: None })
}

fn reproduce_report(seed: u64, draws: usize, bound: i64) -> Report {
    let mut checks: Vec<Check> = reproduce::structurability();
    checks.extend(reproduce::classification(seed, draws));
    checks.extend(reproduce::derivations());
    checks.extend(reproduce::automorphisms());
    checks.extend(reproduce::subalgebras(bound));
    checks.extend(reproduce::identities());
    checks.extend(reproduce::conservative());
    match reproduce::build_all() {
        Ok(built) => {
            checks.extend(reproduce::ak_tables(&built));
            checks.extend(reproduce::lie_structure(&built));
        }
        Err(e) => checks.push(Check { criterion: 8, name: "graded Lie algebras".into(), passed: false, detail: e.to_string() }),
    }
    let ok = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark} [{}] {}\n", c.criterion, c.name));
        if !c.passed {
            for d in c.detail.split("; ") {
                text.push_str(&format!("    - {d}\n"));
            }
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    Report { value: json!({"passed": ok, "checks": checks}), ok, text: Some(text) }
}

/// `key: value` lines, nested keys joined with dots.
fn to_text(v: &Value, prefix: &str) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                out.push_str(&to_text(x, &key));
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&to_text(x, &format!("{prefix}[{i}]")));
            }
            if xs.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
        }
        Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
