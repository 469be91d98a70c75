use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use msym_core::msym::{
    classify_multivector, euler_homogeneity, graded_bracket, hamiltonian_field, hamiltonian_solve,
    homotopy_operator, nondegeneracy_report, omega_hat, poisson_bracket, primitive, sample_points,
    verify_bracket_theorems, Classification, HamiltonianOutcome, HamiltonianPair, MultisymplecticStructure,
};
use msym_core::stabilizer::{
    certify, closure_check, conformal_stabilizer, invariant_forms, stabilizer_algebra, StabilizerResult,
};
use msym_core::{
    contract, exterior_derivative, verify_graded_identities, Error as CoreError, GradedIdentityReport,
    KForm, KVector, LinearEndo, Point, Rational,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{catalog_get, CatalogEntry};
use crate::parser::{parse_form, parse_vector};
use crate::report::AnalysisReport;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Contract(String),
    /// Help or version text; not a failure.
    #[error("{0}")]
    Display(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Display(_) => 0,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ContractViolation(_) => CliError::Contract(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "msym", version, about = "Exact analysis of multisymplectic forms on R^n")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Structure (or, for `homotopy`, input form) as an expression
    #[arg(long, global = true, allow_hyphen_values = true)]
    form: Option<String>,
    /// Read the expression from a UTF-8 file
    #[arg(long, global = true)]
    file: Option<String>,
    /// Catalog entry: symplectic[:m], volume[:n], multicotangent:q,k, g2
    #[arg(long, global = true)]
    catalog: Option<String>,
    /// Dimension; inferred from the largest index when omitted
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Seed for generated points and test cases
    #[arg(long, global = true, env = "MSYM_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of seeded random sample points added to the fixed ones
    #[arg(long, global = true, default_value_t = 3)]
    samples: usize,
    /// Comma-separated rational coordinates, e.g. 1,2/3,0
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closedness and m-nondegeneracy at sample points
    Check,
    /// Kernel of the contraction map on m-vectors
    Kernel {
        #[arg(long)]
        m: Option<usize>,
    },
    /// Solve i(X) Omega = d(zeta)
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Classify a multivector field as Hamiltonian, locally Hamiltonian or neither
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Poisson bracket of two Hamiltonian forms
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long = "x-field", allow_hyphen_values = true)]
        x_field: Option<String>,
        #[arg(long = "y-field", allow_hyphen_values = true)]
        y_field: Option<String>,
    },
    /// Homotopy primitive of a form
    Homotopy,
    /// Linear stabilizer, conformal stabilizer and invariant forms
    Stab {
        /// Degrees of invariant forms to compute (default k and k-1)
        #[arg(long, value_delimiter = ',')]
        degree: Vec<usize>,
    },
    /// Randomized bracket identity suites
    Identities {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long = "max-degree", default_value_t = 3)]
        max_degree: usize,
    },
}

/// Result of a successful command: the report and its exit code (0, or 1
/// when a verification suite reports a failure).
#[derive(Debug)]
pub struct Outcome {
    pub report: AnalysisReport,
    pub rendered: String,
    pub exit_code: i32,
}

enum Source {
    Text(String),
    Catalog(CatalogEntry),
}

fn source(c: &Common) -> Result<Source> {
    match (&c.form, &c.file, &c.catalog) {
        (Some(f), None, None) => Ok(Source::Text(f.clone())),
        (None, Some(path), None) => fs::read_to_string(path)
            .map(Source::Text)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}"))),
        (None, None, Some(spec)) => catalog_get(spec, c.n).map(Source::Catalog).map_err(CliError::Input),
        (None, None, None) => Err(CliError::Input("one of --form, --file or --catalog is required".into())),
        _ => Err(CliError::Input("use only one of --form, --file and --catalog".into())),
    }
}

fn input_form(c: &Common) -> Result<(KForm, Value)> {
    match source(c)? {
        Source::Text(t) => {
            let f = parse_form(&t, c.n).map_err(|e| CliError::Input(format!("parse error at {e}")))?;
            Ok((f.clone(), json!({ "form": f.to_string() })))
        }
        Source::Catalog(e) => Ok((
            e.omega.clone(),
            json!({ "catalog": e.name, "note": e.note, "form": e.omega.to_string() }),
        )),
    }
}

fn structure(c: &Common) -> Result<(MultisymplecticStructure, Value)> {
    let (omega, echo) = input_form(c)?;
    Ok((MultisymplecticStructure::new(omega)?, echo))
}

fn parse_point(text: &str, n: usize) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Input(format!("invalid coordinate '{}'", s.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(CliError::Input(format!("point has {} coordinates, expected {n}", coords.len())));
    }
    Ok(Point::new(coords))
}

fn points(c: &Common, n: usize) -> Result<Vec<Point>> {
    match &c.point {
        Some(p) => Ok(vec![parse_point(p, n)?]),
        None => Ok(sample_points(n, c.samples, c.seed)),
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn identity_reports(reports: &[GradedIdentityReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "identity": r.identity,
                    "cases": r.cases,
                    "passed": r.passed,
                    "counterexample": r.counterexample,
                })
            })
            .collect(),
    )
}

fn check(c: &Common) -> Result<(Value, Value)> {
    let (s, mut echo) = structure(c)?;
    let pts = points(c, s.dim())?;
    let r = nondegeneracy_report(&s, &pts)?;
    echo["sample_points"] = json!(strings(&pts));
    let per_m: Vec<Value> = r
        .per_m
        .iter()
        .map(|d| {
            json!({
                "m": d.m,
                "floor": d.floor,
                "min_kernel": d.min_kernel,
                "max_kernel": d.max_kernel,
                "nondegenerate": d.nondegenerate,
            })
        })
        .collect();
    Ok((
        echo,
        json!({
            "dim": r.dim,
            "degree": r.degree,
            "closed": r.closed,
            "multisymplectic": r.multisymplectic,
            "strongly_nondegenerate": r.strongly_nondegenerate,
            "per_m": per_m,
            "euler_homogeneity": euler_homogeneity(&s).map(|c| c.to_string()),
        }),
    ))
}

fn kernel(c: &Common, m: Option<usize>) -> Result<(Value, Value)> {
    let (s, mut echo) = structure(c)?;
    let pts = points(c, s.dim())?;
    let ms: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (1..s.degree()).collect(),
    };
    let mut out = Vec::new();
    for &m in &ms {
        for p in &pts {
            let h = omega_hat(&s, m, p)?;
            out.push(json!({
                "m": m,
                "point": p.to_string(),
                "rank": h.rank,
                "kernel_dim": h.kernel_dim(),
                "floor": msym_core::msym::kernel_floor(s.dim(), s.degree(), m),
                "kernel": strings(&h.kernel),
            }));
        }
    }
    echo["m"] = json!(ms);
    Ok((echo, json!({ "kernels": out })))
}

fn hamiltonian_degree(s: &MultisymplecticStructure, zeta: &KForm, m: Option<usize>) -> Result<usize> {
    match m {
        Some(m) => Ok(m),
        None if zeta.degree() + 2 <= s.degree() => Ok(s.degree() - zeta.degree() - 1),
        None => Err(CliError::Input(format!(
            "a {}-form cannot be a Hamiltonian form for a {}-form structure",
            zeta.degree(),
            s.degree()
        ))),
    }
}

fn solve(c: &Common, zeta: &str, m: Option<usize>) -> Result<(Value, Value)> {
    let (s, mut echo) = structure(c)?;
    let zeta = parse_form(zeta, Some(s.dim())).map_err(|e| CliError::Input(format!("--zeta: parse error at {e}")))?;
    let m = hamiltonian_degree(&s, &zeta, m)?;
    echo["zeta"] = json!(zeta.to_string());
    echo["m"] = json!(m);
    if c.point.is_none() && s.constant_omega().is_some() {
        let field = hamiltonian_field(&s, &zeta, m)?;
        let verified = match &field {
            Some(x) => contract(x, s.omega())? == exterior_derivative(&zeta)?,
            None => false,
        };
        return Ok((
            echo,
            json!({
                "mode": "global",
                "solvable": field.is_some(),
                "field": field.map(|x| x.to_string()),
                "verified": verified,
            }),
        ));
    }
    let mut out = Vec::new();
    for p in points(c, s.dim())? {
        out.push(match hamiltonian_solve(&s, &zeta, m, &p)? {
            HamiltonianOutcome::Solved(sol) => json!({
                "point": p.to_string(),
                "solvable": true,
                "rhs": sol.rhs.to_string(),
                "particular": sol.particular.to_string(),
                "kernel": strings(&sol.kernel),
            }),
            HamiltonianOutcome::Unsolvable { rhs, rank, .. } => json!({
                "point": p.to_string(),
                "solvable": false,
                "rhs": rhs.to_string(),
                "rank": rank,
            }),
        });
    }
    Ok((echo, json!({ "mode": "pointwise", "points": out })))
}

fn classify(c: &Common, field: &str) -> Result<(Value, Value)> {
    let (s, mut echo) = structure(c)?;
    let x = parse_vector(field, Some(s.dim())).map_err(|e| CliError::Input(format!("--field: parse error at {e}")))?;
    echo["field"] = json!(x.to_string());
    let (class, form) = match classify_multivector(&s, &x)? {
        Classification::Hamiltonian { form } => ("hamiltonian", form.map(|f| f.to_string())),
        Classification::LocallyHamiltonian => ("locally_hamiltonian", None),
        Classification::Neither => ("neither", None),
    };
    Ok((echo, json!({ "classification": class, "hamiltonian_form": form })))
}

fn field_for(s: &MultisymplecticStructure, form: &KForm, given: Option<&String>, flag: &str) -> Result<KVector> {
    if let Some(text) = given {
        return parse_vector(text, Some(s.dim())).map_err(|e| CliError::Input(format!("--{flag}: parse error at {e}")));
    }
    let m = hamiltonian_degree(s, form, None)?;
    hamiltonian_field(s, form, m)?
        .ok_or_else(|| CliError::Input(format!("{form} has no global Hamiltonian field; pass --{flag}")))
}

fn bracket(c: &Common, xi: &str, zeta: &str, xf: Option<&String>, yf: Option<&String>) -> Result<(Value, Value)> {
    let (s, mut echo) = structure(c)?;
    let parse = |t: &str, flag: &str| {
        parse_form(t, Some(s.dim())).map_err(|e| CliError::Input(format!("--{flag}: parse error at {e}")))
    };
    let (xi, zeta) = (parse(xi, "xi")?, parse(zeta, "zeta")?);
    let x = field_for(&s, &xi, xf, "x-field")?;
    let y = field_for(&s, &zeta, yf, "y-field")?;
    echo["xi"] = json!(xi.to_string());
    echo["zeta"] = json!(zeta.to_string());
    echo["x_field"] = json!(x.to_string());
    echo["y_field"] = json!(y.to_string());
    let raw = poisson_bracket(&s, &xi, &zeta, &x, &y)?;
    let px = HamiltonianPair::new(&s, xi, x)?;
    let py = HamiltonianPair::new(&s, zeta, y)?;
    let g = graded_bracket(&s, &px, &py)?;
    let consistent = HamiltonianPair::new(&s, g.form.clone(), g.field.clone()).is_ok();
    Ok((
        echo,
        json!({
            "poisson": raw.to_string(),
            "degree": raw.degree(),
            "graded_bracket": g.form.to_string(),
            "bracket_field": g.field.to_string(),
            "bracket_field_consistent": consistent,
        }),
    ))
}

fn homotopy(c: &Common) -> Result<(Value, Value)> {
    let (a, echo) = input_form(c)?;
    let k = homotopy_operator(&a)?;
    let closed = a.degree() == a.dim() || exterior_derivative(&a)?.is_zero();
    let kd = if a.degree() < a.dim() {
        homotopy_operator(&exterior_derivative(&a)?)?
    } else {
        KForm::zero(a.dim(), a.degree())
    };
    let identity = exterior_derivative(&k)?.checked_add(&kd)? == a;
    Ok((
        echo,
        json!({
            "homotopy": k.to_string(),
            "closed": closed,
            "primitive": primitive(&a)?.map(|p| p.to_string()),
            "identity_holds": identity,
        }),
    ))
}

fn endo_json(a: &LinearEndo) -> Value {
    let n = a.dim();
    json!((0..n).map(|i| (0..n).map(|j| a.entry(i, j).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn stab_json(r: &StabilizerResult, omega: &msym_core::ConstForm) -> Result<Value> {
    Ok(json!({
        "dimension": r.dimension(),
        "closure": closure_check(r)?,
        "certified": certify(r, omega)?,
        "basis": r.basis.iter().map(endo_json).collect::<Vec<_>>(),
        "weights": strings(&r.weights),
    }))
}

fn stab(c: &Common, degrees: &[usize]) -> Result<(Value, Value)> {
    let (s, echo) = structure(c)?;
    let omega = s
        .constant_omega()
        .ok_or_else(|| CliError::Input("stab needs a constant-coefficient form".into()))?;
    let st = stabilizer_algebra(&omega);
    let cf = conformal_stabilizer(&omega);
    let k = s.degree();
    let degrees: Vec<usize> = if degrees.is_empty() { vec![k, k - 1] } else { degrees.to_vec() };
    let mut inv = Vec::new();
    for &d in &degrees {
        let forms = invariant_forms(&st, d)?;
        inv.push(json!({ "degree": d, "dimension": forms.len(), "basis": strings(&forms) }));
    }
    let mut algebra = stab_json(&st, &omega)?;
    algebra.as_object_mut().expect("object").remove("weights");
    Ok((
        echo,
        json!({
            "dimension": st.dimension(),
            "stabilizer": algebra,
            "conformal": stab_json(&cf, &omega)?,
            "invariant_forms": inv,
        }),
    ))
}

fn identities(c: &Common, cases: usize, max_degree: usize) -> Result<(Value, Value, bool)> {
    let has_structure = c.form.is_some() || c.file.is_some() || c.catalog.is_some();
    let (s, mut echo) = if has_structure {
        let (s, e) = structure(c)?;
        (Some(s), e)
    } else {
        (None, json!({}))
    };
    let n = match (&s, c.n) {
        (Some(s), _) => s.dim(),
        (None, Some(n)) if n >= 1 => n,
        _ => return Err(CliError::Input("identities needs --n or a structure".into())),
    };
    echo["n"] = json!(n);
    echo["cases"] = json!(cases);
    echo["max_degree"] = json!(max_degree);
    let mut reports = verify_graded_identities(n, max_degree, cases, c.seed);
    if let Some(s) = &s {
        reports.extend(verify_bracket_theorems(s, cases, c.seed)?);
    }
    let all = reports.iter().all(|r| r.passed);
    Ok((echo, json!({ "reports": identity_reports(&reports), "all_passed": all }), all))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Display(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })?;
    let name = match &cli.command {
        Command::Check => "check",
        Command::Kernel { .. } => "kernel",
        Command::Solve { .. } => "solve",
        Command::Classify { .. } => "classify",
        Command::Bracket { .. } => "bracket",
        Command::Homotopy => "homotopy",
        Command::Stab { .. } => "stab",
        Command::Identities { .. } => "identities",
    };
    let c = &cli.common;
    let mut passed = true;
    let (inputs, results) = match &cli.command {
        Command::Check => check(c)?,
        Command::Kernel { m } => kernel(c, *m)?,
        Command::Solve { zeta, m } => solve(c, zeta, *m)?,
        Command::Classify { field } => classify(c, field)?,
        Command::Bracket { xi, zeta, x_field, y_field } => bracket(c, xi, zeta, x_field.as_ref(), y_field.as_ref())?,
        Command::Homotopy => homotopy(c)?,
        Command::Stab { degree } => stab(c, degree)?,
        Command::Identities { cases, max_degree } => {
            let (i, r, ok) = identities(c, *cases, *max_degree)?;
            passed = ok;
            (i, r)
        }
    };
    let report = AnalysisReport::new(name, inputs, results, Some(c.seed));
    let rendered = match c.output {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    Ok(Outcome {
        report,
        rendered,
        exit_code: if passed { 0 } else { 1 },
    })
}
