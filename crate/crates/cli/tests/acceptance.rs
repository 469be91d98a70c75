use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use msym_cli::catalog::{self, CatalogEntry};
use msym_cli::parser::{parse, Value};
use msym_core::calculus::{exterior_derivative, lie_derivative};
use msym_core::multi_index::binomial;
use msym_core::msym::{
    euler_field, euler_homogeneity, homotopy_operator, kernel_floor, nondegeneracy_report, omega_hat,
    sample_points, span_check, verify_bracket_theorems, POISSON_ANTISYMMETRY, POISSON_JACOBI, PROP_FORM,
    PROP_GRADED, PROP_LITERAL, PROP_LITERAL_CONFLICT,
};
use msym_core::random::{RandomSource, Shape};
use msym_core::stabilizer::{special_conformal_check, stabilizer_algebra, invariant_forms};
use msym_core::{
    int, rat, verify_graded_identities, ConstForm, GradedIdentityReport, KForm, KVector, LinearEndo, Matrix,
    MultisymplecticStructure, Polynomial, Rational,
};

const SEED: u64 = 20_241_014;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn structure(e: &CatalogEntry) -> MultisymplecticStructure {
    MultisymplecticStructure::new(e.omega.clone()).expect("catalog entry is closed")
}

fn constant_entries() -> Vec<CatalogEntry> {
    let mut v = vec![catalog::symplectic(1), catalog::symplectic(2), catalog::symplectic(3)];
    v.extend((2..=5).map(catalog::volume));
    v.push(catalog::g2());
    v
}

fn multicotangent_entries() -> Vec<CatalogEntry> {
    [(2, 1), (3, 1), (3, 2), (4, 2), (3, 3)]
        .iter()
        .map(|&(q, k)| catalog::multicotangent(q, k).expect("valid parameters"))
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g2_stabilizer_cli() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_msym"))
        .args(["stab", "--catalog", "g2", "--output", "json"])
        .output()
        .map_err(|e| format!("cannot run msym: {e}"))?;
    ensure(out.status.success(), || format!("msym exited with {}", out.status))?;
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("invalid JSON: {e}"))?;
    let r = &report["results"];
    ensure(r["dimension"] == 14, || format!("dimension {}", r["dimension"]))?;
    ensure(r["stabilizer"]["closure"] == true, || "commutator closure failed".into())?;
    ensure(r["stabilizer"]["certified"] == true, || "basis does not annihilate the form".into())?;
    Ok("dimension 14, closure ok".into())
}

fn invariant_multiples() -> Check {
    let mut entries = vec![catalog::symplectic(2)];
    entries.extend((2..=5).map(catalog::volume));
    entries.push(catalog::g2());
    for e in &entries {
        let omega = structure(e).constant_omega().expect("constant");
        let forms = invariant_forms(&stabilizer_algebra(&omega), e.degree).map_err(|x| x.to_string())?;
        ensure(forms.len() == 1, || format!("{}: {} invariant {}-forms", e.name, forms.len(), e.degree))?;
        let (idx, c) = omega.terms().next().expect("nonzero");
        let scale = forms[0].coefficient_or_zero(idx) / c;
        ensure(forms[0] == omega.scale(&scale), || format!("{}: invariant is not a multiple", e.name))?;
    }
    Ok(format!("{} entries, each a line spanned by the form", entries.len()))
}

fn kernel_formula() -> Check {
    let g2 = structure(&catalog::g2());
    let expected = binomial(7, 2) - binomial(7, 1);
    ensure(kernel_floor(7, 3, 2) == expected, || "floor formula".into())?;
    let points = sample_points(7, 4, SEED);
    for p in &points {
        let h = omega_hat(&g2, 2, p).map_err(|e| e.to_string())?;
        ensure(h.kernel_dim() == expected, || format!("g2 kernel {} at {p:?}", h.kernel_dim()))?;
    }
    let sp = structure(&catalog::symplectic(2));
    for p in &sample_points(4, 4, SEED) {
        let h = omega_hat(&sp, 1, p).map_err(|e| e.to_string())?;
        ensure(h.kernel_dim() == 0, || format!("symplectic kernel {} at {p:?}", h.kernel_dim()))?;
    }
    Ok(format!("g2 m=2 kernel {expected} at {} points, symplectic(2) m=1 kernel 0", points.len()))
}

fn no_codimension_one() -> Check {
    let mut rng = RandomSource::new(SEED);
    let mut count = 0;
    for n in 3..=5 {
        for _ in 0..10 {
            let omega: ConstForm = rng.dense_const_tensor(n, n - 1);
            let s = MultisymplecticStructure::from_constant(&omega).map_err(|e| e.to_string())?;
            let r = nondegeneracy_report(&s, &sample_points(n, 2, SEED)).map_err(|e| e.to_string())?;
            let m1 = r.per_m.iter().find(|d| d.m == 1).expect("m = 1 row");
            ensure(!r.multisymplectic && m1.min_kernel >= 1, || format!("1-nondegenerate: {omega}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} random forms, all with nonzero 1-kernel"))
}

fn check_reports(reports: &[GradedIdentityReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed) {
        Some(r) => Err(r.to_string()),
        None => Ok(()),
    }
}

fn schouten_suite() -> Check {
    let mut totals = [0usize; 4];
    for n in 1..=5 {
        let reports = verify_graded_identities(n, 3, 100, SEED + n as u64);
        check_reports(&reports)?;
        for (t, r) in totals.iter_mut().zip(&reports) {
            *t += r.cases;
        }
    }
    ensure(totals.iter().all(|&t| t >= 100), || format!("too few cases: {totals:?}"))?;
    Ok(format!(
        "antisymmetry {}, Leibniz {}, Jacobi {}, operator {} cases",
        totals[0], totals[1], totals[2], totals[3]
    ))
}

fn bracket_suite() -> Check {
    let mut parts = Vec::new();
    for e in [catalog::symplectic(2), catalog::volume(3)] {
        let reports = verify_bracket_theorems(&structure(&e), 30, SEED).map_err(|x| x.to_string())?;
        check_reports(&reports)?;
        let cases = |id: &str| reports.iter().find(|r| r.identity == id).map_or(0, |r| r.cases);
        ensure(cases(PROP_GRADED) >= 25, || format!("{}: {} pairs", e.name, cases(PROP_GRADED)))?;
        ensure(cases(POISSON_JACOBI) >= 1, || format!("{}: no Jacobi triples", e.name))?;
        ensure(cases(PROP_FORM) == cases(PROP_GRADED), || "bracket fields not all checked".into())?;
        parts.push(format!(
            "{}: {} pairs, {} unsigned-agree, {} sign-flipped, antisymmetry {}, Jacobi {}",
            e.name,
            cases(PROP_GRADED),
            cases(PROP_LITERAL),
            cases(PROP_LITERAL_CONFLICT),
            cases(POISSON_ANTISYMMETRY),
            cases(POISSON_JACOBI)
        ));
    }
    Ok(format!("i([X,Y])Omega = (-1)^((|X|-1)|Y|) d(i(X)i(Y)Omega); {}", parts.join("; ")))
}

fn homotopy_contract() -> Check {
    let shape = Shape {
        poly_degree: 3,
        poly_terms: 3,
        tensor_terms: 3,
    };
    let mut rng = RandomSource::with_shape(SEED, shape);
    let mut count = 0;
    for n in 1..=5 {
        for _ in 0..25 {
            let p = rng.range(1, n);
            let a: KForm = rng.poly_tensor(n, p);
            let dk = exterior_derivative(&homotopy_operator(&a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let kd = if p < n {
                homotopy_operator(&exterior_derivative(&a).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?
            } else {
                KForm::zero(n, p)
            };
            ensure(&dk + &kd == a, || format!("dK + Kd != id on {a}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} forms"))
}

fn euler() -> Check {
    let all: Vec<CatalogEntry> = constant_entries().into_iter().chain(multicotangent_entries()).collect();
    for e in &all {
        let s = structure(e);
        let c = euler_homogeneity(&s).ok_or_else(|| format!("{}: not homogeneous", e.name))?;
        ensure(c == e.expect_euler, || format!("{}: c = {c}", e.name))?;
        let l = lie_derivative(&euler_field(e.dim), &e.omega).map_err(|x| x.to_string())?;
        ensure(l == e.omega.mul_coefficient(&Polynomial::constant(e.dim, c.clone())), || {
            format!("{}: Lie derivative disagrees", e.name)
        })?;
    }
    for e in multicotangent_entries() {
        ensure(e.expect_euler == int(e.degree as i64), || format!("{}: expected k+1", e.name))?;
    }
    Ok(format!("{} entries, c = k on constant entries, k+1 on multicotangent", all.len()))
}

fn spans() -> Check {
    let entries = constant_entries();
    for e in &entries {
        let r = span_check(&structure(e), &sample_points(e.dim, 2, SEED)).map_err(|x| x.to_string())?;
        ensure(r.vector_target == e.dim && r.multivector_target == binomial(e.dim, e.degree - 1), || {
            format!("{}: wrong targets", e.name)
        })?;
        ensure(r.full, || {
            let p = r
                .points
                .iter()
                .find(|p| p.vector_span < r.vector_target || p.multivector_span < r.multivector_target)
                .expect("short point");
            format!("{}: spans {} / {} at {:?}", e.name, p.vector_span, p.multivector_span, p.point)
        })?;
    }
    Ok(format!("{} entries full at every sample point", entries.len()))
}

fn random_invertible(rng: &mut RandomSource, n: usize) -> LinearEndo {
    loop {
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|_| (0..n).map(|_| int(rng.range(0, 4) as i64 - 2)).collect()).collect();
        let a = LinearEndo::from_rows(rows).expect("square");
        if a.determinant() != int(0) {
            return a;
        }
    }
}

fn pull(a: &LinearEndo, w: &ConstForm) -> ConstForm {
    msym_core::pullback_linear(a, &KForm::from_constant(w))
        .expect("same dimension")
        .to_constant()
        .expect("constant")
}

fn valences() -> Check {
    let w = structure(&catalog::g2()).constant_omega().expect("constant");
    for l in [int(2), rat(1, 3), int(-1)] {
        let a = LinearEndo::scalar(7, l.clone());
        let c = special_conformal_check(&a, &w, &w).map_err(|e| e.to_string())?;
        ensure(c == Some(&l * &l * &l), || format!("lambda = {l}: valence {c:?}"))?;
    }
    let mut rng = RandomSource::new(SEED);
    for _ in 0..3 {
        let (l, mu) = (rng.nonzero_rational(), rng.nonzero_rational());
        let a = LinearEndo::new(
            random_invertible(&mut rng, 7).matrix().mul(LinearEndo::scalar(7, l.clone()).matrix()).expect("7x7"),
        )
        .expect("square");
        let b = LinearEndo::new(
            random_invertible(&mut rng, 7).matrix().mul(LinearEndo::scalar(7, mu.clone()).matrix()).expect("7x7"),
        )
        .expect("square");
        let w3 = w.clone();
        let w2 = pull(&b, &w3).scale(&(int(1) / (&mu * &mu * &mu)));
        let w1 = pull(&a, &w2).scale(&(int(1) / (&l * &l * &l)));
        let ca = special_conformal_check(&a, &w1, &w2).map_err(|e| e.to_string())?;
        let cb = special_conformal_check(&b, &w2, &w3).map_err(|e| e.to_string())?;
        let ba: Matrix = b.matrix().mul(a.matrix()).expect("7x7");
        let cba = special_conformal_check(&LinearEndo::new(ba).expect("square"), &w1, &w3)
            .map_err(|e| e.to_string())?;
        let (ca, cb) = (ca.ok_or("A not conformal")?, cb.ok_or("B not conformal")?);
        ensure(ca == &l * &l * &l && cb == &mu * &mu * &mu, || "valence of a generated map".into())?;
        ensure(cba == Some(&ca * &cb), || format!("c(BA) = {cba:?}, c(A) c(B) = {}", &ca * &cb))?;
    }
    Ok("lambda^3 for 2, 1/3, -1; multiplicative on 3 composed pairs".into())
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Scalar,
    Form(usize),
    Vector(usize),
}

const SUM: u8 = 0;
const SIGNED: u8 = 1;
const WEDGE: u8 = 2;
const PRODUCT: u8 = 3;
const ATOM: u8 = 4;

struct Expr {
    text: String,
    value: Value,
    prec: u8,
}

impl Expr {
    fn at(&self, min: u8) -> String {
        if self.prec >= min {
            self.text.clone()
        } else {
            format!("({})", self.text)
        }
    }
}

fn negate(v: &Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-p.clone()),
        Value::Form(f) => Value::Form(-f.clone()),
        Value::Vector(x) => Value::Vector(-x.clone()),
    }
}

fn add(a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Form(x), Value::Form(y)) => Value::Form(x + y),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x + y),
        _ => unreachable!("generator adds like kinds"),
    }
}

fn scale(s: &Polynomial, v: &Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(s * p),
        Value::Form(f) => Value::Form(f.mul_coefficient(s)),
        Value::Vector(x) => Value::Vector(x.mul_coefficient(s)),
    }
}

fn wedge(a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Form(x), Value::Form(y)) => Value::Form(x.wedge(y).expect("degrees fit")),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.wedge(y).expect("degrees fit")),
        _ => unreachable!("generator wedges like kinds"),
    }
}

struct Generator {
    rng: RandomSource,
    n: usize,
}

impl Generator {
    fn number(&mut self) -> Expr {
        let r = self.rng.rational();
        let text = r.to_string();
        let prec = if r < int(0) { SIGNED } else { ATOM };
        Expr {
            text,
            value: Value::Scalar(Polynomial::constant(self.n, r)),
            prec,
        }
    }

    fn leaf(&mut self, kind: Kind) -> Expr {
        let n = self.n;
        match kind {
            Kind::Scalar => {
                if self.rng.coin() {
                    self.number()
                } else {
                    let i = self.rng.range(0, n - 1);
                    Expr {
                        text: format!("x{}", i + 1),
                        value: Value::Scalar(Polynomial::var(n, i)),
                        prec: ATOM,
                    }
                }
            }
            Kind::Form(p) | Kind::Vector(p) => {
                let idx = self.rng.multi_index(n, p);
                let vector = matches!(kind, Kind::Vector(_));
                let symbols: Vec<String> = idx
                    .indices()
                    .iter()
                    .map(|i| match (vector, self.rng.coin()) {
                        (false, _) => format!("dx{}", i + 1),
                        (true, true) => format!("e{}", i + 1),
                        (true, false) => format!("d{}", i + 1),
                    })
                    .collect();
                let value = if vector {
                    Value::Vector(KVector::basis(n, idx))
                } else {
                    Value::Form(KForm::basis(n, idx))
                };
                Expr {
                    text: symbols.join("^"),
                    value,
                    prec: if p == 1 { ATOM } else { WEDGE },
                }
            }
        }
    }

    fn gen(&mut self, kind: Kind, depth: usize) -> Expr {
        if depth == 0 {
            return self.leaf(kind);
        }
        let degree = match kind {
            Kind::Scalar => 0,
            Kind::Form(p) | Kind::Vector(p) => p,
        };
        match self.rng.range(0, 5) {
            0 => self.leaf(kind),
            1 => {
                let a = self.gen(kind, depth - 1);
                let b = self.gen(kind, depth - 1);
                let minus = self.rng.coin();
                let value = if minus { add(&a.value, &negate(&b.value)) } else { add(&a.value, &b.value) };
                Expr {
                    text: format!("{} {} {}", a.at(SUM), if minus { '-' } else { '+' }, b.at(SIGNED)),
                    value,
                    prec: SUM,
                }
            }
            2 => {
                let a = self.gen(kind, depth - 1);
                Expr {
                    text: format!("-{}", a.at(SIGNED)),
                    value: negate(&a.value),
                    prec: SIGNED,
                }
            }
            3 => {
                let s = self.gen(Kind::Scalar, depth - 1);
                let a = self.gen(kind, depth - 1);
                let Value::Scalar(p) = &s.value else { unreachable!() };
                let value = scale(p, &a.value);
                let text = if self.rng.coin() {
                    format!("{}*{}", s.at(PRODUCT), a.at(ATOM))
                } else {
                    format!("{}*{}", a.at(PRODUCT), s.at(ATOM))
                };
                Expr { text, value, prec: PRODUCT }
            }
            _ => {
                let (ka, kb) = match kind {
                    Kind::Scalar => (Kind::Scalar, Kind::Scalar),
                    Kind::Form(_) | Kind::Vector(_) if degree >= 2 && self.rng.coin() => {
                        let first = self.rng.range(1, degree - 1);
                        match kind {
                            Kind::Form(_) => (Kind::Form(first), Kind::Form(degree - first)),
                            _ => (Kind::Vector(first), Kind::Vector(degree - first)),
                        }
                    }
                    _ => (Kind::Scalar, kind),
                };
                let (a, b) = if ka == Kind::Scalar && kb != Kind::Scalar && self.rng.coin() {
                    let b = self.gen(ka, depth - 1);
                    (self.gen(kb, depth - 1), b)
                } else {
                    (self.gen(ka, depth - 1), self.gen(kb, depth - 1))
                };
                let value = match (&a.value, &b.value) {
                    (Value::Scalar(s), v) | (v, Value::Scalar(s)) => scale(s, v),
                    (x, y) => wedge(x, y),
                };
                Expr {
                    text: format!("{}^{}", a.at(WEDGE), b.at(PRODUCT)),
                    value,
                    prec: WEDGE,
                }
            }
        }
    }
}

fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Scalar(x), Value::Form(f)) | (Value::Form(f), Value::Scalar(x)) => {
            f.is_zero() && x.is_zero() || f.degree() == 0 && KForm::function(x.clone()) == *f
        }
        (Value::Scalar(x), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(x)) => {
            v.is_zero() && x.is_zero() || v.degree() == 0 && KVector::function(x.clone()) == *v
        }
        _ => a == b,
    }
}

fn parser_fuzz() -> Check {
    let mut g = Generator {
        rng: RandomSource::new(SEED),
        n: 1,
    };
    let mut nonzero = 0;
    for case in 0..1000 {
        g.n = g.rng.range(1, 5);
        let kind = match g.rng.range(0, 2) {
            0 => Kind::Scalar,
            1 => Kind::Form(g.rng.range(1, g.n)),
            _ => Kind::Vector(g.rng.range(1, g.n)),
        };
        let depth = g.rng.range(1, 4);
        let e = g.gen(kind, depth);
        let parsed = parse(&e.text, Some(g.n)).map_err(|x| format!("case {case}: '{}': {x}", e.text))?;
        ensure(parsed == e.value, || format!("case {case}: '{}' parsed to {parsed}, expected {}", e.text, e.value))?;
        let printed = parsed.to_string();
        let again = parse(&printed, Some(g.n)).map_err(|x| format!("case {case}: '{printed}': {x}"))?;
        ensure(same(&again, &parsed), || format!("case {case}: '{printed}' reparsed to {again}"))?;
        ensure(again.to_string() == printed, || format!("case {case}: '{printed}' printed as '{again}'"))?;
        if !printed.starts_with('0') {
            nonzero += 1;
        }
    }
    Ok(format!("1000 expressions ({nonzero} nonzero), normal forms stable"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("g2 stabilizer", 5, g2_stabilizer_cli),
        ("invariant top forms", 10, invariant_multiples),
        ("kernel dimension formula", 5, kernel_formula),
        ("no degree n-1 structures", 5, no_codimension_one),
        ("schouten identities", 60, schouten_suite),
        ("hamiltonian bracket and poisson algebra", 120, bracket_suite),
        ("homotopy operator", 30, homotopy_contract),
        ("euler homogeneity", 2, euler),
        ("span of hamiltonian values", 10, spans),
        ("special conformal valence", 2, valences),
        ("parser round trip", 30, parser_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match &result {
            Ok(d) if !over => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {:>2} {name} [{:.2}s / {budget}s]: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
