//! Named example structures.

use msym_core::multi_index::binomial;
use msym_core::{int, KForm, MultiIndex, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub degree: usize,
    pub omega: KForm,
    pub note: String,
    /// Flags the entry is documented to satisfy at every sample point.
    pub expect_multisymplectic: bool,
    pub expect_strongly_nondegenerate: Option<bool>,
    pub expect_euler: Rational,
}

pub const NAMES: &[&str] = &["symplectic", "volume", "multicotangent", "g2"];

fn constant_form(n: usize, k: usize, terms: &[(i64, Vec<usize>)]) -> KForm {
    let mut w = KForm::zero(n, k);
    for (c, idx) in terms {
        w.add_term(
            MultiIndex::new(idx.clone()).expect("increasing"),
            Polynomial::constant(n, int(*c)),
        );
    }
    w
}

/// `Σ dx_{2i-1} ^ dx_{2i}` on `R^{2m}`.
pub fn symplectic(m: usize) -> CatalogEntry {
    let n = 2 * m;
    let terms: Vec<(i64, Vec<usize>)> = (0..m).map(|i| (1, vec![2 * i, 2 * i + 1])).collect();
    CatalogEntry {
        name: format!("symplectic:{m}"),
        dim: n,
        degree: 2,
        omega: constant_form(n, 2, &terms),
        note: format!("standard symplectic form dx1^dx2 + ... on R^{n}"),
        expect_multisymplectic: true,
        expect_strongly_nondegenerate: Some(true),
        expect_euler: int(2),
    }
}

pub fn volume(n: usize) -> CatalogEntry {
    CatalogEntry {
        name: format!("volume:{n}"),
        dim: n,
        degree: n,
        omega: constant_form(n, n, &[(1, (0..n).collect())]),
        note: format!("volume form dx1^...^dx{n}"),
        expect_multisymplectic: true,
        expect_strongly_nondegenerate: Some(true),
        expect_euler: int(n as i64),
    }
}

/// The seven-term 3-form on `R^7` with stabilizer `g2`.
pub fn g2() -> CatalogEntry {
    let t: &[(i64, [usize; 3])] = &[
        (1, [1, 2, 3]),
        (1, [1, 4, 5]),
        (1, [1, 6, 7]),
        (1, [2, 4, 6]),
        (-1, [2, 5, 7]),
        (-1, [3, 4, 7]),
        (-1, [3, 5, 6]),
    ];
    let terms: Vec<(i64, Vec<usize>)> = t.iter().map(|(c, i)| (*c, i.iter().map(|j| j - 1).collect())).collect();
    CatalogEntry {
        name: "g2".into(),
        dim: 7,
        degree: 3,
        omega: constant_form(7, 3, &terms),
        note: "G2 3-form +123 +145 +167 +246 -257 -347 -356 on R^7".into(),
        expect_multisymplectic: true,
        expect_strongly_nondegenerate: Some(true),
        expect_euler: int(3),
    }
}

/// `Ω = -dΘ`, `Θ = Σ_I p_I dx^I` on the bundle of `k`-forms over `R^q`.
///
/// Coordinates are `x1..xq` followed by `p_I` for `|I| = k` in
/// lexicographic order.
pub fn multicotangent(q: usize, k: usize) -> Result<CatalogEntry, String> {
    if k == 0 || k > q {
        return Err(format!("multicotangent needs 1 <= k <= base dimension, got q = {q}, k = {k}"));
    }
    let fibers = MultiIndex::all(q, k);
    let n = q + binomial(q, k);
    let mut omega = KForm::zero(n, k + 1);
    for (pos, idx) in fibers.iter().enumerate() {
        // -dp_I ^ dx^I
        let mut full = vec![q + pos];
        full.extend_from_slice(idx.indices());
        let (odd, sorted) = MultiIndex::sorted(full).expect("distinct");
        let c = if odd { int(1) } else { int(-1) };
        omega.add_term(sorted, Polynomial::constant(n, c));
    }
    Ok(CatalogEntry {
        name: format!("multicotangent:{q},{k}"),
        dim: n,
        degree: k + 1,
        omega,
        note: format!("canonical form -dTheta on the bundle of {k}-forms over R^{q}, coordinates (x, p_I lexicographic)"),
        expect_multisymplectic: true,
        expect_strongly_nondegenerate: None,
        expect_euler: int(k as i64 + 1),
    })
}

/// The Liouville form `Θ` matching [`multicotangent`].
pub fn multicotangent_theta(q: usize, k: usize) -> KForm {
    let n = q + binomial(q, k);
    let mut theta = KForm::zero(n, k);
    for (pos, idx) in MultiIndex::all(q, k).into_iter().enumerate() {
        theta.add_term(idx, Polynomial::var(n, q + pos));
    }
    theta
}

fn numbers(params: &str) -> Result<Vec<usize>, String> {
    params
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("invalid catalog parameter '{s}'")))
        .collect()
}

/// Looks up `name[:params]`. `dim` stands in for a missing dimension
/// parameter (`volume`, and `symplectic` as `2m`).
pub fn catalog_get(spec: &str, dim: Option<usize>) -> Result<CatalogEntry, String> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(numbers(p)?)),
        None => (spec.trim(), None),
    };
    match (name, params.as_deref()) {
        ("g2", None) => Ok(g2()),
        ("g2", Some(_)) => Err("g2 takes no parameters".into()),
        ("volume", p) => {
            let n = match p {
                Some(&[n]) => n,
                None => dim.ok_or("volume needs a dimension: volume:n or --n")?,
                _ => return Err("volume takes one parameter: volume:n".into()),
            };
            if n < 2 {
                return Err("volume needs n >= 2".into());
            }
            Ok(volume(n))
        }
        ("symplectic", Some(&[m])) if m >= 1 => Ok(symplectic(m)),
        ("symplectic", None) => match dim {
            Some(n) if n >= 2 && n % 2 == 0 => Ok(symplectic(n / 2)),
            Some(n) => Err(format!("symplectic needs an even dimension, got {n}")),
            None => Ok(symplectic(1)),
        },
        ("multicotangent", Some(&[q, k])) => multicotangent(q, k),
        ("multicotangent", _) => Err("multicotangent takes two parameters: multicotangent:q,k".into()),
        (n, _) if NAMES.contains(&n) => Err(format!("invalid parameters for '{n}'")),
        (n, _) => Err(format!("unknown catalog entry '{n}'; known: {}", NAMES.join(", "))),
    }
}
