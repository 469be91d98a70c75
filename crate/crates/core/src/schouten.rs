//! Schouten-Nijenhuis bracket on polynomial multivector fields.
//!
//! Multivectors are handled as superfunctions in odd variables
//! `θ_i = d/dx^i`:
//!
//! ```text
//! [P, Q] = Σ_i (P ∂⃖/∂θ_i) ^ ∂Q/∂x^i − (−1)^{(p−1)(q−1)} (Q ∂⃖/∂θ_i) ^ ∂P/∂x^i
//! ```
//!
//! with right derivatives in `θ`. With the contraction convention of
//! [`crate::calculus`] this is the unique bracket for which
//! `L([X,Y]) = L(X)L(Y) − (−1)^{(p−1)(q−1)} L(Y)L(X)` holds; the
//! randomized suite below checks that identity together with graded
//! antisymmetry, the graded Leibniz rule
//! `[X, Y^Z] = [X,Y]^Z + (−1)^{(p−1)q} Y^[X,Z]` and graded Jacobi.

use std::fmt;

use crate::calculus::lie_unchecked;
use crate::error::{check_dim, Error, Result};
use crate::multi_index::MultiIndex;
use crate::random::RandomSource;
use crate::polynomial::Polynomial;
use crate::tensor::{Graded, KForm, KVector, Variance};

/// `(-1)^e` as a "negate?" flag.
fn odd(e: usize) -> bool {
    e % 2 == 1
}

pub(crate) fn signed<V: Variance>(t: &Graded<V, Polynomial>, negative: bool) -> Graded<V, Polynomial> {
    if negative {
        -t
    } else {
        t.clone()
    }
}

/// Lie bracket of two vector fields: `[X,Y]^j = X^i ∂_i Y^j − Y^i ∂_i X^j`.
pub fn vector_lie_bracket(x: &KVector, y: &KVector) -> Result<KVector> {
    check_dim(x.dim(), y.dim())?;
    for t in [x, y] {
        if t.degree() != 1 {
            return Err(Error::InvalidInput(format!(
                "vector Lie bracket needs degree-1 fields, got degree {}",
                t.degree()
            )));
        }
    }
    let n = x.dim();
    let mut out = KVector::zero(n, 1);
    for (xi, xc) in x.terms() {
        let i = xi.indices()[0];
        for (yj, yc) in y.terms() {
            out.add_term(yj.clone(), xc * &yc.partial(i));
        }
    }
    for (yi, yc) in y.terms() {
        let i = yi.indices()[0];
        for (xj, xc) in x.terms() {
            out.add_term(xj.clone(), -(yc * &xc.partial(i)));
        }
    }
    Ok(out)
}

/// Right derivative `P ∂⃖/∂θ_i`; `None` for degree-0 input.
fn right_theta_derivative(p: &KVector, i: usize) -> Option<KVector> {
    if p.degree() == 0 {
        return None;
    }
    let mut out = KVector::zero(p.dim(), p.degree() - 1);
    for (idx, c) in p.terms() {
        if let Some((neg, rest)) = idx.remove_right(i) {
            out.add_signed(rest, c.clone(), neg);
        }
    }
    Some(out)
}

fn coordinate_partial(p: &KVector, i: usize) -> KVector {
    let mut out = KVector::zero(p.dim(), p.degree());
    for (idx, c) in p.terms() {
        out.add_term(idx.clone(), c.partial(i));
    }
    out
}

/// Schouten-Nijenhuis bracket of a `p`-vector and a `q`-vector; degree
/// `p + q − 1`. Out-of-range degrees give zero.
pub fn schouten_bracket(x: &KVector, y: &KVector) -> Result<KVector> {
    check_dim(x.dim(), y.dim())?;
    Ok(schouten_unchecked(x, y))
}

pub(crate) fn schouten_unchecked(x: &KVector, y: &KVector) -> KVector {
    let n = x.dim();
    let (p, q) = (x.degree(), y.degree());
    if p + q == 0 || p + q - 1 > n {
        return KVector::zero(n, (p + q).saturating_sub(1).min(n));
    }
    let mut out = KVector::zero(n, p + q - 1);
    let swap_negative = !odd((p + 1) * (q + 1));
    for i in 0..n {
        if let Some(xt) = right_theta_derivative(x, i) {
            let dy = coordinate_partial(y, i);
            if !xt.is_zero() && !dy.is_zero() {
                out = &out + &xt.wedge_or_zero(&dy);
            }
        }
        if let Some(yt) = right_theta_derivative(y, i) {
            let dx = coordinate_partial(x, i);
            if !yt.is_zero() && !dx.is_zero() {
                let t = yt.wedge_or_zero(&dx);
                // − (−1)^{(p−1)(q−1)} term
                out = &out + &signed(&t, swap_negative);
            }
        }
    }
    out
}

/// Outcome of one randomized identity run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdentityReport {
    pub identity: String,
    pub cases: usize,
    pub seed: u64,
    pub passed: bool,
    /// Printed inputs of the first failing case.
    pub counterexample: Option<String>,
}

impl GradedIdentityReport {
    pub(crate) fn new(identity: &str, seed: u64) -> Self {
        Self {
            identity: identity.to_string(),
            cases: 0,
            seed,
            passed: true,
            counterexample: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }
}

impl fmt::Display for GradedIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, seed {})",
            self.identity,
            if self.passed { "pass" } else { "FAIL" },
            self.cases,
            self.seed
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}

pub const ANTISYMMETRY: &str = "schouten graded antisymmetry";
pub const LEIBNIZ: &str = "schouten graded Leibniz";
pub const JACOBI: &str = "schouten graded Jacobi";
pub const OPERATOR_IDENTITY: &str = "schouten operator identity";

/// Runs graded antisymmetry, graded Leibniz, graded Jacobi and the
/// Lie-derivative operator identity on seeded random polynomial
/// multivectors of degree `0..=max_degree` in dimension `dim`.
pub fn verify_graded_identities(
    dim: usize,
    max_degree: usize,
    cases: usize,
    seed: u64,
) -> Vec<GradedIdentityReport> {
    let mut rng = RandomSource::new(seed);
    rng.shape.tensor_terms = 2;
    let top = max_degree.min(dim);
    let mut anti = GradedIdentityReport::new(ANTISYMMETRY, seed);
    let mut leib = GradedIdentityReport::new(LEIBNIZ, seed);
    let mut jac = GradedIdentityReport::new(JACOBI, seed);
    let mut op = GradedIdentityReport::new(OPERATOR_IDENTITY, seed);

    for _ in 0..cases {
        let (i, j, l) = (rng.range(0, top), rng.range(0, top), rng.range(0, top));
        let x: KVector = rng.poly_tensor(dim, i);
        let y: KVector = rng.poly_tensor(dim, j);
        let z: KVector = rng.poly_tensor(dim, l);
        let describe = || format!("X = {x}; Y = {y}; Z = {z}");

        let xy = schouten_unchecked(&x, &y);
        let yx = schouten_unchecked(&y, &x);
        // [X,Y] = −(−1)^{(i+1)(j+1)} [Y,X]
        anti.record(xy == signed(&yx, !odd((i + 1) * (j + 1))), describe);

        if j + l <= dim {
            let yz = y.wedge_or_zero(&z);
            let lhs = schouten_unchecked(&x, &yz);
            let xz = schouten_unchecked(&x, &z);
            let rhs = &xy.wedge_or_zero(&z) + &signed(&y.wedge_or_zero(&xz), odd((i + 1) * j));
            leib.record(lhs == rhs, describe);
        }

        let t1 = signed(&schouten_unchecked(&x, &schouten_unchecked(&y, &z)), odd((i + 1) * (l + 1)));
        let t2 = signed(&schouten_unchecked(&y, &schouten_unchecked(&z, &x)), odd((j + 1) * (i + 1)));
        let t3 = signed(&schouten_unchecked(&z, &xy), odd((l + 1) * (j + 1)));
        jac.record((&(&t1 + &t2) + &t3).is_zero(), describe);

        let r = rng.range(0, dim);
        let a: KForm = rng.poly_tensor(dim, r);
        let lhs = lie_unchecked(&xy, &a);
        let lxly = lie_unchecked(&x, &lie_unchecked(&y, &a));
        let lylx = lie_unchecked(&y, &lie_unchecked(&x, &a));
        let rhs = &lxly - &signed(&lylx, odd((i + 1) * (j + 1)));
        op.record(lhs == rhs, || format!("X = {x}; Y = {y}; a = {a}"));
    }
    vec![anti, leib, jac, op]
}

/// Multivector `d/dx^{i1} ^ ... ^ d/dx^{ik}` with unit coefficient.
pub fn basis_multivector(dim: usize, indices: &[usize]) -> Result<KVector> {
    let idx = MultiIndex::new(indices.to_vec())
        .ok_or_else(|| Error::InvalidInput("indices must be strictly increasing".into()))?;
    KVector::from_terms(dim, idx.len(), [(idx, Polynomial::one(dim))])
}
