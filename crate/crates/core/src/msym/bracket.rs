//! Poisson bracket of Hamiltonian forms.
//!
//! For `i(X_ξ) Ω = dξ`, `i(Y_ζ) Ω = dζ` the raw bracket is
//! `{ξ, ζ} = i(Y_ζ) i(X_ξ) Ω = i(Y_ζ) dξ`. With `a = |X_ξ|`, `b = |Y_ζ|`,
//!
//! ```text
//! i([X_ξ, Y_ζ]) Ω = (−1)^{(a−1)b} d(i(X_ξ) i(Y_ζ) Ω) = (−1)^{(a−1)b} d{ζ, ξ}
//! ```
//!
//! so the graded bracket `P(ξ, ζ) = (−1)^{(a−1)b} {ζ, ξ}` has Hamiltonian field
//! `[X_ξ, Y_ζ]`. It is graded antisymmetric with sign `−(−1)^{(a+1)(b+1)}`
//! and satisfies graded Jacobi modulo closed forms.

use super::homotopy::is_exact;
use super::{hamiltonian_field, primitive, MultisymplecticStructure};
use crate::calculus::{contract, contract_or_zero, d_or_zero};
use crate::error::{check_dim, Error, Result};
use crate::random::{lift, RandomSource};
use crate::schouten::{schouten_unchecked, signed, GradedIdentityReport};
use crate::tensor::{ConstVector, KForm, KVector};

/// A Hamiltonian form together with a Hamiltonian multivector field.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianPair {
    pub form: KForm,
    pub field: KVector,
}

impl HamiltonianPair {
    /// Checks `i(field) Ω = d(form)` and the degree relation.
    pub fn new(s: &MultisymplecticStructure, form: KForm, field: KVector) -> Result<Self> {
        check_dim(s.dim(), form.dim())?;
        check_dim(s.dim(), field.dim())?;
        let k = s.degree();
        if field.degree() == 0 || form.degree() + field.degree() + 1 != k {
            return Err(Error::InvalidInput(format!(
                "a {}-vector field cannot be Hamiltonian for a {}-form when k = {k}",
                field.degree(),
                form.degree()
            )));
        }
        if contract(&field, s.omega())? != d_or_zero(&form) {
            return Err(Error::ContractViolation(format!(
                "i(X) Omega != d(form) for X = {field}, form = {form}"
            )));
        }
        Ok(Self { form, field })
    }

    pub fn field_degree(&self) -> usize {
        self.field.degree()
    }
}

/// `{ξ, ζ} = i(Y_ζ) i(X_ξ) Ω`, with the defining expressions cross-checked.
pub fn poisson_bracket(
    s: &MultisymplecticStructure,
    xi: &KForm,
    zeta: &KForm,
    x_xi: &KVector,
    y_zeta: &KVector,
) -> Result<KForm> {
    let x = HamiltonianPair::new(s, xi.clone(), x_xi.clone())?;
    let y = HamiltonianPair::new(s, zeta.clone(), y_zeta.clone())?;
    raw_bracket(s, &x, &y)
}

fn raw_bracket(s: &MultisymplecticStructure, x: &HamiltonianPair, y: &HamiltonianPair) -> Result<KForm> {
    let (a, b) = (x.field_degree(), y.field_degree());
    if a + b > s.degree() {
        return Err(Error::InvalidInput(format!(
            "bracket of Hamiltonian forms needs |X| + |Y| <= k, got {a} + {b} > {}",
            s.degree()
        )));
    }
    let nested = contract(&y.field, &contract(&x.field, s.omega())?)?;
    let via_d = contract(&y.field, &d_or_zero(&x.form))?;
    let wedge = contract(&y.field.wedge(&x.field)?, s.omega())?;
    if nested != via_d || nested != wedge {
        return Err(Error::ContractViolation(
            "the defining expressions of the bracket disagree".into(),
        ));
    }
    Ok(nested)
}

fn eps_negative(a: usize, b: usize) -> bool {
    ((a + 1) * b) % 2 == 1
}

/// The graded bracket `P(x, y) = (−1)^{(a−1)b} {y, x}` with Hamiltonian
/// field `[X, Y]`. The returned pair is not re-validated.
pub fn graded_bracket(
    s: &MultisymplecticStructure,
    x: &HamiltonianPair,
    y: &HamiltonianPair,
) -> Result<HamiltonianPair> {
    let raw = raw_bracket(s, y, x)?;
    let form = signed(&raw, eps_negative(x.field_degree(), y.field_degree()));
    let field = schouten_unchecked(&x.field, &y.field);
    Ok(HamiltonianPair { form, field })
}

/// Closed in degree 0 (constant); exact, certified by the homotopy
/// operator, otherwise.
fn negligible(a: &KForm) -> bool {
    if a.degree() == 0 {
        a.terms().all(|(_, c)| c.is_constant())
    } else {
        is_exact(a)
    }
}

pub const PROP_GRADED: &str = "bracket field: i([X,Y])Omega = (-1)^((|X|-1)|Y|) d(i(X)i(Y)Omega)";
pub const PROP_LITERAL: &str = "bracket field: i([X,Y])Omega = d(i(X)i(Y)Omega) where (|X|-1)|Y| is even";
pub const PROP_LITERAL_CONFLICT: &str =
    "bracket field: i([X,Y])Omega = -d(i(X)i(Y)Omega) != d(i(X)i(Y)Omega) where (|X|-1)|Y| is odd and the bracket is nonzero";
pub const PROP_FORM: &str = "bracket field of the graded bracket form";
pub const POISSON_ANTISYMMETRY: &str = "poisson graded antisymmetry mod closed";
pub const POISSON_JACOBI: &str = "poisson graded Jacobi mod closed";

fn random_pair(
    s: &MultisymplecticStructure,
    rng: &mut RandomSource,
) -> Result<HamiltonianPair> {
    let (n, k) = (s.dim(), s.degree());
    let m = rng.range(1, k - 1);
    let mut pair = None;
    for _ in 0..4 {
        let zeta: KForm = rng.poly_tensor(n, k - m - 1);
        if let Some(x) = hamiltonian_field(s, &zeta, m)? {
            pair = Some((zeta, x));
            break;
        }
    }
    let (mut zeta, mut x) = match pair {
        Some(p) => p,
        None => {
            let x = lift(&rng.const_tensor::<crate::tensor::Contravariant>(n, m));
            let ix = contract(&x, s.omega())?;
            let zeta = primitive(&ix)?
                .ok_or_else(|| Error::ContractViolation("constant field without primitive".into()))?;
            (zeta, x)
        }
    };
    let omega = s.require_constant()?;
    let kernel = super::contraction_matrix(&omega, m)?.nullspace();
    if !kernel.is_empty() {
        let v = lift(&ConstVector::from_dense(n, m, rng.choose(&kernel)));
        x = &x + &v.mul_coefficient(&rng.polynomial(n));
    }
    if rng.coin() {
        // shift by a closed form
        let c: KForm = rng.poly_tensor(n, zeta.degree().saturating_sub(1));
        if zeta.degree() > 0 {
            zeta = &zeta + &d_or_zero(&c);
        }
    }
    HamiltonianPair::new(s, zeta, x)
}

/// Seeded checks of the bracket theorems on a constant-coefficient structure.
///
/// Runs until `cases` pairs satisfying `|X| + |Y| <= k` have been tested.
pub fn verify_bracket_theorems(
    s: &MultisymplecticStructure,
    cases: usize,
    seed: u64,
) -> Result<Vec<GradedIdentityReport>> {
    s.require_constant()?;
    let k = s.degree();
    let mut rng = RandomSource::new(seed);
    rng.shape.tensor_terms = 2;
    let mut graded = GradedIdentityReport::new(PROP_GRADED, seed);
    let mut literal = GradedIdentityReport::new(PROP_LITERAL, seed);
    let mut conflict = GradedIdentityReport::new(PROP_LITERAL_CONFLICT, seed);
    let mut form = GradedIdentityReport::new(PROP_FORM, seed);
    let mut anti = GradedIdentityReport::new(POISSON_ANTISYMMETRY, seed);
    let mut jacobi = GradedIdentityReport::new(POISSON_JACOBI, seed);
    let mut attempts = 0;
    while graded.cases < cases && attempts < 50 * cases.max(1) {
        attempts += 1;
        let x = random_pair(s, &mut rng)?;
        let y = random_pair(s, &mut rng)?;
        let z = random_pair(s, &mut rng)?;
        let (a, b, c) = (x.field_degree(), y.field_degree(), z.field_degree());
        let describe = || format!("X = {}; Y = {}; Z = {}", x.field, y.field, z.field);
        if a + b > k {
            continue;
        }

        let bracket = schouten_unchecked(&x.field, &y.field);
        let lhs = contract_or_zero(&bracket, s.omega());
        let inner = d_or_zero(&contract(&x.field, &contract(&y.field, s.omega())?)?);
        graded.record(lhs == signed(&inner, eps_negative(a, b)), describe);
        if !eps_negative(a, b) {
            literal.record(lhs == inner, describe);
        } else if !inner.is_zero() {
            conflict.record(lhs != inner && lhs == -inner.clone(), describe);
        }

        let p = graded_bracket(s, &x, &y)?;
        form.record(HamiltonianPair::new(s, p.form.clone(), p.field.clone()).is_ok(), describe);

        let q = graded_bracket(s, &y, &x)?;
        let diff = &p.form + &signed(&q.form, ((a + 1) * (b + 1)) % 2 == 1);
        anti.record(negligible(&diff), describe);

        if b + c <= k && c + a <= k && a + b + c <= k + 1 {
            let term = |u: &HamiltonianPair, v: &HamiltonianPair, w: &HamiltonianPair, neg: bool| {
                let inner = graded_bracket(s, v, w)?;
                HamiltonianPair::new(s, inner.form.clone(), inner.field.clone())?;
                Ok::<_, Error>(signed(&graded_bracket(s, u, &inner)?.form, neg))
            };
            let sum = term(&x, &y, &z, ((a + 1) * (c + 1)) % 2 == 1).and_then(|t1| {
                let t2 = term(&y, &z, &x, ((b + 1) * (a + 1)) % 2 == 1)?;
                let t3 = term(&z, &x, &y, ((c + 1) * (b + 1)) % 2 == 1)?;
                Ok(&(&t1 + &t2) + &t3)
            });
            jacobi.record(sum.map(|j| negligible(&j)).unwrap_or(false), describe);
        }
    }
    Ok(vec![graded, literal, conflict, form, anti, jacobi])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::polynomial::{int, Polynomial};

    fn e(n: usize, idx: &[usize]) -> KVector {
        KVector::basis(n, MultiIndex::new(idx.to_vec()).unwrap())
    }

    fn dx(n: usize, idx: &[usize]) -> KForm {
        KForm::basis(n, MultiIndex::new(idx.to_vec()).unwrap())
    }

    #[test]
    fn symplectic_plane() {
        let s = MultisymplecticStructure::new(dx(2, &[0, 1])).unwrap();
        let x1 = KForm::function(Polynomial::var(2, 0));
        let x2 = KForm::function(Polynomial::var(2, 1));
        let b = poisson_bracket(&s, &x1, &x2, &-&e(2, &[1]), &e(2, &[0])).unwrap();
        assert_eq!(b, KForm::function(Polynomial::one(2)));
        let same = poisson_bracket(&s, &x1, &x1, &-&e(2, &[1]), &-&e(2, &[1])).unwrap();
        assert!(same.is_zero());
        let err = poisson_bracket(&s, &x1, &x2, &e(2, &[1]), &e(2, &[0]));
        assert!(matches!(err, Err(Error::ContractViolation(_))));
    }

    #[test]
    fn volume_example() {
        let s = MultisymplecticStructure::new(dx(3, &[0, 1, 2])).unwrap();
        let xi = dx(3, &[1]).mul_coefficient(&Polynomial::var(3, 0));
        let zeta = dx(3, &[2]).mul_coefficient(&Polynomial::var(3, 1));
        let b = poisson_bracket(&s, &xi, &zeta, &e(3, &[2]), &e(3, &[0])).unwrap();
        assert_eq!(b, dx(3, &[1]));
        assert_eq!(b.degree(), 1);
    }

    #[test]
    fn graded_sign_counterexample() {
        // |X| = 2, |Y| = 1 on the volume form: the literal identity is off by a sign
        let s = MultisymplecticStructure::new(dx(3, &[0, 1, 2])).unwrap();
        let x = &e(3, &[0]).mul_coefficient(&Polynomial::var(3, 0))
            - &e(3, &[1]).mul_coefficient(&Polynomial::var(3, 1));
        let y = e(3, &[1, 2]).mul_coefficient(&-Polynomial::var(3, 0));
        let bracket = schouten_unchecked(&y, &x);
        assert_eq!(bracket, e(3, &[1, 2]).mul_coefficient(&Polynomial::var(3, 0)).scale(&int(2)));
        let lhs = contract(&bracket, s.omega()).unwrap();
        let inner = d_or_zero(&contract(&y, &contract(&x, s.omega()).unwrap()).unwrap());
        assert_eq!(lhs, -&inner);
    }

    #[test]
    fn theorem_suite_small() {
        for omega in [dx(2, &[0, 1]), dx(3, &[0, 1, 2])] {
            let s = MultisymplecticStructure::new(omega).unwrap();
            for r in verify_bracket_theorems(&s, 10, 3).unwrap() {
                assert!(r.passed, "{r}");
            }
        }
    }
}
