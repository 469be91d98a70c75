//! Euler homogeneity, conformal vector fields and spans of locally
//! Hamiltonian fields.

use super::{hamiltonian_field, MultisymplecticStructure};
use crate::calculus::lie_unchecked;
use crate::error::{check_dim, Error, Result};
use crate::linalg::rank_of;
use crate::multi_index::{binomial, MultiIndex};
use crate::polynomial::{Polynomial, Rational};
use crate::stabilizer::stabilizer_algebra;
use crate::tensor::{KForm, KVector, Point};

/// `Δ = Σ x^i ∂/∂x^i`.
pub fn euler_field(n: usize) -> KVector {
    let mut d = KVector::zero(n, 1);
    for i in 0..n {
        d.add_term(MultiIndex::single(i), Polynomial::var(n, i));
    }
    d
}

/// `σ` with `a = σ b`, if it exists as a polynomial.
fn proportionality(a: &KForm, b: &KForm) -> Option<Polynomial> {
    let (idx, pivot) = b.terms().next()?;
    let sigma = a.coefficient_or_zero(idx).exact_div(pivot)?;
    (*a == b.mul_coefficient(&sigma)).then_some(sigma)
}

/// `c` with `L(Δ) Ω = c Ω`, if one exists.
pub fn euler_homogeneity(s: &MultisymplecticStructure) -> Option<Rational> {
    let l = lie_unchecked(&euler_field(s.dim()), s.omega());
    let sigma = proportionality(&l, s.omega())?;
    sigma.is_constant().then(|| sigma.constant_term())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFactor {
    pub sigma: Polynomial,
    pub constant: bool,
}

/// `σ` with `L(X) Ω = σ Ω` for a vector field `X`, if one exists.
pub fn conformal_check(s: &MultisymplecticStructure, x: &KVector) -> Result<Option<ConformalFactor>> {
    check_dim(s.dim(), x.dim())?;
    if x.degree() != 1 {
        return Err(Error::InvalidInput(format!(
            "conformal check needs a vector field, got degree {}",
            x.degree()
        )));
    }
    let l = lie_unchecked(x, s.omega());
    Ok(proportionality(&l, s.omega()).map(|sigma| ConformalFactor {
        constant: sigma.is_constant(),
        sigma,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanAtPoint {
    pub point: Point,
    pub vector_span: usize,
    pub multivector_span: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    /// `n`.
    pub vector_target: usize,
    /// `C(n, k-1)`.
    pub multivector_target: usize,
    pub vector_family: usize,
    pub multivector_family: usize,
    pub points: Vec<SpanAtPoint>,
    pub full: bool,
}

fn certified(s: &MultisymplecticStructure, family: &[KVector]) -> Result<()> {
    for x in family {
        if !lie_unchecked(x, s.omega()).is_zero() {
            return Err(Error::ContractViolation(format!(
                "generated field {x} does not preserve the structure"
            )));
        }
    }
    Ok(())
}

fn span_at(family: &[KVector], p: &Point) -> Result<usize> {
    let values = family
        .iter()
        .map(|x| x.evaluate(p).map(|v| v.to_dense()))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_of(&values))
}

/// Dimension of the span of values of generated locally Hamiltonian vector
/// fields and `(k-1)`-vector fields at each point. Constant structures only.
pub fn span_check(s: &MultisymplecticStructure, points: &[Point]) -> Result<SpanReport> {
    let omega = s.require_constant()?;
    let (n, k) = (s.dim(), s.degree());
    let mut vectors: Vec<KVector> = (0..n).map(|i| KVector::basis(n, MultiIndex::single(i))).collect();
    vectors.extend(stabilizer_algebra(&omega).basis.iter().map(|a| a.vector_field()));
    let mut multis: Vec<KVector> = MultiIndex::all(n, k - 1)
        .into_iter()
        .map(|j| KVector::basis(n, j))
        .collect();
    for i in 0..n {
        let zeta = KForm::function(Polynomial::var(n, i));
        if let Some(x) = hamiltonian_field(s, &zeta, k - 1)? {
            multis.push(x);
        }
    }
    certified(s, &vectors)?;
    certified(s, &multis)?;
    let target = binomial(n, k - 1);
    let points = points
        .iter()
        .map(|p| {
            Ok(SpanAtPoint {
                point: p.clone(),
                vector_span: span_at(&vectors, p)?,
                multivector_span: span_at(&multis, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpanReport {
        vector_target: n,
        multivector_target: target,
        vector_family: vectors.len(),
        multivector_family: multis.len(),
        full: points.iter().all(|p| p.vector_span == n && p.multivector_span == target),
        points,
    })
}
