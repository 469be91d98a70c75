//! Hamiltonian multivector fields: `i(X) Ω = dζ`.

use std::collections::BTreeMap;

use super::{contraction_matrix, homotopy::primitive, omega_hat, MultisymplecticStructure};
use crate::calculus::{contract, d_or_zero};
use crate::error::{check_dim, Error, Result};
use crate::multi_index::MultiIndex;
use crate::polynomial::{Exponents, Polynomial, Rational};
use crate::tensor::{ConstForm, ConstVector, KForm, KVector, Point};

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSolution {
    pub point: Point,
    /// `dζ` at the point.
    pub rhs: ConstForm,
    /// An `m`-vector with `i(X) Ω_p = (dζ)_p`.
    pub particular: ConstVector,
    /// Basis of `ker Ω̂_m(p)`; all solutions are `particular + span(kernel)`.
    pub kernel: Vec<ConstVector>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianOutcome {
    Solved(HamiltonianSolution),
    /// `(dζ)_p` is outside the image of `Ω̂_m(p)`.
    Unsolvable { point: Point, rhs: ConstForm, rank: usize },
}

impl HamiltonianOutcome {
    pub fn solution(&self) -> Option<&HamiltonianSolution> {
        match self {
            Self::Solved(s) => Some(s),
            Self::Unsolvable { .. } => None,
        }
    }
}

fn check_zeta(s: &MultisymplecticStructure, zeta: &KForm, m: usize) -> Result<()> {
    s.check_m(m)?;
    check_dim(s.dim(), zeta.dim())?;
    let want = s.degree() - m - 1;
    if zeta.degree() != want {
        return Err(Error::InvalidInput(format!(
            "Hamiltonian form for an {m}-vector field must have degree {want}, got {}",
            zeta.degree()
        )));
    }
    Ok(())
}

/// Solves `Ω̂_m(p) X = (dζ)_p` exactly.
pub fn hamiltonian_solve(
    s: &MultisymplecticStructure,
    zeta: &KForm,
    m: usize,
    p: &Point,
) -> Result<HamiltonianOutcome> {
    check_zeta(s, zeta, m)?;
    let hat = omega_hat(s, m, p)?;
    let rhs = d_or_zero(zeta).evaluate(p)?;
    Ok(match hat.matrix.solve(&rhs.to_dense()) {
        Some(x) => HamiltonianOutcome::Solved(HamiltonianSolution {
            point: p.clone(),
            rhs,
            particular: ConstVector::from_dense(s.dim(), m, &x),
            kernel: hat.kernel,
        }),
        None => HamiltonianOutcome::Unsolvable {
            point: p.clone(),
            rhs,
            rank: hat.rank,
        },
    })
}

/// A global polynomial `m`-vector field with `i(X) Ω = dζ`, for constant Ω.
///
/// The system is solved monomial by monomial of `dζ`; free variables are
/// set to zero. `None` if some monomial block has no solution.
pub fn hamiltonian_field(s: &MultisymplecticStructure, zeta: &KForm, m: usize) -> Result<Option<KVector>> {
    check_zeta(s, zeta, m)?;
    let omega = s.require_constant()?;
    let n = s.dim();
    let matrix = contraction_matrix(&omega, m)?;
    let rows: BTreeMap<MultiIndex, usize> = MultiIndex::all(n, s.degree() - m)
        .into_iter()
        .enumerate()
        .map(|(i, idx)| (idx, i))
        .collect();
    let mut blocks: BTreeMap<Exponents, Vec<Rational>> = BTreeMap::new();
    for (idx, f) in d_or_zero(zeta).terms() {
        for (e, c) in f.terms() {
            blocks
                .entry(e.clone())
                .or_insert_with(|| vec![Rational::default(); matrix.rows()])[rows[idx]] = c.clone();
        }
    }
    let cols = MultiIndex::all(n, m);
    let mut x = KVector::zero(n, m);
    for (e, rhs) in blocks {
        let Some(sol) = matrix.solve(&rhs) else {
            return Ok(None);
        };
        for (j, v) in sol.into_iter().enumerate() {
            x.add_term(cols[j].clone(), Polynomial::monomial(n, e.clone(), v));
        }
    }
    Ok(Some(x))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    /// `i(X) Ω = d(form)`; `form` is `None` when `m = k` and `i(X) Ω = 0`.
    Hamiltonian { form: Option<KForm> },
    /// `i(X) Ω` closed but not exact.
    LocallyHamiltonian,
    Neither,
}

/// Classifies an `m`-vector field, `1 <= m <= k`.
pub fn classify_multivector(s: &MultisymplecticStructure, x: &KVector) -> Result<Classification> {
    let m = x.degree();
    if m == 0 || m > s.degree() {
        return Err(Error::ContractionRange { m, max: s.degree() });
    }
    let ix = contract(x, s.omega())?;
    if !d_or_zero(&ix).is_zero() {
        return Ok(Classification::Neither);
    }
    if m == s.degree() {
        return Ok(if ix.is_zero() {
            Classification::Hamiltonian { form: None }
        } else {
            Classification::LocallyHamiltonian
        });
    }
    Ok(match primitive(&ix)? {
        Some(form) => Classification::Hamiltonian { form: Some(form) },
        None => Classification::LocallyHamiltonian,
    })
}
