//! Linear infinitesimal automorphisms of constant-coefficient forms.
//!
//! A matrix `A` acts through the linear field `X_A = Σ A_ij x^j ∂_i`; on
//! constant forms `L(X_A)` is the derivation `dx^i ↦ Σ_j A_ij dx^j`.

use crate::calculus::pullback_linear;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{in_span, rref_rows, LinearEndo, Matrix};
use crate::multi_index::{binomial, MultiIndex};
use crate::polynomial::{int, Rational};
use crate::tensor::{ConstForm, KForm};
use num_traits::Zero;

/// `L(X_A) ω` for constant `ω`.
pub fn linear_action(a: &LinearEndo, omega: &ConstForm) -> Result<ConstForm> {
    let n = omega.dim();
    check_dim(n, a.dim())?;
    let mut out = ConstForm::zero(n, omega.degree());
    for (idx, c) in omega.terms() {
        for (pos, &i) in idx.indices().iter().enumerate() {
            for j in 0..n {
                let aij = a.entry(i, j);
                if aij.is_zero() {
                    continue;
                }
                let mut replaced = idx.indices().to_vec();
                replaced[pos] = j;
                if let Some((odd, sorted)) = MultiIndex::sorted(replaced) {
                    let v = c * aij;
                    out.add_term(sorted, if odd { -v } else { v });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerResult {
    pub dim: usize,
    /// Row-reduced basis of the solution space.
    pub basis: Vec<LinearEndo>,
    /// `c_A` with `L(X_A) ω = c_A ω`; all zero unless `conformal`.
    pub weights: Vec<Rational>,
    pub conformal: bool,
}

impl StabilizerResult {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn action_columns(n: usize, omega: &ConstForm) -> Vec<Vec<Rational>> {
    (0..n * n)
        .map(|f| {
            linear_action(&LinearEndo::unit(n, f / n, f % n), omega)
                .expect("dimensions agree")
                .to_dense()
        })
        .collect()
}

/// `{A ∈ gl(n) : L(X_A) ω = 0}`.
pub fn stabilizer_algebra(omega: &ConstForm) -> StabilizerResult {
    let n = omega.dim();
    let rows = binomial(n, omega.degree());
    let m = Matrix::from_columns(rows, &action_columns(n, omega));
    let basis: Vec<LinearEndo> = rref_rows(&m.nullspace())
        .iter()
        .map(|v| LinearEndo::from_flat(n, v))
        .collect();
    StabilizerResult {
        dim: n,
        weights: vec![Rational::zero(); basis.len()],
        basis,
        conformal: false,
    }
}

/// `{(A, c) : L(X_A) ω = c ω}`.
pub fn conformal_stabilizer(omega: &ConstForm) -> StabilizerResult {
    let n = omega.dim();
    let rows = binomial(n, omega.degree());
    let mut cols = action_columns(n, omega);
    cols.push((-omega).to_dense());
    let m = Matrix::from_columns(rows, &cols);
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for v in rref_rows(&m.nullspace()) {
        basis.push(LinearEndo::from_flat(n, &v[..n * n]));
        weights.push(v[n * n].clone());
    }
    StabilizerResult {
        dim: n,
        basis,
        weights,
        conformal: true,
    }
}

/// Constant `d`-forms annihilated by every basis element of `stab`.
pub fn invariant_forms(stab: &StabilizerResult, degree: usize) -> Result<Vec<ConstForm>> {
    let n = stab.dim;
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, dim: n });
    }
    let basis = MultiIndex::all(n, degree);
    let block = binomial(n, degree);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(block * stab.basis.len());
    let columns: Vec<Vec<Vec<Rational>>> = stab
        .basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|j| linear_action(a, &ConstForm::basis(n, j.clone())).map(|f| f.to_dense()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for cols in &columns {
        for r in 0..block {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let null = if rows.is_empty() {
        (0..block)
            .map(|i| (0..block).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows)?.nullspace()
    };
    Ok(rref_rows(&null)
        .iter()
        .map(|v| ConstForm::from_dense(n, degree, v))
        .collect())
}

/// Every basis element satisfies `L(X_A) ω = c_A ω`.
pub fn certify(stab: &StabilizerResult, omega: &ConstForm) -> Result<bool> {
    for (a, c) in stab.basis.iter().zip(&stab.weights) {
        if linear_action(a, omega)? != omega.scale(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Commutators of basis elements stay in the span of the basis.
pub fn closure_check(stab: &StabilizerResult) -> Result<bool> {
    let flat: Vec<Vec<Rational>> = stab.basis.iter().map(LinearEndo::to_flat).collect();
    for (i, a) in stab.basis.iter().enumerate() {
        for b in &stab.basis[i + 1..] {
            if !in_span(&flat, &a.commutator(b)?.to_flat()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `c` with `φ* ω2 = c ω1` for `φ(x) = Ax`, if one exists.
pub fn special_conformal_check(a: &LinearEndo, omega1: &ConstForm, omega2: &ConstForm) -> Result<Option<Rational>> {
    check_dim(omega1.dim(), a.dim())?;
    check_dim(omega2.dim(), a.dim())?;
    if a.determinant().is_zero() {
        return Err(Error::Singular);
    }
    let pulled = pullback_linear(a, &KForm::from_constant(omega2))?
        .to_constant()
        .expect("linear pullback keeps constant coefficients");
    let Some((idx, pivot)) = omega1.terms().next() else {
        return Ok(None);
    };
    let c = pulled.coefficient_or_zero(idx) / pivot;
    Ok((pulled == omega1.scale(&c) && pulled.degree() == omega1.degree()).then_some(c))
}
