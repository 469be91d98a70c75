//! Exterior derivative, interior product by multivectors, Lie derivative of
//! arbitrary degree and pullback by linear maps.
//!
//! Contraction follows `i(v1 ^ ... ^ vm) = i(v1) ∘ ... ∘ i(vm)`: the last
//! factor is applied first. Every sign-sensitive result in the crate is
//! stated against this convention.

use crate::error::{check_dim, Error, Result};
use crate::linalg::LinearEndo;
use crate::multi_index::MultiIndex;
use crate::polynomial::Polynomial;
use crate::tensor::{Coefficient, Contravariant, Covariant, Graded, KForm, KVector};

/// `d a`. Fails on a top-degree form, whose derivative would have degree `dim + 1`.
pub fn exterior_derivative(a: &KForm) -> Result<KForm> {
    if a.degree() >= a.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: a.degree() + 1,
            dim: a.dim(),
        });
    }
    Ok(d_unchecked(a))
}

/// `d a`, with the top-degree case mapped to zero.
pub(crate) fn d_or_zero(a: &KForm) -> KForm {
    if a.degree() >= a.dim() {
        KForm::zero(a.dim(), a.dim())
    } else {
        d_unchecked(a)
    }
}

fn d_unchecked(a: &KForm) -> KForm {
    let n = a.dim();
    let mut out = KForm::zero(n, a.degree() + 1);
    for (idx, f) in a.terms() {
        for j in 0..n {
            let df = f.partial(j);
            if df.is_zero() {
                continue;
            }
            if let Some((odd, new_idx)) = idx.insert_front(j) {
                out.add_signed(new_idx, df, odd);
            }
        }
    }
    out
}

/// `i(d/dx^J)` applied to the basis form `dx^I`: the sign and the surviving
/// index, or `None` if the contraction vanishes.
pub(crate) fn contract_basis(vector: &MultiIndex, form: &MultiIndex) -> Option<(bool, MultiIndex)> {
    let mut odd = false;
    let mut cur = form.clone();
    for &j in vector.indices().iter().rev() {
        let (o, next) = cur.remove_left(j)?;
        odd ^= o;
        cur = next;
    }
    Some((odd, cur))
}

/// `i(X) a` for an `m`-vector `X` and a `k`-form `a`, `m <= k`.
///
/// Degree-0 `X` acts by multiplication.
pub fn contract<C: Coefficient>(
    x: &Graded<Contravariant, C>,
    a: &Graded<Covariant, C>,
) -> Result<Graded<Covariant, C>> {
    check_dim(a.dim(), x.dim())?;
    if x.degree() > a.degree() {
        return Err(Error::ContractionDegree {
            vector: x.degree(),
            form: a.degree(),
        });
    }
    Ok(contract_unchecked(x, a))
}

/// `i(X) a`, or the zero 0-form when `deg X > deg a`.
pub fn contract_or_zero<C: Coefficient>(
    x: &Graded<Contravariant, C>,
    a: &Graded<Covariant, C>,
) -> Graded<Covariant, C> {
    assert_eq!(x.dim(), a.dim(), "dimension mismatch in contraction");
    if x.degree() > a.degree() {
        Graded::zero(a.dim(), 0)
    } else {
        contract_unchecked(x, a)
    }
}

fn contract_unchecked<C: Coefficient>(
    x: &Graded<Contravariant, C>,
    a: &Graded<Covariant, C>,
) -> Graded<Covariant, C> {
    let mut out = Graded::zero(a.dim(), a.degree() - x.degree());
    for (vj, g) in x.terms() {
        for (fi, f) in a.terms() {
            if let Some((odd, idx)) = contract_basis(vj, fi) {
                out.add_signed(idx, g.times(f), odd);
            }
        }
    }
    out
}

/// `L(X) a = d i(X) a - (-1)^m i(X) d a` for an `m`-vector field `X`.
///
/// The result has degree `deg a - m + 1`. Terms whose degree falls outside
/// `0..=dim` vanish; if the result degree itself is negative the zero
/// 0-form is returned. `m = 0` is allowed and gives `L(f) a = df ^ a`.
pub fn lie_derivative(x: &KVector, a: &KForm) -> Result<KForm> {
    check_dim(a.dim(), x.dim())?;
    Ok(lie_unchecked(x, a))
}

pub(crate) fn lie_unchecked(x: &KVector, a: &KForm) -> KForm {
    let n = a.dim();
    let m = x.degree();
    let k = a.degree();
    if k + 1 < m {
        return KForm::zero(n, 0);
    }
    let target = (k + 1 - m).min(n);
    let mut out = KForm::zero(n, target);
    if m <= k {
        let ia = contract_unchecked(x, a);
        if ia.degree() < n {
            out = &out + &d_unchecked(&ia);
        }
    }
    if k < n && m <= k + 1 {
        let ida = contract_unchecked(x, &d_unchecked(a));
        out = if m.is_multiple_of(2) { &out - &ida } else { &out + &ida };
    }
    out
}

/// `φ* a` for the linear map `φ(x) = Ax`.
///
/// Coefficients are composed with `A`; `dx^i` pulls back to `Σ_j A_ij dx^j`.
pub fn pullback_linear(map: &LinearEndo, a: &KForm) -> Result<KForm> {
    let n = a.dim();
    check_dim(n, map.dim())?;
    let rows = map.matrix().to_rows();
    let covectors: Vec<KForm> = rows
        .iter()
        .map(|row| {
            let mut c = KForm::zero(n, 1);
            for (j, v) in row.iter().enumerate() {
                c.add_term(MultiIndex::single(j), Polynomial::constant(n, v.clone()));
            }
            c
        })
        .collect();
    let mut out = KForm::zero(n, a.degree());
    for (idx, f) in a.terms() {
        let mut basis = KForm::scalar(n, f.compose_linear(&rows));
        for &i in idx.indices() {
            basis = basis.wedge(&covectors[i])?;
        }
        out = &out + &basis;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, Rational};
    use crate::tensor::ConstForm;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn form(n: usize, idx: &[usize], c: Polynomial) -> KForm {
        KForm::basis(n, mi(idx)).mul_coefficient(&c)
    }

    fn vecf(n: usize, idx: &[usize], c: Polynomial) -> KVector {
        KVector::basis(n, mi(idx)).mul_coefficient(&c)
    }

    fn one(n: usize) -> Polynomial {
        Polynomial::one(n)
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            exterior_derivative(&form(2, &[1], x(2, 0))).unwrap(),
            form(2, &[0, 1], one(2))
        );
        assert!(exterior_derivative(&form(3, &[0, 1], one(3))).unwrap().is_zero());
        let a = form(3, &[2], &x(3, 0) * &x(3, 1));
        let expect = &form(3, &[0, 2], x(3, 1)) + &form(3, &[1, 2], x(3, 0));
        assert_eq!(exterior_derivative(&a).unwrap(), expect);
    }

    #[test]
    fn derivative_of_top_form_is_rejected() {
        let top = form(2, &[0, 1], x(2, 0));
        assert_eq!(
            exterior_derivative(&top),
            Err(Error::DegreeOutOfRange { degree: 3, dim: 2 })
        );
    }

    #[test]
    fn contraction_examples() {
        let w12 = form(2, &[0, 1], one(2));
        assert_eq!(
            contract(&vecf(2, &[1], one(2)), &w12).unwrap(),
            form(2, &[0], -one(2))
        );
        assert_eq!(
            contract(&vecf(2, &[0, 1], one(2)), &w12).unwrap(),
            KForm::scalar(2, Polynomial::constant(2, int(-1)))
        );
        let w123 = form(3, &[0, 1, 2], one(3));
        assert_eq!(
            contract(&vecf(3, &[0, 1], one(3)), &w123).unwrap(),
            form(3, &[2], -one(3))
        );
        assert_eq!(
            contract(&vecf(2, &[0, 1], one(2)), &form(2, &[0], one(2))),
            Err(Error::ContractionDegree { vector: 2, form: 1 })
        );
    }

    #[test]
    fn degree_zero_vector_multiplies() {
        let f = KVector::function(x(3, 1));
        let a = form(3, &[0, 2], x(3, 0));
        assert_eq!(contract(&f, &a).unwrap(), a.mul_coefficient(&x(3, 1)));
    }

    #[test]
    fn decomposable_contraction_is_nested() {
        // i(u ^ v) = i(u) ∘ i(v) for constant vectors u, v on R^4
        let n = 4;
        let u: Vec<Rational> = vec![int(1), int(2), int(0), int(-1)];
        let v: Vec<Rational> = vec![int(0), int(1), int(3), int(1)];
        let to_vec = |c: &[Rational]| {
            let mut t = KVector::zero(n, 1);
            for (i, a) in c.iter().enumerate() {
                t.add_term(MultiIndex::single(i), Polynomial::constant(n, a.clone()));
            }
            t
        };
        let (uu, vv) = (to_vec(&u), to_vec(&v));
        let omega = &(&form(n, &[0, 1, 2], x(n, 3)) + &form(n, &[0, 2, 3], one(n)))
            + &form(n, &[1, 2, 3], x(n, 0));
        let uv = uu.wedge(&vv).unwrap();
        let nested = contract(&uu, &contract(&vv, &omega).unwrap()).unwrap();
        assert_eq!(contract(&uv, &omega).unwrap(), nested);
    }

    #[test]
    fn lie_derivative_examples() {
        let a = form(2, &[0, 1], x(2, 0));
        assert_eq!(
            lie_derivative(&vecf(2, &[0], one(2)), &a).unwrap(),
            form(2, &[0, 1], one(2))
        );
        let w12 = form(2, &[0, 1], one(2));
        assert!(lie_derivative(&vecf(2, &[0, 1], one(2)), &w12).unwrap().is_zero());
    }

    #[test]
    fn euler_field_scales_constant_monomials() {
        let n = 5;
        let euler = LinearEndo::identity(n).vector_field();
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            let a = form(n, &idx, one(n));
            assert_eq!(lie_derivative(&euler, &a).unwrap(), a.scale(&int(k as i64)));
        }
    }

    #[test]
    fn lie_derivative_out_of_range_is_zero() {
        // a 3-vector on a 1-form: result degree would be -1
        let x3 = vecf(3, &[0, 1, 2], one(3));
        let a = form(3, &[0], x(3, 1));
        let r = lie_derivative(&x3, &a).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn function_lie_derivative_is_wedge_with_differential() {
        let n = 3;
        let f = &x(n, 0) * &x(n, 2);
        let a = form(n, &[1], x(n, 1));
        let lhs = lie_derivative(&KVector::function(f.clone()), &a).unwrap();
        let df = exterior_derivative(&KForm::function(f)).unwrap();
        assert_eq!(lhs, df.wedge(&a).unwrap());
    }

    #[test]
    fn pullback_examples() {
        let n = 2;
        let swap = LinearEndo::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let w = form(n, &[0, 1], one(n));
        assert_eq!(pullback_linear(&swap, &w).unwrap(), -&w);
        assert_eq!(pullback_linear(&LinearEndo::identity(n), &w).unwrap(), w);
        let omega = KForm::from_constant(
            &ConstForm::from_terms(7, 3, [(mi(&[0, 1, 2]), int(1)), (mi(&[1, 4, 6]), int(-1))]).unwrap(),
        );
        let doubled = pullback_linear(&LinearEndo::scalar(7, int(2)), &omega).unwrap();
        assert_eq!(doubled, omega.scale(&int(8)));
    }

    #[test]
    fn pullback_composes_coefficients() {
        let n = 2;
        let a = LinearEndo::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        // x1 dx2 pulls back to (x1 + x2) dx2
        let f = form(n, &[1], x(n, 0));
        let expect = form(n, &[1], &x(n, 0) + &x(n, 1));
        assert_eq!(pullback_linear(&a, &f).unwrap(), expect);
    }
}
