//! Radial homotopy operator for polynomial forms on `R^n`.

use crate::calculus::d_or_zero;
use crate::error::{Error, Result};
use crate::polynomial::{int, Polynomial};
use crate::tensor::KForm;

/// `K a = ∫_0^1 t^{k-1} i(E) a(tx) dt` with `E` the Euler field, computed in
/// closed form: a monomial `c x^α dx^I` of form degree `k` maps to
/// `c/(|α|+k) x^α Σ_j (-1)^j x^{i_j} dx^{I \ i_j}`.
///
/// Satisfies `dK + Kd = id` on forms of degree at least 1.
pub fn homotopy_operator(a: &KForm) -> Result<KForm> {
    let (n, k) = (a.dim(), a.degree());
    if k == 0 {
        return Err(Error::InvalidInput(
            "homotopy operator needs a form of degree at least 1".into(),
        ));
    }
    let mut out = KForm::zero(n, k - 1);
    for (idx, f) in a.terms() {
        for (exps, c) in f.terms() {
            let weight: u32 = exps.iter().sum::<u32>() + k as u32;
            let coeff = c / int(i64::from(weight));
            for (j, &i) in idx.indices().iter().enumerate() {
                let (_, rest) = idx.remove_left(i).expect("index present");
                let mut e = exps.clone();
                e[i] += 1;
                let mono = Polynomial::monomial(n, e, coeff.clone());
                out.add_term(rest, if j % 2 == 1 { -mono } else { mono });
            }
        }
    }
    Ok(out)
}

/// A primitive of a closed form of degree at least 1, certified by `d`.
pub fn primitive(a: &KForm) -> Result<Option<KForm>> {
    let k = homotopy_operator(a)?;
    Ok((d_or_zero(&k) == *a).then_some(k))
}

/// Exactness on `R^n`: degree 0 only for the zero function.
pub fn is_exact(a: &KForm) -> bool {
    if a.degree() == 0 {
        return a.is_zero();
    }
    matches!(primitive(a), Ok(Some(_)))
}
