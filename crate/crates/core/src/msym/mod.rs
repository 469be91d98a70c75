//! Multisymplectic structures on `R^n`: pointwise contraction maps,
//! nondegeneracy, Hamiltonian multivector fields, the graded Poisson bracket,
//! exactness via a homotopy operator and homogeneity checks.

mod bracket;
mod hamiltonian;
mod homogeneity;
mod homotopy;

pub use bracket::{
    graded_bracket, poisson_bracket, verify_bracket_theorems, HamiltonianPair, POISSON_ANTISYMMETRY, POISSON_JACOBI,
    PROP_FORM, PROP_GRADED, PROP_LITERAL, PROP_LITERAL_CONFLICT,
};
pub use hamiltonian::{
    classify_multivector, hamiltonian_field, hamiltonian_solve, Classification, HamiltonianOutcome,
    HamiltonianSolution,
};
pub use homogeneity::{conformal_check, euler_field, euler_homogeneity, span_check, ConformalFactor, SpanAtPoint, SpanReport};
pub use homotopy::{homotopy_operator, is_exact, primitive};

use crate::calculus::{contract, d_or_zero};
use crate::error::{check_dim, Error, Result};
use crate::linalg::Matrix;
use crate::multi_index::{binomial, MultiIndex};
use crate::polynomial::{int, Rational};
use crate::random::RandomSource;
use crate::tensor::{ConstForm, ConstVector, KForm, Point};

/// A closed `k`-form on `R^n`, `2 <= k <= n`. Nondegeneracy is not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct MultisymplecticStructure {
    omega: KForm,
}

impl MultisymplecticStructure {
    pub fn new(omega: KForm) -> Result<Self> {
        let (n, k) = (omega.dim(), omega.degree());
        if k < 2 || k > n {
            return Err(Error::InvalidInput(format!(
                "structure degree must satisfy 2 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        if !d_or_zero(&omega).is_zero() {
            return Err(Error::NotClosed { degree: k });
        }
        Ok(Self { omega })
    }

    pub fn from_constant(omega: &ConstForm) -> Result<Self> {
        Self::new(KForm::from_constant(omega))
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn degree(&self) -> usize {
        self.omega.degree()
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    /// Always true; closedness is checked at construction.
    pub fn is_closed(&self) -> bool {
        true
    }

    pub fn constant_omega(&self) -> Option<ConstForm> {
        self.omega.to_constant()
    }

    pub fn at(&self, p: &Point) -> Result<ConstForm> {
        self.omega.evaluate(p)
    }

    pub(crate) fn require_constant(&self) -> Result<ConstForm> {
        self.constant_omega().ok_or_else(|| {
            Error::InvalidInput("operation requires a constant-coefficient structure".into())
        })
    }

    pub(crate) fn check_m(&self, m: usize) -> Result<()> {
        if m == 0 || m >= self.degree() {
            return Err(Error::ContractionRange {
                m,
                max: self.degree() - 1,
            });
        }
        Ok(())
    }
}

/// Matrix of `v -> i(v) omega` on `m`-vectors, in lexicographic bases:
/// shape `C(n, k-m) x C(n, m)`.
pub fn contraction_matrix(omega: &ConstForm, m: usize) -> Result<Matrix> {
    let (n, k) = (omega.dim(), omega.degree());
    if m > k {
        return Err(Error::ContractionDegree { vector: m, form: k });
    }
    let columns: Vec<Vec<Rational>> = MultiIndex::all(n, m)
        .into_iter()
        .map(|j| contract(&ConstVector::basis(n, j), omega).map(|c| c.to_dense()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(binomial(n, k - m), &columns))
}

/// `Ω̂_m` at a point, with rank and kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaHatMatrix {
    pub m: usize,
    pub point: Point,
    pub matrix: Matrix,
    pub rank: usize,
    pub kernel: Vec<ConstVector>,
}

impl OmegaHatMatrix {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
}

pub fn omega_hat(s: &MultisymplecticStructure, m: usize, p: &Point) -> Result<OmegaHatMatrix> {
    s.check_m(m)?;
    check_dim(s.dim(), p.dim())?;
    let at = s.at(p)?;
    let matrix = contraction_matrix(&at, m)?;
    let rref = matrix.rref();
    let kernel = matrix
        .nullspace()
        .iter()
        .map(|v| ConstVector::from_dense(s.dim(), m, v))
        .collect();
    Ok(OmegaHatMatrix {
        m,
        point: p.clone(),
        rank: rref.rank(),
        matrix,
        kernel,
    })
}

/// Smallest possible dimension of `ker Ω̂_m`: `max(0, C(n,m) - C(n,k-m))`.
pub fn kernel_floor(n: usize, k: usize, m: usize) -> usize {
    binomial(n, m).saturating_sub(binomial(n, k - m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub m: usize,
    pub floor: usize,
    pub min_kernel: usize,
    pub max_kernel: usize,
    /// Kernel dimension equals the floor at every sample point.
    pub nondegenerate: bool,
}

/// Nondegeneracy evidence at finitely many sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub dim: usize,
    pub degree: usize,
    pub sample_count: usize,
    pub per_m: Vec<DegreeReport>,
    pub strongly_nondegenerate: bool,
    pub closed: bool,
    pub multisymplectic: bool,
}

pub fn nondegeneracy_report(s: &MultisymplecticStructure, points: &[Point]) -> Result<NondegeneracyReport> {
    if points.is_empty() {
        return Err(Error::InvalidInput("at least one sample point is required".into()));
    }
    let (n, k) = (s.dim(), s.degree());
    let mut per_m = Vec::new();
    let mut one_injective = true;
    for m in 1..k {
        let floor = kernel_floor(n, k, m);
        let mut min_kernel = usize::MAX;
        let mut max_kernel = 0;
        for p in points {
            let d = omega_hat(s, m, p)?.kernel_dim();
            min_kernel = min_kernel.min(d);
            max_kernel = max_kernel.max(d);
        }
        if m == 1 {
            one_injective = max_kernel == 0;
        }
        per_m.push(DegreeReport {
            m,
            floor,
            min_kernel,
            max_kernel,
            nondegenerate: min_kernel == floor && max_kernel == floor,
        });
    }
    Ok(NondegeneracyReport {
        dim: n,
        degree: k,
        sample_count: points.len(),
        strongly_nondegenerate: per_m.iter().all(|r| r.nondegenerate),
        per_m,
        closed: s.is_closed(),
        multisymplectic: s.is_closed() && one_injective,
    })
}

fn first_primes(count: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2i64;
    while out.len() < count {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Origin, the all-ones point, a point with distinct prime coordinates and
/// `random` seeded rational points.
pub fn sample_points(n: usize, random: usize, seed: u64) -> Vec<Point> {
    let mut pts = vec![
        Point::origin(n),
        Point::new(vec![int(1); n]),
        Point::new(first_primes(n).into_iter().map(int).collect()),
    ];
    let mut rng = RandomSource::new(seed);
    pts.extend((0..random).map(|_| rng.point(n)));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;

    fn form(n: usize, terms: &[(i64, &[usize])]) -> KForm {
        KForm::from_terms(
            n,
            terms[0].1.len(),
            terms.iter().map(|(c, idx)| {
                (
                    MultiIndex::new(idx.iter().map(|i| i - 1).collect()).unwrap(),
                    Polynomial::constant(n, int(*c)),
                )
            }),
        )
        .unwrap()
    }

    fn g2() -> KForm {
        form(
            7,
            &[
                (1, &[1, 2, 3]),
                (1, &[1, 4, 5]),
                (1, &[1, 6, 7]),
                (1, &[2, 4, 6]),
                (-1, &[2, 5, 7]),
                (-1, &[3, 4, 7]),
                (-1, &[3, 5, 6]),
            ],
        )
    }

    #[test]
    fn construction_checks() {
        assert!(MultisymplecticStructure::new(form(3, &[(1, &[1])])).is_err());
        let mut w = form(3, &[(1, &[1, 2])]);
        w.add_term(MultiIndex::new(vec![0, 2]).unwrap(), Polynomial::var(3, 1));
        assert_eq!(MultisymplecticStructure::new(w), Err(Error::NotClosed { degree: 2 }));
        assert!(MultisymplecticStructure::new(form(4, &[(1, &[1, 2]), (1, &[3, 4])])).is_ok());
    }

    #[test]
    fn omega_hat_examples() {
        let pts = sample_points(7, 2, 1);
        let s = MultisymplecticStructure::new(form(4, &[(1, &[1, 2]), (1, &[3, 4])])).unwrap();
        let h = omega_hat(&s, 1, &sample_points(4, 0, 0)[2]).unwrap();
        assert_eq!((h.rank, h.kernel_dim()), (4, 0));
        let vol = MultisymplecticStructure::new(form(3, &[(1, &[1, 2, 3])])).unwrap();
        let h = omega_hat(&vol, 1, &Point::origin(3)).unwrap();
        assert_eq!((h.rank, h.kernel_dim()), (3, 0));
        let g = MultisymplecticStructure::new(g2()).unwrap();
        for p in &pts {
            let h = omega_hat(&g, 2, p).unwrap();
            assert_eq!((h.rank, h.kernel_dim()), (7, 14));
            for v in &h.kernel {
                assert!(contract(v, &g.at(p).unwrap()).unwrap().is_zero());
            }
        }
        assert!(omega_hat(&g, 3, &pts[0]).is_err());
        assert!(omega_hat(&g, 0, &pts[0]).is_err());
    }

    #[test]
    fn nondegeneracy_examples() {
        let g = MultisymplecticStructure::new(g2()).unwrap();
        let r = nondegeneracy_report(&g, &sample_points(7, 2, 3)).unwrap();
        assert!(r.multisymplectic);
        assert!(r.strongly_nondegenerate);
        let w = MultisymplecticStructure::new(form(3, &[(1, &[1, 2])])).unwrap();
        let r = nondegeneracy_report(&w, &sample_points(3, 2, 3)).unwrap();
        assert!(!r.multisymplectic);
        assert_eq!(r.per_m[0].min_kernel, 1);
        let h = omega_hat(&w, 1, &Point::origin(3)).unwrap();
        assert_eq!(h.kernel, vec![ConstVector::basis(3, MultiIndex::single(2))]);
        assert!(nondegeneracy_report(&w, &[]).is_err());
    }

    #[test]
    fn sample_points_are_deterministic() {
        assert_eq!(sample_points(4, 3, 9), sample_points(4, 3, 9));
        assert_eq!(sample_points(3, 0, 0)[2], Point::new(vec![int(2), int(3), int(5)]));
    }
}
