//! Seeded generators for randomized identity checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multi_index::MultiIndex;
use crate::polynomial::{rat, Polynomial, Rational};
use crate::tensor::{Coefficient, Graded, Point, Variance};

/// Shape limits for generated objects.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Maximum total degree of polynomial coefficients.
    pub poly_degree: u32,
    /// Maximum number of monomials per coefficient.
    pub poly_terms: usize,
    /// Maximum number of multi-index terms per tensor.
    pub tensor_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            poly_degree: 2,
            poly_terms: 2,
            tensor_terms: 3,
        }
    }
}

/// Deterministic source of random exact objects (ChaCha8, portable).
pub struct RandomSource {
    rng: ChaCha8Rng,
    pub shape: Shape,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            shape: Shape::default(),
        }
    }

    pub fn with_shape(seed: u64, shape: Shape) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            shape,
        }
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Small nonzero rational with numerator in ±1..=5, denominator 1..=3.
    pub fn nonzero_rational(&mut self) -> Rational {
        let num = self.rng.gen_range(1..=5) * if self.coin() { 1 } else { -1 };
        let den = self.rng.gen_range(1..=3);
        rat(num, den)
    }

    /// Small rational, possibly zero.
    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-6..=6);
        let den = self.rng.gen_range(1..=4);
        rat(num, den)
    }

    pub fn monomial_exponents(&mut self, dim: usize, max_degree: u32) -> Vec<u32> {
        let total = self.rng.gen_range(0..=max_degree);
        let mut e = vec![0; dim];
        for _ in 0..total {
            let i = self.rng.gen_range(0..dim);
            e[i] += 1;
        }
        e
    }

    /// Nonzero polynomial within the configured shape.
    pub fn polynomial(&mut self, dim: usize) -> Polynomial {
        loop {
            let terms = self.rng.gen_range(1..=self.shape.poly_terms.max(1));
            let mut p = Polynomial::zero(dim);
            for _ in 0..terms {
                let e = self.monomial_exponents(dim, self.shape.poly_degree);
                p.add_term(e, self.nonzero_rational());
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn multi_index(&mut self, dim: usize, degree: usize) -> MultiIndex {
        let mut all: Vec<usize> = (0..dim).collect();
        all.shuffle(&mut self.rng);
        let mut pick: Vec<usize> = all.into_iter().take(degree).collect();
        pick.sort_unstable();
        MultiIndex::new(pick).expect("sorted distinct")
    }

    /// Polynomial tensor of the given degree; may cancel to zero only if
    /// `tensor_terms` repeats an index.
    pub fn poly_tensor<V: Variance>(&mut self, dim: usize, degree: usize) -> Graded<V, Polynomial> {
        let terms = self.rng.gen_range(1..=self.shape.tensor_terms.max(1));
        let mut t = Graded::zero(dim, degree);
        for _ in 0..terms {
            let idx = self.multi_index(dim, degree);
            let c = self.polynomial(dim);
            t.add_term(idx, c);
        }
        t
    }

    pub fn const_tensor<V: Variance>(&mut self, dim: usize, degree: usize) -> Graded<V, Rational> {
        let terms = self.rng.gen_range(1..=self.shape.tensor_terms.max(1));
        let mut t = Graded::zero(dim, degree);
        for _ in 0..terms {
            let idx = self.multi_index(dim, degree);
            t.add_term(idx, self.nonzero_rational());
        }
        t
    }

    /// Dense constant tensor: every basis entry drawn independently.
    pub fn dense_const_tensor<V: Variance>(&mut self, dim: usize, degree: usize) -> Graded<V, Rational> {
        let values: Vec<Rational> = MultiIndex::all(dim, degree)
            .iter()
            .map(|_| self.rational())
            .collect();
        Graded::from_dense(dim, degree, &values)
    }

    pub fn point(&mut self, dim: usize) -> Point {
        Point::new((0..dim).map(|_| self.rational()).collect())
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }
}

/// Lifts a generated constant tensor to polynomial coefficients.
pub fn lift<V: Variance>(t: &Graded<V, Rational>) -> Graded<V, Polynomial> {
    let mut out = Graded::zero(t.dim(), t.degree());
    for (i, c) in t.terms() {
        out.add_term(i.clone(), Polynomial::from_rational(t.dim(), c.clone()));
    }
    out
}
