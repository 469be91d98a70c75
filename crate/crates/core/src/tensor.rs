//! Sparse antisymmetric tensors: differential forms, multivector fields and
//! their pointwise (constant) values.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::multi_index::MultiIndex;
use crate::polynomial::{monomial_string, push_signed_term, Polynomial, Rational};

/// Kind of basis a tensor is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarianceKind {
    /// `dx^{i1} ^ ... ^ dx^{ik}`
    Form,
    /// `d/dx^{i1} ^ ... ^ d/dx^{ik}`
    Vector,
}

pub trait Variance: Clone + Copy + fmt::Debug + PartialEq + Eq + 'static {
    const KIND: VarianceKind;
    /// Prefix of the printed basis symbols (`dx1`, `e1`).
    const SYMBOL: &'static str;
}

/// Marker for differential forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Covariant;

/// Marker for multivector fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Contravariant;

impl Variance for Covariant {
    const KIND: VarianceKind = VarianceKind::Form;
    const SYMBOL: &'static str = "dx";
}

impl Variance for Contravariant {
    const KIND: VarianceKind = VarianceKind::Vector;
    const SYMBOL: &'static str = "e";
}

/// Coefficient ring of a tensor: exact rationals or polynomials.
pub trait Coefficient: Clone + fmt::Debug + PartialEq {
    fn zero_in(dim: usize) -> Self;
    fn one_in(dim: usize) -> Self;
    fn from_rational(dim: usize, r: Rational) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_in_place(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    /// Dimension carried by the coefficient itself, if any.
    fn coeff_dim(&self) -> Option<usize>;
    /// `(coefficient, monomial text)` pairs used for printing.
    fn printable_terms(&self) -> Vec<(Rational, String)>;
}

impl Coefficient for Rational {
    fn zero_in(_: usize) -> Self {
        Rational::zero()
    }
    fn one_in(_: usize) -> Self {
        Rational::one()
    }
    fn from_rational(_: usize, r: Rational) -> Self {
        r
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_in_place(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
    fn coeff_dim(&self) -> Option<usize> {
        None
    }
    fn printable_terms(&self) -> Vec<(Rational, String)> {
        vec![(self.clone(), String::new())]
    }
}

impl Coefficient for Polynomial {
    fn zero_in(dim: usize) -> Self {
        Polynomial::zero(dim)
    }
    fn one_in(dim: usize) -> Self {
        Polynomial::one(dim)
    }
    fn from_rational(dim: usize, r: Rational) -> Self {
        Polynomial::constant(dim, r)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_in_place(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn coeff_dim(&self) -> Option<usize> {
        Some(self.dim())
    }
    fn printable_terms(&self) -> Vec<(Rational, String)> {
        self.terms()
            .map(|(e, c)| (c.clone(), monomial_string(e)))
            .collect()
    }
}

/// Homogeneous antisymmetric tensor of fixed degree on an `n`-dimensional
/// patch, stored as a sparse map from multi-index to nonzero coefficient.
///
/// Equality is structural except that all zero tensors of a given dimension
/// compare equal: zero is the zero of the whole graded algebra.
#[derive(Clone, Debug)]
pub struct Graded<V, C> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, C>,
    _variance: PhantomData<V>,
}

/// Differential form with polynomial coefficients.
pub type KForm = Graded<Covariant, Polynomial>;
/// Multivector field with polynomial coefficients.
pub type KVector = Graded<Contravariant, Polynomial>;
/// Pointwise value of a form or multivector.
pub type ConstantTensor<V> = Graded<V, Rational>;
pub type ConstForm = ConstantTensor<Covariant>;
pub type ConstVector = ConstantTensor<Contravariant>;

impl<V: Variance, C: Coefficient> PartialEq for Graded<V, C> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl<V: Variance, C: Coefficient> Graded<V, C> {
    /// The zero tensor; panics if `degree > dim`.
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    pub fn try_zero(dim: usize, degree: usize) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeOutOfRange { degree, dim });
        }
        Ok(Self::zero(dim, degree))
    }

    /// The basis element keyed by `index` with unit coefficient.
    pub fn basis(dim: usize, index: MultiIndex) -> Self {
        let mut t = Self::zero(dim, index.len());
        t.add_term(index, C::one_in(dim));
        t
    }

    /// A degree-0 element.
    pub fn scalar(dim: usize, c: C) -> Self {
        let mut t = Self::zero(dim, 0);
        t.add_term(MultiIndex::empty(), c);
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, C)>>(
        dim: usize,
        degree: usize,
        terms: I,
    ) -> Result<Self> {
        let mut t = Self::try_zero(dim, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::InvalidInput(format!(
                    "multi-index {idx} does not have length {degree}"
                )));
            }
            if let Some(i) = idx.max_index() {
                if i >= dim {
                    return Err(Error::InvalidInput(format!(
                        "index {} out of range for dimension {dim}",
                        i + 1
                    )));
                }
            }
            if let Some(d) = c.coeff_dim() {
                check_dim(dim, d)?;
            }
            t.add_term(idx, c);
        }
        Ok(t)
    }

    /// Accumulates `c` on `index`, dropping cancelled entries.
    pub fn add_term(&mut self, index: MultiIndex, c: C) {
        debug_assert_eq!(index.len(), self.degree);
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_in_place(&c);
                if o.get().is_zero_coeff() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, index: MultiIndex, c: C, negative: bool) {
        if negative {
            self.add_term(index, c.negated());
        } else {
            self.add_term(index, c);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn kind(&self) -> VarianceKind {
        V::KIND
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Option<&C> {
        self.terms.get(index)
    }

    pub fn coefficient_or_zero(&self, index: &MultiIndex) -> C {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(|| C::zero_in(self.dim))
    }

    /// Coefficients in the lexicographic basis of the tensor's degree.
    pub fn to_dense(&self) -> Vec<C> {
        MultiIndex::all(self.dim, self.degree)
            .iter()
            .map(|i| self.coefficient_or_zero(i))
            .collect()
    }

    pub fn from_dense(dim: usize, degree: usize, values: &[C]) -> Self {
        let basis = MultiIndex::all(dim, degree);
        assert_eq!(basis.len(), values.len(), "dense vector length mismatch");
        let mut t = Self::zero(dim, degree);
        for (idx, c) in basis.into_iter().zip(values) {
            t.add_term(idx, c.clone());
        }
        t
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scaled(r))
    }

    /// Multiplies every coefficient by `c`.
    pub fn mul_coefficient(&self, c: &C) -> Self {
        self.map(|x| c.times(x))
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    /// Addition that reports dimension or degree mismatches instead of panicking.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::InvalidInput(format!(
                "cannot add tensors of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exterior product; bilinear and graded-commutative.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(Error::DegreeOutOfRange {
                degree,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((odd, idx)) = ia.wedge(ib) {
                    out.add_signed(idx, ca.times(cb), odd);
                }
            }
        }
        Ok(out)
    }

    /// Same as [`wedge`](Self::wedge) but yields zero (of degree `dim`) on
    /// degree overflow.
    pub(crate) fn wedge_or_zero(&self, other: &Self) -> Self {
        self.wedge(other)
            .unwrap_or_else(|_| Self::zero(self.dim, self.dim))
    }
}

impl<V: Variance> Graded<V, Polynomial> {
    /// Exact pointwise value at `p`.
    pub fn evaluate(&self, p: &Point) -> Result<ConstantTensor<V>> {
        check_dim(self.dim, p.dim())?;
        let mut out = ConstantTensor::zero(self.dim, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.eval(p.coords()));
        }
        Ok(out)
    }

    pub fn from_constant(t: &ConstantTensor<V>) -> Self {
        let mut out = Self::zero(t.dim, t.degree);
        for (i, c) in &t.terms {
            out.add_term(i.clone(), Polynomial::constant(t.dim, c.clone()));
        }
        out
    }

    /// The constant tensor if every coefficient is constant.
    pub fn to_constant(&self) -> Option<ConstantTensor<V>> {
        if !self.is_constant_coefficient() {
            return None;
        }
        let mut out = ConstantTensor::zero(self.dim, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.constant_term());
        }
        Some(out)
    }

    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    /// A function viewed as a degree-0 tensor.
    pub fn function(f: Polynomial) -> Self {
        let dim = f.dim();
        Self::scalar(dim, f)
    }
}

impl<V: Variance, C: Coefficient> Add for &Graded<V, C> {
    type Output = Graded<V, C>;
    fn add(self, rhs: &Graded<V, C>) -> Graded<V, C> {
        self.checked_add(rhs).expect("tensor addition mismatch")
    }
}

impl<V: Variance, C: Coefficient> Sub for &Graded<V, C> {
    type Output = Graded<V, C>;
    fn sub(self, rhs: &Graded<V, C>) -> Graded<V, C> {
        self.checked_add(&-rhs).expect("tensor subtraction mismatch")
    }
}

impl<V: Variance, C: Coefficient> Neg for &Graded<V, C> {
    type Output = Graded<V, C>;
    fn neg(self) -> Graded<V, C> {
        self.map(|c| c.negated())
    }
}

impl<V: Variance, C: Coefficient> Add for Graded<V, C> {
    type Output = Graded<V, C>;
    fn add(self, rhs: Graded<V, C>) -> Graded<V, C> {
        &self + &rhs
    }
}

impl<V: Variance, C: Coefficient> Sub for Graded<V, C> {
    type Output = Graded<V, C>;
    fn sub(self, rhs: Graded<V, C>) -> Graded<V, C> {
        &self - &rhs
    }
}

impl<V: Variance, C: Coefficient> Neg for Graded<V, C> {
    type Output = Graded<V, C>;
    fn neg(self) -> Graded<V, C> {
        -&self
    }
}

fn basis_string(symbol: &str, idx: &MultiIndex) -> String {
    idx.indices()
        .iter()
        .map(|i| format!("{symbol}{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

/// Prints the flat normal form accepted by the expression grammar, e.g.
/// `x1*dx2 - 1/2*x2*dx1`. A zero tensor of positive degree prints as
/// `0*dx1^...^dxk` so the degree survives a round trip.
impl<V: Variance, C: Coefficient> fmt::Display for Graded<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            if self.degree == 0 {
                return f.write_str("0");
            }
            let first = MultiIndex::new((0..self.degree).collect()).expect("increasing");
            return write!(f, "0*{}", basis_string(V::SYMBOL, &first));
        }
        let mut out = String::new();
        for (idx, c) in &self.terms {
            let basis = basis_string(V::SYMBOL, idx);
            for (coeff, mono) in c.printable_terms() {
                push_signed_term(&mut out, &coeff, &[mono, basis.clone()]);
            }
        }
        f.write_str(&out)
    }
}

/// A point of the coordinate patch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
