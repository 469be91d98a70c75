//! Exact multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponents = Vec<u32>;

/// Polynomial in `dim` variables `x1..x{dim}` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    /// The coordinate function `x{i+1}` (indices are 0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of range for dim {dim}");
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Self::monomial(dim, exps, Rational::one())
    }

    pub fn monomial(dim: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), dim, "exponent vector length must equal dim");
        let mut p = Self::zero(dim);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(dim: usize, terms: I) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent vector length must equal dim");
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^exps`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// The constant coefficient (value at the origin).
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.dim])
    }

    /// Highest total degree of a stored monomial; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `x{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * int(e[i] as i64));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim, "point dimension must equal dim");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitutes `x_i -> sum_j rows[i][j] x_j`.
    pub fn compose_linear(&self, rows: &[Vec<Rational>]) -> Self {
        assert_eq!(rows.len(), self.dim);
        let linear: Vec<Polynomial> = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), self.dim);
                let mut p = Self::zero(self.dim);
                for (j, a) in row.iter().enumerate() {
                    let mut e = vec![0; self.dim];
                    e[j] = 1;
                    p.add_term(e, a.clone());
                }
                p
            })
            .collect();
        // powers[i][k] = (row_i . x)^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Self::one(self.dim)]; self.dim];
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.dim, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &linear[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out += &term;
        }
        out
    }

    fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` if `divisor` divides `self`, lex order.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.dim, divisor.dim);
        let (lead_e, lead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.dim);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let t = Self::monomial(self.dim, qe, qc);
            rem -= &(&t * divisor);
            quot += &t;
        }
        Some(quot)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Writes `x1*x1*x2` for the monomial `x1^2 x2`; empty for the unit monomial.
pub(crate) fn monomial_string(exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in exps.iter().enumerate() {
        for _ in 0..k {
            parts.push(format!("x{}", i + 1));
        }
    }
    parts.join("*")
}

/// Appends one signed product term to a sum being printed.
pub(crate) fn push_signed_term(out: &mut String, coeff: &Rational, factors: &[String]) {
    let negative = coeff.is_negative();
    let abs = coeff.abs();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let factors: Vec<&String> = factors.iter().filter(|f| !f.is_empty()).collect();
    if factors.is_empty() {
        out.push_str(&abs.to_string());
        return;
    }
    if !abs.is_one() {
        out.push_str(&abs.to_string());
        out.push('*');
    }
    let joined: Vec<&str> = factors.iter().map(|s| s.as_str()).collect();
    out.push_str(&joined.join("*"));
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            push_signed_term(&mut out, c, &[monomial_string(e)]);
        }
        f.write_str(&out)
    }
}
