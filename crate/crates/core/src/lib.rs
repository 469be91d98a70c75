//! Exact exterior calculus on polynomial forms and multivector fields over
//! `R^n`, with tools for multisymplectic structures: nondegeneracy, Hamiltonian
//! multivector fields, the Schouten-Nijenhuis bracket, the graded Poisson
//! bracket and linear stabilizers of constant forms.
//!
//! All arithmetic is exact over the rationals.

pub mod calculus;
pub mod error;
pub mod linalg;
pub mod multi_index;
pub mod polynomial;
pub mod random;
pub mod msym;
pub mod schouten;
pub mod stabilizer;

pub use calculus::{contract, contract_or_zero, exterior_derivative, lie_derivative, pullback_linear};
pub use error::{Error, Result};
pub use linalg::{LinearEndo, Matrix};
pub use multi_index::MultiIndex;
pub use polynomial::{int, rat, Polynomial, Rational};
pub use msym::MultisymplecticStructure;
pub use schouten::{schouten_bracket, vector_lie_bracket, verify_graded_identities, GradedIdentityReport};
pub use tensor::{ConstForm, ConstVector, ConstantTensor, Graded, KForm, KVector, Point};

pub mod tensor;
