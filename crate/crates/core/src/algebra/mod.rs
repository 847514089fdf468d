//! Finite fields and polynomial machinery.
//!
//! Every higher layer works against [`Field`], which is either a prime field
//! `F_p` or a tower of quadratic extensions of it. Elements are plain values
//! ([`FieldElem`]); the field is passed alongside them.

pub(crate) mod field;
mod hypothesis;
mod poly;
mod resultant;
mod text;
mod univariate;

pub mod gcd;
pub mod substitution;

pub use field::{is_prime, Field, FieldElem, FieldKind, FieldOp, DEFAULT_ENUMERATION_BUDGET};
pub use hypothesis::check_hypothesis_h;
pub use poly::{Monomial, MultiPoly, PrimeEvaluator};
pub use resultant::{determinant, resultant, resultant_over_poly_ring, sylvester, CommRing, PolyRing};
pub use text::{parse_field_header, parse_poly, PolyText};
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields or rings")]
    DescriptorMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("field of size {size} exceeds the enumeration budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("field size does not fit in 128 bits")]
    FieldTooLarge,
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substituent {0} is not multilinear")]
    NonMultilinearSubstituent(usize),
    #[error("both polynomials are constant")]
    BothConstant,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("trace of a prime-field element requested as a strict extension trace")]
    PrimeFieldInput,
    #[error("malformed element representation: {0}")]
    MalformedElement(String),
    #[error("parse error: {0}")]
    Parse(String),
}
