//! The composed generator `G(r, s, t, u, v)`, its parameters, seed-length
//! accounting and the trace-reduced variant over the prime subfield.

mod generator;
mod params;
mod seed_length;

pub use generator::{trace_prg, Prg, Seed};
pub use params::{choose_params, PrgParams, DEFAULT_BIG_C, DEFAULT_C};
pub use seed_length::{log2_big, seed_length, SeedLength};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::hitting::HittingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrgError {
    #[error("characteristic {p} is below d(d-1)+1 = {required}")]
    CharTooSmall { p: u32, required: u64 },
    #[error("no power of two in the admissible extension-degree interval")]
    NoValidK,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("trace reduction needs a proper extension of the prime field")]
    PrimeFieldParams,
    #[error("seed component out of range: {0}")]
    SeedOutOfRange(String),
    #[error("seed space does not fit in 128 bits")]
    SeedSpaceTooLarge,
    #[error(transparent)]
    Hitting(#[from] HittingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
