//! Samplers, hitting set generators over arbitrary fields, and polynomial
//! hitting set generators obtained from an HSG over a tower extension.

mod hsg;
mod phsg;
mod sampler;

pub use hsg::{hsg_over_extension, hsg_sample, EvalSet, HittingSetGenerator, HsgKind, HsgSpec};
pub use phsg::{Phsg, PhsgSeed, PolyPoint};
pub use sampler::{BitStream, IndependentSampler, SamplerParams};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::tower::TowerError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HittingError {
    #[error("seed {0} is outside the seed space")]
    SeedOutOfRange(u128),
    #[error("bit stream exhausted after {consumed} bits")]
    InsufficientRandomness { consumed: u64 },
    #[error("seed space does not fit in 128 bits")]
    SeedSpaceTooLarge,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
