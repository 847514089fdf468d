//! Brute-force verification: exact distributions and total-variation
//! distances, decomposability search, density and preservation statistics.
//!
//! All probabilities are exact rationals; floats appear only when rendered.

mod decompose;
mod density;
mod distribution;
mod eval;
mod interpolate;
mod prg_tv;
mod random;
mod stats;

pub use decompose::{is_decomposable_bruteforce, DecompositionWitness};
pub use density::{
    hsg_empirical_density, phsg_vanishing_exhaustive, restriction_preservation_stats,
    tower_success_rate, PhsgDensity, PreservationStats,
};
pub use distribution::{ratio_json, tv_distance, tv_to_uniform, Distribution};
pub use eval::FastEval;
pub use interpolate::{interpolate_univariate, repeated_root_in, trace_polynomial};
pub use prg_tv::{
    equidistribution_check, prg_image_distribution, prg_image_distribution_generic,
    prg_tv_exhaustive, prg_tv_sampled, tv_distance_exact, uniform_distribution,
};
pub use random::{random_poly, random_poly_with_support, PolyConstraint};
pub use stats::wilson_interval;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::hitting::HittingError;
use crate::prg::PrgError;
use crate::tower::TowerError;

/// Default cap on the number of polynomial evaluations or candidates an
/// oracle may perform.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("work of {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("rejection sampling gave up after {0} attempts")]
    RejectionTimeout(usize),
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid oracle input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hitting(#[from] HittingError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Prg(#[from] PrgError),
}

pub(crate) fn check_budget(needed: u128, budget: u128) -> Result<(), OracleError> {
    if needed > budget {
        Err(OracleError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}
