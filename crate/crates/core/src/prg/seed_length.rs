use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{Prg, PrgError};
use crate::hitting::HittingSetGenerator;

/// `log2` of an arbitrary-size integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    (top.iter_u64_digits().next().unwrap_or(0) as f64).log2() + shift as f64
}

/// Seed length split as `log|T_1| + log|T_2| + ℓ log q + 2 log q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedLength {
    pub log_t1: f64,
    pub log_t2: f64,
    pub log_t: f64,
    pub log_uv: f64,
    pub total: f64,
    /// Inside `log_t1`: tower candidates, then the grid seed over `𝔼`.
    pub tower_bits: f64,
    pub phsg_grid_bits: f64,
    pub t1_size: BigUint,
    pub t2_size: BigUint,
    /// `|T_1|·|T_2|·q^ℓ·q²` as an integer.
    pub space: BigUint,
    /// `d log2 n + log2 q`, the asymptotic shape with an optimal HSG.
    pub optimal_shape: f64,
}

pub fn seed_length(prg: &Prg) -> Result<SeedLength, PrgError> {
    let p = prg.params();
    let q = BigUint::from(p.field.size());
    let lq = log2_big(&q);
    let h1 = prg.h1();
    let t1_size = h1.seed_space();
    let t2_size = BigUint::from(prg.h2().seed_space()?);
    let log_t1 = log2_big(&t1_size);
    let log_t2 = log2_big(&t2_size);
    let log_t = p.ell as f64 * lq;
    let log_uv = 2.0 * lq;
    let space = &t1_size * &t2_size * q.pow(p.ell as u32 + 2);
    Ok(SeedLength {
        log_t1,
        log_t2,
        log_t,
        log_uv,
        total: log_t1 + log_t2 + log_t + log_uv,
        tower_bits: h1.tower_bits(),
        phsg_grid_bits: h1.hsg_bits(),
        t1_size,
        t2_size,
        space,
        optimal_shape: p.d as f64 * (p.n.max(2) as f64).log2() + lq,
    })
}

impl SeedLength {
    pub fn to_json(&self) -> Value {
        json!({
            "log_T1": self.log_t1,
            "log_T2": self.log_t2,
            "ell_log_q": self.log_t,
            "two_log_q": self.log_uv,
            "total_bits": self.total,
            "log_T1_breakdown": {
                "tower_candidates": self.tower_bits,
                "extension_grid": self.phsg_grid_bits,
            },
            "grid_inflation": {
                "note": "grid hitting sets in place of an optimal HSG; log|T1| and log|T2| scale with n·k·log q and n·log q",
                "optimal_shape_d_log_n_plus_log_q": self.optimal_shape,
            },
            "seed_space": self.space.to_string(),
        })
    }
}
