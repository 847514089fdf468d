use num_bigint::BigUint;
use serde_json::{json, Value};

use super::PrgError;
use crate::algebra::Field;

pub const DEFAULT_C: f64 = 4.0;
pub const DEFAULT_BIG_C: f64 = 1.0;

/// Validated parameters of the generator for `(n+1)`-variate polynomials of
/// degree at most `d` over `F_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrgParams {
    pub n: usize,
    pub d: u32,
    pub field: Field,
    pub eps: f64,
    pub k: usize,
    pub ell: usize,
    /// Defect of the PHSG `H_1`: `c·d/q^k`.
    pub delta1: f64,
    /// Defect of the HSG `H_2`: `c·d/q`.
    pub delta2: f64,
    pub c: f64,
    pub big_c: f64,
    /// `⌈d / log2 q⌉`.
    pub m: usize,
    /// `q ≥ C (d log2 d)^4 / ε²`.
    pub in_guarantee_regime: bool,
    /// Explicit number of tower candidates; `None` derives it from `δ_1`.
    pub tower_samples: Option<usize>,
}

/// Smallest `m` with `q^m ≥ 2^d`, i.e. `⌈d / log2 q⌉`.
fn ceil_d_over_log_q(d: u32, q: u128) -> usize {
    let target = BigUint::from(1u8) << d as usize;
    let q = BigUint::from(q);
    let mut acc = BigUint::from(1u8);
    let mut m = 0;
    while acc < target {
        acc *= &q;
        m += 1;
    }
    m
}

pub fn choose_params(
    n: usize,
    d: u32,
    field: &Field,
    eps: f64,
    c: f64,
    big_c: f64,
) -> Result<PrgParams, PrgError> {
    if n == 0 || d == 0 {
        return Err(PrgError::InvalidParams("n and d must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(PrgError::InvalidParams(format!("eps {eps} outside (0, 1)")));
    }
    if !(c > 0.0 && big_c > 0.0) {
        return Err(PrgError::InvalidParams("c and C must be positive".into()));
    }
    let p = field.characteristic();
    let required = d as u64 * (d as u64 - 1) + 1;
    if (p as u64) < required {
        return Err(PrgError::CharTooSmall { p, required });
    }
    let q = field.size();
    let m = ceil_d_over_log_q(d, q);
    let k = (0..usize::BITS)
        .map(|j| 1usize << j)
        .find(|&k| k > m + 1 && k <= 2 * m + 2)
        .ok_or(PrgError::NoValidK)?;
    let mut params = PrgParams {
        n,
        d,
        field: field.clone(),
        eps,
        k,
        ell: k.trailing_zeros() as usize,
        delta1: 0.0,
        delta2: 0.0,
        c,
        big_c,
        m,
        in_guarantee_regime: false,
        tower_samples: None,
    };
    params.refresh();
    Ok(params)
}

impl PrgParams {
    fn refresh(&mut self) {
        let q = self.field.size() as f64;
        let d = self.d as f64;
        self.delta1 = self.c * d / q.powi(self.k as i32);
        self.delta2 = self.c * d / q;
        let dlogd = d * d.log2();
        self.in_guarantee_regime = q >= self.big_c * dlogd.powi(4) / (self.eps * self.eps);
    }

    /// Replace `k` (a power of two) outside the default interval, for
    /// experiments at smaller towers.
    pub fn with_k(mut self, k: usize) -> Result<Self, PrgError> {
        if k == 0 || !k.is_power_of_two() {
            return Err(PrgError::InvalidParams(format!("k = {k} is not a power of two")));
        }
        self.k = k;
        self.ell = k.trailing_zeros() as usize;
        self.refresh();
        Ok(self)
    }

    pub fn with_tower_samples(mut self, t: usize) -> Self {
        self.tower_samples = Some(t);
        self
    }

    /// Whether `k` lies in `(m+1, 2m+2]`.
    pub fn k_in_default_interval(&self) -> bool {
        self.k > self.m + 1 && self.k <= 2 * self.m + 2
    }

    /// `C (d log2 d)^4 / ε²`.
    pub fn regime_threshold(&self) -> f64 {
        let d = self.d as f64;
        self.big_c * (d * d.log2()).powi(4) / (self.eps * self.eps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "outputs": self.n + 1,
            "d": self.d,
            "p": self.field.characteristic(),
            "q": self.field.size().to_string(),
            "field_degree": self.field.degree(),
            "eps": self.eps,
            "k": self.k,
            "ell": self.ell,
            "m": self.m,
            "k_in_default_interval": self.k_in_default_interval(),
            "delta1": self.delta1,
            "delta2": self.delta2,
            "c": self.c,
            "C": self.big_c,
            "char_required": self.d as u64 * (self.d as u64 - 1) + 1,
            "regime_threshold": self.regime_threshold(),
            "regime": if self.in_guarantee_regime { "guaranteed" } else { "outside guarantee" },
            "tower_samples_override": self.tower_samples,
        })
    }
}
