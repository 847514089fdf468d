//! Quadratic towers `F_p ⊂ F_1 ⊂ … ⊂ F_ℓ` with `F_i = F_{i-1}[w_i]/(w_i^2 - h_i)`.
//!
//! An element of level `j` is a vector of `2^j` residues in the multilinear
//! basis; the upper half of the vector is the coefficient of `w_j`. Level
//! arithmetic peels one quadratic layer per recursion step.

mod build;
mod extension;
mod irreducible;

pub use build::{
    build_tower, build_tower_canonical, build_tower_rejection, samples_for_failure, DefiningDomain,
    TowerBuild, DEFAULT_REJECTION_ATTEMPTS,
};
pub use extension::Extension;
pub use irreducible::{is_irreducible_univariate, quadratic_irreducible_fast};

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};
use thiserror::Error;

use crate::algebra::field::{add_mod, inv_mod, is_prime, mul_mod, sub_mod, Coeffs};
use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("level {level}: defining element has {got} coordinates, expected {expected}")]
    BadDefiningShape {
        level: usize,
        expected: usize,
        got: usize,
    },
    #[error("level {0}: defining element is zero")]
    ZeroDefiningElement(usize),
    #[error("level {0}: w^2 - h is reducible (h is a square)")]
    Reducible(usize),
    #[error("towers operands do not match")]
    SpecMismatch,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("defining domain does not fit in 128 bits")]
    DomainTooLarge,
    #[error("tower seed entry {0} is outside the defining domain")]
    SeedOutOfRange(u128),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed tower JSON: {0}")]
    Json(String),
}

/// A validated tower over `F_p`. `defining[i]` is `h_{i+1}`, an element of
/// level `i` (so it has `2^i` coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerSpec {
    p: u32,
    defining: Vec<Coeffs>,
}

#[derive(Serialize, Deserialize)]
struct TowerJson {
    p: u32,
    ell: usize,
    h: Vec<Vec<u32>>,
}

impl TowerSpec {
    /// Validate `p` and every level: `h_i` nonzero and a non-square in level
    /// `i-1`, so that each `w_i^2 - h_i` is irreducible.
    pub fn new(p: u32, defining: Vec<Vec<u32>>) -> Result<Self, TowerError> {
        if p == 2 {
            return Err(TowerError::CharacteristicTwo);
        }
        if !is_prime(p as u64) {
            return Err(TowerError::NotPrime(p as u64));
        }
        let mut spec = TowerSpec {
            p,
            defining: Vec::with_capacity(defining.len()),
        };
        for h in defining {
            spec.push_level(SmallVec::from_vec(h))?;
        }
        Ok(spec)
    }

    /// A tower with no levels: just `F_p`.
    pub fn prime(p: u32) -> Result<Self, TowerError> {
        Self::new(p, Vec::new())
    }

    /// Append a level after checking that `h` is a nonzero non-square of the
    /// current top level.
    pub fn push_level(&mut self, h: Coeffs) -> Result<(), TowerError> {
        let level = self.levels();
        let expected = 1usize << level;
        if h.len() != expected {
            return Err(TowerError::BadDefiningShape {
                level: level + 1,
                expected,
                got: h.len(),
            });
        }
        if h.iter().any(|&c| c >= self.p) {
            return Err(AlgebraError::MalformedElement(format!(
                "level {} coordinate not reduced mod {}",
                level + 1,
                self.p
            ))
            .into());
        }
        if h.iter().all(|&c| c == 0) {
            return Err(TowerError::ZeroDefiningElement(level + 1));
        }
        if self.is_square_level(level, &h) {
            return Err(TowerError::Reducible(level + 1));
        }
        self.defining.push(h);
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn levels(&self) -> usize {
        self.defining.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.levels()
    }

    pub fn defining(&self) -> Vec<Vec<u32>> {
        self.defining.iter().map(|h| h.to_vec()).collect()
    }

    /// `h_i` (1-based level index).
    pub fn defining_elem(&self, level: usize) -> &[u32] {
        &self.defining[level - 1]
    }

    pub fn truncated(&self, levels: usize) -> TowerSpec {
        TowerSpec {
            p: self.p,
            defining: self.defining[..levels].to_vec(),
        }
    }

    /// Size of level `j`, `p^{2^j}`, if it fits.
    pub fn level_size(&self, level: usize) -> Option<u128> {
        (self.p as u128).checked_pow(1u32 << level)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TowerJson {
            p: self.p,
            ell: self.levels(),
            h: self.defining(),
        })
        .expect("tower serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, TowerError> {
        let raw: TowerJson = serde_json::from_str(s).map_err(|e| TowerError::Json(e.to_string()))?;
        if raw.ell != raw.h.len() {
            return Err(TowerError::Json(format!(
                "ell = {} but {} defining elements",
                raw.ell,
                raw.h.len()
            )));
        }
        Self::new(raw.p, raw.h)
    }

    pub(crate) fn mul_level(&self, level: usize, a: &[u32], b: &[u32]) -> Coeffs {
        let p = self.p;
        if level == 0 {
            return smallvec![mul_mod(a[0], b[0], p)];
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let (b0, b1) = b.split_at(half);
        let t00 = self.mul_level(level - 1, a0, b0);
        let t11 = self.mul_level(level - 1, a1, b1);
        let sa: Coeffs = a0.iter().zip(a1).map(|(&x, &y)| add_mod(x, y, p)).collect();
        let sb: Coeffs = b0.iter().zip(b1).map(|(&x, &y)| add_mod(x, y, p)).collect();
        let cross = self.mul_level(level - 1, &sa, &sb);
        let ht = self.mul_level(level - 1, &self.defining[level - 1], &t11);
        let mut out: Coeffs = SmallVec::with_capacity(2 * half);
        out.extend(t00.iter().zip(&ht).map(|(&x, &y)| add_mod(x, y, p)));
        out.extend(
            cross
                .iter()
                .zip(t00.iter().zip(&t11))
                .map(|(&c, (&x, &y))| sub_mod(sub_mod(c, x, p), y, p)),
        );
        out
    }

    /// `(a0 + a1 w)^{-1} = (a0 - a1 w) / (a0^2 - h a1^2)`.
    pub(crate) fn inv_level(&self, level: usize, a: &[u32]) -> Option<Coeffs> {
        let p = self.p;
        if level == 0 {
            return inv_mod(a[0], p).map(|v| smallvec![v]);
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let a0sq = self.mul_level(level - 1, a0, a0);
        let a1sq = self.mul_level(level - 1, a1, a1);
        let h_a1sq = self.mul_level(level - 1, &self.defining[level - 1], &a1sq);
        let norm: Coeffs = a0sq
            .iter()
            .zip(&h_a1sq)
            .map(|(&x, &y)| sub_mod(x, y, p))
            .collect();
        let ninv = self.inv_level(level - 1, &norm)?;
        let mut out = self.mul_level(level - 1, a0, &ninv);
        let hi = self.mul_level(level - 1, a1, &ninv);
        out.extend(hi.iter().map(|&x| sub_mod(0, x, p)));
        Some(out)
    }

    pub(crate) fn pow_level(&self, level: usize, a: &[u32], mut exp: u128) -> Coeffs {
        let mut acc: Coeffs = SmallVec::from_elem(0, 1 << level);
        acc[0] = 1 % self.p;
        let mut base: Coeffs = SmallVec::from_slice(a);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_level(level, &acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_level(level, &base, &base);
            }
        }
        acc
    }

    /// Euler criterion at `level`: `a^{(Q-1)/2} = 1` with `Q = p^{2^level}`.
    /// Zero counts as a square.
    pub(crate) fn is_square_level(&self, level: usize, a: &[u32]) -> bool {
        if a.iter().all(|&c| c == 0) {
            return true;
        }
        let q = self
            .level_size(level)
            .expect("level size within 128 bits");
        let r = self.pow_level(level, a, (q - 1) / 2);
        r[0] == 1 && r[1..].iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use std::sync::Arc;

    #[test]
    fn validation() {
        assert_eq!(TowerSpec::new(2, vec![vec![1]]), Err(TowerError::CharacteristicTwo));
        assert_eq!(TowerSpec::new(9, vec![]), Err(TowerError::NotPrime(9)));
        assert_eq!(TowerSpec::new(7, vec![vec![0]]), Err(TowerError::ZeroDefiningElement(1)));
        // 4 = 2^2 mod 7
        assert_eq!(TowerSpec::new(7, vec![vec![4]]), Err(TowerError::Reducible(1)));
        assert!(matches!(
            TowerSpec::new(7, vec![vec![3], vec![1]]),
            Err(TowerError::BadDefiningShape { level: 2, .. })
        ));
        assert!(TowerSpec::new(7, vec![vec![3]]).is_ok());
    }

    #[test]
    fn defining_relation() {
        let spec = Arc::new(TowerSpec::new(13, vec![vec![2]]).unwrap());
        let f = Field::from_tower(spec).unwrap();
        let w = f.elem(&[0, 1]).unwrap();
        assert_eq!(f.mul(&w, &w), f.from_u64(2));
    }

    #[test]
    fn inverses_in_f169() {
        let spec = Arc::new(TowerSpec::new(13, vec![vec![2]]).unwrap());
        let f = Field::from_tower(spec).unwrap();
        let mut count = 0;
        for a in f.elements().unwrap().filter(|a| !a.is_zero()) {
            let inv = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &inv)));
            count += 1;
        }
        assert_eq!(count, 168);
    }

    #[test]
    fn fermat_in_f81() {
        // F_3 ⊂ F_9 (w1^2 = 2) ⊂ F_81 (w2^2 = h2)
        let base = TowerSpec::new(3, vec![vec![2]]).unwrap();
        let h2 = (0..9u32)
            .map(|i| vec![i / 3, i % 3])
            .find(|h| h.iter().any(|&c| c != 0) && !base.is_square_level(1, h))
            .unwrap();
        let spec = Arc::new(TowerSpec::new(3, vec![vec![2], h2]).unwrap());
        let f = Field::from_tower(spec).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(f.pow(&a, 81), a);
        }
    }

    #[test]
    fn json_round_trip() {
        let spec = TowerSpec::new(13, vec![vec![2], vec![1, 1]]);
        let spec = match spec {
            Ok(s) => s,
            Err(TowerError::Reducible(2)) => TowerSpec::new(13, vec![vec![2], vec![0, 1]]).unwrap(),
            Err(e) => panic!("{e}"),
        };
        let json = spec.to_json();
        let back = TowerSpec::from_json(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_json(), json);
        assert!(TowerSpec::from_json(r#"{"p":13,"ell":2,"h":[[2]]}"#).is_err());
    }
}
