use num_bigint::BigUint;

use super::{HittingError, HittingSetGenerator, HsgSpec};
use crate::algebra::{Field, FieldElem, MultiPoly, PolyText};
use crate::tower::{build_tower, samples_for_failure, DefiningDomain, Extension, TowerBuild};

/// A vector of `n` multilinear polynomials in `w_1..w_ℓ` over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPoint {
    field: Field,
    ell: usize,
    entries: Vec<MultiPoly>,
}

impl PolyPoint {
    pub fn new(field: &Field, ell: usize, entries: Vec<MultiPoly>) -> Result<Self, HittingError> {
        for e in &entries {
            if e.nvars() != ell || e.field() != field || !e.is_multilinear() {
                return Err(HittingError::InvalidParams(
                    "point entries must be multilinear in w1..wl over the base field".into(),
                ));
            }
        }
        Ok(PolyPoint {
            field: field.clone(),
            ell,
            entries,
        })
    }

    pub fn zero(field: &Field, n: usize, ell: usize) -> Self {
        PolyPoint {
            field: field.clone(),
            ell,
            entries: vec![MultiPoly::zero(field, ell); n],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Every entry has degree at most 1 in each `w_j`, hence total degree ≤ ℓ.
    pub fn is_multilinear(&self) -> bool {
        self.entries.iter().all(|e| e.is_multilinear())
    }

    /// Evaluate every entry at `w = t`.
    pub fn eval(&self, t: &[FieldElem]) -> Result<Vec<FieldElem>, HittingError> {
        self.entries
            .iter()
            .map(|e| e.eval(t).map_err(Into::into))
            .collect()
    }

    /// `f(point)` as a polynomial in `w_1..w_ℓ`.
    pub fn substitute_into(&self, f: &MultiPoly) -> Result<MultiPoly, HittingError> {
        if f.nvars() == 0 {
            return Ok(MultiPoly::constant(&self.field, self.ell, f.constant_term()));
        }
        Ok(f.compose(&self.entries)?)
    }

    /// Entries in the polynomial text format with variables `w1..wℓ`.
    pub fn to_text(&self) -> Vec<String> {
        let names = PolyText::indexed("w", self.ell);
        self.entries.iter().map(|e| names.format(e)).collect()
    }
}

/// PHSG seed: candidate tuples for the tower builder and an HSG seed over `𝔼`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhsgSeed {
    pub tower: Vec<u128>,
    pub hsg: u128,
}

/// `φ ∘ Ĥ`: build `𝔼` from the tower randomness, take a grid point over all
/// of `𝔼`, and lift each coordinate to its multilinear representative. A
/// failed tower yields the zero point.
#[derive(Clone, Debug)]
pub struct Phsg {
    base: Field,
    n: usize,
    d: u32,
    ell: usize,
    delta: f64,
    tower_samples: usize,
    domain: DefiningDomain,
    ext_size: u128,
}

impl Phsg {
    /// Defect `delta` is split evenly between tower failure and the HSG over
    /// `𝔼`; the tower builder gets `⌈k ln(2/δ)⌉` candidates.
    pub fn new(base: &Field, n: usize, d: u32, ell: usize, delta: f64) -> Result<Self, HittingError> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(HittingError::InvalidParams(format!("defect {delta} outside (0, 1]")));
        }
        let domain = DefiningDomain::new(base, ell)?;
        let ext_size = base
            .size()
            .checked_pow(1u32 << ell)
            .ok_or(HittingError::SeedSpaceTooLarge)?;
        let hsg_defect = d as f64 / ext_size as f64;
        if hsg_defect > delta / 2.0 {
            return Err(HittingError::InvalidParams(format!(
                "defect {delta} below twice the grid defect d/|E| = {hsg_defect}"
            )));
        }
        let tower_samples = if ell == 0 {
            0
        } else {
            samples_for_failure(ell, delta / 2.0)
        };
        Ok(Phsg {
            base: base.clone(),
            n,
            d,
            ell,
            delta,
            tower_samples,
            domain,
            ext_size,
        })
    }

    /// Override the number of tower candidates (and with it the failure rate).
    pub fn with_tower_samples(mut self, t: usize) -> Self {
        self.tower_samples = if self.ell == 0 { 0 } else { t.max(1) };
        self
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn tower_samples(&self) -> usize {
        self.tower_samples
    }

    pub fn domain(&self) -> &DefiningDomain {
        &self.domain
    }

    /// `|𝔼| = q^k`.
    pub fn extension_size(&self) -> u128 {
        self.ext_size
    }

    /// `|𝔼|^n`, the HSG part of the seed.
    pub fn hsg_seed_space(&self) -> Result<u128, HittingError> {
        self.ext_size
            .checked_pow(self.n as u32)
            .ok_or(HittingError::SeedSpaceTooLarge)
    }

    /// `|D|^t · |𝔼|^n`.
    pub fn seed_space(&self) -> BigUint {
        BigUint::from(self.domain.size()).pow(self.tower_samples as u32)
            * BigUint::from(self.ext_size).pow(self.n as u32)
    }

    pub fn tower_bits(&self) -> f64 {
        self.tower_samples as f64 * (self.domain.size() as f64).log2()
    }

    pub fn hsg_bits(&self) -> f64 {
        self.n as f64 * (self.ext_size as f64).log2()
    }

    fn check_seed(&self, seed: &PhsgSeed) -> Result<(), HittingError> {
        if seed.tower.len() != self.tower_samples {
            return Err(HittingError::InvalidParams(format!(
                "expected {} tower candidates, got {}",
                self.tower_samples,
                seed.tower.len()
            )));
        }
        if let Some(&bad) = seed.tower.iter().find(|&&v| v >= self.domain.size()) {
            return Err(HittingError::SeedOutOfRange(bad));
        }
        if seed.hsg >= self.hsg_seed_space()? {
            return Err(HittingError::SeedOutOfRange(seed.hsg));
        }
        Ok(())
    }

    pub fn build(&self, tower: &[u128]) -> Result<TowerBuild, HittingError> {
        Ok(build_tower(&self.base, self.ell, tower)?)
    }

    /// The point over `𝔼` selected by `hsg_seed` once the tower is known.
    pub fn extension_point(&self, ext: &Extension, hsg_seed: u128) -> Result<Vec<FieldElem>, HittingError> {
        HsgSpec::full_grid(ext.field(), self.n, self.d).point(hsg_seed)
    }

    pub fn lift_point(&self, ext: &Extension, point: &[FieldElem]) -> PolyPoint {
        PolyPoint {
            field: self.base.clone(),
            ell: self.ell,
            entries: point.iter().map(|a| ext.lift(a)).collect(),
        }
    }

    pub fn sample(&self, seed: &PhsgSeed) -> Result<PolyPoint, HittingError> {
        self.check_seed(seed)?;
        match self.build(&seed.tower)? {
            TowerBuild::Failure => Ok(PolyPoint::zero(&self.base, self.n, self.ell)),
            TowerBuild::Success(ext) => {
                let pt = self.extension_point(&ext, seed.hsg)?;
                Ok(self.lift_point(&ext, &pt))
            }
        }
    }
}
