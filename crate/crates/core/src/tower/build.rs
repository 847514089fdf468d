use rand::Rng;

use super::{quadratic_irreducible_fast, Extension, TowerError};
use crate::algebra::{Field, FieldElem};

pub const DEFAULT_REJECTION_ATTEMPTS: usize = 256;

/// Outcome of tower construction. Failure is an ordinary value so callers can
/// fall back (the PHSG maps it to the zero point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerBuild {
    Success(Extension),
    Failure,
}

impl TowerBuild {
    pub fn is_success(&self) -> bool {
        matches!(self, TowerBuild::Success(_))
    }

    pub fn extension(&self) -> Option<&Extension> {
        match self {
            TowerBuild::Success(e) => Some(e),
            TowerBuild::Failure => None,
        }
    }
}

/// The candidate space `D = ∏_{i=1}^{ℓ} (R_i ∖ {0})`, where `R_i` is the field
/// after `i - 1` new levels. Points of `D` are integers in mixed radix with
/// level 1 most significant; component value `c` names the nonzero element of
/// rank `c + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningDomain {
    base: Field,
    ell: usize,
    radices: Vec<u128>,
    size: u128,
}

impl DefiningDomain {
    pub fn new(base: &Field, ell: usize) -> Result<Self, TowerError> {
        if base.characteristic() == 2 {
            return Err(TowerError::CharacteristicTwo);
        }
        let p = base.characteristic() as u128;
        let mut radices = Vec::with_capacity(ell);
        let mut size: u128 = 1;
        for i in 0..ell {
            let level_degree = (base.degree() as u32)
                .checked_shl(i as u32)
                .ok_or(TowerError::DomainTooLarge)?;
            let r = p
                .checked_pow(level_degree)
                .ok_or(TowerError::DomainTooLarge)?
                - 1;
            size = size.checked_mul(r).ok_or(TowerError::DomainTooLarge)?;
            radices.push(r);
        }
        Ok(DefiningDomain {
            base: base.clone(),
            ell,
            radices,
            size,
        })
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Per-level component values.
    pub fn decode(&self, v: u128) -> Result<Vec<u128>, TowerError> {
        if v >= self.size {
            return Err(TowerError::SeedOutOfRange(v));
        }
        let mut out = vec![0u128; self.ell];
        let mut rest = v;
        for i in (0..self.ell).rev() {
            out[i] = rest % self.radices[i];
            rest /= self.radices[i];
        }
        Ok(out)
    }

    /// Try one candidate tuple: build level by level, stopping at the first
    /// square (reducible) level.
    pub fn try_candidate(&self, v: u128) -> Result<Option<Extension>, TowerError> {
        let comps = self.decode(v)?;
        let mut ext = Extension::trivial(&self.base);
        let mut defining: Vec<Vec<u32>> = Vec::with_capacity(self.ell);
        for c in comps {
            let h = ext.field().element_at(c + 1);
            if !quadratic_irreducible_fast(ext.field(), &h)? {
                return Ok(None);
            }
            defining.push(h.coeffs().to_vec());
            ext = Extension::new(&self.base, defining.clone())?;
        }
        Ok(Some(ext))
    }
}

/// Sampler strategy: take the first of the supplied candidate tuples whose
/// every level is irreducible, or declare failure.
pub fn build_tower(base: &Field, ell: usize, samples: &[u128]) -> Result<TowerBuild, TowerError> {
    let domain = DefiningDomain::new(base, ell)?;
    if ell == 0 {
        return Ok(TowerBuild::Success(Extension::trivial(base)));
    }
    for &v in samples {
        if let Some(ext) = domain.try_candidate(v)? {
            return Ok(TowerBuild::Success(ext));
        }
    }
    Ok(TowerBuild::Failure)
}

/// Rejection strategy: per level, draw uniform nonzero candidates until one
/// is a non-square, giving up after `max_attempts` draws at any level.
pub fn build_tower_rejection<R: Rng + ?Sized>(
    base: &Field,
    ell: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<TowerBuild, TowerError> {
    DefiningDomain::new(base, ell)?;
    let mut ext = Extension::trivial(base);
    let mut defining = Vec::with_capacity(ell);
    for _ in 0..ell {
        let field = ext.field().clone();
        let mut found: Option<FieldElem> = None;
        for _ in 0..max_attempts {
            let h = field.element_at(rng.gen_range(1..field.size()));
            if quadratic_irreducible_fast(&field, &h)? {
                found = Some(h);
                break;
            }
        }
        let Some(h) = found else {
            return Ok(TowerBuild::Failure);
        };
        defining.push(h.coeffs().to_vec());
        ext = Extension::new(base, defining.clone())?;
    }
    Ok(TowerBuild::Success(ext))
}

/// Deterministic tower: at each level the nonzero non-square of least rank.
pub fn build_tower_canonical(base: &Field, ell: usize) -> Result<Extension, TowerError> {
    DefiningDomain::new(base, ell)?;
    let mut ext = Extension::trivial(base);
    let mut defining = Vec::with_capacity(ell);
    for _ in 0..ell {
        let field = ext.field().clone();
        let mut idx = 1u128;
        let h = loop {
            let h = field.element_at(idx);
            if quadratic_irreducible_fast(&field, &h)? {
                break h;
            }
            idx += 1;
        };
        defining.push(h.coeffs().to_vec());
        ext = Extension::new(base, defining.clone())?;
    }
    Ok(ext)
}

/// Number of candidate tuples giving failure probability at most `delta`
/// when each succeeds with probability `1/k`: `⌈k · ln(1/δ)⌉`.
pub fn samples_for_failure(ell: usize, delta: f64) -> usize {
    let k = (1u64 << ell) as f64;
    ((k * (1.0 / delta).ln()).ceil() as usize).max(1)
}
