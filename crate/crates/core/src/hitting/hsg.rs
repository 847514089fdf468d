use num_rational::Ratio;

use super::HittingError;
use crate::algebra::{Field, FieldElem};
use crate::tower::Extension;

/// A seed-indexed family of points in `F^n` that every nonzero polynomial of
/// degree at most `d` avoids vanishing on, except for a `density_defect`
/// fraction of seeds.
pub trait HittingSetGenerator {
    fn field(&self) -> &Field;
    fn n(&self) -> usize;
    fn seed_space(&self) -> Result<u128, HittingError>;
    fn point(&self, seed: u128) -> Result<Vec<FieldElem>, HittingError>;
    fn density_defect(&self) -> Ratio<u128>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalSet {
    /// The whole field.
    Full,
    /// An explicit list of distinct elements.
    Explicit(Vec<FieldElem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HsgKind {
    /// Points of `S^n`.
    Grid(EvalSet),
    /// Points of `F^n`, decoded in base `Q`.
    Uniform,
}

/// Schwartz–Zippel generator: defect `d/|S|` on a grid, `d/Q` uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsgSpec {
    pub field: Field,
    pub n: usize,
    pub d: u32,
    pub kind: HsgKind,
}

impl HsgSpec {
    pub fn grid(field: &Field, n: usize, d: u32, set: EvalSet) -> Result<Self, HittingError> {
        if let EvalSet::Explicit(s) = &set {
            if s.is_empty() {
                return Err(HittingError::InvalidParams("empty evaluation set".into()));
            }
            for (i, a) in s.iter().enumerate() {
                field.check(a)?;
                if s[..i].contains(a) {
                    return Err(HittingError::InvalidParams("repeated evaluation point".into()));
                }
            }
        }
        Ok(HsgSpec {
            field: field.clone(),
            n,
            d,
            kind: HsgKind::Grid(set),
        })
    }

    pub fn full_grid(field: &Field, n: usize, d: u32) -> Self {
        HsgSpec {
            field: field.clone(),
            n,
            d,
            kind: HsgKind::Grid(EvalSet::Full),
        }
    }

    pub fn uniform(field: &Field, n: usize, d: u32) -> Self {
        HsgSpec {
            field: field.clone(),
            n,
            d,
            kind: HsgKind::Uniform,
        }
    }

    /// `|S|` (the field size for full grids and the uniform kind).
    pub fn set_size(&self) -> u128 {
        match &self.kind {
            HsgKind::Grid(EvalSet::Explicit(s)) => s.len() as u128,
            _ => self.field.size(),
        }
    }

    fn coordinate(&self, digit: u128) -> FieldElem {
        match &self.kind {
            HsgKind::Grid(EvalSet::Explicit(s)) => s[digit as usize].clone(),
            _ => self.field.element_at(digit),
        }
    }
}

impl HittingSetGenerator for HsgSpec {
    fn field(&self) -> &Field {
        &self.field
    }

    fn n(&self) -> usize {
        self.n
    }

    fn seed_space(&self) -> Result<u128, HittingError> {
        self.set_size()
            .checked_pow(self.n as u32)
            .ok_or(HittingError::SeedSpaceTooLarge)
    }

    /// Big-endian base-`|S|` decoding: coordinate 0 is the most significant digit.
    fn point(&self, seed: u128) -> Result<Vec<FieldElem>, HittingError> {
        if seed >= self.seed_space()? {
            return Err(HittingError::SeedOutOfRange(seed));
        }
        let base = self.set_size();
        let mut digits = vec![0u128; self.n];
        let mut rest = seed;
        for slot in digits.iter_mut().rev() {
            *slot = rest % base;
            rest /= base;
        }
        Ok(digits.into_iter().map(|d| self.coordinate(d)).collect())
    }

    fn density_defect(&self) -> Ratio<u128> {
        Ratio::new(self.d as u128, self.set_size())
    }
}

pub fn hsg_sample(spec: &HsgSpec, seed: u128) -> Result<Vec<FieldElem>, HittingError> {
    spec.point(seed)
}

/// Carry a base-field HSG over to `𝔼`. With `keep_base_grid` the grid stays
/// `S ⊆ F` (embedded), keeping defect `d/|S|`; otherwise `S = 𝔼`, giving
/// defect `d/|𝔼|`.
pub fn hsg_over_extension(
    spec: &HsgSpec,
    ext: &Extension,
    keep_base_grid: bool,
) -> Result<HsgSpec, HittingError> {
    if *ext.base() != spec.field {
        return Err(crate::tower::TowerError::SpecMismatch.into());
    }
    if !keep_base_grid {
        return Ok(HsgSpec::full_grid(ext.field(), spec.n, spec.d));
    }
    let set: Vec<FieldElem> = match &spec.kind {
        HsgKind::Grid(EvalSet::Explicit(s)) => s.iter().map(|a| ext.embed(a)).collect(),
        _ => spec.field.elements()?.map(|a| ext.embed(&a)).collect(),
    };
    HsgSpec::grid(ext.field(), spec.n, spec.d, EvalSet::Explicit(set))
}
