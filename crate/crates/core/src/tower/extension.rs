use std::sync::Arc;

use smallvec::SmallVec;

use super::{TowerError, TowerSpec};
use crate::algebra::{Field, FieldElem, Monomial, MultiPoly};

/// `𝔼 = F[w_1..w_ℓ]/(w_i^2 - h_i)` over a base field `F`, which may itself be
/// a tower. The new variables occupy the high bits of the basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    base: Field,
    field: Field,
    ell: usize,
}

impl Extension {
    /// Extend `base` by `ℓ = defining.len()` quadratic levels. `defining[i]`
    /// holds the coordinates of `h_{i+1}` in the field reached so far.
    pub fn new(base: &Field, defining: Vec<Vec<u32>>) -> Result<Self, TowerError> {
        let mut spec = match base.tower() {
            Some(t) => (**t).clone(),
            None => TowerSpec::prime(base.characteristic())?,
        };
        let ell = defining.len();
        for h in defining {
            spec.push_level(SmallVec::from_vec(h))?;
        }
        Self::from_spec(base, Arc::new(spec), ell)
    }

    /// Wrap a spec whose top `ell` levels are the extension of `base`.
    pub fn from_spec(base: &Field, spec: Arc<TowerSpec>, ell: usize) -> Result<Self, TowerError> {
        if spec.p() != base.characteristic() || spec.levels() != base.levels() + ell {
            return Err(TowerError::SpecMismatch);
        }
        let field = Field::from_tower(spec)?;
        if field.subfield(base.levels()) != *base {
            return Err(TowerError::SpecMismatch);
        }
        Ok(Extension {
            base: base.clone(),
            field,
            ell,
        })
    }

    /// The trivial extension (`ℓ = 0`).
    pub fn trivial(base: &Field) -> Self {
        Extension {
            base: base.clone(),
            field: base.clone(),
            ell: 0,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `k = [𝔼 : F] = 2^ℓ`.
    pub fn k(&self) -> usize {
        1 << self.ell
    }

    /// Defining elements `h_1..h_ℓ` of the new levels.
    pub fn defining(&self) -> Vec<Vec<u32>> {
        let all = self.field.tower().map(|t| t.defining()).unwrap_or_default();
        all[self.base.levels()..].to_vec()
    }

    pub fn spec(&self) -> Option<&Arc<TowerSpec>> {
        self.field.tower()
    }

    pub fn embed(&self, a: &FieldElem) -> FieldElem {
        self.field.embed(a)
    }

    /// The class of `w_{i+1}` in `𝔼`.
    pub fn generator(&self, i: usize) -> FieldElem {
        assert!(i < self.ell);
        let mut c = vec![0u32; self.field.degree()];
        c[self.base.degree() << i] = 1;
        self.field.elem(&c).expect("generator coordinates")
    }

    /// `φ`: the multilinear representative in `w_1..w_ℓ` over the base field.
    pub fn lift(&self, a: &FieldElem) -> MultiPoly {
        let kb = self.base.degree();
        let mut out = MultiPoly::zero(&self.base, self.ell);
        for (mask, chunk) in a.coeffs().chunks(kb).enumerate() {
            if chunk.iter().all(|&c| c == 0) {
                continue;
            }
            let exps: Vec<u32> = (0..self.ell).map(|i| ((mask >> i) & 1) as u32).collect();
            let c = self.base.elem(chunk).expect("chunk of a valid element");
            out.add_term(Monomial::new(&exps), c);
        }
        out
    }

    /// `π`: reduce a polynomial in `w_1..w_ℓ` over the base field, rewriting
    /// `w_i^{2j+r}` as `h_i^j w_i^r`.
    pub fn reduce(&self, g: &MultiPoly) -> Result<FieldElem, TowerError> {
        if g.nvars() != self.ell || *g.field() != self.base {
            return Err(TowerError::SpecMismatch);
        }
        let f = &self.field;
        let h: Vec<FieldElem> = self
            .defining()
            .iter()
            .map(|h| f.embed(&FieldElem::from_coeffs(SmallVec::from_slice(h))))
            .collect();
        let mut acc = f.zero();
        for (m, c) in g.terms() {
            let mut t = self.embed(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e >= 2 {
                    t = f.mul(&t, &f.pow(&h[i], (e / 2) as u128));
                }
                if e % 2 == 1 {
                    t = f.mul(&t, &self.generator(i));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `π` computed as evaluation at `(w_1, .., w_ℓ)` inside `𝔼`.
    pub fn reduce_by_evaluation(&self, g: &MultiPoly) -> Result<FieldElem, TowerError> {
        if g.nvars() != self.ell || *g.field() != self.base {
            return Err(TowerError::SpecMismatch);
        }
        let lifted = g.terms().map(|(m, c)| (m.exps().to_vec(), self.embed(c)));
        let over_e = MultiPoly::from_terms(&self.field, self.ell, lifted)?;
        let point: Vec<FieldElem> = (0..self.ell).map(|i| self.generator(i)).collect();
        Ok(over_e.eval(&point)?)
    }
}
