use num_bigint::BigUint;
use rand::Rng;
use serde_json::{json, Value};

use super::{PrgError, PrgParams};
use crate::algebra::{Field, FieldElem};
use crate::hitting::{HittingSetGenerator, HsgSpec, Phsg, PhsgSeed, PolyPoint};

/// Structured seed `(r, s, t, u, v)` with `r` the PHSG seed, `s` the HSG
/// seed, `t ∈ F_q^ℓ` and `u, v ∈ F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub r: PhsgSeed,
    pub s: u128,
    pub t: Vec<FieldElem>,
    pub u: FieldElem,
    pub v: FieldElem,
}

impl Seed {
    pub fn to_json(&self, field: &Field) -> Value {
        json!({
            "r": {
                "tower": self.r.tower.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "hsg": self.r.hsg.to_string(),
            },
            "s": self.s.to_string(),
            "t": self.t.iter().map(|x| field.format_elem(x)).collect::<Vec<_>>(),
            "u": field.format_elem(&self.u),
            "v": field.format_elem(&self.v),
        })
    }
}

/// `G(r, s, t, u, v)_i = H_1(r)_i(t)·v + H_2(s)_i·u` for `i ≤ n`, and `u`
/// as the last coordinate. `H_1` is a PHSG for degree `2d-1` with defect
/// `δ_1`; `H_2` the full grid over `F_q` for degree `d`.
#[derive(Clone, Debug)]
pub struct Prg {
    params: PrgParams,
    h1: Phsg,
    h2: HsgSpec,
}

impl Prg {
    pub fn new(params: &PrgParams) -> Result<Self, PrgError> {
        let field = &params.field;
        let mut h1 = Phsg::new(
            field,
            params.n,
            2 * params.d - 1,
            params.ell,
            params.delta1.min(1.0),
        )?;
        if let Some(t) = params.tower_samples {
            h1 = h1.with_tower_samples(t);
        }
        let h2 = HsgSpec::full_grid(field, params.n, params.d);
        Ok(Prg {
            params: params.clone(),
            h1,
            h2,
        })
    }

    pub fn params(&self) -> &PrgParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn h1(&self) -> &Phsg {
        &self.h1
    }

    pub fn h2(&self) -> &HsgSpec {
        &self.h2
    }

    /// Number of output coordinates, `n + 1`.
    pub fn output_len(&self) -> usize {
        self.params.n + 1
    }

    /// Sizes of the seed digits in sequential order: tower candidates, PHSG
    /// grid seed, HSG seed, `t_1..t_ℓ`, `u`, `v`.
    pub fn seed_radices(&self) -> Result<Vec<u128>, PrgError> {
        let q = self.field().size();
        let mut r = vec![self.h1.domain().size(); self.h1.tower_samples()];
        r.push(self.h1.hsg_seed_space()?);
        r.push(self.h2.seed_space()?);
        r.extend(std::iter::repeat_n(q, self.params.ell));
        r.push(q);
        r.push(q);
        Ok(r)
    }

    /// `|T_1| · |T_2| · q^ℓ · q²`.
    pub fn seed_space(&self) -> Result<BigUint, PrgError> {
        Ok(self
            .seed_radices()?
            .into_iter()
            .fold(BigUint::from(1u8), |acc, r| acc * BigUint::from(r)))
    }

    /// Seed with sequential index `idx`; `v` varies fastest. Spaces larger
    /// than `u128` are addressable up to `u128::MAX`.
    pub fn seed_at(&self, idx: u128) -> Result<Seed, PrgError> {
        let radices = self.seed_radices()?;
        let space = self.seed_space()?;
        if BigUint::from(idx) >= space {
            return Err(PrgError::SeedOutOfRange(format!("index {idx} of {space}")));
        }
        let mut digits = vec![0u128; radices.len()];
        let mut rest = idx;
        for (slot, &r) in digits.iter_mut().zip(&radices).rev() {
            *slot = rest % r;
            rest /= r;
        }
        Ok(self.seed_from_digits(&digits))
    }

    fn seed_from_digits(&self, digits: &[u128]) -> Seed {
        let f = self.field();
        let ts = self.h1.tower_samples();
        let ell = self.params.ell;
        Seed {
            r: PhsgSeed {
                tower: digits[..ts].to_vec(),
                hsg: digits[ts],
            },
            s: digits[ts + 1],
            t: digits[ts + 2..ts + 2 + ell].iter().map(|&x| f.element_at(x)).collect(),
            u: f.element_at(digits[ts + 2 + ell]),
            v: f.element_at(digits[ts + 3 + ell]),
        }
    }

    pub fn random_seed<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Seed, PrgError> {
        let digits: Vec<u128> = self
            .seed_radices()?
            .into_iter()
            .map(|r| rng.gen_range(0..r))
            .collect();
        Ok(self.seed_from_digits(&digits))
    }

    /// Evaluate `G` given already-computed `H_1(r)` and `H_2(s)`.
    pub fn combine(
        &self,
        b: &PolyPoint,
        a: &[FieldElem],
        t: &[FieldElem],
        u: &FieldElem,
        v: &FieldElem,
    ) -> Result<Vec<FieldElem>, PrgError> {
        let f = self.field();
        let bt = b.eval(t)?;
        let mut out: Vec<FieldElem> = bt
            .iter()
            .zip(a)
            .map(|(bi, ai)| f.add(&f.mul(bi, v), &f.mul(ai, u)))
            .collect();
        out.push(u.clone());
        Ok(out)
    }

    pub fn generate(&self, seed: &Seed) -> Result<Vec<FieldElem>, PrgError> {
        let f = self.field();
        if seed.t.len() != self.params.ell {
            return Err(PrgError::SeedOutOfRange(format!(
                "t has {} entries, expected {}",
                seed.t.len(),
                self.params.ell
            )));
        }
        for x in seed.t.iter().chain([&seed.u, &seed.v]) {
            f.check(x)?;
        }
        let b = self.h1.sample(&seed.r)?;
        let a = self.h2.point(seed.s)?;
        self.combine(&b, &a, &seed.t, &seed.u, &seed.v)
    }
}

/// `Tr_{q→p}` applied to every coordinate of `G`.
pub fn trace_prg(prg: &Prg, seed: &Seed) -> Result<Vec<FieldElem>, PrgError> {
    let f = prg.field();
    if f.is_prime_field() {
        return Err(PrgError::PrimeFieldParams);
    }
    Ok(prg
        .generate(seed)?
        .iter()
        .map(|x| f.absolute_trace(x))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prg::choose_params;

    fn tiny() -> Prg {
        let f = Field::prime(5).unwrap();
        let p = choose_params(1, 1, &f, 0.5, 4.0, 1.0)
            .unwrap()
            .with_k(2)
            .unwrap()
            .with_tower_samples(1);
        Prg::new(&p).unwrap()
    }

    #[test]
    fn structural_identities() {
        let g = tiny();
        let f = g.field().clone();
        let space = 4u128 * 25 * 5 * 5 * 5 * 5;
        assert_eq!(g.seed_space().unwrap(), BigUint::from(space));
        for idx in (0..space).step_by(97) {
            let s = g.seed_at(idx).unwrap();
            let out = g.generate(&s).unwrap();
            assert_eq!(out.len(), 2);
            assert_eq!(out[1], s.u);
            if s.u.is_zero() && s.v.is_zero() {
                assert!(out.iter().all(|x| x.is_zero()));
            }
            if s.v.is_zero() {
                let a = g.h2().point(s.s).unwrap();
                assert_eq!(out[0], f.mul(&a[0], &s.u));
            }
        }
        assert!(g.seed_at(space).is_err());
    }

    #[test]
    fn trace_requires_extension() {
        let g = tiny();
        let s = g.seed_at(0).unwrap();
        assert_eq!(trace_prg(&g, &s), Err(PrgError::PrimeFieldParams));
    }
}
