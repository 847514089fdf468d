use std::collections::HashMap;

use num_rational::Ratio;
use rand::Rng;

use super::{check_budget, tv_distance, tv_to_uniform, Distribution, FastEval, OracleError};
use crate::algebra::{Field, FieldElem, MultiPoly};
use crate::hitting::{HittingSetGenerator, PhsgSeed};
use crate::prg::Prg;

/// Visit every point of `F^n` in lexicographic order.
fn for_each_point<V: FnMut(&[FieldElem])>(field: &Field, n: usize, mut visit: V) {
    let q = field.size();
    let mut digits = vec![0u128; n];
    let mut point = vec![field.zero(); n];
    loop {
        visit(&point);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                point[i] = field.element_at(digits[i]);
                break;
            }
            digits[i] = 0;
            point[i] = field.zero();
        }
    }
}

fn for_each_residue_point<V: FnMut(&[u32])>(p: u32, n: usize, mut visit: V) {
    let mut point = vec![0u32; n];
    loop {
        visit(&point);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            point[i] += 1;
            if point[i] < p {
                break;
            }
            point[i] = 0;
        }
    }
}

/// Distribution of `f(x)` for `x` uniform on `F^{nvars}`.
pub fn uniform_distribution(f: &MultiPoly, budget: u128) -> Result<Distribution, OracleError> {
    let field = f.field();
    let n = f.nvars();
    let work = field
        .size()
        .checked_pow(n as u32)
        .ok_or(OracleError::BudgetExceeded { needed: u128::MAX, budget })?;
    check_budget(work, budget)?;
    let mut dist = Distribution::new(field)?;
    let mut ev = FastEval::new(f);
    if field.is_prime_field() {
        for_each_residue_point(field.characteristic(), n, |pt| {
            let v = ev.eval_residues(pt);
            dist.add_index(v as usize, 1);
        });
    } else {
        for_each_point(field, n, |pt| {
            let v = ev.eval_index(pt);
            dist.add_index(v as usize, 1);
        });
    }
    Ok(dist)
}

/// Exact `TV(f(gen(U_seeds)), f(U_{F^n}))` over a seed-indexed generator.
pub fn tv_distance_exact<G, E>(
    f: &MultiPoly,
    mut gen: G,
    seed_space: u128,
    budget: u128,
) -> Result<Ratio<u128>, OracleError>
where
    G: FnMut(u128) -> Result<Vec<FieldElem>, E>,
    OracleError: From<E>,
{
    check_budget(seed_space, budget)?;
    let reference = uniform_distribution(f, budget)?;
    let mut image = Distribution::new(f.field())?;
    let mut ev = FastEval::new(f);
    for s in 0..seed_space {
        let pt = gen(s)?;
        if pt.len() != f.nvars() {
            return Err(OracleError::InvalidInput("generator output arity".into()));
        }
        image.add_index(ev.eval_index(&pt) as usize, 1);
    }
    tv_distance(&image, &reference)
}

/// `TV(f(U), U_F)`: distance of the output distribution from uniform.
pub fn equidistribution_check(f: &MultiPoly, budget: u128) -> Result<Ratio<u128>, OracleError> {
    tv_to_uniform(&uniform_distribution(f, budget)?)
}

/// Scale `beta` so its first nonzero coordinate is 1; `None` for the zero vector.
fn projective_key(field: &Field, beta: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let lead = beta.iter().find(|x| !x.is_zero())?;
    let inv = field.inv(lead).expect("nonzero");
    Some(beta.iter().map(|x| field.mul(x, &inv)).collect())
}

/// Distribution of `f(G(r, s, t, u, v))` over all `(t, u, v)` for fixed
/// `(r, s)`. With `β = H_1(r)(t)` the output is `f(βv + au, u)`; rescaling
/// `β` by a nonzero constant permutes `v`, so only the projective class of
/// `β` matters and each class is evaluated once over `(u, v)`.
pub fn prg_image_distribution(
    prg: &Prg,
    f: &MultiPoly,
    r: &PhsgSeed,
    s: u128,
    budget: u128,
) -> Result<Distribution, OracleError> {
    let field = prg.field();
    let params = prg.params();
    check_arity(prg, f)?;
    let q = field.size();
    let t_space = q.checked_pow(params.ell as u32).unwrap_or(u128::MAX);
    check_budget(t_space, budget)?;
    let b = prg.h1().sample(r)?;
    let a = prg.h2().point(s)?;

    let mut classes: HashMap<Option<Vec<FieldElem>>, u64> = HashMap::new();
    let mut entry_evals: Vec<FastEval> = b.entries().iter().map(FastEval::new).collect();
    let mut beta = vec![field.zero(); params.n];
    for_each_point(field, params.ell, |t| {
        for (slot, ev) in beta.iter_mut().zip(entry_evals.iter_mut()) {
            *slot = field.element_at(ev.eval_index(t));
        }
        *classes.entry(projective_key(field, &beta)).or_insert(0) += 1;
    });
    check_budget((classes.len() as u128).saturating_mul(q * q), budget)?;

    let mut ev = FastEval::new(f);
    let mut dist = Distribution::new(field)?;
    let mut point = vec![field.zero(); params.n + 1];
    let zero_beta = vec![field.zero(); params.n];
    for (key, weight) in &classes {
        let beta = key.as_ref().unwrap_or(&zero_beta);
        for_each_point(field, 2, |uv| {
            let (u, v) = (&uv[0], &uv[1]);
            for i in 0..params.n {
                point[i] = field.add(&field.mul(&beta[i], v), &field.mul(&a[i], u));
            }
            point[params.n] = u.clone();
            dist.add_index(ev.eval_index(&point) as usize, *weight);
        });
    }
    Ok(dist)
}

fn check_arity(prg: &Prg, f: &MultiPoly) -> Result<(), OracleError> {
    if f.nvars() != prg.output_len() || f.field() != prg.field() {
        return Err(OracleError::InvalidInput(format!(
            "polynomial must have {} variables over the generator's field",
            prg.output_len()
        )));
    }
    Ok(())
}

/// Same distribution as [`prg_image_distribution`], by running `G` on every
/// `(t, u, v)` directly.
pub fn prg_image_distribution_generic(
    prg: &Prg,
    f: &MultiPoly,
    r: &PhsgSeed,
    s: u128,
    budget: u128,
) -> Result<Distribution, OracleError> {
    check_arity(prg, f)?;
    let field = prg.field();
    let ell = prg.params().ell;
    let work = field.size().checked_pow(ell as u32 + 2).unwrap_or(u128::MAX);
    check_budget(work, budget)?;
    let b = prg.h1().sample(r)?;
    let a = prg.h2().point(s)?;
    let mut dist = Distribution::new(field)?;
    let mut ev = FastEval::new(f);
    let mut err = None;
    for_each_point(field, ell + 2, |tuv| {
        if err.is_some() {
            return;
        }
        match prg.combine(&b, &a, &tuv[..ell], &tuv[ell], &tuv[ell + 1]) {
            Ok(out) => dist.add_index(ev.eval_index(&out) as usize, 1),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    Ok(dist)
}

/// TV between `f(U)` and `f(G)` where `(r, s)` is uniform over `m` sampled
/// pairs and `(t, u, v)` is enumerated exactly.
pub fn prg_tv_sampled<R: Rng + ?Sized>(
    prg: &Prg,
    f: &MultiPoly,
    pairs: usize,
    rng: &mut R,
    budget: u128,
) -> Result<Ratio<u128>, OracleError> {
    let reference = uniform_distribution(f, budget)?;
    let mut image = Distribution::new(f.field())?;
    for _ in 0..pairs.max(1) {
        let seed = prg.random_seed(rng)?;
        image.merge(&prg_image_distribution(prg, f, &seed.r, seed.s, budget)?);
    }
    tv_distance(&image, &reference)
}

/// TV over the full seed space; only for tiny parameters.
pub fn prg_tv_exhaustive(prg: &Prg, f: &MultiPoly, budget: u128) -> Result<Ratio<u128>, OracleError> {
    let radices = prg.seed_radices()?;
    let ell = prg.params().ell;
    let pair_radices = &radices[..radices.len() - ell - 2];
    let pairs = pair_radices
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r))
        .unwrap_or(u128::MAX);
    let q = prg.field().size();
    check_budget(pairs.saturating_mul(q.saturating_pow(ell as u32 + 2)), budget)?;
    let reference = uniform_distribution(f, budget)?;
    let mut image = Distribution::new(f.field())?;
    let ts = prg.h1().tower_samples();
    for idx in 0..pairs {
        let mut digits = vec![0u128; pair_radices.len()];
        let mut rest = idx;
        for (slot, &r) in digits.iter_mut().zip(pair_radices).rev() {
            *slot = rest % r;
            rest /= r;
        }
        let r = PhsgSeed {
            tower: digits[..ts].to_vec(),
            hsg: digits[ts],
        };
        image.merge(&prg_image_distribution(prg, f, &r, digits[ts + 1], budget)?);
    }
    tv_distance(&image, &reference)
}
