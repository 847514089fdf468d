use num_rational::Ratio;
use rand::Rng;
use serde_json::{json, Value};

use super::{
    check_budget, is_decomposable_bruteforce, random_poly, ratio_json, wilson_interval,
    OracleError, PolyConstraint,
};
use crate::algebra::substitution::restrict;
use crate::algebra::{Field, MultiPoly};
use crate::hitting::{HittingSetGenerator, Phsg};
use crate::prg::Prg;
use crate::tower::build_tower_rejection;

/// Fraction of seeds on which `f` vanishes at the generator's point.
pub fn hsg_empirical_density<H: HittingSetGenerator + ?Sized>(
    hsg: &H,
    f: &MultiPoly,
    budget: u128,
) -> Result<Ratio<u128>, OracleError> {
    let space = hsg.seed_space()?;
    check_budget(space, budget)?;
    let mut zeros = 0u128;
    for s in 0..space {
        let pt = hsg.point(s)?;
        if f.eval(&pt)?.is_zero() {
            zeros += 1;
        }
    }
    Ok(Ratio::new(zeros, space))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhsgDensity {
    /// Probability over the full seed that `f(H(seed))` is the zero polynomial.
    pub vanishing: Ratio<u128>,
    /// Probability that every tower candidate fails.
    pub failure_rate: Ratio<u128>,
    /// Distinct successful towers examined.
    pub towers: usize,
}

impl PhsgDensity {
    pub fn to_json(&self) -> Value {
        json!({
            "vanishing": ratio_json(&self.vanishing),
            "failure_rate": ratio_json(&self.failure_rate),
            "towers": self.towers,
        })
    }
}

/// Exact vanishing probability of `f` under the polynomial-valued generator.
///
/// The tower part of the seed is `t` independent candidates of which the
/// first irreducible one is used. With `D` candidates of which `F` fail, the
/// first success lands on a given good candidate at position `i` for
/// `F^i·D^{t-1-i}` tuples, so only single candidates need to be built.
pub fn phsg_vanishing_exhaustive(
    phsg: &Phsg,
    f: &MultiPoly,
    budget: u128,
) -> Result<PhsgDensity, OracleError> {
    let domain = phsg.domain();
    let d = domain.size();
    let t = phsg.tower_samples() as u32;
    let hsg_space = phsg.hsg_seed_space()?;
    check_budget(d.saturating_mul(hsg_space), budget)?;
    let overflow = || OracleError::BudgetExceeded { needed: u128::MAX, budget };

    let mut good = Vec::new();
    for v in 0..d {
        if let Some(ext) = domain.try_candidate(v)? {
            good.push(ext);
        }
    }
    let fail = d - good.len() as u128;
    let total = d.checked_pow(t).ok_or_else(overflow)?;
    let fail_tuples = fail.checked_pow(t).ok_or_else(overflow)?;
    let mut per_success = 0u128;
    for i in 0..t {
        let w = fail
            .checked_pow(i)
            .and_then(|a| d.checked_pow(t - 1 - i).and_then(|b| a.checked_mul(b)))
            .ok_or_else(overflow)?;
        per_success = per_success.checked_add(w).ok_or_else(overflow)?;
    }

    let mut vanish = 0u128;
    for ext in &good {
        let mut count = 0u128;
        for s in 0..hsg_space {
            let pt = phsg.extension_point(ext, s)?;
            if phsg.lift_point(ext, &pt).substitute_into(f)?.is_zero() {
                count += 1;
            }
        }
        vanish = per_success
            .checked_mul(count)
            .and_then(|x| vanish.checked_add(x))
            .ok_or_else(overflow)?;
    }
    let zero_at_origin = f.eval(&vec![f.field().zero(); f.nvars()])?.is_zero();
    if zero_at_origin {
        vanish = fail_tuples
            .checked_mul(hsg_space)
            .and_then(|x| vanish.checked_add(x))
            .ok_or_else(overflow)?;
    }
    let denom = total.checked_mul(hsg_space).ok_or_else(overflow)?;
    Ok(PhsgDensity {
        vanishing: Ratio::new(vanish, denom),
        failure_rate: Ratio::new(fail_tuples, total),
        towers: good.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreservationStats {
    pub trials: u64,
    pub preserved: u64,
    pub fraction: f64,
    /// 95% Wilson interval for the preserved fraction.
    pub wilson: (f64, f64),
    /// Trials where the tower step failed and `b` was zero.
    pub tower_failures: u64,
}

impl PreservationStats {
    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "preserved": self.preserved,
            "fraction": self.fraction,
            "wilson_low": self.wilson.0,
            "wilson_high": self.wilson.1,
            "tower_failures": self.tower_failures,
        })
    }
}

/// How often a random indecomposable `f` of degree `d` in `n + 1` variables
/// stays indecomposable after the restriction
/// `F(x, y, w) = f(b(w)x + a·y, y)` for a random generator seed `(r, s)`.
/// "Indecomposable" follows [`is_decomposable_bruteforce`], so constant
/// restrictions count as preserved.
pub fn restriction_preservation_stats<R: Rng + ?Sized>(
    prg: &Prg,
    trials: u64,
    rng: &mut R,
    budget: u128,
) -> Result<PreservationStats, OracleError> {
    let field = prg.field();
    let nv = prg.output_len();
    let d = prg.params().d;
    let mut preserved = 0u64;
    let mut tower_failures = 0u64;
    for _ in 0..trials {
        let f = loop {
            let g = random_poly(nv, d, field, rng, PolyConstraint::Indecomposable, budget)?;
            if g.total_degree() == Some(d) {
                break g;
            }
        };
        let seed = prg.random_seed(rng)?;
        let b = prg.h1().sample(&seed.r)?;
        if b.is_zero() {
            tower_failures += 1;
        }
        let a = prg.h2().point(seed.s)?;
        let restricted = restrict(&f, b.entries(), &a)?;
        if is_decomposable_bruteforce(&restricted, budget)?.is_none() {
            preserved += 1;
        }
    }
    let fraction = if trials == 0 { 1.0 } else { preserved as f64 / trials as f64 };
    Ok(PreservationStats {
        trials,
        preserved,
        fraction,
        wilson: wilson_interval(preserved, trials, 1.96),
        tower_failures,
    })
}

/// Successes out of `trials` single-shot rejection builds of an `ell`-level tower.
pub fn tower_success_rate<R: Rng + ?Sized>(
    base: &Field,
    ell: usize,
    trials: u64,
    rng: &mut R,
) -> Result<u64, OracleError> {
    let mut ok = 0;
    for _ in 0..trials {
        if build_tower_rejection(base, ell, rng, 1)?.is_success() {
            ok += 1;
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitting::HsgSpec;
    use crate::oracles::DEFAULT_BUDGET;

    #[test]
    fn grid_density_matches_zero_count() {
        let f = Field::prime(7).unwrap();
        let spec = HsgSpec::full_grid(&f, 2, 2);
        let g = MultiPoly::from_int_terms(&f, 2, &[(&[1, 1], 1)]);
        // x1*x2 vanishes on 13 of 49 points
        assert_eq!(hsg_empirical_density(&spec, &g, DEFAULT_BUDGET).unwrap(), Ratio::new(13, 49));
    }

    #[test]
    fn phsg_density_of_a_linear_form() {
        let f = Field::prime(13).unwrap();
        let phsg = Phsg::new(&f, 2, 1, 1, 0.5).unwrap().with_tower_samples(2);
        let g = MultiPoly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let dens = phsg_vanishing_exhaustive(&phsg, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(dens.towers, 6);
        assert_eq!(dens.failure_rate, Ratio::new(36, 144));
        assert!(dens.vanishing >= dens.failure_rate);
    }
}
