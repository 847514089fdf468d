use super::{check_budget, OracleError};
use crate::algebra::{Field, FieldElem, UniPoly};
use crate::tower::Extension;

/// The unique polynomial of degree below `Q` agreeing with `g` on all of `F`:
/// `c_0 = g(0)` and `c_j = -Σ_a g(a)·a^{Q-1-j}` for `1 ≤ j ≤ Q-1`.
pub fn interpolate_univariate<G>(field: &Field, g: G, budget: u128) -> Result<UniPoly, OracleError>
where
    G: Fn(&FieldElem) -> FieldElem,
{
    let q = field.size();
    check_budget(q.saturating_mul(q), budget)?;
    let q = q as usize;
    let mut coeffs = vec![field.zero(); q];
    coeffs[0] = g(&field.zero());
    for a in field.elements()? {
        let ga = g(&a);
        if ga.is_zero() {
            continue;
        }
        // a^{Q-1-j} for j = Q-1 down to 1
        let mut pw = field.one();
        for j in (1..q).rev() {
            coeffs[j] = field.sub(&coeffs[j], &field.mul(&ga, &pw));
            pw = field.mul(&pw, &a);
        }
    }
    Ok(UniPoly::new(field, coeffs))
}

/// `x ↦ Tr_{q→p}(x)` as a polynomial over the field itself.
pub fn trace_polynomial(field: &Field, budget: u128) -> Result<UniPoly, OracleError> {
    interpolate_univariate(field, |x| field.embed(&field.absolute_trace(x)), budget)
}

/// Whether `f` (over the base of `ext`) has a root of multiplicity at least
/// two inside `𝔼`, by enumeration.
pub fn repeated_root_in(f: &UniPoly, ext: &Extension) -> Result<bool, OracleError> {
    let big = ext.field();
    let lift = |p: &UniPoly| UniPoly::new(big, p.coeffs().iter().map(|c| ext.embed(c)).collect());
    let fe = lift(f);
    let de = lift(&f.derivative());
    for r in big.elements()? {
        if fe.eval(&r).is_zero() && de.eval(&r).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::DEFAULT_BUDGET;

    #[test]
    fn recovers_small_polynomials() {
        let f = Field::prime(7).unwrap();
        let p = UniPoly::from_ints(&f, &[3, 0, 5, 1]);
        let back = interpolate_univariate(&f, |x| p.eval(x), DEFAULT_BUDGET).unwrap();
        assert_eq!(back, p);
        let id = trace_polynomial(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(id, UniPoly::z(&f));
    }

    #[test]
    fn repeated_roots_in_quadratic_extension() {
        let f13 = Field::prime(13).unwrap();
        let ext = Extension::new(&f13, vec![vec![2]]).unwrap();
        // (y^2 - 2)^2 has double roots only in F_169
        let q = UniPoly::from_ints(&f13, &[-2, 0, 1]);
        assert!(repeated_root_in(&q.mul(&q), &ext).unwrap());
        assert!(!repeated_root_in(&q, &ext).unwrap());
    }
}
