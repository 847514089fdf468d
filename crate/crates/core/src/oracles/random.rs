use rand::Rng;

use super::{is_decomposable_bruteforce, OracleError};
use crate::algebra::{Field, FieldElem, Monomial, MultiPoly};

const MAX_REJECTIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyConstraint {
    /// Any nonzero polynomial of degree at most `d`.
    Nonzero,
    /// Degree exactly `d`.
    ExactDegree,
    /// Nonconstant and indecomposable (checked by brute force).
    Indecomposable,
}

fn all_monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn uniform_elem<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FieldElem {
    field.element_at(rng.gen_range(0..field.size()))
}

/// Uniform coefficients on every monomial of degree at most `d`, rejected
/// until the constraint holds.
pub fn random_poly<R: Rng + ?Sized>(
    nvars: usize,
    d: u32,
    field: &Field,
    rng: &mut R,
    constraint: PolyConstraint,
    budget: u128,
) -> Result<MultiPoly, OracleError> {
    let monos = all_monomials_up_to(nvars, d);
    for _ in 0..MAX_REJECTIONS {
        let mut f = MultiPoly::zero(field, nvars);
        for m in &monos {
            f.add_term(m.clone(), uniform_elem(field, rng));
        }
        let ok = match constraint {
            PolyConstraint::Nonzero => !f.is_zero(),
            PolyConstraint::ExactDegree => f.total_degree() == Some(d),
            PolyConstraint::Indecomposable => {
                !f.is_constant() && is_decomposable_bruteforce(&f, budget)?.is_none()
            }
        };
        if ok {
            return Ok(f);
        }
    }
    Err(OracleError::RejectionTimeout(MAX_REJECTIONS))
}

/// Uniform nonzero coefficients on exactly the given support.
pub fn random_poly_with_support<R: Rng + ?Sized>(
    nvars: usize,
    support: &[Monomial],
    field: &Field,
    rng: &mut R,
) -> Result<MultiPoly, OracleError> {
    let mut f = MultiPoly::zero(field, nvars);
    for m in support {
        if m.exps().len() != nvars {
            return Err(OracleError::InvalidInput("support monomial arity".into()));
        }
        let c = field.element_at(rng.gen_range(1..field.size()));
        f.add_term(m.clone(), c);
    }
    Ok(f)
}
