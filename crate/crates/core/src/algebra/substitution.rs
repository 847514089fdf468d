//! The shear `s_a` and the restriction `r_b`.
//!
//! Inputs live in `x_1..x_n, y` with `y` last. The restriction output uses
//! variables `(x, y, w_1, .., w_ℓ)` at indices `0, 1, 2, ..`.

use super::{AlgebraError, FieldElem, MultiPoly};

/// `f(x_1 + a_1 y, .., x_n + a_n y, y)`.
pub fn substitute_sa(f: &MultiPoly, a: &[FieldElem]) -> Result<MultiPoly, AlgebraError> {
    let nv = f.nvars();
    if nv != a.len() + 1 {
        return Err(AlgebraError::ArityMismatch {
            expected: nv.saturating_sub(1),
            got: a.len(),
        });
    }
    let field = f.field();
    let y = MultiPoly::var(field, nv, nv - 1);
    let mut subs = Vec::with_capacity(nv);
    for (i, ai) in a.iter().enumerate() {
        field.check(ai)?;
        subs.push(MultiPoly::var(field, nv, i).add(&y.scale(ai)));
    }
    subs.push(y);
    f.compose(&subs)
}

/// `f(b_1(w)·x, .., b_n(w)·x, y)` where each `b_i` is multilinear in `w`.
pub fn substitute_rb(f: &MultiPoly, b: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
    let nv = f.nvars();
    if nv != b.len() + 1 {
        return Err(AlgebraError::ArityMismatch {
            expected: nv.saturating_sub(1),
            got: b.len(),
        });
    }
    let field = f.field();
    let ell = b.first().map_or(0, |p| p.nvars());
    for (i, bi) in b.iter().enumerate() {
        if bi.nvars() != ell {
            return Err(AlgebraError::ArityMismatch {
                expected: ell,
                got: bi.nvars(),
            });
        }
        if bi.field() != field {
            return Err(AlgebraError::DescriptorMismatch);
        }
        if !bi.is_multilinear() {
            return Err(AlgebraError::NonMultilinearSubstituent(i));
        }
    }
    let out_nv = 2 + ell;
    let w_map: Vec<usize> = (2..out_nv).collect();
    let x = MultiPoly::var(field, out_nv, 0);
    let mut subs: Vec<MultiPoly> = b.iter().map(|bi| bi.rename(out_nv, &w_map).mul(&x)).collect();
    subs.push(MultiPoly::var(field, out_nv, 1));
    f.compose(&subs)
}

/// `F = f(b_1(w)x + a_1 y, .., b_n(w)x + a_n y, y)`, i.e. `r_b(s_a(f))`.
pub fn restrict(f: &MultiPoly, b: &[MultiPoly], a: &[FieldElem]) -> Result<MultiPoly, AlgebraError> {
    substitute_rb(&substitute_sa(f, a)?, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn shear_examples() {
        let f = Field::prime(13).unwrap();
        let g = MultiPoly::from_int_terms(&f, 2, &[(&[1, 1], 1)]);
        assert_eq!(substitute_sa(&g, &[f.zero()]).unwrap(), g);
        let expect = MultiPoly::from_int_terms(&f, 2, &[(&[1, 1], 1), (&[0, 2], 1)]);
        assert_eq!(substitute_sa(&g, &[f.one()]).unwrap(), expect);
        assert!(substitute_sa(&g, &[]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let f = Field::prime(13).unwrap();
        // x1 + y, b1 = w1
        let g = MultiPoly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let w1 = MultiPoly::var(&f, 1, 0);
        let out = substitute_rb(&g, &[w1]).unwrap();
        let expect = MultiPoly::from_int_terms(&f, 3, &[(&[1, 0, 1], 1), (&[0, 1, 0], 1)]);
        assert_eq!(out, expect);
        let sq = MultiPoly::var(&f, 1, 0).pow(2);
        assert_eq!(
            substitute_rb(&g, &[sq]),
            Err(AlgebraError::NonMultilinearSubstituent(0))
        );
    }
}
