use super::TowerError;
use crate::algebra::{Field, FieldElem, UniPoly};

/// Irreducibility of a monic `f` of degree `a` over a field of size `Q`:
/// `gcd(f, z^{Q^i} - z) = 1` for `1 ≤ i < a`, and `f | z^{Q^a} - z`.
pub fn is_irreducible_univariate(f: &UniPoly) -> Result<bool, TowerError> {
    let a = match f.degree() {
        None | Some(0) => return Err(TowerError::ConstantPolynomial),
        Some(a) => a,
    };
    if !f.is_monic() {
        return Err(TowerError::NonMonic);
    }
    if a == 1 {
        return Ok(true);
    }
    let q = f.field().size();
    let z = UniPoly::z(f.field());
    let mut power = z.clone();
    for _ in 1..a {
        power = power.pow_mod(q, f)?;
        if f.gcd(&power.sub(&z)).degree() != Some(0) {
            return Ok(false);
        }
    }
    power = power.pow_mod(q, f)?;
    Ok(power == z.rem(f)?)
}

/// `w^2 - h` is irreducible over `field` iff `h` is a nonzero non-square.
pub fn quadratic_irreducible_fast(field: &Field, h: &FieldElem) -> Result<bool, TowerError> {
    if field.characteristic() == 2 {
        return Err(TowerError::CharacteristicTwo);
    }
    field.check(h)?;
    Ok(!field.is_square(h))
}
