//! Multivariate gcd and content over a field, by recursive primitive
//! pseudo-remainder sequences.

use super::{AlgebraError, Monomial, MultiPoly};

/// Greatest common divisor, normalized so its graded-lex leading term is
/// monic. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let main = (0..a.nvars())
        .rev()
        .find(|&v| a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0);
    let Some(v) = main else {
        // both nonzero constants
        return MultiPoly::one(a.field(), a.nvars());
    };
    let ca = content_unchecked(a, v);
    let cb = content_unchecked(b, v);
    let c = gcd(&ca, &cb);
    let mut x = a.div_exact(&ca).expect("content divides");
    let mut y = b.div_exact(&cb).expect("content divides");
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        if y.degree_in(v) == Some(0) {
            break MultiPoly::one(a.field(), a.nvars());
        }
        let r = pseudo_rem(&x, &y, v);
        if r.is_zero() {
            break y;
        }
        let r = primitive_part_unchecked(&r, v);
        x = y;
        y = r;
    };
    c.mul(&g).monic()
}

/// `lc^e · a mod b` in the variable `v`, for some `e ≥ 0`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).unwrap_or(0);
    let lcb = b.coeffs_in(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lcr = r.coeffs_in(v).pop().expect("nonzero");
        let mut shift = Monomial::one(a.nvars());
        shift.0[v] = dr - db;
        let sub = b
            .mul(&lcr)
            .mul_monomial(&shift, &a.field().one());
        r = r.mul(&lcb).sub(&sub);
    }
    r
}

fn content_unchecked(f: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.field(), f.nvars());
    for c in f.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_part_unchecked(f: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_unchecked(f, v);
    f.div_exact(&c).expect("content divides")
}

/// Content of `f` viewed as a polynomial in `main_var`: the normalized gcd
/// of its coefficients. Equal to `1` exactly when `f` is primitive.
pub fn content(f: &MultiPoly, main_var: usize) -> Result<MultiPoly, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if main_var >= f.nvars() {
        return Err(AlgebraError::ArityMismatch {
            expected: f.nvars(),
            got: main_var + 1,
        });
    }
    Ok(content_unchecked(f, main_var))
}

pub fn primitive_part(f: &MultiPoly, main_var: usize) -> Result<MultiPoly, AlgebraError> {
    let c = content(f, main_var)?;
    Ok(f.div_exact(&c).expect("content divides"))
}

pub fn is_primitive(f: &MultiPoly, main_var: usize) -> Result<bool, AlgebraError> {
    Ok(content(f, main_var)?.is_constant())
}
