//! Sylvester matrices and resultants over a field or over `F_q[t]`.

use super::{AlgebraError, Field, FieldElem, UniPoly};

/// The ring operations needed by fraction-free elimination.
pub trait CommRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` where `b` is known to divide `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl CommRing for Field {
    type Elem = FieldElem;
    fn zero(&self) -> FieldElem {
        Field::zero(self)
    }
    fn one(&self) -> FieldElem {
        Field::one(self)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::mul(self, a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        Field::neg(self, a)
    }
    fn div_exact(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::div(self, a, b).expect("exact division by zero")
    }
}

/// The univariate polynomial ring `F[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
}

impl PolyRing {
    pub fn new(field: &Field) -> Self {
        PolyRing {
            field: field.clone(),
        }
    }
}

impl CommRing for PolyRing {
    type Elem = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero(&self.field)
    }
    fn one(&self) -> UniPoly {
        UniPoly::one(&self.field)
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.add(b)
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.sub(b)
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mul(b)
    }
    fn neg(&self, a: &UniPoly) -> UniPoly {
        UniPoly::zero(&self.field).sub(a)
    }
    fn div_exact(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (q, r) = a.divrem(b).expect("exact division by zero");
        debug_assert!(r.is_zero(), "inexact division in F[t]");
        q
    }
}

/// Sylvester matrix of `f = Σ a_i z^i` (degree `d1`) and `g = Σ b_i z^i`
/// (degree `d2`), given as ascending coefficient lists without trailing
/// zeros. Entry `(i, j)` is `a_{i-j}` for `j < d2` and `b_{i-(j-d2)}` otherwise.
pub fn sylvester_in<R: CommRing>(
    ring: &R,
    f: &[R::Elem],
    g: &[R::Elem],
) -> Result<Vec<Vec<R::Elem>>, AlgebraError> {
    if f.is_empty() || g.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let d1 = f.len() - 1;
    let d2 = g.len() - 1;
    if d1 + d2 == 0 {
        return Err(AlgebraError::BothConstant);
    }
    let n = d1 + d2;
    let entry = |coeffs: &[R::Elem], idx: isize| -> R::Elem {
        if idx < 0 || idx as usize >= coeffs.len() {
            ring.zero()
        } else {
            coeffs[idx as usize].clone()
        }
    };
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < d2 {
                        entry(f, i as isize - j as isize)
                    } else {
                        entry(g, i as isize - (j - d2) as isize)
                    }
                })
                .collect()
        })
        .collect())
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant<R: CommRing>(ring: &R, matrix: &[Vec<R::Elem>]) -> R::Elem {
    let n = matrix.len();
    if n == 0 {
        return ring.one();
    }
    let mut m: Vec<Vec<R::Elem>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&m[r][k])) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&m[i][j], &m[k][k]),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring.div_exact(&num, &prev);
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

pub fn sylvester(f: &UniPoly, g: &UniPoly) -> Result<Vec<Vec<FieldElem>>, AlgebraError> {
    if f.field() != g.field() {
        return Err(AlgebraError::DescriptorMismatch);
    }
    sylvester_in(f.field(), f.coeffs(), g.coeffs())
}

/// `Res(f, g) = det Syl(f, g)` over the coefficient field.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<FieldElem, AlgebraError> {
    let s = sylvester(f, g)?;
    Ok(determinant(f.field(), &s))
}

/// Resultant of two polynomials in `z` whose coefficients lie in `F[t]`
/// (`f[i]` is the coefficient of `z^i`).
pub fn resultant_over_poly_ring(
    field: &Field,
    f: &[UniPoly],
    g: &[UniPoly],
) -> Result<UniPoly, AlgebraError> {
    let trim = |v: &[UniPoly]| -> Vec<UniPoly> {
        let mut v = v.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let ring = PolyRing::new(field);
    let s = sylvester_in(&ring, &trim(f), &trim(g))?;
    Ok(determinant(&ring, &s))
}
