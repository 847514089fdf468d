use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::AlgebraError;
use crate::tower::TowerSpec;

/// Enumerating a field larger than this many elements is refused by default.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

pub(crate) type Coeffs = SmallVec<[u32; 4]>;

/// Trial-division primality test. Adequate for the `p < 2^31` range used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u128, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    // extended Euclid on signed 64-bit values
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Some(s0.rem_euclid(p as i64) as u32)
}

/// An element of a [`Field`]: one residue for a prime field, or `2^ℓ` residues
/// for a tower field, indexed by subsets of `{w_1, …, w_ℓ}` (bit `i-1` set
/// means `w_i` is present in the basis monomial).
///
/// Ordering and equality are lexicographic on the coefficient vector, which is
/// also the enumeration order of [`Field::element_at`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) Coeffs);

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn from_coeffs(c: Coeffs) -> Self {
        FieldElem(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0.as_slice())
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Prime,
    Tower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u128),
}

/// Descriptor of a finite field: `F_p`, or `F_p[w_1..w_ℓ]/(w_i^2 - h_i)`.
///
/// Cloning is cheap; the tower (if any) is shared.
#[derive(Clone)]
pub struct Field {
    p: u32,
    tower: Option<Arc<TowerSpec>>,
    size: u128,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && match (&self.tower, &other.tower) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
                _ => false,
            }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tower {
            None => write!(f, "F_{}", self.p),
            Some(t) => write!(f, "F_{}^{} {:?}", self.p, self.degree(), t.defining()),
        }
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p >= 1 << 31 {
            return Err(AlgebraError::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field {
            p: p as u32,
            tower: None,
            size: p as u128,
        })
    }

    /// The top level of `spec`. A spec with zero levels yields the prime field.
    pub fn from_tower(spec: Arc<TowerSpec>) -> Result<Self, AlgebraError> {
        let p = spec.p();
        if spec.levels() == 0 {
            return Field::prime(p as u64);
        }
        let size = (p as u128)
            .checked_pow(spec.degree() as u32)
            .ok_or(AlgebraError::FieldTooLarge)?;
        Ok(Field {
            p,
            tower: Some(spec),
            size,
        })
    }

    pub fn kind(&self) -> FieldKind {
        if self.tower.is_some() {
            FieldKind::Tower
        } else {
            FieldKind::Prime
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.tower.is_none()
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree over `F_p`; always a power of two.
    pub fn degree(&self) -> usize {
        self.tower.as_ref().map_or(1, |t| t.degree())
    }

    pub fn levels(&self) -> usize {
        self.tower.as_ref().map_or(0, |t| t.levels())
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn tower(&self) -> Option<&Arc<TowerSpec>> {
        self.tower.as_ref()
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> Field {
        Field {
            p: self.p,
            tower: None,
            size: self.p as u128,
        }
    }

    /// The subfield made of the first `level` tower levels.
    pub fn subfield(&self, level: usize) -> Field {
        assert!(level <= self.levels());
        match &self.tower {
            Some(t) if level > 0 => {
                Field::from_tower(Arc::new(t.truncated(level))).expect("subfield of a valid field")
            }
            _ => self.prime_subfield(),
        }
    }

    /// Embed an element of a subfield (identified by its shorter coefficient
    /// vector) by zero-padding into this field's basis.
    pub fn embed(&self, sub: &FieldElem) -> FieldElem {
        debug_assert!(sub.0.len() <= self.degree());
        let mut c = sub.0.clone();
        c.resize(self.degree(), 0);
        FieldElem(c)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(SmallVec::from_elem(0, self.degree()))
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut c: Coeffs = SmallVec::from_elem(0, self.degree());
        c[0] = (v % self.p as u64) as u32;
        FieldElem(c)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// Build an element from its basis coordinates, validating length and range.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem, AlgebraError> {
        if coeffs.len() != self.degree() {
            return Err(AlgebraError::MalformedElement(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(AlgebraError::MalformedElement(format!(
                "coordinate {c} not reduced mod {}",
                self.p
            )));
        }
        Ok(FieldElem(SmallVec::from_slice(coeffs)))
    }

    /// `Ok` iff `a` has this field's shape with canonical coordinates.
    pub fn check(&self, a: &FieldElem) -> Result<(), AlgebraError> {
        if a.0.len() != self.degree() || a.0.iter().any(|&c| c >= self.p) {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| add_mod(x, y, self.p))
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| sub_mod(x, y, self.p))
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|&x| sub_mod(0, x, self.p)).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match &self.tower {
            None => {
                let mut c = a.0.clone();
                c[0] = mul_mod(a.0[0], b.0[0], self.p);
                FieldElem(c)
            }
            Some(t) => FieldElem(t.mul_level(t.levels(), &a.0, &b.0)),
        }
    }

    /// Multiply by an element of the prime subfield.
    pub fn scale(&self, a: &FieldElem, s: u32) -> FieldElem {
        FieldElem(a.0.iter().map(|&x| mul_mod(x, s, self.p)).collect())
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, AlgebraError> {
        match &self.tower {
            None => inv_mod(a.0[0], self.p)
                .map(|v| FieldElem(SmallVec::from_elem(v, 1)))
                .ok_or(AlgebraError::DivisionByZero),
            Some(t) => t
                .inv_level(t.levels(), &a.0)
                .map(FieldElem)
                .ok_or(AlgebraError::DivisionByZero),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: &FieldElem, exp: u128) -> FieldElem {
        match &self.tower {
            None => FieldElem(SmallVec::from_elem(pow_mod(a.0[0], exp, self.p), 1)),
            Some(t) => FieldElem(t.pow_level(t.levels(), &a.0, exp)),
        }
    }

    /// Checked dispatch used at API boundaries: validates both operands first.
    pub fn apply(
        &self,
        op: FieldOp,
        a: &FieldElem,
        b: Option<&FieldElem>,
    ) -> Result<FieldElem, AlgebraError> {
        self.check(a)?;
        let rhs = |b: Option<&FieldElem>| -> Result<FieldElem, AlgebraError> {
            let b = b.ok_or(AlgebraError::ArityMismatch {
                expected: 2,
                got: 1,
            })?;
            self.check(b)?;
            Ok(b.clone())
        };
        Ok(match op {
            FieldOp::Add => self.add(a, &rhs(b)?),
            FieldOp::Sub => self.sub(a, &rhs(b)?),
            FieldOp::Mul => self.mul(a, &rhs(b)?),
            FieldOp::Div => self.div(a, &rhs(b)?)?,
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Element with lexicographic rank `idx` (first coordinate most significant).
    pub fn element_at(&self, mut idx: u128) -> FieldElem {
        debug_assert!(idx < self.size);
        let k = self.degree();
        let mut c: Coeffs = SmallVec::from_elem(0, k);
        for slot in c.iter_mut().rev() {
            *slot = (idx % self.p as u128) as u32;
            idx /= self.p as u128;
        }
        FieldElem(c)
    }

    /// Inverse of [`Field::element_at`].
    pub fn index_of(&self, a: &FieldElem) -> u128 {
        a.0.iter()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// All `Q` elements in lexicographic order, refusing fields above `budget`.
    pub fn enumerate(
        &self,
        budget: u128,
    ) -> Result<impl Iterator<Item = FieldElem> + '_, AlgebraError> {
        if self.size > budget {
            return Err(AlgebraError::BudgetExceeded {
                size: self.size,
                budget,
            });
        }
        Ok((0..self.size).map(move |i| self.element_at(i)))
    }

    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem> + '_, AlgebraError> {
        self.enumerate(DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, self.p as u128)
    }

    /// `Σ_{i<a} x^{p^i}` computed inside this field. Lies in the prime subfield.
    pub fn trace_sum(&self, a: &FieldElem) -> FieldElem {
        let mut acc = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.degree() {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        acc
    }

    /// Absolute trace `Tr_{q→p}`, returned as an element of `F_p`.
    /// For a prime field this is the identity map.
    pub fn absolute_trace(&self, a: &FieldElem) -> FieldElem {
        let s = self.trace_sum(a);
        debug_assert!(s.0[1..].iter().all(|&c| c == 0));
        FieldElem(SmallVec::from_elem(s.0[0], 1))
    }

    pub fn strict_absolute_trace(&self, a: &FieldElem) -> Result<FieldElem, AlgebraError> {
        if self.is_prime_field() {
            return Err(AlgebraError::PrimeFieldInput);
        }
        Ok(self.absolute_trace(a))
    }

    /// Euler criterion. Zero counts as a square.
    pub fn is_square(&self, a: &FieldElem) -> bool {
        if a.is_zero() {
            return true;
        }
        if self.p == 2 {
            return true;
        }
        self.is_one(&self.pow(a, (self.size - 1) / 2))
    }

    /// True iff `a` lies in the prime subfield.
    pub fn in_prime_subfield(&self, a: &FieldElem) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// Canonical text for an element: a decimal residue for `F_p`, or the
    /// parenthesised coordinate tuple for a tower field.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        a.to_string()
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, AlgebraError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| AlgebraError::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.iter().any(|&c| c >= self.p as u64) {
                return Err(AlgebraError::Parse(format!("coordinate out of range in {s}")));
            }
            let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c as u32).collect();
            self.elem(&coeffs)
                .map_err(|e| AlgebraError::Parse(e.to_string()))
        } else {
            let v: u64 = s
                .parse()
                .map_err(|e| AlgebraError::Parse(format!("{s:?}: {e}")))?;
            if v >= self.p as u64 {
                return Err(AlgebraError::Parse(format!(
                    "residue {v} not reduced mod {}",
                    self.p
                )));
            }
            Ok(self.from_u64(v))
        }
    }
}
