use std::cmp::Ordering;
use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::field::{add_mod, mul_mod};
use super::{AlgebraError, Field, FieldElem};

/// Exponent vector, ordered by graded lexicographic order: total degree first,
/// then the exponent of `x_1`, then `x_2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u32; 6]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a [`Field`]. No stored coefficient is
/// zero; every exponent vector has length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(AlgebraError::ArityMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            field.check(&c)?;
            p.add_term(Monomial::new(&exps), c);
        }
        Ok(p)
    }

    /// Shorthand for prime-field literals: coefficients are reduced mod `p`.
    pub fn from_int_terms(field: &Field, nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars);
            p.add_term(Monomial::new(exps), field.from_i64(*c));
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Largest term under graded lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Total degree counting only the variables selected by `mask`.
    pub fn degree_over(&self, mask: impl Fn(usize) -> bool) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| {
                m.0.iter()
                    .enumerate()
                    .filter(|(i, _)| mask(*i))
                    .map(|(_, e)| e)
                    .sum()
            })
            .max()
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e <= 1))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert!(
            self.compatible(other),
            "polynomial operands over different fields or arities"
        );
    }

    fn compatible(&self, other: &MultiPoly) -> bool {
        self.nvars == other.nvars && self.field == other.field
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, s: &FieldElem) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.mul(c, s)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElem) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), self.field.mul(c1, c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if !self.compatible(other) {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if !self.compatible(other) {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(self.mul(other))
    }

    /// Sum over terms of `coeff · ∏ point_i^{e_i}`.
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for x in point {
            self.field.check(x)?;
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[FieldElem]) -> FieldElem {
        let f = &self.field;
        // cache powers per variable up to the largest exponent used
        let mut powers: Vec<Vec<FieldElem>> = Vec::with_capacity(self.nvars);
        for (i, x) in point.iter().enumerate() {
            let max_e = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = Vec::with_capacity(max_e + 1);
            row.push(f.one());
            for e in 1..=max_e {
                let next = f.mul(&row[e - 1], x);
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitute `subs[i]` for variable `i`. All substituents share a field
    /// and arity, which becomes the arity of the result.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        if subs.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let target_nvars = first.nvars;
        if subs
            .iter()
            .any(|s| s.nvars != target_nvars || s.field != self.field)
        {
            return Err(AlgebraError::DescriptorMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.nvars);
        for (i, s) in subs.iter().enumerate() {
            let max_e = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = vec![MultiPoly::one(&self.field, target_nvars)];
            for e in 1..=max_e {
                let next = row[e - 1].mul(s);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = MultiPoly::zero(&self.field, target_nvars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Apply the linear change of variables `x_i ↦ Σ_j rows[i][j]·x_j`.
    pub fn compose_linear(&self, rows: &[Vec<FieldElem>]) -> Result<MultiPoly, AlgebraError> {
        let subs = rows
            .iter()
            .map(|row| {
                if row.len() != self.nvars {
                    return Err(AlgebraError::ArityMismatch {
                        expected: self.nvars,
                        got: row.len(),
                    });
                }
                let mut s = MultiPoly::zero(&self.field, self.nvars);
                for (j, c) in row.iter().enumerate() {
                    self.field.check(c)?;
                    s.add_term(Monomial::var(self.nvars, j), c.clone());
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.compose(&subs)
    }

    /// Re-index variables into a polynomial with `nvars` variables: old
    /// variable `i` becomes `map[i]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MultiPoly::zero(&self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(nvars);
            for (i, &x) in m.0.iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, self.field.scale(c, e % self.field.characteristic()));
        }
        out
    }

    /// Set variable `var` to the constant `value`, keeping the arity.
    pub fn specialize(&self, var: usize, value: &FieldElem) -> MultiPoly {
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var];
            m2.0[var] = 0;
            out.add_term(m2, f.mul(c, &f.pow(value, e as u128)));
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `i` is
    /// the coefficient of `var^i` (itself free of `var`).
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.field, self.nvars); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    /// Degree-`deg` homogeneous part.
    pub fn homogeneous_component(&self, deg: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divide by the leading coefficient so the graded-lex leading term is monic.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact multivariate division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.assert_compatible(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = self.field.inv(lc).ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = self.field.mul(c, &lc_inv);
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Compile into a flat form for fast repeated evaluation over a prime field.
    pub fn compile_prime(&self) -> Option<PrimeEvaluator> {
        if !self.field.is_prime_field() {
            return None;
        }
        let max_exp = (0..self.nvars)
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        Some(PrimeEvaluator {
            p: self.field.characteristic(),
            nvars: self.nvars,
            max_exp,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (c.coeffs()[0], m.0.to_vec()))
                .collect(),
        })
    }
}

/// A prime-field polynomial flattened to residues for tight evaluation loops.
#[derive(Clone, Debug)]
pub struct PrimeEvaluator {
    p: u32,
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(u32, Vec<u32>)>,
}

impl PrimeEvaluator {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluate at residues `point` (each `< p`). `scratch` is reused between calls.
    pub fn eval(&self, point: &[u32], scratch: &mut Vec<u32>) -> u32 {
        let p = self.p;
        scratch.clear();
        let mut offsets = SmallVec::<[usize; 8]>::new();
        for (i, &x) in point.iter().enumerate() {
            offsets.push(scratch.len());
            let mut v = 1 % p;
            scratch.push(v);
            for _ in 0..self.max_exp[i] {
                v = mul_mod(v, x, p);
                scratch.push(v);
            }
        }
        let mut acc = 0u32;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, scratch[offsets[i] + e as usize], p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        acc
    }
}
