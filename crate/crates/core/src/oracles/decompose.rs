use super::{check_budget, OracleError};
use crate::algebra::{Field, FieldElem, Monomial, MultiPoly, UniPoly};

/// `f = g ∘ h` with `deg g ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub g: UniPoly,
    pub h: MultiPoly,
}

impl DecompositionWitness {
    /// `g(h)` by Horner's rule.
    pub fn compose(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.h.field(), self.h.nvars());
        for c in self.g.coeffs().iter().rev() {
            acc = acc
                .mul(&self.h)
                .add(&MultiPoly::constant(self.h.field(), self.h.nvars(), c.clone()));
        }
        acc
    }

    pub fn verify(&self, f: &MultiPoly) -> bool {
        self.g.degree().unwrap_or(0) >= 2 && self.compose() == *f
    }
}

/// All monomials of total degree exactly `deg` in `nvars` variables.
fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![Monomial::new(&[])] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; nvars], &mut out);
    out
}

fn monomial_pow(m: &Monomial, k: u32) -> Monomial {
    Monomial::new(&m.exps().iter().map(|e| e * k).collect::<Vec<_>>())
}

/// The unique homogeneous `H` with leading coefficient 1 and `H^m = ft`,
/// found term by term: the leading term of `ft - H^m` is `m·M0^{m-1}·T`
/// where `T` is the next missing term of `H`. Needs `m` invertible.
fn homogeneous_root(ft: &MultiPoly, m: u32, e: u32) -> Option<MultiPoly> {
    let field = ft.field();
    let nv = ft.nvars();
    let (lm, _) = ft.leading_term()?;
    if lm.exps().iter().any(|x| x % m != 0) {
        return None;
    }
    let m0 = Monomial::new(&lm.exps().iter().map(|x| x / m).collect::<Vec<_>>());
    let shift = monomial_pow(&m0, m - 1);
    let m_inv = field.inv(&field.from_u64(m as u64)).ok()?;
    let mut h = MultiPoly::zero(field, nv);
    h.add_term(m0.clone(), field.one());
    let limit = monomials_of_degree(nv, e).len() + 1;
    for _ in 0..limit {
        let r = ft.sub(&h.pow(m));
        let Some((mono, c)) = r.leading_term() else {
            return Some(h);
        };
        if !shift.divides(mono) {
            return None;
        }
        let t = shift.quotient_of(mono);
        if t >= m0 {
            return None;
        }
        h.add_term(t, field.mul(c, &m_inv));
    }
    None
}

/// All homogeneous `H` of degree `e` with leading monomial `m0` (coefficient
/// 1) and `H^m = ft`, by enumeration. Used when `m` is a multiple of `p`.
fn homogeneous_roots_enumerated(
    ft: &MultiPoly,
    m: u32,
    e: u32,
    budget: u128,
) -> Result<Vec<MultiPoly>, OracleError> {
    let field = ft.field();
    let nv = ft.nvars();
    let Some((lm, _)) = ft.leading_term() else {
        return Ok(Vec::new());
    };
    if lm.exps().iter().any(|x| x % m != 0) {
        return Ok(Vec::new());
    }
    let m0 = Monomial::new(&lm.exps().iter().map(|x| x / m).collect::<Vec<_>>());
    let lower: Vec<Monomial> = monomials_of_degree(nv, e)
        .into_iter()
        .filter(|x| *x < m0)
        .collect();
    let mut out = Vec::new();
    for_each_assignment(field, &lower, budget, |coeffs| {
        let mut h = MultiPoly::zero(field, nv);
        h.add_term(m0.clone(), field.one());
        for (mono, c) in lower.iter().zip(coeffs) {
            h.add_term(mono.clone(), c.clone());
        }
        if h.pow(m) == *ft {
            out.push(h);
        }
        false
    })?;
    Ok(out)
}

/// Call `visit` with every coefficient vector in `F^{monos.len()}`, stopping
/// early when it returns `true`.
fn for_each_assignment<V>(
    field: &Field,
    monos: &[Monomial],
    budget: u128,
    mut visit: V,
) -> Result<bool, OracleError>
where
    V: FnMut(&[FieldElem]) -> bool,
{
    let q = field.size();
    let count = q
        .checked_pow(monos.len() as u32)
        .ok_or(OracleError::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    check_budget(count, budget)?;
    let mut digits = vec![0u128; monos.len()];
    let mut coeffs: Vec<FieldElem> = vec![field.zero(); monos.len()];
    for _ in 0..count {
        if visit(&coeffs) {
            return Ok(true);
        }
        for (d, c) in digits.iter_mut().zip(coeffs.iter_mut()) {
            *d += 1;
            if *d < q {
                *c = field.element_at(*d);
                break;
            }
            *d = 0;
            *c = field.zero();
        }
    }
    Ok(false)
}

/// Express `f` in the basis `1, h, .., h^m` by peeling off the coefficient
/// of `LM(h)^j` from the top down.
fn span_solve(f: &MultiPoly, h: &MultiPoly, m: u32, m0: &Monomial) -> Option<UniPoly> {
    let field = f.field();
    let mut powers = Vec::with_capacity(m as usize + 1);
    powers.push(MultiPoly::one(field, f.nvars()));
    for j in 1..=m as usize {
        let next = powers[j - 1].mul(h);
        powers.push(next);
    }
    let mut r = f.clone();
    let mut g = vec![field.zero(); m as usize + 1];
    for j in (0..=m as usize).rev() {
        let c = r.coeff(&monomial_pow(m0, j as u32));
        if !c.is_zero() {
            r = r.sub(&powers[j].scale(&c));
        }
        g[j] = c;
    }
    if r.is_zero() {
        Some(UniPoly::new(field, g))
    } else {
        None
    }
}

/// Exhaustive decomposability test. Any decomposition can be normalized so
/// that `h` has zero constant term and a monic leading term; then the top
/// homogeneous part of `h` is the unique normalized `m`-th root of the top
/// part of `f`, and the lower parts of `h` are enumerated. Returns a
/// verified witness, or `None` if `f` is indecomposable (constants and
/// polynomials of degree 1 included).
pub fn is_decomposable_bruteforce(
    f: &MultiPoly,
    budget: u128,
) -> Result<Option<DecompositionWitness>, OracleError> {
    let Some(deg) = f.total_degree() else {
        return Ok(None);
    };
    if deg < 2 {
        return Ok(None);
    }
    let field = f.field();
    let nv = f.nvars();
    let (_, lc) = f.leading_term().expect("nonzero");
    let lc_inv = field.inv(lc)?;
    let top = f.homogeneous_component(deg).scale(&lc_inv);
    let p = field.characteristic();
    for e in (1..=deg / 2).filter(|e| deg % e == 0) {
        let m = deg / e;
        let tops = if m % p != 0 {
            homogeneous_root(&top, m, e).into_iter().collect()
        } else {
            homogeneous_roots_enumerated(&top, m, e, budget)?
        };
        let lower: Vec<Monomial> = (1..e).flat_map(|k| monomials_of_degree(nv, k)).collect();
        for h_top in tops {
            let m0 = h_top.leading_term().expect("nonzero root").0.clone();
            let mut found: Option<DecompositionWitness> = None;
            for_each_assignment(field, &lower, budget, |coeffs| {
                let mut h = h_top.clone();
                for (mono, c) in lower.iter().zip(coeffs) {
                    h.add_term(mono.clone(), c.clone());
                }
                if let Some(g) = span_solve(f, &h, m, &m0) {
                    found = Some(DecompositionWitness { g, h });
                    true
                } else {
                    false
                }
            })?;
            if let Some(w) = found {
                if !w.verify(f) {
                    return Err(OracleError::Inconsistent(
                        "decomposition witness failed re-composition".into(),
                    ));
                }
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}
